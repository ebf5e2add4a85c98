from django.core.management.base import BaseCommand

from fingerprints.cli import (
    add_config_arguments, add_index_argument, add_json_argument, add_lookup_arguments,
    config_for_index, dump_json, index_path, operational_errors, positive, read_plan,
)
from fingerprints.index import load_index
from fingerprints.matching import match
from fingerprints.services import fingerprint_document


class Command(BaseCommand):
    help = "List the indexed plans closest to a plan (edge-distance filter, node-distance ranking)."

    def add_arguments(self, parser):
        parser.add_argument("plan", help=".json or .plan file")
        parser.add_argument("--top", type=int, dest="top", help="number of matches to print")
        add_lookup_arguments(parser)
        add_index_argument(parser)
        add_config_arguments(parser)
        add_json_argument(parser)

    def handle(self, *args, **options):
        k = positive(options, "k", "K")
        top = positive(options, "top", "TOP_N")
        doc = read_plan(options["plan"])
        path = index_path(options)

        with operational_errors(path):
            index = load_index(path)
            config = config_for_index(index.header, options)
            index.check_config(config)
            results = match(index, fingerprint_document(doc, config), k=k, top_n=top)

        if options["json"]:
            self.stdout.write(dump_json({
                "plan_id": doc.plan_id,
                "k": k,
                "matches": [result.to_json() for result in results],
            }))
            return

        self.stdout.write(f"matches for {doc.plan_id} (k={k})")
        for rank, result in enumerate(results, start=1):
            row = result.to_json()
            self.stdout.write(
                f"{rank}\t{row['plan_id']}\tedge={row['edge_distance']}\tnode={row['node_distance']}\t"
                f"{row['label']}\t{row['runtime_seconds']}"
            )
