from django.core.management.base import BaseCommand

from fingerprints.cli import (
    add_config_arguments, add_index_argument, add_json_argument, add_lookup_arguments,
    config_for_index, dump_json, index_path, operational_errors, positive, read_plan,
)
from fingerprints.index import load_index
from fingerprints.matching import predict
from fingerprints.services import fingerprint_document


class Command(BaseCommand):
    help = "Predict the complexity label (Simple / Medium / Complex) of a plan from its nearest indexed neighbour."

    def add_arguments(self, parser):
        parser.add_argument("plan", help=".json or .plan file")
        parser.add_argument("--vote", type=int, default=1, dest="vote",
                            help="majority vote over this many nearest matches (default 1)")
        add_lookup_arguments(parser)
        add_index_argument(parser)
        add_config_arguments(parser)
        add_json_argument(parser)

    def handle(self, *args, **options):
        k = positive(options, "k", "K")
        vote = positive(options, "vote")
        doc = read_plan(options["plan"])
        path = index_path(options)

        with operational_errors(path):
            index = load_index(path)
            config = config_for_index(index.header, options)
            index.check_config(config)
            label, evidence = predict(index, fingerprint_document(doc, config), k=k, vote=vote)

        if options["json"]:
            self.stdout.write(dump_json({
                "plan_id": doc.plan_id,
                "label": label.label,
                "evidence": evidence.to_json(),
            }))
            return

        self.stdout.write(
            f"{doc.plan_id}\t{label.label}\tnearest={evidence.plan_id}\t"
            f"edge={evidence.edge_distance}\tnode={evidence.node_distance}"
        )
