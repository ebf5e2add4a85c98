from django.core.management.base import BaseCommand

from fingerprints.cli import add_config_arguments, add_json_argument, config_from_options, dump_json, read_plan
from fingerprints.services import fingerprint_document
from fingerprints.simhash import to_hex


class Command(BaseCommand):
    help = "Print the 128-bit fingerprint (edge and node signatures) of one or more plan files."

    def add_arguments(self, parser):
        parser.add_argument("plans", nargs="+", help=".json or .plan files")
        add_config_arguments(parser)
        add_json_argument(parser)

    def handle(self, *args, **options):
        config = config_from_options(options)
        header = config.header()
        rows = []
        for path in options["plans"]:
            doc = read_plan(path)
            fingerprint = fingerprint_document(doc, config)
            rows.append({
                "plan_id": doc.plan_id,
                "edge_fp": to_hex(fingerprint.edge_sig),
                "node_fp": to_hex(fingerprint.node_sig),
                "approach": config.approach.value,
            })

        if options["json"]:
            self.stdout.write(dump_json({"config": header, "fingerprints": rows}))
            return

        self.stdout.write(" ".join(f"{key}={value}" for key, value in header.items() if key != "ngram"))
        if "ngram" in header:
            self.stdout.write(" ".join(f"ngram.{key}={value}" for key, value in header["ngram"].items()))
        for row in rows:
            self.stdout.write(f"{row['plan_id']}\t{row['edge_fp']}\t{row['node_fp']}\t{row['approach']}")
