from pathlib import Path

from django.core.management.base import BaseCommand, CommandError

from plans.corpus import load_corpus
from plans.exceptions import PlanError

from fingerprints.cli import (
    INPUT_ERROR, add_config_arguments, add_index_argument, add_json_argument, config_for_index,
    config_from_options, dump_json, index_path, operational_errors,
)
from fingerprints.index import Index, load_index, save_index
from fingerprints.labels import ComplexityLabel
from fingerprints.services import record_for


class Command(BaseCommand):
    help = "Maintain a fingerprint index file: add labeled plans or show its contents."

    def add_arguments(self, parser):
        actions = parser.add_subparsers(dest="action", required=True)

        add = actions.add_parser("add", help="fingerprint labeled plans and add them to the index")
        add.add_argument("paths", nargs="+", help="plan files or directories of plan files")
        add_index_argument(add)
        add_config_arguments(add)

        show = actions.add_parser("show", help="print the index header and records")
        add_index_argument(show)
        add_json_argument(show)

    def handle(self, *args, **options):
        if options["action"] == "add":
            self.add(options)
        else:
            self.show(options)

    def add(self, options):
        path = index_path(options)
        with operational_errors(path):
            if path.exists():
                index = load_index(path)
                config = config_for_index(index.header, options)
                index.check_config(config)
            else:
                config = config_from_options(options)
                index = Index.for_config(config)

        documents = []
        for source in options["paths"]:
            try:
                documents.extend(load_corpus(Path(source)))
            except PlanError as exc:
                raise CommandError(f"{source}: {exc}", returncode=INPUT_ERROR) from None

        added = 0
        for doc in documents:
            try:
                record = record_for(doc, config)
            except PlanError as exc:
                raise CommandError(str(exc), returncode=INPUT_ERROR) from None
            with operational_errors(path):
                index.add(record, config)
            added += 1

        with operational_errors(path):
            save_index(index, path)
        self.stdout.write(f"added {added} plan(s); {path} now holds {len(index)} record(s)")

    def show(self, options):
        path = index_path(options)
        with operational_errors(path):
            index = load_index(path)

        records = [record.to_json() for record in index.records]
        if options["json"]:
            self.stdout.write(dump_json({"header": index.header, "records": records}))
            return

        for key, value in index.header.items():
            self.stdout.write(f"{key}: {value}")
        self.stdout.write(f"records: {len(index)}")
        for label in ComplexityLabel:
            count = sum(1 for record in index.records if record.label == label)
            self.stdout.write(f"  {label.label}: {count}")
        for row in records:
            self.stdout.write(
                f"{row['plan_id']}\t{row['edge_fp']}\t{row['node_fp']}\t"
                f"{row['runtime_seconds']}\t{row['label']}"
            )
