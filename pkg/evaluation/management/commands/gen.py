from django.core.management.base import BaseCommand, CommandError

from evaluation.exceptions import InvalidSyntheticSpec
from evaluation.synthetic import SyntheticSpec, generate_corpus
from fingerprints.cli import INPUT_ERROR, OPERATIONAL_ERROR, add_json_argument, dump_json


class Command(BaseCommand):
    help = "Write a seeded synthetic corpus of labeled JSON plans (one base plan per family, perturbed)."

    def add_arguments(self, parser):
        parser.add_argument("out", help="output directory (created if missing)")
        parser.add_argument("--seed", type=int, default=42, dest="seed")
        parser.add_argument("--count", type=int, default=100, dest="count", help="plans per family")
        parser.add_argument("--perturbation", type=float, default=0.1, dest="perturbation",
                            help="fraction of each base plan's nodes with a re-drawn property")
        add_json_argument(parser)

    def handle(self, *args, **options):
        try:
            spec = SyntheticSpec(
                seed=options["seed"],
                count_per_family=options["count"],
                perturbation_rate=options["perturbation"],
            )
        except InvalidSyntheticSpec as exc:
            raise CommandError(str(exc), returncode=INPUT_ERROR) from None

        try:
            corpus = generate_corpus(spec, options["out"])
        except OSError as exc:
            raise CommandError(f"{exc.filename or options['out']}: {exc.strerror or exc}",
                               returncode=OPERATIONAL_ERROR) from None

        families = {
            family.name: {"label": family.label.label, "plans": spec.count_per_family}
            for family in spec.families
        }
        if options["json"]:
            self.stdout.write(dump_json({
                "out": options["out"], "seed": spec.seed, "plans": len(corpus), "families": families,
            }))
            return

        self.stdout.write(f"wrote {len(corpus)} plan(s) to {options['out']} (seed {spec.seed})")
        for name, family in families.items():
            self.stdout.write(f"  {name}: {family['plans']} {family['label']}")
