from django.core.management.base import BaseCommand, CommandError

from plans.corpus import load_corpus
from plans.exceptions import PlanError

from evaluation.exceptions import EvaluationError
from evaluation.leave_one_out import eval_leave_one_out
from evaluation.reports import render_json, render_text
from fingerprints.cli import (
    INPUT_ERROR, OPERATIONAL_ERROR, add_config_arguments, add_json_argument, add_lookup_arguments,
    config_from_options, operational_errors, positive,
)


class Command(BaseCommand):
    help = "Leave-one-out evaluation of complexity prediction over a directory of labeled plans."

    def add_arguments(self, parser):
        parser.add_argument("corpus", help="directory of .json / .plan files with runtimes")
        parser.add_argument("--vote", type=int, default=1, dest="vote",
                            help="majority vote over this many nearest matches (default 1)")
        parser.add_argument("--workers", type=int, dest="workers",
                            help="threads for corpus loading and evaluation (default: settings WORKERS)")
        add_lookup_arguments(parser)
        add_config_arguments(parser)
        add_json_argument(parser)

    def handle(self, *args, **options):
        k = positive(options, "k", "K")
        vote = positive(options, "vote")
        workers = positive(options, "workers", "WORKERS")
        config = config_from_options(options)

        try:
            corpus = load_corpus(options["corpus"], workers=workers)
        except PlanError as exc:
            raise CommandError(f"{options['corpus']}: {exc}", returncode=INPUT_ERROR) from None

        with operational_errors(options["corpus"]):
            try:
                report = eval_leave_one_out(corpus, config, k, vote=vote, workers=workers)
            except EvaluationError as exc:
                raise CommandError(f"{options['corpus']}: {exc}", returncode=OPERATIONAL_ERROR) from None

        self.stdout.write(render_json(report) if options["json"] else render_text(report))
