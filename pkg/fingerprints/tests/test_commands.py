import json
import os
import subprocess
import sys
import tempfile
from io import StringIO
from pathlib import Path

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from fingerprints.cli import INPUT_ERROR, OPERATIONAL_ERROR
from fingerprints.index import load_index
from plans.parsers import render_plan_json
from plans.tests.factories import chain, diamond, document

MANAGE = Path(__file__).resolve().parents[2] / "manage.py"


class CommandTestCase(SimpleTestCase):

    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.root = Path(self._tmp.name)
        self.index = self.root / "index.jsonl"

    def tearDown(self):
        self._tmp.cleanup()

    def write_plan(self, graph, runtime=None, folder="."):
        directory = self.root / folder
        directory.mkdir(exist_ok=True)
        path = directory / f"{graph.id}.json"
        path.write_text(render_plan_json(document(graph, runtime)))
        return path

    def run_command(self, *args):
        out = StringIO()
        call_command(*args, stdout=out)
        return out.getvalue()

    def assertExitCode(self, code, *args):
        with self.assertRaises(CommandError) as ctx:
            self.run_command(*args)
        self.assertEqual(ctx.exception.returncode, code)
        return ctx.exception


class FingerprintCommandTests(CommandTestCase):

    def test_text_output(self):
        path = self.write_plan(diamond())
        lines = self.run_command("fingerprint", str(path)).splitlines()
        self.assertIn("approach=structured", lines[0])
        plan_id, edge_fp, node_fp, approach = lines[-1].split("\t")
        self.assertEqual((plan_id, approach), ("diamond", "structured"))
        self.assertEqual(len(edge_fp), 16)

    def test_approaches_share_edge_signature(self):
        path = self.write_plan(diamond())
        rows = [
            json.loads(self.run_command("fingerprint", str(path), "--approach", approach, "--json"))
            for approach in ("structured", "ngram")
        ]
        structured, ngram = (payload["fingerprints"][0] for payload in rows)
        self.assertEqual(structured["edge_fp"], ngram["edge_fp"])
        self.assertNotEqual(structured["node_fp"], ngram["node_fp"])
        self.assertEqual(rows[1]["config"]["ngram"]["n"], 3)

    def test_same_bytes_from_separate_processes(self):
        plans = [
            str(self.write_plan(diamond())),
            str(self.write_plan(chain("Scan", "Exchange", "HashAggregate", "Sort", plan_id="agg"))),
        ]
        for approach in ("structured", "ngram", "hybrid"):
            outputs = [
                subprocess.run(
                    [sys.executable, str(MANAGE), "fingerprint", *plans, "--approach", approach, "--json"],
                    capture_output=True,
                    check=True,
                    cwd=MANAGE.parent,
                    env={**os.environ, "PYTHONHASHSEED": seed},
                ).stdout
                for seed in ("1", "2")
            ]
            with self.subTest(approach=approach):
                self.assertEqual(outputs[0], outputs[1])
                self.assertEqual(len(json.loads(outputs[0])["fingerprints"]), 2)

    def test_text_plan_file(self):
        path = self.root / "tiny.plan"
        path.write_text("Project [a]\n  Filter (a > 1)\n    Scan t1\n")
        out = self.run_command("fingerprint", str(path), "--json")
        self.assertEqual(json.loads(out)["fingerprints"][0]["plan_id"], "tiny")

    def test_bad_plan_is_an_input_error(self):
        path = self.root / "broken.json"
        path.write_text("{not json")
        self.assertExitCode(INPUT_ERROR, "fingerprint", str(path))

    def test_missing_plan_is_an_input_error(self):
        self.assertExitCode(INPUT_ERROR, "fingerprint", str(self.root / "absent.json"))

    def test_bad_ngram_n(self):
        path = self.write_plan(diamond())
        self.assertExitCode(INPUT_ERROR, "fingerprint", str(path), "--approach", "ngram", "--ngram-n", "-1")


class IndexCommandTests(CommandTestCase):

    def populate(self):
        self.write_plan(diamond(), 3.0, folder="corpus")
        self.write_plan(chain("Scan", "Exchange", "HashAggregate", plan_id="agg"), 12.0, folder="corpus")
        self.write_plan(chain("Scan", "Sort", "Window", "Sort", plan_id="win"), 90.0, folder="corpus")
        return self.run_command("index", "add", str(self.root / "corpus"), "--index", str(self.index))

    def test_add_directory(self):
        out = self.populate()
        self.assertIn("added 3 plan(s)", out)
        index = load_index(self.index)
        self.assertEqual(sorted(record.plan_id for record in index.records), ["agg", "diamond", "win"])

    def test_add_again_replaces(self):
        self.populate()
        out = self.populate()
        self.assertIn("now holds 3 record(s)", out)

    def test_plan_without_runtime(self):
        path = self.write_plan(diamond())
        self.assertExitCode(INPUT_ERROR, "index", "add", str(path), "--index", str(self.index))

    def test_config_mismatch_is_operational(self):
        self.populate()
        path = self.write_plan(chain("Scan", "Limit", plan_id="limit"), 0.1)
        error = self.assertExitCode(
            OPERATIONAL_ERROR, "index", "add", str(path), "--index", str(self.index), "--approach", "ngram"
        )
        self.assertIn("approach", str(error))

    def test_show(self):
        self.populate()
        payload = json.loads(self.run_command("index", "show", "--index", str(self.index), "--json"))
        self.assertEqual(payload["header"]["approach"], "structured")
        self.assertEqual({row["label"] for row in payload["records"]}, {"Simple", "Medium", "Complex"})

        text = self.run_command("index", "show", "--index", str(self.index))
        self.assertIn("records: 3", text)

    def test_show_missing_index(self):
        self.assertExitCode(OPERATIONAL_ERROR, "index", "show", "--index", str(self.root / "nope.jsonl"))


class LookupCommandTests(CommandTestCase):

    def setUp(self):
        super().setUp()
        self.write_plan(diamond(), 3.0, folder="corpus")
        self.write_plan(chain("Scan", "Exchange", "HashAggregate", "Sort", plan_id="agg"), 120.0, folder="corpus")
        self.run_command("index", "add", str(self.root / "corpus"), "--index", str(self.index))
        self.probe = self.write_plan(diamond("probe"))

    def test_match(self):
        payload = json.loads(self.run_command("match", str(self.probe), "--index", str(self.index), "--json"))
        first = payload["matches"][0]
        self.assertEqual((first["plan_id"], first["edge_distance"], first["node_distance"]), ("diamond", 0, 0))
        self.assertEqual(len(payload["matches"]), 2)

    def test_match_top(self):
        out = self.run_command("match", str(self.probe), "--index", str(self.index), "--top", "1")
        self.assertEqual(len(out.splitlines()), 2)

    def test_predict(self):
        out = self.run_command("predict", str(self.probe), "--index", str(self.index))
        self.assertEqual(out.split("\t")[:3], ["probe", "Simple", "nearest=diamond"])

    def test_predict_json_with_vote(self):
        payload = json.loads(
            self.run_command("predict", str(self.probe), "--index", str(self.index), "--vote", "2", "--json")
        )
        self.assertEqual(payload["label"], "Simple")

    def test_bad_k(self):
        self.assertExitCode(INPUT_ERROR, "match", str(self.probe), "--index", str(self.index), "--k", "0")

    def test_probe_config_disagrees(self):
        self.assertExitCode(
            OPERATIONAL_ERROR, "predict", str(self.probe), "--index", str(self.index), "--approach", "hybrid"
        )

    def test_missing_index(self):
        self.assertExitCode(OPERATIONAL_ERROR, "predict", str(self.probe), "--index", str(self.root / "none.jsonl"))


class NGramIndexFlagTests(CommandTestCase):
    """Flags given to a lookup are laid over the index header, not over settings."""

    def setUp(self):
        super().setUp()
        self.write_plan(diamond(), 3.0, folder="corpus")
        self.write_plan(chain("Scan", "Exchange", "HashAggregate", "Sort", plan_id="agg"), 120.0, folder="corpus")
        self.run_command("index", "add", str(self.root / "corpus"), "--index", str(self.index), "--approach", "ngram")
        self.probe = self.write_plan(diamond("probe"))

    def lookup(self, command, *flags):
        return self.run_command(command, str(self.probe), "--index", str(self.index), "--json", *flags)

    def test_no_flags_follow_the_header(self):
        first = json.loads(self.lookup("match"))["matches"][0]
        self.assertEqual((first["plan_id"], first["node_distance"]), ("diamond", 0))

    def test_flag_agreeing_with_header(self):
        first = json.loads(self.lookup("match", "--ngram-n", "3"))["matches"][0]
        self.assertEqual(first["plan_id"], "diamond")
        self.assertEqual(json.loads(self.lookup("predict", "--approach", "ngram"))["label"], "Simple")

    def test_adding_with_an_agreeing_flag(self):
        path = self.write_plan(chain("Scan", "Limit", plan_id="limit"), 0.1)
        self.run_command("index", "add", str(path), "--index", str(self.index), "--ngram-n", "3")
        self.assertIn("limit", load_index(self.index))

    def test_flag_disagreeing_with_header(self):
        for flags in (("--ngram-n", "4"), ("--ngram-set",), ("--keep-ids",), ("--approach", "structured")):
            with self.subTest(flags=flags):
                self.assertExitCode(
                    OPERATIONAL_ERROR, "match", str(self.probe), "--index", str(self.index), *flags
                )

    def test_invalid_flag_value(self):
        self.assertExitCode(INPUT_ERROR, "match", str(self.probe), "--index", str(self.index), "--ngram-n", "0")
