"""End-to-end checks of the ncfold command line.

Usage: cli_test.py <path to ncfold> <schema directory>
"""

import json
import os
import pathlib
import subprocess
import sys
import tempfile
import unittest

import jsonschema

NCFOLD = ""
SCHEMAS = pathlib.Path()


def run(*args, env=None):
    merged = dict(os.environ)
    merged.pop("NCFOLD_BUDGET", None)
    if env:
        merged.update(env)
    return subprocess.run([NCFOLD, *args], capture_output=True, text=True, env=merged, timeout=600)


def schema(name):
    return json.loads((SCHEMAS / f"{name}.schema.json").read_text())


# (schema name, arguments) for every JSON-emitting command.
JSON_COMMANDS = [
    ("exact", ["exact", "--word", "abBA", "--k", "2", "--witness"]),
    ("exact", ["exact", "--word", "1 -2 2", "--k", "2"]),
    ("census", ["census", "--n", "4", "--k", "2", "--format", "json"]),
    ("census", ["census", "--n", "0", "--k", "3", "--format", "json"]),
    ("greedy", ["greedy", "--word", "ababAaBb", "--k", "2"]),
    ("chain-verify", ["chain", "verify", "--k", "3", "--max-len", "3"]),
    ("chain-truncated", ["chain", "truncated", "--k", "2", "--L", "3"]),
    ("chain-truncated", ["chain", "truncated", "--k", "2", "--L", "2", "--convention", "blocked-renormalize"]),
    ("lambda-tilde", ["lambda-tilde", "--k", "4", "--format", "json"]),
    ("bounds", ["bounds", "--k", "2"]),
    ("bounds", ["bounds", "--k", "9"]),
    ("trivial-count", ["trivial-count", "--p", "6", "--k", "2", "--format", "json"]),
    ("estimate", ["estimate", "--n", "30", "--k", "2", "--samples", "40", "--seed", "3"]),
    ("concentrate", ["concentrate", "--n", "30", "--k", "2", "--samples", "40", "--t", "1", "2", "3"]),
    ("subadd", ["subadd", "--m", "4", "--n", "4", "--k", "2", "--samples", "30"]),
    ("subadd", ["subadd", "--m", "20", "--n", "30", "--k", "2", "--samples", "30"]),
    ("mono", ["mono", "--n", "30", "--k", "2", "--samples", "30"]),
    ("greedy-longrun", ["greedy-longrun", "--n", "5000", "--k", "3", "--seed", "1"]),
]


class Dispatch(unittest.TestCase):
    def test_help_lists_every_subcommand(self):
        r = run("--help")
        self.assertEqual(r.returncode, 0)
        for name in ["exact", "census", "greedy", "greedy-sim", "chain", "lambda-tilde", "bounds",
                     "trivial-count", "estimate", "concentrate", "subadd", "mono", "greedy-longrun",
                     "reproduce"]:
            self.assertIn(name, r.stdout)

    def test_usage_errors_exit_2(self):
        self.assertEqual(run().returncode, 2)
        self.assertEqual(run("frobnicate").returncode, 2)
        self.assertEqual(run("exact", "--word", "ab", "--k", "2", "--bogus").returncode, 2)
        self.assertEqual(run("exact", "--k", "2").returncode, 2)
        self.assertEqual(run("exact", "--word", "ac", "--k", "2").returncode, 2)
        self.assertEqual(run("bounds", "--k", "2", "--format", "csv").returncode, 2)
        self.assertEqual(run("reproduce", "--only", "nonsense").returncode, 2)

    def test_computation_errors_exit_1(self):
        r = run("census", "--n", "4", "--k", "2", "--budget", "255")
        self.assertEqual(r.returncode, 1)
        self.assertIn("budget", r.stderr)

    def test_budget_from_environment(self):
        self.assertEqual(run("census", "--n", "4", "--k", "2", env={"NCFOLD_BUDGET": "255"}).returncode, 1)
        self.assertEqual(run("census", "--n", "4", "--k", "2", env={"NCFOLD_BUDGET": "256"}).returncode, 0)
        # The flag wins over the environment.
        r = run("census", "--n", "4", "--k", "2", "--budget", "256", env={"NCFOLD_BUDGET": "1"})
        self.assertEqual(r.returncode, 0)


class Outputs(unittest.TestCase):
    def test_lambda_tilde_text(self):
        r = run("lambda-tilde", "--k", "2")
        self.assertEqual(r.returncode, 0)
        self.assertEqual(r.stdout.strip(), "3/13 ≈ 0.230769")
        self.assertEqual(run("lambda-tilde", "--k", "3").stdout.strip(), "33/100 ≈ 0.330000")

    def test_exact(self):
        out = json.loads(run("exact", "--word", "ab", "--k", "2").stdout)
        self.assertEqual(out["unmatched"], 2)
        self.assertNotIn("pairs", out)
        out = json.loads(run("exact", "--word", "abBA", "--k", "2", "--witness").stdout)
        self.assertEqual(out["unmatched"], 0)
        self.assertEqual(out["pairs"], [[1, 4], [2, 3]])

    def test_census_csv(self):
        r = run("census", "--n", "4", "--k", "2")
        self.assertEqual(r.stdout.splitlines(), ["ell_value,count", "0,28", "2,168", "4,60"])

    def test_bounds(self):
        out = json.loads(run("bounds", "--k", "2").stdout)
        b = out["bounds"]
        self.assertLessEqual(b["lower_base"], 0.0327)
        self.assertGreater(b["lower_base"], 0.03)
        self.assertGreater(b["lower_refined"], 0.034)
        self.assertAlmostEqual(b["upper_elementary"], 0.2887, places=4)
        self.assertEqual(out["exact"]["upper_greedy"], "3/13")
        self.assertTrue(out["consistent"])

    def test_trivial_count_text(self):
        self.assertEqual(run("trivial-count", "--p", "4", "--k", "2").stdout.strip(), "28")

    def test_greedy_sim_csv(self):
        lines = run("greedy-sim", "--k", "2", "--n", "50", "--seed", "4").stdout.splitlines()
        self.assertEqual(lines[0], "t,accessible_length,reductions")
        self.assertEqual(len(lines), 51)

    def test_json_outputs_match_schemas(self):
        for name, args in JSON_COMMANDS:
            with self.subTest(args=" ".join(args)):
                r = run(*args)
                self.assertEqual(r.returncode, 0, r.stderr)
                out = json.loads(r.stdout)
                jsonschema.validate(out, schema(name))
                self.assertIn("config", out)

    def test_repeated_runs_are_byte_identical(self):
        for _, args in JSON_COMMANDS:
            with self.subTest(args=" ".join(args)):
                self.assertEqual(run(*args).stdout, run(*args).stdout)
        a = run("estimate", "--n", "40", "--k", "2", "--samples", "200", "--workers", "1").stdout
        b = run("estimate", "--n", "40", "--k", "2", "--samples", "200", "--workers", "4").stdout
        self.assertEqual(json.loads(a)["mean_fraction"], json.loads(b)["mean_fraction"])


class Reproduce(unittest.TestCase):
    def test_only_bounds(self):
        with tempfile.TemporaryDirectory() as tmp:
            r = run("reproduce", "--only", "bounds", "--out", tmp)
            self.assertEqual(r.returncode, 0, r.stdout + r.stderr)
            self.assertIn("bounds", r.stdout)
            self.assertNotIn("census", r.stdout)
            summary = json.loads((pathlib.Path(tmp) / "summary.json").read_text())
            jsonschema.validate(summary, schema("reproduce-summary"))
            self.assertEqual([c["group"] for c in summary["checks"]], ["bounds"])
            report = json.loads((pathlib.Path(tmp) / "bounds.json").read_text())
            jsonschema.validate(report["bounds"], schema("bounds")["properties"]["bounds"])

    def test_tampered_tau2_names_the_balance_check(self):
        with tempfile.TemporaryDirectory() as tmp:
            r = run("reproduce", "--only", "balance", "--perturb-tau2", "34/100", "--out", tmp)
            self.assertNotEqual(r.returncode, 0)
            self.assertIn("FAIL", r.stdout)
            self.assertIn("balance", r.stdout)
            clean = run("reproduce", "--only", "balance", "--out", tmp)
            self.assertEqual(clean.returncode, 0, clean.stdout)


if __name__ == "__main__":
    NCFOLD = sys.argv.pop(1)
    SCHEMAS = pathlib.Path(sys.argv.pop(1))
    unittest.main(verbosity=2)
