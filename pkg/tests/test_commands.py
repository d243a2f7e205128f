import json
import os
from io import StringIO
from tempfile import TemporaryDirectory

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from .utils import fixture_path


def run(command, *args, **options):
    stdout, stderr = StringIO(), StringIO()
    call_command(command, *args, stdout=stdout, stderr=stderr, **options)
    return stdout.getvalue(), stderr.getvalue()


class MutateCommandTest(SimpleTestCase):
    def test_seed(self):
        output, _ = run("lp_mutate", "b", seed_file=fixture_path("mutation_example.json"))
        data = json.loads(output)
        self.assertEqual(data["seed"]["cluster"], ["a", "b'", "c"])
        self.assertEqual(data["seed"]["initial"], ["a", "b", "c"])
        self.assertIn("b'^2 + a", output)

    def test_seed_table(self):
        output, _ = run(
            "lp_mutate", "b", seed_file=fixture_path("mutation_example.json"), format="table"
        )
        self.assertIn("b': a + 1", output)

    def test_empty_sequence(self):
        output, _ = run("lp_mutate", seed_file=fixture_path("rank_one.json"))
        self.assertNotIn("expressions", json.loads(output)["seed"])

    def test_quiver(self):
        output, _ = run("lp_mutate", "x0", quiver_file=fixture_path("a2_quiver.json"))
        data = json.loads(output)
        self.assertEqual(data["violations"], [])
        self.assertEqual(data["quiver"]["matrix"][0], [0, -1, 0, 0])

    def test_surface(self):
        output, _ = run("lp_mutate", "d2", surface="polygon", params=["k=5"])
        data = json.loads(output)
        self.assertEqual(data["state"]["labels"][0], "d2'")
        self.assertIn("d2'", data["seed"]["cluster"])

    def test_output_file(self):
        with TemporaryDirectory() as directory:
            path = os.path.join(directory, "seed.json")
            output, _ = run("lp_mutate", "x", seed_file=fixture_path("rank_one.json"), output=path)
            self.assertEqual(output, "")
            with open(path, encoding="utf-8") as f:
                self.assertEqual(json.load(f)["seed"]["cluster"], ["x'"])

    def test_unknown_direction(self):
        with self.assertRaisesMessage(CommandError, "Unknown mutation direction 'z'"):
            run("lp_mutate", "z", seed_file=fixture_path("mutation_example.json"))

    def test_missing_start(self):
        with self.assertRaisesMessage(CommandError, "Give one of --seed-file"):
            run("lp_mutate", "b")

    def test_missing_file(self):
        with self.assertRaisesMessage(CommandError, "Cannot read"):
            run("lp_mutate", "b", seed_file=fixture_path("missing.json"))

    def test_broken_quiver(self):
        with self.assertRaisesMessage(CommandError, "Invalid quiver: matrix is not anti-symmetric"):
            run("lp_mutate", "x0", quiver_file=fixture_path("broken_quiver.json"))

    def test_reducible_seed(self):
        with self.assertRaisesMessage(CommandError, "is reducible"):
            run("lp_mutate", seed_file=fixture_path("reducible_seed.json"))


class ExploreCommandTest(SimpleTestCase):
    def test_hexagon(self):
        output, errors = run("lp_explore", surface="polygon", params=["k=6"])
        data = json.loads(output)
        self.assertEqual(data["summary"]["nodes"], 14)
        self.assertEqual(data["summary"]["edges"], 21)
        self.assertTrue(data["closed"])
        self.assertEqual(len(data["nodes"]), 14)
        self.assertIn("nodes: 14, edges: 21, closed: True", errors)

    def test_table(self):
        output, errors = run("lp_explore", seed_file=fixture_path("rank_one.json"), format="table")
        self.assertEqual(output.strip(), "nodes: 2, edges: 1, closed: True, violations: 0")
        self.assertEqual(errors, "")

    def test_dot(self):
        output, _ = run("lp_explore", seed_file=fixture_path("rank_one.json"), format="dot")
        self.assertTrue(output.startswith("graph exchange {"))
        self.assertEqual(output.count(" -- "), 1)

    def test_quiver(self):
        output, _ = run("lp_explore", quiver_file=fixture_path("a2_quiver.json"), format="table")
        self.assertIn("closed: True", output)

    def test_budget(self):
        _, errors = run("lp_explore", surface="polygon", params=["k=6"], max_nodes=3)
        self.assertIn("Budget exhausted", errors)

    def test_invalid_budget(self):
        with self.assertRaisesMessage(CommandError, "--max-nodes should be positive, got 0"):
            run("lp_explore", surface="polygon", params=["k=6"], max_nodes=0)

    def test_bad_params(self):
        with self.assertRaisesMessage(CommandError, "Parameters look like KEY=VALUE, got 'k'"):
            run("lp_explore", surface="polygon", params=["k"])

    def test_excluded_surface(self):
        with self.assertRaisesMessage(CommandError, "once-punctured monogon"):
            run("lp_explore", surface="punctured-disk", params=["k=1"])


class VerifyCommandTest(SimpleTestCase):
    def test_worked_examples(self):
        output, _ = run("lp_verify", "paper-examples")
        data = json.loads(output)
        self.assertTrue(data["passed"])
        self.assertEqual(data["rand_seed"], 42)

    def test_m1_table(self):
        output, _ = run("lp_verify", "m1-table", format="table")
        self.assertIn("passed     yes", output)

    def test_rank(self):
        output, _ = run("lp_verify", "rank", params=["samples=50"], rand_seed=7)
        data = json.loads(output)
        self.assertTrue(data["passed"], data["failures"])
        self.assertEqual(data["rand_seed"], 7)

    def test_laurent_on_a_seed_file(self):
        output, _ = run("lp_verify", "laurent", seed_file=fixture_path("rank_one.json"))
        self.assertTrue(json.loads(output)["passed"])

    def test_unknown_suite(self):
        with self.assertRaisesMessage(CommandError, "invalid choice"):
            run("lp_verify", "colours")

    def test_failed_suite(self):
        with self.assertRaisesMessage(CommandError, "Suite laurent failed"):
            run("lp_verify", "laurent", surface="polygon", params=["k=6"], max_nodes=3)
