from django.test import SimpleTestCase

from lpalgebra.checks import SUITES, polygon_triangulations, run_suite
from lpalgebra.utils import RunConfig

from .utils import fixture_path


class TriangulationCountTest(SimpleTestCase):
    def test_catalan_numbers(self):
        self.assertEqual([len(polygon_triangulations(k)) for k in range(4, 8)], [2, 5, 14, 42])


class RunSuiteTest(SimpleTestCase):
    def config(self, **kwargs):
        return RunConfig("verify", **kwargs)

    def test_unknown_suite(self):
        with self.assertRaises(KeyError):
            run_suite("colours", self.config())

    def test_involution_on_a_seed_file(self):
        config = self.config(seed_file=fixture_path("rank_one.json"), params={"samples": "25"})
        report = run_suite("involution", config)
        self.assertEqual(report.checks, 25)
        self.assertTrue(report.passed, report.failures)

    def test_laurent_on_the_pentagon(self):
        report = run_suite("laurent", self.config(surface="polygon", params={"k": "5"}))
        self.assertTrue(report.passed, report.failures)

    def test_isomorphism_on_the_pentagon(self):
        report = run_suite("isomorphism", self.config(surface="polygon", params={"k": "5"}))
        self.assertEqual(report.checks, 2)
        self.assertTrue(report.passed, report.failures)

    def test_rank_checks_every_sample(self):
        report = run_suite("rank", self.config(params={"samples": "40"}))
        self.assertEqual(report.checks, 80)
        self.assertTrue(report.passed, report.failures)

    def test_full_rank(self):
        config = self.config(surface="polygon", params={"k": "5", "samples": "10"})
        report = run_suite("full-rank", config)
        self.assertEqual(report.checks, 22)
        self.assertTrue(report.passed, report.failures)

    def test_every_suite_is_named(self):
        self.assertIn("prop48", SUITES)
        self.assertEqual(len(SUITES), 10)
