from django.core.exceptions import ImproperlyConfigured
from django.test import SimpleTestCase, override_settings

from lpalgebra.conf import DEFAULTS, check_settings, get_lpalgebra_setting


class SettingsTest(SimpleTestCase):
    def test_defaults(self):
        self.assertEqual(get_lpalgebra_setting("LPALGEBRA_IRREDUCIBILITY_BUDGET"), 12)
        self.assertEqual(get_lpalgebra_setting("LPALGEBRA_FRESH_VARIABLE"), "__t")
        self.assertIsNone(get_lpalgebra_setting("LPALGEBRA_MAX_DEPTH"))

    @override_settings(LPALGEBRA_JOBS=3)
    def test_project_setting_wins(self):
        self.assertEqual(get_lpalgebra_setting("LPALGEBRA_JOBS"), 3)

    def test_unknown_setting(self):
        with self.assertRaises(KeyError):
            get_lpalgebra_setting("LPALGEBRA_COLOUR")

    def test_defaults_pass(self):
        with self.settings(**DEFAULTS):
            check_settings()


class CheckSettingsTest(SimpleTestCase):
    @override_settings(LPALGEBRA_MAX_NODES=0)
    def test_max_nodes_positive(self):
        message = "LPALGEBRA_MAX_NODES should be a positive integer, got 0"
        with self.assertRaisesMessage(ImproperlyConfigured, message):
            check_settings()

    @override_settings(LPALGEBRA_JOBS="4")
    def test_jobs_is_an_integer(self):
        message = "LPALGEBRA_JOBS should be a positive integer, got '4'"
        with self.assertRaisesMessage(ImproperlyConfigured, message):
            check_settings()

    @override_settings(LPALGEBRA_IRREDUCIBILITY_BUDGET=True)
    def test_budget_is_not_a_bool(self):
        with self.assertRaisesMessage(ImproperlyConfigured, "LPALGEBRA_IRREDUCIBILITY_BUDGET"):
            check_settings()

    @override_settings(LPALGEBRA_MAX_DEPTH=-2)
    def test_max_depth(self):
        message = "LPALGEBRA_MAX_DEPTH should be a positive integer, got -2"
        with self.assertRaisesMessage(ImproperlyConfigured, message):
            check_settings()

    @override_settings(LPALGEBRA_MAX_DEPTH=4)
    def test_max_depth_may_be_set(self):
        check_settings()

    @override_settings(LPALGEBRA_RANDOM_SEED="seed")
    def test_random_seed(self):
        message = "LPALGEBRA_RANDOM_SEED should be an integer"
        with self.assertRaisesMessage(ImproperlyConfigured, message):
            check_settings()

    @override_settings(LPALGEBRA_LAMINATION_SIGN=0)
    def test_lamination_sign(self):
        message = "LPALGEBRA_LAMINATION_SIGN should be either 1 or -1"
        with self.assertRaisesMessage(ImproperlyConfigured, message):
            check_settings()

    @override_settings(LPALGEBRA_LAMINATION_SIGN=-1)
    def test_negative_lamination_sign(self):
        check_settings()

    @override_settings(LPALGEBRA_FRESH_VARIABLE="2t")
    def test_fresh_variable(self):
        message = "LPALGEBRA_FRESH_VARIABLE should be a valid variable name, got '2t'"
        with self.assertRaisesMessage(ImproperlyConfigured, message):
            check_settings()
