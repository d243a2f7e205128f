from django.test import SimpleTestCase
from hypothesis import given, settings, strategies as st

from lpalgebra.laurent import (
    IRREDUCIBLE,
    REDUCIBLE,
    UNKNOWN,
    LaurentPoly,
    NotDivisible,
    ParseError,
    UnknownVariable,
    VariableTable,
    arith,
    compose,
    divide_exact,
    evaluate_at_zero,
    gcd,
    involves,
    is_irreducible,
    max_power_dividing,
    parse,
    specialize_to_one,
    strip_monomial,
    substitute,
)

TABLE = VariableTable.build(cluster=("a", "b"), boundary=("X",))


def P(text):
    return parse(text, TABLE)


laurent_polys = st.dictionaries(
    st.tuples(*[st.integers(-2, 2)] * 3), st.integers(-4, 4), max_size=4
).map(lambda terms: LaurentPoly(TABLE, terms))

polynomials = st.dictionaries(
    st.tuples(*[st.integers(0, 2)] * 3), st.integers(-4, 4), max_size=4
).map(lambda terms: LaurentPoly(TABLE, terms))


class VariableTableTest(SimpleTestCase):
    def test_build_orders_roles(self):
        self.assertEqual(TABLE.names, ("a", "b", "X"))
        self.assertEqual(TABLE.cluster_positions, (0, 1))
        self.assertEqual(TABLE.frozen_positions, (2,))
        self.assertEqual(TABLE.role("X"), "boundary-frozen")

    def test_primed_names(self):
        table = TABLE.renamed(0, "a'")
        self.assertEqual(table.names, ("a'", "b", "X"))
        self.assertEqual(parse("a'^2 + b", table).degree("a'"), 2)

    def test_invalid_name(self):
        with self.assertRaisesMessage(ValueError, "Invalid variable name '2x'"):
            VariableTable.build(cluster=("2x",))

    def test_duplicate_names(self):
        with self.assertRaisesMessage(ValueError, "Variable names must be unique"):
            VariableTable.build(cluster=("a",), boundary=("a",))


class ParseTest(SimpleTestCase):
    def test_parse(self):
        F = P("(1 + a)^2 + a*b^2")
        self.assertEqual(F, 1 + 2 * P("a") + P("a^2") + P("a*b^2"))
        self.assertTrue(F.is_polynomial)
        self.assertEqual(F.total_degree(), 3)

    def test_negative_exponent(self):
        F = P("a^(-1)*b + 2")
        self.assertFalse(F.is_polynomial)
        self.assertEqual(F.min_exponents(), (-1, 0, 0))

    def test_leading_sign(self):
        self.assertEqual(P("-a + b"), P("b") - P("a"))
        self.assertEqual(P("(-a)*b"), -P("a*b"))

    def test_unknown_variable(self):
        with self.assertRaisesMessage(UnknownVariable, "Unknown variable 'z' at position 4"):
            P("a + z")

    def test_unexpected_end(self):
        with self.assertRaises(ParseError) as cm:
            P("a + ")
        self.assertEqual(cm.exception.position, 4)

    def test_negative_exponent_of_sum(self):
        with self.assertRaisesMessage(ParseError, "Negative exponent of a non-monomial"):
            P("(1 + a)^(-1)")

    def test_bad_character(self):
        with self.assertRaisesMessage(ParseError, "Unexpected character '/'"):
            P("a / b")

    @given(laurent_polys)
    @settings(max_examples=60, deadline=None)
    def test_printed_polynomials_parse_back(self, F):
        self.assertEqual(P(str(F)), F)


class ArithmeticTest(SimpleTestCase):
    def test_arith(self):
        a, b = P("a"), P("b")
        self.assertEqual(arith("add", a, b), P("a + b"))
        self.assertEqual(arith("sub", a, a), 0)
        self.assertEqual(arith("mul", a, b), P("a*b"))
        self.assertEqual(arith("pow", a + 1, 2), P("a^2 + 2*a + 1"))

    def test_arith_rejects_negative_power(self):
        with self.assertRaisesMessage(ValueError, "pow takes a non-negative integer exponent"):
            arith("pow", P("a"), -1)

    def test_different_tables(self):
        other = VariableTable.build(cluster=("a", "b", "c"))
        with self.assertRaisesMessage(ValueError, "different variable tables"):
            P("a") + parse("a", other)

    @given(laurent_polys, laurent_polys, laurent_polys)
    @settings(max_examples=60, deadline=None)
    def test_ring_axioms(self, F, G, H):
        self.assertEqual(F * (G + H), F * G + F * H)
        self.assertEqual((F * G) * H, F * (G * H))
        self.assertEqual(F - F, 0)

    def test_involves(self):
        self.assertTrue(involves(P("1 + a*b"), "b"))
        self.assertFalse(involves(P("1 + a"), "b"))
        self.assertFalse(involves(P("1 + a + b - b"), "b"))


class SubstituteTest(SimpleTestCase):
    def test_substitute(self):
        self.assertEqual(substitute(P("1 + a*b"), "a", P("X + 1")), P("1 + X*b + b"))

    def test_substitution_may_involve_the_variable(self):
        self.assertEqual(substitute(P("1 + a"), "a", P("a*b")), P("1 + a*b"))

    def test_negative_power_needs_a_unit(self):
        with self.assertRaisesMessage(ValueError, "is not a unit of the Laurent ring"):
            substitute(P("a^(-1)"), "a", P("1 + b"))

    def test_negative_power_of_a_monomial(self):
        self.assertEqual(substitute(P("a^(-1) + b"), "a", P("b^2")), P("b^(-2) + b"))

    def test_compose(self):
        images = (P("a*b"), P("b"), P("1"))
        self.assertEqual(compose(P("a + X*b^(-1)"), images), P("a*b + b^(-1)"))

    def test_evaluate_at_zero(self):
        self.assertEqual(evaluate_at_zero(P("1 + a + b*X"), "a"), P("1 + b*X"))
        with self.assertRaises(ZeroDivisionError):
            evaluate_at_zero(P("a^(-1) + 1"), "a")

    def test_specialize_to_one(self):
        self.assertEqual(specialize_to_one(P("1 + X*b"), {"X"}), P("1 + b"))
        self.assertEqual(specialize_to_one(P("X - 1"), {"X"}), 0)


class DivisionTest(SimpleTestCase):
    def test_divide_exact(self):
        self.assertEqual(divide_exact(P("a^2 - b^2"), P("a + b")), P("a - b"))

    def test_divide_by_monomial(self):
        self.assertEqual(divide_exact(P("(1 + a)^2"), P("b^2")), P("(1 + a)^2 * b^(-2)"))

    def test_not_divisible(self):
        with self.assertRaises(NotDivisible):
            divide_exact(P("1 + a"), P("1 + b"))
        with self.assertRaises(NotDivisible):
            divide_exact(P("a + 1"), P("2*b"))

    def test_divide_by_zero(self):
        with self.assertRaises(ZeroDivisionError):
            divide_exact(P("a"), P("0"))

    @given(polynomials, polynomials)
    @settings(max_examples=40, deadline=None)
    def test_product_divides_back(self, F, G):
        if G.is_zero:
            return
        self.assertEqual(divide_exact(F * G, G), F)

    def test_max_power_dividing(self):
        self.assertEqual(max_power_dividing(P("(1 + a)^3 * b"), P("1 + a")), 3)
        self.assertEqual(max_power_dividing(P("1 + b"), P("1 + a")), 0)

    def test_max_power_of_unit(self):
        with self.assertRaisesMessage(ValueError, "Every power of the unit"):
            max_power_dividing(P("1 + a"), P("a"))

    def test_strip_monomial(self):
        monomial, core = strip_monomial(P("a^2*b + a^3"))
        self.assertEqual(monomial, P("a^2"))
        self.assertEqual(core, P("a + b"))

    def test_strip_monomial_normalizes_sign(self):
        monomial, core = strip_monomial(P("-a^(-1) - b*a^(-1)"))
        self.assertEqual(monomial, P("a^(-1)"))
        self.assertEqual(core, P("1 + b"))

    def test_strip_selected_positions(self):
        monomial, core = strip_monomial(P("a*X + a*b*X"), positions=(0,))
        self.assertEqual(monomial, P("a"))
        self.assertEqual(core, P("X + b*X"))

    def test_gcd(self):
        self.assertEqual(gcd(P("(1 + a)*(1 + b)"), P("(1 + a)*(1 - b)")), P("1 + a"))
        self.assertEqual(gcd(P("1 + a"), P("1 + b")), 1)
        self.assertEqual(gcd(P("a^2*(1 + b)"), P("a*(1 + b)^2")), P("1 + b"))

    def test_gcd_keeps_frozen_content(self):
        cluster = TABLE.cluster_positions
        self.assertEqual(gcd(P("X*(a + b)"), P("X*a"), positions=cluster), P("X"))
        self.assertEqual(gcd(P("X*(a + b)"), P("X*a")), 1)
        self.assertEqual(gcd(P("X^2*(1 + a)"), P("X*(1 + a)*b"), positions=cluster), P("X + X*a"))


class IrreducibilityTest(SimpleTestCase):
    def test_binomial(self):
        self.assertEqual(is_irreducible(P("1 + a*b")).verdict, IRREDUCIBLE)
        self.assertEqual(is_irreducible(P("a + b^3")).verdict, IRREDUCIBLE)

    def test_reducible(self):
        result = is_irreducible(P("a^2 - b^2"))
        self.assertEqual(result.verdict, REDUCIBLE)
        self.assertTrue(result.is_reducible)
        self.assertIn(result.witness, (P("a + b"), P("a - b")))

    def test_reducible_content(self):
        self.assertEqual(is_irreducible(P("2 + 2*a")).verdict, REDUCIBLE)

    def test_factor_search(self):
        self.assertEqual(is_irreducible(P("(1 + a)^2 + a*b^2")).verdict, IRREDUCIBLE)

    def test_budget(self):
        self.assertEqual(is_irreducible(P("1 + a + b^2"), budget=1).verdict, UNKNOWN)

    def test_monomial_is_undefined(self):
        with self.assertRaisesMessage(ValueError, "Irreducibility is undefined"):
            is_irreducible(P("a*b"))
