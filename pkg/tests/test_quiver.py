import numpy as np
from django.test import SimpleTestCase
from hypothesis import given, settings, strategies as st

from lpalgebra.laurent import parse
from lpalgebra.quiver import (
    ARC,
    BOUNDARY_PAIR,
    AntiSymQuiver,
    FrozenVertexError,
    InvalidQuiver,
    bad_path_witness,
    check_prop48,
    column_gcds,
    double_mutate,
    exchange_poly_full,
    exchange_poly_short,
    has_bad_path,
    lp_seed_of_quiver,
    mutate_matrix,
    prop48_conditions,
    quiver_mutate,
    random_antisym_quiver,
    rank,
    relabel,
    shortened,
    shortened_mutation_formula,
)
from lpalgebra.utils import quiver_from_dict

from .utils import load_fixture


def a2_quiver():
    return quiver_from_dict(load_fixture("a2_quiver.json"))


class AntiSymQuiverTest(SimpleTestCase):
    def test_fixture(self):
        Q = a2_quiver()
        self.assertEqual((Q.m, Q.n), (2, 2))
        self.assertEqual(Q.tilde(1), 3)
        self.assertTrue(Q.is_valid)
        self.assertEqual(Q.table.names, ("x0", "x1"))

    def test_shape(self):
        with self.assertRaisesMessage(InvalidQuiver, "Expected a 4x4 matrix, got 2x2"):
            AntiSymQuiver(("x0", "x1"), (ARC, ARC), np.zeros((2, 2)))

    def test_roles(self):
        with self.assertRaisesMessage(InvalidQuiver, "Unknown pair roles: loop"):
            AntiSymQuiver(("x0",), ("loop",), np.zeros((2, 2)))
        with self.assertRaisesMessage(InvalidQuiver, "Arc pairs must come before"):
            AntiSymQuiver(("y0", "x0"), (BOUNDARY_PAIR, ARC), np.zeros((4, 4)))

    def test_matrix_is_read_only(self):
        with self.assertRaises(ValueError):
            a2_quiver().matrix[0, 1] = 5

    def test_not_anti_symmetric(self):
        data = load_fixture("broken_quiver.json")
        Q = AntiSymQuiver(tuple(data["labels"]), tuple(data["roles"]), np.array(data["matrix"]))
        self.assertEqual(Q.violations(), ["matrix is not anti-symmetric"])
        with self.assertRaisesMessage(InvalidQuiver, "Invalid quiver: matrix is not anti-sym"):
            quiver_from_dict(data)

    def test_twin_arrow(self):
        B = np.zeros((2, 2), dtype=np.int64)
        B[0, 1], B[1, 0] = 1, -1
        Q = AntiSymQuiver(("x0",), (ARC,), B)
        self.assertIn("arrow between x0 and its twin", Q.violations())

    def test_equality(self):
        self.assertEqual(a2_quiver(), a2_quiver())
        self.assertEqual(hash(a2_quiver()), hash(a2_quiver()))
        self.assertNotEqual(a2_quiver(), double_mutate(a2_quiver(), 0))


class MutationTest(SimpleTestCase):
    def test_mutate_matrix(self):
        B = np.array([[0, 1], [-1, 0]])
        np.testing.assert_array_equal(mutate_matrix(B, 0), [[0, -1], [1, 0]])

    def test_mutate_matrix_updates(self):
        # a path 0 -> 1 -> 2 gains the arrow 0 -> 2 when mutating at 1
        B = np.array([[0, 1, 0], [-1, 0, 1], [0, -1, 0]])
        np.testing.assert_array_equal(
            mutate_matrix(B, 1), [[0, -1, 1], [1, 0, -1], [-1, 1, 0]]
        )

    def test_quiver_mutate_is_an_involution(self):
        Q = a2_quiver()
        once = Q.with_matrix(quiver_mutate(Q, 1))
        np.testing.assert_array_equal(quiver_mutate(once, 1), Q.matrix)

    def test_quiver_mutate_out_of_range(self):
        with self.assertRaisesMessage(IndexError, "Vertex 4 out of range for 2 pairs"):
            quiver_mutate(a2_quiver(), 4)

    def test_frozen(self):
        rng = np.random.default_rng(0)
        Q = random_antisym_quiver(rng, 1, frozen=1)
        with self.assertRaisesMessage(FrozenVertexError, "Pair y0 is frozen"):
            double_mutate(Q, 1)
        with self.assertRaises(FrozenVertexError):
            exchange_poly_short(Q, 1)

    def test_double_mutate(self):
        Q = double_mutate(a2_quiver(), 0)
        self.assertTrue(Q.is_valid)
        np.testing.assert_array_equal(
            Q.matrix, [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]]
        )
        self.assertEqual(double_mutate(Q, 0), a2_quiver())

    def test_relabel(self):
        Q = relabel(a2_quiver(), 1)
        self.assertTrue(Q.is_valid)
        np.testing.assert_array_equal(shortened(Q)[:, 1], -shortened(a2_quiver())[:, 1])


class ExchangePolynomialTest(SimpleTestCase):
    def test_short(self):
        Q = a2_quiver()
        self.assertEqual(exchange_poly_short(Q, 0), parse("1 + x1", Q.table))
        self.assertEqual(exchange_poly_short(Q, 1), parse("x0 + 1", Q.table))

    def test_full_reads_both_lifts(self):
        Q = a2_quiver()
        self.assertEqual(exchange_poly_full(Q, 0), parse("1 + x1", Q.table))
        self.assertEqual(exchange_poly_full(Q, 2), parse("x1 + 1", Q.table))

    def test_seed(self):
        seed = lp_seed_of_quiver(a2_quiver())
        self.assertEqual(seed.n, 2)
        self.assertTrue(seed.valid)


class BadPathTest(SimpleTestCase):
    def quiver(self, x, y):
        """Two arc pairs with ``b_01 = x`` and ``b_01~ = y``."""
        B = np.zeros((4, 4), dtype=np.int64)
        B[0, 1], B[1, 0] = x, -x
        B[0, 3], B[3, 0] = y, -y
        B[3, 2], B[2, 3] = x, -x
        B[1, 2], B[2, 1] = y, -y
        return AntiSymQuiver(("x0", "x1"), (ARC, ARC), B)

    def test_no_bad_path(self):
        Q = self.quiver(1, 2)
        self.assertTrue(Q.is_valid)
        self.assertFalse(has_bad_path(Q, 0))
        self.assertTrue(double_mutate(Q, 0).is_valid)

    def test_bad_path(self):
        Q = self.quiver(1, -1)
        self.assertTrue(Q.is_valid)
        self.assertEqual(bad_path_witness(Q, 0), 1)
        self.assertIn("arrow between x1 and its twin", double_mutate(Q, 0).violations())

    def test_formula(self):
        Q = self.quiver(1, 2)
        np.testing.assert_array_equal(shortened(Q), [[0, -1], [-3, 0]])
        np.testing.assert_array_equal(shortened_mutation_formula(shortened(Q), 0), [[0, 1], [3, 0]])
        np.testing.assert_array_equal(shortened(double_mutate(Q, 0)), [[0, 1], [3, 0]])

    def test_prop48(self):
        Q = a2_quiver()
        self.assertEqual(prop48_conditions(Q, 0), (True, ""))
        self.assertTrue(check_prop48(Q, 0))
        self.assertTrue(check_prop48(Q, 1))

    def test_prop48_bad_path(self):
        self.assertFalse(prop48_conditions(self.quiver(1, -1), 0)[0])
        self.assertFalse(check_prop48(self.quiver(1, -1), 0))


class LinearAlgebraTest(SimpleTestCase):
    def test_rank(self):
        self.assertEqual(rank([[1, 2], [2, 4]]), 1)
        self.assertEqual(rank(np.eye(3, dtype=np.int64)), 3)
        self.assertEqual(rank([[0, 1], [-1, 0]]), 2)
        self.assertEqual(rank(np.zeros((3, 2), dtype=np.int64)), 0)
        self.assertEqual(rank([[0, 0, 1], [0, 0, 2], [1, 1, 0]]), 2)

    def test_column_gcds(self):
        self.assertEqual(column_gcds([[2, 4], [4, 6]]), [2, 2])
        self.assertEqual(column_gcds([[0, 3], [0, -9]]), [0, 3])

    def test_nonzero_diagonal(self):
        with self.assertRaisesMessage(InvalidQuiver, "nonzero diagonal entry at 0"):
            shortened_mutation_formula([[1, 0], [0, 0]], 0)


class RandomQuiverTest(SimpleTestCase):
    @given(st.integers(0, 2**32 - 1), st.integers(1, 6), st.integers(0, 2))
    @settings(max_examples=80, deadline=None)
    def test_double_mutation_without_bad_path(self, seed, n, frozen):
        rng = np.random.default_rng(seed)
        Q = random_antisym_quiver(rng, n, frozen=frozen)
        self.assertTrue(Q.is_valid, Q.violations())
        for i in range(n):
            if has_bad_path(Q, i):
                continue
            mutated = double_mutate(Q, i)
            self.assertTrue(mutated.is_valid)
            self.assertEqual(rank(shortened(mutated)), rank(shortened(Q)))
            np.testing.assert_array_equal(
                shortened_mutation_formula(shortened(Q), i), shortened(mutated)
            )
