"""
Anti-symmetric quivers on the double cover.

A quiver with ``m`` vertex pairs is a ``2m x 2m`` integer matrix; vertex ``i < m`` and its twin
``i + m`` are the two lifts of one arc or boundary segment. Arcs come first, so the mutable pairs
are ``0 .. n - 1``.
"""
import logging
from dataclasses import dataclass
from functools import reduce
from math import gcd as int_gcd

import numpy as np

from .laurent import BOUNDARY, CLUSTER, LAMINATION, LaurentPoly, VariableTable, normalize_sign
from .lp import (
    InvalidSeed,
    LPStructureError,
    lp_mutate,
    make_seed,
    normalize,
    seeds_equal,
    toggle_prime,
)

logger = logging.getLogger(__name__)

ARC = "arc"
BOUNDARY_PAIR = "boundary"
LAMINATION_PAIR = "lamination"
PAIR_ROLES = {ARC: CLUSTER, BOUNDARY_PAIR: BOUNDARY, LAMINATION_PAIR: LAMINATION}


class InvalidQuiver(ValueError):
    pass


class FrozenVertexError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class AntiSymQuiver:
    labels: tuple
    roles: tuple
    matrix: np.ndarray

    def __post_init__(self):
        labels, roles = tuple(self.labels), tuple(self.roles)
        matrix = np.array(self.matrix, dtype=np.int64)
        m = len(labels)
        if len(roles) != m:
            raise InvalidQuiver("Expected {} roles, got {}".format(m, len(roles)))
        if matrix.shape != (2 * m, 2 * m):
            raise InvalidQuiver(
                "Expected a {0}x{0} matrix, got {1}".format(2 * m, "x".join(map(str, matrix.shape)))
            )
        unknown = set(roles) - set(PAIR_ROLES)
        if unknown:
            raise InvalidQuiver("Unknown pair roles: {}".format(", ".join(sorted(unknown))))
        n = roles.count(ARC)
        if roles[:n] != (ARC,) * n:
            raise InvalidQuiver("Arc pairs must come before boundary and lamination pairs")
        matrix.setflags(write=False)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "roles", roles)
        object.__setattr__(self, "matrix", matrix)

    @property
    def m(self):
        return len(self.labels)

    @property
    def n(self):
        return self.roles.count(ARC)

    def tilde(self, i):
        return (i + self.m) % (2 * self.m)

    def is_mutable(self, i):
        return i % self.m < self.n

    @property
    def table(self):
        return VariableTable(
            tuple((label, PAIR_ROLES[role]) for label, role in zip(self.labels, self.roles))
        )

    def violations(self):
        B, m = self.matrix, self.m
        problems = []
        if not np.array_equal(B, -B.T):
            problems.append("matrix is not skew-symmetric")
        perm = np.concatenate([np.arange(m, 2 * m), np.arange(m)])
        # b_ij == b_{j~ i~}
        if not np.array_equal(B, B[perm][:, perm].T):
            problems.append("matrix is not anti-symmetric")
        for i in range(m):
            if B[i, i + m]:
                problems.append("arrow between {0} and its twin".format(self.labels[i]))
        for p, role in enumerate(self.roles):
            if role != LAMINATION_PAIR:
                continue
            for j in range(self.n):
                if B[p, j] * B[p + m, j] < 0:
                    problems.append(
                        "lamination {} is not sign-coherent at {}".format(
                            self.labels[p], self.labels[j]
                        )
                    )
        return problems

    @property
    def is_valid(self):
        return not self.violations()

    def with_matrix(self, matrix, labels=None):
        return AntiSymQuiver(self.labels if labels is None else labels, self.roles, matrix)

    def __eq__(self, other):
        if not isinstance(other, AntiSymQuiver):
            return NotImplemented
        return (
            self.labels == other.labels
            and self.roles == other.roles
            and np.array_equal(self.matrix, other.matrix)
        )

    def __hash__(self):
        return hash((self.labels, self.roles, self.matrix.tobytes()))

    def __repr__(self):
        return "AntiSymQuiver({}, m={}, n={})".format(", ".join(self.labels), self.m, self.n)


def mutate_matrix(B, k):
    """Matrix mutation at a single vertex ``k``."""
    B = np.asarray(B, dtype=np.int64)
    column, row = B[:, k], B[k, :]
    mutated = B + (np.outer(np.abs(column), row) + np.outer(column, np.abs(row))) // 2
    mutated[k, :] = -B[k, :]
    mutated[:, k] = -B[:, k]
    return mutated


def quiver_mutate(Q, k):
    if not 0 <= k < 2 * Q.m:
        raise IndexError("Vertex {} out of range for {} pairs".format(k, Q.m))
    if not Q.is_mutable(k):
        raise FrozenVertexError("Vertex {} is frozen".format(Q.labels[k % Q.m]))
    return mutate_matrix(Q.matrix, k)


def double_mutate(Q, i):
    """
    Mutate at ``i`` and its twin. Anti-symmetry survives unless there is a path ``k -> i -> k~``;
    the result is returned either way and reports its own :meth:`~AntiSymQuiver.violations`.
    """
    if not 0 <= i < Q.m:
        raise IndexError("Pair {} out of range for {} pairs".format(i, Q.m))
    if not Q.is_mutable(i):
        raise FrozenVertexError("Pair {} is frozen".format(Q.labels[i]))
    result = Q.with_matrix(mutate_matrix(mutate_matrix(Q.matrix, i), Q.tilde(i)))
    if not result.is_valid:
        logger.debug("double mutation at %s: %s", Q.labels[i], "; ".join(result.violations()))
    return result


def relabel(Q, j):
    """Swap which lift of pair ``j`` is called ``j`` and which ``j~``."""
    order = np.arange(2 * Q.m)
    order[j], order[j + Q.m] = j + Q.m, j
    return Q.with_matrix(Q.matrix[order][:, order])


def shortened(Q):
    m, n = Q.m, Q.n
    return Q.matrix[:m, :n] + Q.matrix[m:, :n]


def _binomial(table, column):
    width = len(table)
    plus, minus = [0] * width, [0] * width
    for p, b in enumerate(column):
        if b > 0:
            plus[p % width] += int(b)
        elif b < 0:
            minus[p % width] -= int(b)
    return LaurentPoly.monomial(table, plus) + LaurentPoly.monomial(table, minus)


def exchange_poly_full(Q, j):
    """Binomial read from column ``j`` over all ``2m`` vertices, twins sharing one variable."""
    if not Q.is_mutable(j):
        raise FrozenVertexError("Pair {} is frozen".format(Q.labels[j % Q.m]))
    return _binomial(Q.table, Q.matrix[:, j])


def exchange_poly_short(Q, j):
    if not Q.is_mutable(j):
        raise FrozenVertexError("Pair {} is frozen".format(Q.labels[j % Q.m]))
    return _binomial(Q.table, shortened(Q)[:, j % Q.m])


def bad_path_witness(Q, i):
    """A pair ``k`` with a path ``k -> i -> k~``, or ``None``."""
    B = Q.matrix
    for k in range(2 * Q.m):
        if B[k, i] > 0 and B[i, Q.tilde(k)] > 0:
            return k % Q.m
    return None


def has_bad_path(Q, i):
    return bad_path_witness(Q, i) is not None


def rank(M):
    """Rank over the rationals by fraction-free (Bareiss) elimination."""
    rows = [[int(x) for x in row] for row in np.asarray(M)]
    if not rows or not rows[0]:
        return 0
    height, width = len(rows), len(rows[0])
    r, previous = 0, 1
    for c in range(width):
        pivot = next((p for p in range(r, height) if rows[p][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        for i in range(r + 1, height):
            for j in range(c + 1, width):
                rows[i][j] = (rows[r][c] * rows[i][j] - rows[i][c] * rows[r][j]) // previous
            rows[i][c] = 0
        previous = rows[r][c]
        r += 1
        if r == height:
            break
    return r


def column_gcds(M):
    M = np.asarray(M)
    return [reduce(int_gcd, (abs(int(x)) for x in M[:, c]), 0) for c in range(M.shape[1])]


def shortened_mutation_formula(Bbar, i):
    """
    Shortened matrix after double mutation at ``i``, computed on ``Bbar`` alone.

    Columns ``k`` with ``b_ik * b_ki > 0`` are negated first (relabeling ``k`` and ``k~``) and
    restored afterwards.
    """
    B = np.array(Bbar, dtype=np.int64)
    m, n = B.shape
    if not 0 <= i < n:
        raise IndexError("Column {} out of range for {} mutable pairs".format(i, n))
    if B[i, i]:
        raise InvalidQuiver("Shortened matrix has a nonzero diagonal entry at {}".format(i))
    flipped = [k for k in range(n) if k != i and B[i, k] * B[k, i] > 0]
    B[:, flipped] *= -1

    row, column = B[i, :].copy(), B[:, i].copy()
    mutated = B + np.outer(np.maximum(0, -column), row) + np.outer(column, np.maximum(0, row))
    mutated[i, :] = -row
    mutated[:, i] = -column
    mutated[:, flipped] *= -1
    return mutated


def lp_seed_of_quiver(Q, initial=None, expressions=None):
    return make_seed(
        Q.table,
        [normalize_sign(exchange_poly_short(Q, j)) for j in range(Q.n)],
        initial=initial,
        expressions=expressions,
        strict=False,
    )


def prop48_conditions(Q, i):
    """The conditions under which LP mutation at ``i`` follows the quiver: ``(ok, reason)``."""
    seed = lp_seed_of_quiver(Q)
    if not seed.valid:
        return False, "exchange polynomials are not all irreducible"
    if normalize(seed).polys[i] != seed.exchange[i]:
        return False, "normalization of {} is nontrivial".format(Q.labels[i])
    witness = bad_path_witness(Q, i)
    if witness is not None:
        return False, "path {0} -> {1} -> {0}~".format(Q.labels[witness], Q.labels[i])
    return True, ""


def _quiver_seed_after(Q, i, seed):
    labels = list(Q.labels)
    labels[i] = toggle_prime(labels[i])
    mutated = double_mutate(Q, i)
    mutated = mutated.with_matrix(mutated.matrix, labels=labels)
    expressions = list(seed.expressions)
    x_i = LaurentPoly.variable(seed.table, seed.table.names[i])
    expressions[i] = seed.exchange[i] * x_i**-1
    return lp_seed_of_quiver(mutated, initial=seed.initial, expressions=expressions)


def prop48_agreement(Q, i):
    """
    ``(conditions, agree)``: whether the conditions hold and whether LP mutation of the quiver's
    seed at ``i`` equals the seed of the double-mutated quiver.
    """
    conditions, _ = prop48_conditions(Q, i)
    seed = lp_seed_of_quiver(Q)
    try:
        agree = seeds_equal(lp_mutate(seed, i), _quiver_seed_after(Q, i, seed))
    except (LPStructureError, InvalidSeed) as e:
        logger.debug("LP mutation at %s failed: %s", Q.labels[i], e)
        agree = False
    return conditions, agree


def check_prop48(Q, i):
    conditions, agree = prop48_agreement(Q, i)
    return conditions and agree


def random_antisym_quiver(rng, n, frozen=0, bound=3, labels=None):
    """
    A random anti-symmetric quiver with ``n`` arc pairs and ``frozen`` boundary pairs.

    Each unordered pair ``{p, q}`` draws ``b_pq`` and ``b_pq~`` uniformly from ``[-bound, bound]``;
    the other entries follow from skew- and anti-symmetry. Frozen pairs are not joined.
    """
    m = n + frozen
    B = np.zeros((2 * m, 2 * m), dtype=np.int64)
    for p in range(m):
        for q in range(p + 1, m):
            if p >= n and q >= n:
                continue
            x, y = (int(v) for v in rng.integers(-bound, bound + 1, size=2))
            for a, b, value in ((p, q, x), (p, q + m, y)):
                B[a, b], B[b, a] = value, -value
            # twins
            B[q + m, p + m], B[p + m, q + m] = x, -x
            B[q, p + m], B[p + m, q] = y, -y
    if labels is None:
        labels = ["x{}".format(p) for p in range(n)] + ["y{}".format(p) for p in range(frozen)]
    return AntiSymQuiver(tuple(labels), (ARC,) * n + (BOUNDARY_PAIR,) * frozen, B)
