"""
Bordered surfaces, their orientation double covers and quasi-triangulation states.

A surface is given combinatorially: oriented edges carrying a parity (``-1`` when the edge
crosses the cross-cap cut) and triangles listed as three consecutive sides. Lifting every triangle
to both sheets gives the double cover, whose oriented triangles define an anti-symmetric quiver.

A :class:`QuasiTriState` stores the quiver of the traditional triangulation. A one-sided closed
curve is recorded as a :class:`OneSided` marker on top of it: the slot of the curve carries the
quiver column of the arc enclosing its Möbius band, and the cluster variable of the curve.
"""
import hashlib
import logging
from collections import defaultdict, deque
from dataclasses import dataclass
from itertools import combinations

import networkx as nx
import numpy as np
import sympy

from .conf import get_lpalgebra_setting
from .graph import explore, labelled_isomorphism
from .laurent import (
    LaurentPoly,
    NotDivisible,
    compose,
    divide_exact,
    normalize_sign,
    strip_monomial,
    substitute,
)
from .lp import (
    InvalidSeed,
    LPStructureError,
    base_name,
    lp_mutate,
    make_seed,
    seeds_equal,
    toggle_prime,
)
from .quiver import (
    ARC,
    BOUNDARY_PAIR,
    LAMINATION_PAIR,
    AntiSymQuiver,
    FrozenVertexError,
    bad_path_witness,
    double_mutate,
    exchange_poly_short,
)
from .reports import Report

logger = logging.getLogger(__name__)

REGION_ARC = "a"
REGION_TO_CURVE = "b"
REGION_BETA = "c"
REGION_CURVE = "alpha"


class InvalidSurface(ValueError):
    pass


class ExcludedSurface(ValueError):
    pass


class FlipError(ValueError):
    pass


class DistinctnessError(ValueError):
    def __init__(self, message, pair):
        self.pair = pair
        super().__init__(message)


@dataclass(frozen=True)
class Edge:
    name: str
    start: str
    end: str
    parity: int = 1
    boundary: bool = False

    @property
    def flip(self):
        return 0 if self.parity == 1 else 1


@dataclass(frozen=True)
class SurfaceSpec:
    """
    A triangulated bordered surface.

    ``triangles`` lists each triangle as three ``(edge name, forward)`` sides, traversed head to
    tail. ``punctures`` names the interior marked points.
    """

    name: str
    edges: tuple
    triangles: tuple
    punctures: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(self.edges))
        object.__setattr__(
            self,
            "triangles",
            tuple(tuple((str(e), bool(f)) for e, f in triangle) for triangle in self.triangles),
        )
        object.__setattr__(self, "punctures", tuple(self.punctures))
        self._validate()

    def _validate(self):
        edges = {}
        for edge in self.edges:
            if edge.name in edges:
                raise InvalidSurface("Edge {} is listed twice".format(edge.name))
            if edge.parity not in (1, -1):
                raise InvalidSurface("Edge {} has parity {}".format(edge.name, edge.parity))
            edges[edge.name] = edge

        uses = defaultdict(int)
        for number, triangle in enumerate(self.triangles):
            if len(triangle) != 3:
                raise InvalidSurface("Triangle {} does not have three sides".format(number))
            product = 1
            for position, (name, forward) in enumerate(triangle):
                if name not in edges:
                    raise InvalidSurface("Triangle {} uses unknown edge {}".format(number, name))
                uses[name] += 1
                product *= edges[name].parity
                following, following_forward = triangle[(position + 1) % 3]
                if following not in edges:
                    continue
                if _head(edges[name], forward) != _tail(edges[following], following_forward):
                    raise InvalidSurface(
                        "Sides {} and {} of triangle {} do not meet".format(name, following, number)
                    )
            if product != 1:
                raise InvalidSurface("Triangle {} has odd parity".format(number))

        for edge in self.edges:
            expected = 1 if edge.boundary else 2
            if uses[edge.name] != expected:
                raise InvalidSurface(
                    "Edge {} appears on {} triangle sides instead of {}".format(
                        edge.name, uses[edge.name], expected
                    )
                )
            if edge.boundary and {edge.start, edge.end} & set(self.punctures):
                raise InvalidSurface("Boundary edge {} ends at a puncture".format(edge.name))

    def edge(self, name):
        for edge in self.edges:
            if edge.name == name:
                return edge
        raise KeyError(name)

    @property
    def arcs(self):
        return tuple(edge for edge in self.edges if not edge.boundary)

    @property
    def boundary(self):
        return tuple(edge for edge in self.edges if edge.boundary)

    @property
    def labels(self):
        return tuple(edge.name for edge in self.arcs + self.boundary)

    @property
    def rank(self):
        return len(self.arcs)

    @property
    def vertices(self):
        seen = {}
        for edge in self.edges:
            seen.setdefault(edge.start, None)
            seen.setdefault(edge.end, None)
        return tuple(seen)

    @property
    def euler_characteristic(self):
        return len(self.vertices) - len(self.edges) + len(self.triangles)


def _tail(edge, forward):
    return edge.start if forward else edge.end


def _head(edge, forward):
    return edge.end if forward else edge.start


@dataclass(frozen=True)
class LiftedTriangle:
    base: int
    sheet: int
    sides: tuple
    corners: tuple
    orientation: int = 0


@dataclass(frozen=True)
class DoubleCover:
    triangles: tuple
    orientable: bool
    euler_characteristic: int


def _lift(spec):
    lifted = []
    for index, triangle in enumerate(spec.triangles):
        for first in (0, 1):
            sides, corners, sheet = [], [], first
            for name, forward in triangle:
                edge = spec.edge(name)
                corners.append((_tail(edge, forward), sheet))
                lifted_edge = (name, sheet if forward else sheet ^ edge.flip)
                sides.append((lifted_edge, 1 if forward else -1))
                sheet ^= edge.flip
            lifted.append(LiftedTriangle(index, first, tuple(sides), tuple(corners)))
    return lifted


def double_cover(spec):
    """
    Lift ``spec`` to its orientation double cover and orient the lifted triangles.

    Raises :class:`InvalidSurface` when the lift is not a surface (a vertex link falls apart) or
    cannot be oriented with the two lifts of each triangle oriented oppositely.
    """
    lifted = _lift(spec)
    occurrences = defaultdict(list)
    for t, triangle in enumerate(lifted):
        for position, (lifted_edge, direction) in enumerate(triangle.sides):
            occurrences[lifted_edge].append((t, position, direction))

    adjacency = nx.Graph()
    adjacency.add_nodes_from(range(len(lifted)))
    corners = nx.Graph()
    for t, triangle in enumerate(lifted):
        corners.add_nodes_from((t, c) for c in range(3))
    for uses in occurrences.values():
        if len(uses) != 2:
            continue
        (t1, p1, d1), (t2, p2, d2) = uses
        adjacency.add_edge(t1, t2)
        ends = []
        for t, p, d in uses:
            tail, head = (t, p), (t, (p + 1) % 3)
            ends.append((tail, head) if d == 1 else (head, tail))
        corners.add_edge(ends[0][0], ends[1][0])
        corners.add_edge(ends[0][1], ends[1][1])

    vertices = 0
    for component in nx.connected_components(corners):
        labels = {lifted[t].corners[c] for t, c in component}
        if len(labels) != 1:
            raise InvalidSurface("Lifted corners {} are glued together".format(sorted(labels)))
        vertices += 1
    lifted_vertices = {corner for triangle in lifted for corner in triangle.corners}
    if vertices != len(lifted_vertices):
        raise InvalidSurface(
            "A vertex link of the double cover of {} is not connected".format(spec.name)
        )
    if len(lifted_vertices) != 2 * len(spec.vertices):
        raise InvalidSurface("Some marked point of {} lies on no triangle".format(spec.name))

    euler = vertices - 2 * len(spec.edges) + 2 * len(spec.triangles)
    if euler != 2 * spec.euler_characteristic:
        raise InvalidSurface(
            "Double cover of {} has the wrong Euler characteristic".format(spec.name)
        )

    components = nx.number_connected_components(adjacency)
    if components > 2:
        raise InvalidSurface("Surface {} is not connected".format(spec.name))

    orientation = [0] * len(lifted)

    def assign(t, value):
        for u, want in ((t, value), (t ^ 1, -value)):
            if orientation[u] == 0:
                orientation[u] = want
                queue.append(u)
            elif orientation[u] != want:
                raise InvalidSurface("Double cover of {} cannot be oriented".format(spec.name))

    queue = deque()
    for start in range(len(lifted)):
        if orientation[start]:
            continue
        assign(start, 1)
        while queue:
            t = queue.popleft()
            for position, (lifted_edge, direction) in enumerate(lifted[t].sides):
                for u, other, other_direction in occurrences[lifted_edge]:
                    if (u, other) == (t, position):
                        continue
                    assign(u, -orientation[t] * direction * other_direction)

    triangles = tuple(
        LiftedTriangle(tr.base, tr.sheet, tr.sides, tr.corners, orientation[t])
        for t, tr in enumerate(lifted)
    )
    return DoubleCover(triangles, components == 2, euler)


def surface_quiver(spec, cover=None):
    """Quiver of the lifted triangulation: arrows run between consecutive sides of each
    counter-clockwise lifted triangle."""
    if cover is None:
        cover = double_cover(spec)
    labels = spec.labels
    m, n = len(labels), spec.rank
    index = {name: p for p, name in enumerate(labels)}
    B = np.zeros((2 * m, 2 * m), dtype=np.int64)
    for triangle in cover.triangles:
        ids = [index[name] + sheet * m for (name, sheet), _ in triangle.sides]
        if triangle.orientation < 0:
            ids = [ids[0], ids[2], ids[1]]
        for x, y in zip(ids, ids[1:] + ids[:1]):
            if x == y or (x % m >= n and y % m >= n):
                continue
            B[x, y] += 1
            B[y, x] -= 1
    return AntiSymQuiver(labels, (ARC,) * n + (BOUNDARY_PAIR,) * (m - n), B)


@dataclass(frozen=True)
class OneSided:
    alpha: int
    beta: int
    alphastar: int


@dataclass(frozen=True)
class QuasiTriState:
    quiver: AntiSymQuiver
    initial: object
    lengths: tuple
    onesided: tuple = ()
    surface: str = ""

    @property
    def n(self):
        return self.quiver.n

    @property
    def labels(self):
        return self.quiver.labels

    @property
    def is_triangulation(self):
        return not self.onesided

    def record_of(self, v):
        for record in self.onesided:
            if v in (record.alpha, record.beta):
                return record
        return None

    def slot(self, v):
        if isinstance(v, int):
            return v
        names = self.labels[: self.n]
        if v in names:
            return names.index(v)
        matches = [i for i, name in enumerate(names) if base_name(name) == base_name(v)]
        if len(matches) != 1:
            raise FlipError("Unknown quasi-arc {!r}".format(v))
        return matches[0]

    def images(self):
        frozen = self.initial.names[self.n :]
        return self.lengths + tuple(LaurentPoly.variable(self.initial, name) for name in frozen)


def initial_state(spec, lamination=True, signs=None):
    quiver = surface_quiver(spec)
    problems = quiver.violations()
    if problems:
        raise InvalidSurface("Quiver of {}: {}".format(spec.name, "; ".join(problems)))
    table = quiver.table
    lengths = tuple(LaurentPoly.variable(table, name) for name in table.names[: quiver.n])
    state = QuasiTriState(quiver, table, lengths, (), spec.name)
    if lamination:
        state = attach_principal_lamination(state, signs, spec)
    return state


def _lamination_signs(signs, n):
    if signs is None:
        signs = get_lpalgebra_setting("LPALGEBRA_LAMINATION_SIGN")
    if isinstance(signs, int):
        signs = [signs] * n
    signs = list(signs)
    if len(signs) != n or any(s not in (1, -1) for s in signs):
        raise ValueError("Expected {} lamination signs, each 1 or -1".format(n))
    return signs


def _companions(spec):
    """Arc slot of a one-sided loop at a puncture -> lowest incident two-sided arc slot."""
    arcs = spec.arcs
    companions = {}
    for j, edge in enumerate(arcs):
        if edge.start != edge.end or edge.parity != -1 or edge.start not in spec.punctures:
            continue
        for k, other in enumerate(arcs):
            if k != j and other.parity == 1 and edge.start in (other.start, other.end):
                companions[j] = k
                break
    return companions


@dataclass(frozen=True)
class _Segment:
    """A piece of a lamination inside triangle ``t``, entering and leaving through sides."""

    t: int
    entry: int
    exit: int


def _fan(spec, vertex):
    """
    Segments circling the boundary marked point ``vertex`` from one boundary edge to the other,
    one per triangle corner at ``vertex``.
    """
    boundary = {edge.name for edge in spec.boundary}
    uses = defaultdict(list)
    start = None
    for t, triangle in enumerate(spec.triangles):
        for c, (name, forward) in enumerate(triangle):
            uses[name].append((t, c))
            if start is None and name in boundary:
                edge = spec.edge(name)
                if _tail(edge, forward) == vertex:
                    start = _Segment(t, c, (c - 1) % 3)
                elif _head(edge, forward) == vertex:
                    start = _Segment(t, c, (c + 1) % 3)
    if start is None:
        raise InvalidSurface("{} is not a marked point on the boundary".format(vertex))

    fan = [start]
    while len(fan) <= 3 * len(spec.triangles):
        segment = fan[-1]
        name, forward = spec.triangles[segment.t][segment.exit]
        if name in boundary:
            return fan
        at_tail = segment.entry == (segment.exit - 1) % 3
        ((u, k),) = [use for use in uses[name] if use != (segment.t, segment.exit)]
        corner = k if (at_tail == forward) == spec.triangles[u][k][1] else (k + 1) % 3
        fan.append(_Segment(u, k, (k - 1) % 3 if corner == k else (k + 1) % 3))
    raise InvalidSurface("Corners around {} do not close up".format(vertex))


def _boundary_loop_curve(spec, edge):
    """
    Lamination of a one-sided loop at a boundary point: it leaves the boundary on one side of the
    point, crosses the loop once, runs along it and reaches the boundary on the other side.
    """
    fan = _fan(spec, edge.start)
    crossings = [p for p, s in enumerate(fan) if spec.triangles[s.t][s.exit][0] == edge.name]
    if len(crossings) != 2:
        raise InvalidSurface("Loop {} does not meet its endpoint twice".format(edge.name))
    first = fan[crossings[0] + 1]
    along = _Segment(first.t, first.entry, 3 - first.entry - first.exit)
    if along not in fan[crossings[1] + 1 :]:
        raise InvalidSurface("No lamination runs along {}".format(edge.name))
    return fan[: crossings[0] + 1] + fan[fan.index(along, crossings[1] + 1) :]


def _at_positive_start(triangle, side, other):
    """Whether the corner between ``side`` and ``other`` is where ``side`` starts."""
    at_tail = other == (side - 1) % 3
    return at_tail if triangle.orientation > 0 else not at_tail


def _shear_row(spec, cover, curve, sheet):
    """
    Shear coordinates of the lift of ``curve`` starting on ``sheet``, in quiver order.

    A crossing whose two corners lie at different ends of the crossed arc counts ``-1`` when both
    corners are where the arc starts counterclockwise and ``+1`` when both are where it ends.
    """
    m = len(spec.labels)
    index = {name: p for p, name in enumerate(spec.labels)}
    triangles = cover.triangles
    row = np.zeros(2 * m, dtype=np.int64)
    current = 2 * curve[0].t + sheet
    for segment, following in zip(curve, curve[1:]):
        lifted_edge = triangles[current].sides[segment.exit][0]
        (target,) = [
            u
            for u in (2 * following.t, 2 * following.t + 1)
            if triangles[u].sides[following.entry][0] == lifted_edge
            and (u, following.entry) != (current, segment.exit)
        ]
        before = _at_positive_start(triangles[current], segment.exit, segment.entry)
        after = _at_positive_start(triangles[target], following.entry, following.exit)
        if before == after:
            name, lift = lifted_edge
            row[index[name] + lift * m] += -1 if before else 1
        current = target
    return row


def _is_boundary_loop(spec, edge):
    return edge.start == edge.end and edge.parity == -1 and edge.start not in spec.punctures


def attach_principal_lamination(state, signs=None, spec=None):
    """
    Append one lamination pair per arc, adding weight ``±1`` to its own arc (and to a companion
    arc for one-sided loops at punctures when ``spec`` is given).

    With ``spec``, a one-sided loop at a boundary point instead gets the shear coordinates of the
    curve that crosses it once and then runs along it; ``signs`` does not apply to it.
    """
    if not state.is_triangulation:
        raise InvalidSurface("Principal laminations attach to triangulations only")
    Q = state.quiver
    n, m = Q.n, Q.m
    variables = tuple(LaurentPoly.variable(state.initial, name) for name in state.initial.names[:n])
    if state.initial != Q.table or state.lengths != variables:
        raise InvalidSurface("Principal laminations attach to an initial state")
    signs = _lamination_signs(signs, n)
    companions = _companions(spec) if spec is not None else {}
    loops = {}
    if spec is not None:
        cover = None
        for j, edge in enumerate(spec.arcs):
            if _is_boundary_loop(spec, edge):
                cover = cover or double_cover(spec)
                curve = _boundary_loop_curve(spec, edge)
                loops[j] = [_shear_row(spec, cover, curve, sheet) for sheet in (0, 1)]

    size = m + n
    embed = [v if v < m else v - m + size for v in range(2 * m)]
    B = np.zeros((2 * size, 2 * size), dtype=np.int64)
    B[np.ix_(embed, embed)] = Q.matrix
    for j in range(n):
        L, s = m + j, signs[j]
        if j in loops:
            for row, p in zip(loops[j], (L, L + size)):
                B[p, embed], B[embed, p] = row, -row
            continue
        for target in (j, companions[j]) if j in companions else (j,):
            B[L, target], B[target, L] = s, -s
            B[L + size, target + size], B[target + size, L + size] = -s, s

    labels = Q.labels + tuple("L_" + base_name(Q.labels[j]) for j in range(n))
    quiver = AntiSymQuiver(labels, Q.roles + (LAMINATION_PAIR,) * n, B)
    problems = quiver.violations()
    if problems:
        raise InvalidSurface("Principal lamination breaks the quiver: {}".format(problems[0]))
    table = quiver.table
    lengths = tuple(LaurentPoly.variable(table, name) for name in labels[:n])
    return QuasiTriState(quiver, table, lengths, (), state.surface)


def exchange_polys(state):
    """
    Exchange polynomial of every quasi-arc, indexed by slot.

    Arcs read their shortened quiver column with each enclosing arc ``α*`` replaced by the product
    ``αβ``. A one-sided curve ``α`` reads the column of ``α*``. Its partner ``β`` reads its
    column after mutating at ``α*``, with ``α*`` there replaced by ``F_α / α`` and the
    denominator cleared.
    """
    Q = state.quiver
    table = Q.table
    names = table.names
    polys = [None] * Q.n
    for record in state.onesided:
        a, k = record.alpha, record.beta
        x_a = LaurentPoly.variable(table, names[a])
        F_alpha = exchange_poly_short(Q, a)
        H = substitute(exchange_poly_short(double_mutate(Q, a), k), names[a], F_alpha * x_a**-1)
        polys[a] = F_alpha
        polys[k] = strip_monomial(H, positions=(a,))[1]
    for j in range(Q.n):
        if polys[j] is not None:
            continue
        F = exchange_poly_short(Q, j)
        for record in state.onesided:
            x_a = LaurentPoly.variable(table, names[record.alphastar])
            x_b = LaurentPoly.variable(table, names[record.beta])
            F = substitute(F, names[record.alphastar], x_a * x_b)
        polys[j] = F
    return tuple(normalize_sign(F) for F in polys)


def lp_seed_of(state):
    polys = exchange_polys(state)
    for i, j in combinations(range(len(polys)), 2):
        if polys[i] == polys[j]:
            pair = (state.labels[i], state.labels[j])
            raise DistinctnessError(
                "Quasi-arcs {} and {} share the exchange polynomial {}".format(*pair, polys[i]),
                pair,
            )
    return make_seed(
        state.quiver.table, polys, initial=state.initial, expressions=state.lengths, strict=False
    )


def flip_region(state, v):
    """Which transition a flip at ``v`` (a slot or a quasi-arc name) performs."""
    v = state.slot(v)
    record = state.record_of(v)
    if record is not None:
        return REGION_CURVE if v == record.alpha else REGION_BETA
    if bad_path_witness(state.quiver, v) is not None:
        return REGION_TO_CURVE
    return REGION_ARC


def flip(state, v):
    Q = state.quiver
    v = state.slot(v)
    if not 0 <= v < Q.m:
        raise FlipError("Slot {} out of range".format(v))
    if not Q.is_mutable(v):
        raise FlipError("{} is not a quasi-arc".format(Q.labels[v]))

    region = flip_region(state, v)
    F = exchange_polys(state)[v]
    denominator = LaurentPoly.one(Q.table)
    records = list(state.onesided)
    if region == REGION_CURVE:
        records.remove(state.record_of(v))
        quiver = double_mutate(Q, v)
    elif region == REGION_BETA:
        a = state.record_of(v).alpha
        quiver = double_mutate(double_mutate(double_mutate(Q, a), v), a)
        denominator = LaurentPoly.variable(Q.table, Q.labels[a]) ** 2
    elif region == REGION_TO_CURVE:
        k = bad_path_witness(Q, v)
        if not Q.is_mutable(k):
            raise FlipError("{} flips across the frozen {}".format(Q.labels[v], Q.labels[k]))
        if any({v, k} & {r.alpha, r.beta} for r in records):
            raise FlipError("{} flips onto an occupied one-sided region".format(Q.labels[v]))
        quiver = double_mutate(Q, v)
        records.append(OneSided(alpha=v, beta=k, alphastar=v))
    else:
        quiver = double_mutate(Q, v)

    images = state.images()
    numerator = compose(F, images)
    try:
        length = divide_exact(numerator, compose(denominator, images) * state.lengths[v])
    except NotDivisible:
        raise FlipError(
            "Flip of {} does not give a Laurent polynomial: {}".format(Q.labels[v], numerator)
        ) from None

    labels = list(Q.labels)
    labels[v] = toggle_prime(labels[v])
    lengths = list(state.lengths)
    lengths[v] = length
    logger.debug("flipped %s (%s)", Q.labels[v], region)
    return QuasiTriState(
        quiver.with_matrix(quiver.matrix, labels=labels),
        state.initial,
        tuple(lengths),
        tuple(sorted(records, key=lambda r: r.alpha)),
        state.surface,
    )


def state_key(state):
    text = "\n".join(sorted(str(length) for length in state.lengths))
    return hashlib.sha1(text.encode("utf-8")).hexdigest()


def state_label(state):
    return tuple(sorted(str(length) for length in state.lengths))


def _flips(state):
    results = []
    for v in range(state.n):
        try:
            results.append((v, flip(state, v)))
        except (FlipError, FrozenVertexError, LPStructureError, InvalidSeed) as e:
            results.append((v, str(e)))
    return results


def quasi_flip_graph(state, limit=None, depth=None, jobs=None):
    return explore(
        state, state_key, _flips, state_label, max_nodes=limit, max_depth=depth, jobs=jobs
    )


def _bbar(quiver, row, column):
    return int(quiver.matrix[row, column] + quiver.matrix[row + quiver.m, column])


def _laminations(quiver):
    return [p for p, role in enumerate(quiver.roles) if role == LAMINATION_PAIR]


def _restriction_labeling(state, record):
    Q = state.quiver
    m, a, k = Q.m, record.alphastar, record.beta
    B = Q.matrix
    for beta in (k, k + m):
        for alphastar in (a, a + m):
            holds = True
            for L in _laminations(Q):
                Lt = L + m
                if _bbar(Q, L, beta) < 0:
                    holds = False
                    break
                above = B[L, alphastar] >= B[Lt, beta] and B[Lt, alphastar] >= B[L, beta]
                below = B[L, alphastar] <= B[Lt, beta] and B[Lt, alphastar] <= B[L, beta]
                if not (above or below):
                    holds = False
                    break
            if holds:
                return beta, alphastar
    return None


def lamination_restriction_holds(state, record):
    """
    Whether some labelling of the lifts of ``β`` and ``α*`` gives ``b̄_Lβ >= 0`` for every
    lamination together with the paired inequalities between ``L``, ``L~``, ``β`` and ``α*``.
    """
    return _restriction_labeling(state, record) is not None


def exceptional_relations_hold(state, record):
    """
    Compare lamination rows before and after mutating at ``α*`` and after ``μ_α* μ_β μ_α*``.
    The sides ``x`` of the quadrilateral around ``α*`` are compared up to their labelling.
    """
    labeling = _restriction_labeling(state, record)
    if labeling is None:
        return False
    beta, alphastar = labeling
    Q = state.quiver
    m, a, k = Q.m, record.alphastar, record.beta
    once = double_mutate(Q, a)
    thrice = double_mutate(double_mutate(once, k), a)
    sides = [
        x
        for x in range(Q.n)
        if x not in (a, k) and any(Q.matrix[p, q] for p in (x, x + m) for q in (a, a + m))
    ]
    for L in _laminations(Q):
        b_alphastar, b_beta = _bbar(Q, L, alphastar), _bbar(Q, L, beta)
        if _bbar(once, L, alphastar) != -b_alphastar:
            return False
        if _bbar(once, L, beta) != b_beta - abs(b_alphastar):
            return False
        for x in sides:
            increment = abs(_bbar(once, L, x) - _bbar(Q, L, x))
            if increment not in (max(0, b_alphastar), max(0, -b_alphastar)):
                return False
        if _bbar(thrice, L, alphastar) != b_alphastar or _bbar(thrice, L, beta) != -b_beta:
            return False
    return True


def verify_flip_lp(state, depth=None, limit=None, jobs=None):
    """
    Explore the flip graph of ``state`` and check, at every expanded state and every quasi-arc,
    that LP mutation of the state's seed gives the seed of the flipped state.
    """
    report = Report("flip-lp")
    graph = quasi_flip_graph(state, limit=limit, depth=depth, jobs=jobs)
    for key, current in graph.payloads():
        data = graph.graph.nodes[key]
        if depth is not None and data["depth"] >= depth:
            continue
        path = data["path"]
        try:
            seed = lp_seed_of(current)
        except DistinctnessError as e:
            report.check("distinctness", False, path, e)
            continue
        for v in range(current.n):
            step = path + (v,)
            try:
                mutated = lp_mutate(seed, v)
            except (LPStructureError, InvalidSeed) as e:
                report.check("lp-mutation", False, step, e)
                continue
            try:
                flipped = lp_seed_of(flip(current, v))
            except (FlipError, DistinctnessError, LPStructureError) as e:
                report.check("flip", False, step, e)
                continue
            report.check("flip-lp", seeds_equal(mutated, flipped), step)
        for record in current.onesided:
            restricted = lamination_restriction_holds(current, record)
            report.check("lamination-restriction", restricted, path)
            report.check("exceptional-relations", exceptional_relations_hold(current, record), path)
    for violation in graph.violations:
        report.check("flip", False, violation["path"], violation["detail"])
    return report


def is_isomorphic(flip_graph, lp_graph):
    return labelled_isomorphism(flip_graph, lp_graph)


def m1_tropical_table():
    """
    Tropical lambda lengths of the elementary laminations of the once-marked Möbius band, with
    the check ``c(α) c(β) = c(α*)``. The last row is the curve bounding the band, which is
    excluded from laminations and fails the check.
    """
    q = sympy.Symbol("q", positive=True)
    half = q ** sympy.Rational(-1, 2)
    rows = [
        ("elementary-1", half, half, q**-1, True),
        ("elementary-2", sympy.Integer(1), q**-1, q**-1, True),
        ("boundary-curve", half, half, sympy.Integer(1), False),
    ]
    table = []
    for name, alpha, beta, alphastar, expected in rows:
        holds = sympy.simplify(alpha * beta - alphastar) == 0
        table.append(
            {
                "lamination": name,
                "alpha": alpha,
                "beta": beta,
                "alphastar": alphastar,
                "holds": holds,
                "expected": expected,
            }
        )
    return table
