"""
Verification suites run by ``lp_verify``.

Every suite takes a :class:`~lpalgebra.utils.RunConfig` and returns a
:class:`~lpalgebra.reports.Report`. Random suites draw from ``numpy.random.default_rng`` seeded
with ``config.rand_seed``, which is echoed in the report.
"""
import logging
from itertools import combinations

import numpy as np

from .catalogue import build_catalogue
from .laurent import LaurentPoly, VariableTable, parse
from .lp import (
    InvalidSeed,
    LPStructureError,
    exchange_graph,
    laurent_check,
    lp_mutate,
    make_seed,
    normalize,
    seeds_equal,
    specialization_commutes,
    specialize,
)
from .quiver import (
    LAMINATION_PAIR,
    FrozenVertexError,
    column_gcds,
    double_mutate,
    has_bad_path,
    prop48_agreement,
    random_antisym_quiver,
    rank,
    shortened,
    shortened_mutation_formula,
)
from .reports import Report
from .surface import (
    DistinctnessError,
    is_isomorphic,
    lp_seed_of,
    m1_tropical_table,
    quasi_flip_graph,
    verify_flip_lp,
)
from .utils import load_json, seed_from_dict

logger = logging.getLogger(__name__)

DEFAULT_SURFACES = (("polygon", {"k": 6}), ("mobius", {"k": 1}), ("mobius", {"k": 2}))

# infinite mutation class, explored under this node budget only
BUDGETED_SURFACES = (("annulus", {"a": 1, "b": 1}, 30),)

DEFAULT_SAMPLES = {"involution": 500, "rank": 1000, "full-rank": 200}
# Upper bound on random quivers drawn per qualifying rank sample.
RANK_DRAWS = 20


def polygon_triangulations(k):
    """All triangulations of a convex ``k``-gon, as sets of non-crossing diagonals."""
    diagonals = [(a, b) for a, b in combinations(range(k), 2) if 1 < b - a < k - 1]

    def cross(first, second):
        (a, b), (c, d) = first, second
        return a < c < b < d or c < a < d < b

    return [
        frozenset(chosen)
        for chosen in combinations(diagonals, k - 3)
        if not any(cross(p, q) for p, q in combinations(chosen, 2))
    ]


def _samples(config, suite):
    return int(config.params.get("samples", DEFAULT_SAMPLES[suite]))


def _surfaces(config):
    if config.surface:
        return [(config.surface, dict(config.params))]
    return [(name, dict(params)) for name, params in DEFAULT_SURFACES]


def _states(config):
    for name, params in _surfaces(config):
        label = "{}({})".format(name, ",".join("{}={}".format(*item) for item in params.items()))
        yield label, name, params, build_catalogue(name, params)


def _seeds(config):
    if config.seed_file:
        yield config.seed_file, seed_from_dict(load_json(config.seed_file))
        return
    for label, _, _, state in _states(config):
        yield label, lp_seed_of(state)


def _graph(seed, config, limit=None):
    return exchange_graph(
        seed,
        limit=limit or config.max_nodes,
        depth=config.depth,
        jobs=config.jobs,
    )


def _flip_graph(state, config):
    return quasi_flip_graph(state, limit=config.max_nodes, depth=config.depth, jobs=config.jobs)


def check_laurent(config):
    """Every cluster variable of every explored seed is a Laurent polynomial in the initial seed."""
    report = Report("laurent", config.rand_seed)
    if config.seed_file:
        graph = _graph(seed_from_dict(load_json(config.seed_file)), config)
        report.check("closed", graph.closed, (config.seed_file,))
        return report.merge(laurent_check(graph))

    for label, name, params, state in _states(config):
        graph = _graph(lp_seed_of(state), config)
        report.check("closed", graph.closed, (label,))
        report.merge(laurent_check(graph))
        if name == "polygon":
            expected = len(polygon_triangulations(int(params["k"])))
            report.check(
                "triangulations",
                graph.number_of_nodes() == expected,
                (label,),
                "{} triangulations, {} seeds".format(expected, graph.number_of_nodes()),
            )

    if not config.surface:
        for name, params, budget in BUDGETED_SURFACES:
            graph = _graph(lp_seed_of(build_catalogue(name, params)), config, limit=budget)
            report.merge(laurent_check(graph))
    return report


def check_involution(config):
    """Mutating twice in the same direction gives back the seed, up to sign."""
    report = Report("involution", config.rand_seed)
    rng = np.random.default_rng(config.rand_seed)
    pool = []
    for label, seed in _seeds(config):
        graph = _graph(seed, config)
        for key in sorted(graph.graph.nodes):
            pool.append((label, graph.path(key), graph.payload(key)))

    for _ in range(_samples(config, "involution")):
        label, path, seed = pool[int(rng.integers(len(pool)))]
        i = int(rng.integers(seed.n))
        step = (label,) + tuple(path) + (i, i)
        try:
            back = lp_mutate(lp_mutate(seed, i), i)
        except (LPStructureError, InvalidSeed) as e:
            report.check("involution", False, step, e)
            continue
        report.check("involution", seeds_equal(back, seed), step)
    return report


def check_rank(config):
    """
    Random anti-symmetric quivers without a path ``k -> i -> k~``: double mutation at ``i``
    preserves the rank of the shortened matrix, and the shortened formula gives the same matrix.
    """
    report = Report("rank", config.rand_seed)
    rng = np.random.default_rng(config.rand_seed)
    wanted, checked, draws = _samples(config, "rank"), 0, 0
    while checked < wanted and draws < RANK_DRAWS * wanted:
        draws += 1
        n = int(rng.integers(1, 7))
        frozen = int(rng.integers(0, 3))
        Q = random_antisym_quiver(rng, n, frozen=frozen, bound=3)
        i = int(rng.integers(n))
        if has_bad_path(Q, i):
            continue
        checked += 1
        before = shortened(Q)
        after = shortened(double_mutate(Q, i))
        path = (draws, i)
        report.check(
            "rank", rank(before) == rank(after), path, "{} -> {}".format(rank(before), rank(after))
        )
        report.check(
            "formula",
            np.array_equal(shortened_mutation_formula(before, i), after),
            path,
            before.tolist(),
        )
    logger.info("rank: skipped %d quivers with a path through the twin", draws - checked)
    if checked < wanted:
        report.check("samples", False, (), "{} of {} quivers drawn".format(checked, wanted))
    return report


def check_flip_lp(config):
    report = Report("flip-lp", config.rand_seed)
    for _, _, _, state in _states(config):
        report.merge(
            verify_flip_lp(state, depth=config.depth, limit=config.max_nodes, jobs=config.jobs)
        )
    return report


def _example_table():
    return VariableTable.build(cluster=("a", "b", "c"))


def _check_normalization_example(report):
    table = _example_table()
    exchange = [parse(text, table) for text in ("1 + b*c", "1 + a", "(1 + a)^2 + a*b^2")]
    seed = make_seed(table, exchange)
    hats = normalize(seed).polys
    b_squared = LaurentPoly.variable(table, "b") ** 2
    report.check("normalization", hats[:2] == seed.exchange[:2], ("a", "b"))
    report.check(
        "normalization", hats[2] == seed.exchange[2] * b_squared**-1, ("c",), str(hats[2])
    )
    return seed


def _check_mutation_example(report, seed):
    mutated = lp_mutate(seed, 1)
    table = mutated.table
    expected = make_seed(
        table,
        [parse(text, table) for text in ("b' + c", "1 + a", "b'^2 + a")],
        initial=seed.initial,
        expressions=[
            LaurentPoly.variable(seed.initial, "a"),
            parse("1 + a", seed.initial) * LaurentPoly.variable(seed.initial, "b") ** -1,
            LaurentPoly.variable(seed.initial, "c"),
        ],
    )
    report.check("mutation", seeds_equal(mutated, expected), ("b",), str(mutated.exchange))


def _check_specialization_example(report):
    table = VariableTable.build(cluster=("a", "b", "c"), boundary=("X",))
    seed = make_seed(table, [parse(text, table) for text in ("1 + X*b", "a + c", "1 + b")])
    mutated = lp_mutate(seed, 0)
    report.check(
        "specialization",
        mutated.exchange[1] == parse("1 + a'*c", mutated.table),
        ("a",),
        str(mutated.exchange[1]),
    )
    sp_mutated = lp_mutate(specialize(seed, {"X"}), 0)
    report.check(
        "specialization",
        sp_mutated.exchange[1] == parse("1 + a'*c^2", sp_mutated.table),
        ("X", "a"),
        str(sp_mutated.exchange[1]),
    )
    report.check("specialization", not specialization_commutes(seed, 0, {"X"}), ("X", "a"))
    report.check("specialization", specialization_commutes(seed, 0, set()), ("a",))


def check_m1_table(config):
    report = Report("m1-table", config.rand_seed)
    for row in m1_tropical_table():
        report.check(
            "m1-table",
            row["holds"] == row["expected"],
            (row["lamination"],),
            "{alpha} * {beta} vs {alphastar}".format(**row),
        )
    return report


def check_worked_examples(config):
    """Normalization, LP mutation and specialization on the small worked seeds, and the M1 table."""
    report = Report("paper-examples", config.rand_seed)
    seed = _check_normalization_example(report)
    _check_mutation_example(report, seed)
    _check_specialization_example(report)
    return report.merge(check_m1_table(config))


def check_distinctness(config):
    """The exchange polynomials of every reachable quasi-triangulation are pairwise distinct."""
    report = Report("distinctness", config.rand_seed)
    for label, _, _, state in _states(config):
        graph = _flip_graph(state, config)
        for key, current in graph.payloads():
            try:
                lp_seed_of(current)
            except DistinctnessError as e:
                report.check("distinctness", False, (label,) + graph.path(key), e)
            else:
                report.check("distinctness", True)
    return report


def check_prop48(config):
    """
    At every reachable triangulation and every arc where the quiver conditions hold, LP
    mutation agrees with double mutation of the quiver.
    """
    report = Report("prop48", config.rand_seed)
    for label, _, _, state in _states(config):
        graph = _flip_graph(state, config)
        for key, current in graph.payloads():
            if not current.is_triangulation:
                continue
            for i in range(current.n):
                try:
                    conditions, agree = prop48_agreement(current.quiver, i)
                except FrozenVertexError as e:
                    report.check("prop48", False, (label,) + graph.path(key) + (i,), e)
                    continue
                if conditions:
                    report.check("prop48", agree, (label,) + graph.path(key) + (i,))
    return report


def _check_shortened(report, state, path):
    Bbar = shortened(state.quiver)
    report.check("full-rank", rank(Bbar) == state.n, path, Bbar.tolist())
    if LAMINATION_PAIR in state.quiver.roles:
        gcds = column_gcds(Bbar)
        report.check("column-gcd", all(g == 1 for g in gcds), path, gcds)


def check_full_rank(config):
    """
    The shortened matrix has full rank at the initial state and at sampled reachable states. With
    a principal lamination every column gcd is 1 as well.
    """
    report = Report("full-rank", config.rand_seed)
    rng = np.random.default_rng(config.rand_seed)
    for label, _, _, state in _states(config):
        _check_shortened(report, state, (label,))
        graph = _flip_graph(state, config)
        keys = sorted(graph.graph.nodes)
        for _ in range(_samples(config, "full-rank")):
            key = keys[int(rng.integers(len(keys)))]
            _check_shortened(report, graph.payload(key), (label,) + graph.path(key))
    return report


def check_isomorphism(config):
    """The quasi-flip graph and the LP exchange graph close and agree as labelled graphs."""
    report = Report("isomorphism", config.rand_seed)
    for label, _, _, state in _states(config):
        flips = _flip_graph(state, config)
        mutations = _graph(lp_seed_of(state), config)
        report.check("closed", flips.closed and mutations.closed, (label,))
        ok, detail = is_isomorphic(flips, mutations)
        report.check("isomorphism", ok, (label,), detail)
    return report


SUITES = {
    "laurent": check_laurent,
    "involution": check_involution,
    "rank": check_rank,
    "flip-lp": check_flip_lp,
    "paper-examples": check_worked_examples,
    "distinctness": check_distinctness,
    "prop48": check_prop48,
    "full-rank": check_full_rank,
    "m1-table": check_m1_table,
    "isomorphism": check_isomorphism,
}


def run_suite(name, config):
    if name == "all":
        report = Report("all", config.rand_seed)
        for suite in SUITES.values():
            report.merge(suite(config))
        return report
    if name not in SUITES:
        raise KeyError(name)
    logger.info("running suite %s (rand_seed %s)", name, config.rand_seed)
    return SUITES[name](config)
