"""
LP seeds, normalization and the three-step LP mutation.

Cluster expressions are kept as Laurent polynomials in the initial cluster variables and the
frozen variables, so every mutation composes substitutions eagerly and the Laurent phenomenon is
directly observable.
"""
import hashlib
import logging
from dataclasses import dataclass

from .conf import get_lpalgebra_setting
from .graph import explore
from .laurent import (
    CLUSTER,
    REDUCIBLE,
    LaurentPoly,
    NotDivisible,
    VariableTable,
    compose,
    divide_exact,
    evaluate_at_zero,
    extend,
    gcd,
    involves,
    is_irreducible,
    max_power_dividing,
    normalize_sign,
    permute,
    rebase,
    specialize_to_one,
    strip_monomial,
    substitute,
)
from .reports import Report

logger = logging.getLogger(__name__)

DEGENERATE = "degenerate"


class InvalidSeed(ValueError):
    pass


class LPStructureError(ArithmeticError):
    pass


class LaurentViolation(LPStructureError):
    pass


def toggle_prime(name):
    return name[:-1] if name.endswith("'") else name + "'"


def base_name(name):
    return name.rstrip("'")


@dataclass(frozen=True)
class LPSeed:
    """
    ``n`` cluster slots followed by frozen variables.

    ``table`` names the current cluster variables, ``initial`` the initial ones (same layout);
    ``expressions[i]`` is slot ``i`` written over ``initial`` and ``exchange[i]`` its exchange
    polynomial over ``table``.
    """

    table: VariableTable
    initial: VariableTable
    expressions: tuple
    exchange: tuple
    verdicts: tuple = ()

    @property
    def n(self):
        return len(self.exchange)

    @property
    def cluster_names(self):
        return self.table.names[: self.n]

    @property
    def frozen_names(self):
        return self.table.names[self.n :]

    @property
    def valid(self):
        return all(verdict not in (REDUCIBLE, DEGENERATE) for verdict in self.verdicts)

    def slot(self, name):
        """Slot of a cluster variable, by exact name or up to trailing primes."""
        names = self.cluster_names
        if name in names:
            return names.index(name)
        matches = [i for i, current in enumerate(names) if base_name(current) == base_name(name)]
        if len(matches) != 1:
            raise InvalidSeed("Unknown mutation direction {!r}".format(name))
        return matches[0]


@dataclass(frozen=True)
class NormalizedExchange:
    polys: tuple
    denominators: tuple


def _verdict(F):
    if F.is_zero or F.is_monomial:
        return DEGENERATE
    return is_irreducible(F).verdict


def _degeneracy(F, table, n):
    if F.is_zero:
        return "is not a polynomial: 0"
    names = table.names
    for k in range(n):
        if F == LaurentPoly.variable(table, names[k]):
            return "is a cluster variable"
        if F.min_exponents()[k] > 0:
            return "is divisible by {}".format(names[k])
    return None


def make_seed(table, exchange, initial=None, expressions=None, strict=True):
    """
    Build an :class:`LPSeed`, checking the structural invariants.

    Irreducibility is recorded per exchange polynomial. With ``strict`` a reducible or degenerate
    exchange polynomial is rejected; otherwise it is only flagged.
    """
    exchange = tuple(exchange)
    n = len(exchange)
    if n < 1:
        raise InvalidSeed("A seed needs at least one cluster variable")
    if table.cluster_positions != tuple(range(n)):
        raise InvalidSeed("Cluster variables must come first and match the exchange polynomials")
    if initial is None:
        initial = table
    if initial.roles != table.roles or initial.names[n:] != table.names[n:]:
        raise InvalidSeed("Initial and current variable tables do not share their layout")
    if expressions is None:
        expressions = tuple(LaurentPoly.variable(initial, name) for name in initial.names[:n])
    expressions = tuple(expressions)
    if len(expressions) != n:
        raise InvalidSeed("Expected {} cluster expressions".format(n))

    names = table.names
    normalized, degenerate = [], set()
    for i, F in enumerate(exchange):
        if F.table != table:
            raise InvalidSeed("Exchange polynomial of {} is over another table".format(names[i]))
        if not F.is_zero and not F.is_polynomial:
            raise InvalidSeed(
                "Exchange polynomial of {} is not a polynomial: {}".format(names[i], F)
            )
        if involves(F, names[i]):
            raise InvalidSeed("Exchange polynomial of {} involves {}".format(names[i], names[i]))
        problem = _degeneracy(F, table, n)
        if problem is not None:
            if strict:
                raise InvalidSeed("Exchange polynomial of {} {}".format(names[i], problem))
            degenerate.add(i)
            normalized.append(F)
            continue
        normalized.append(normalize_sign(F))

    verdicts = tuple(
        DEGENERATE if i in degenerate else _verdict(F) for i, F in enumerate(normalized)
    )
    for name, verdict, F in zip(names, verdicts, normalized):
        if verdict in (REDUCIBLE, DEGENERATE):
            if strict:
                raise InvalidSeed("Exchange polynomial of {} is {}: {}".format(name, verdict, F))
            logger.info("exchange polynomial of %s is %s: %s", name, verdict, F)
    return LPSeed(table, initial, expressions, tuple(normalized), verdicts)


def normalize(seed):
    """
    Divide each ``F_j`` by the largest monomial ``x_k^{a_k}`` such that ``F_k^{a_k}`` divides
    ``F_j`` with ``x_k`` replaced by ``F_k / t`` for a fresh variable ``t``.
    """
    fresh = get_lpalgebra_setting("LPALGEBRA_FRESH_VARIABLE")
    if fresh in seed.table:
        raise InvalidSeed("Reserved variable {} is used by the seed".format(fresh))
    wide = seed.table.extended(fresh, CLUSTER)
    inverse_fresh = LaurentPoly.variable(wide, fresh) ** -1
    names = seed.table.names

    polys, denominators = [], []
    for j, F_j in enumerate(seed.exchange):
        exps = [0] * len(seed.table)
        wide_j = extend(F_j, wide)
        for k, F_k in enumerate(seed.exchange):
            if k == j or F_k.is_monomial:
                continue
            wide_k = extend(F_k, wide)
            shifted = substitute(wide_j, names[k], wide_k * inverse_fresh)
            exps[k] = max_power_dividing(shifted, wide_k)
        denominator = LaurentPoly.monomial(seed.table, exps)
        polys.append(divide_exact(F_j, denominator))
        denominators.append(denominator)
    return NormalizedExchange(tuple(polys), tuple(denominators))


def _frozen_denominator(expression):
    mins = expression.min_exponents()
    return any(mins[p] < 0 for p in expression.table.frozen_positions)


def _images(seed):
    names = seed.initial.names[seed.n :]
    frozen = tuple(LaurentPoly.variable(seed.initial, name) for name in names)
    return seed.expressions + frozen


def _mutated_exchange(seed, hat_i, i, j, table):
    names = seed.table.names
    restricted = rebase(evaluate_at_zero(hat_i, names[j]), table)
    if restricted.is_zero:
        raise LPStructureError("F^_{} vanishes at {} = 0".format(names[i], names[j]))
    new_variable = LaurentPoly.variable(table, table.names[i])
    H = substitute(rebase(seed.exchange[j], table), table.names[i], restricted * new_variable**-1)
    # Frozen variables are not units: only cluster monomials are stripped from the gcd.
    cluster = range(seed.n)
    while True:
        common = gcd(H, restricted, positions=cluster)
        if common == 1:
            break
        H = divide_exact(H, common)
    _, core = strip_monomial(H, positions=cluster)
    if not core.is_polynomial:
        raise LPStructureError(
            "Exchange polynomial of {} cannot be cleared to a polynomial: {}".format(names[j], H)
        )
    return core


def lp_mutate(seed, i):
    """
    Mutate ``seed`` at slot ``i``.

    The new cluster variable is ``F^_i / x_i``; every ``F_j`` involving ``x_i`` is rewritten by
    substitution, removal of common factors with ``F^_i|_{x_j <- 0}`` and clearing of the
    cluster monomial.
    """
    n = seed.n
    if not 0 <= i < n:
        raise InvalidSeed("Mutation direction {} out of range for {} slots".format(i, n))
    names = seed.table.names
    for j, F_j in enumerate(seed.exchange):
        if F_j.is_zero:
            raise LPStructureError("Exchange polynomial of {} vanishes".format(names[j]))
    normalized = normalize(seed)
    hat_i = normalized.polys[i]
    denominator_exps = next(iter(normalized.denominators[i].terms))

    for j in range(n):
        if j != i and denominator_exps[j] and involves(seed.exchange[j], names[i]):
            raise LPStructureError(
                "{} divides the denominator of F^_{} although {} involves {}".format(
                    names[j], names[i], names[j], names[i]
                )
            )

    images = _images(seed)
    numerator = compose(seed.exchange[i], images)
    denominator = compose(normalized.denominators[i], images) * seed.expressions[i]
    try:
        expression = divide_exact(numerator, denominator)
    except NotDivisible:
        raise LaurentViolation(
            "Mutation at {} does not give a Laurent polynomial: ({}) / ({})".format(
                names[i], numerator, denominator
            )
        ) from None
    if _frozen_denominator(expression):
        raise LaurentViolation(
            "Mutation at {} divides by a frozen variable: {}".format(names[i], expression)
        )

    table = seed.table.renamed(i, toggle_prime(names[i]))
    exchange, touched = [], []
    for j, F_j in enumerate(seed.exchange):
        if j == i or not involves(F_j, names[i]):
            exchange.append(rebase(F_j, table))
        else:
            exchange.append(_mutated_exchange(seed, hat_i, i, j, table))
            touched.append(j)

    expressions = list(seed.expressions)
    expressions[i] = expression
    mutated = make_seed(table, exchange, seed.initial, expressions, strict=False)
    for j in touched:
        if mutated.verdicts[j] in (REDUCIBLE, DEGENERATE):
            raise LPStructureError(
                "Mutated exchange polynomial of {} is {}: {}".format(
                    table.names[j], mutated.verdicts[j], mutated.exchange[j]
                )
            )
    logger.debug("mutated at %s", names[i])
    return mutated


def mutate_sequence(seed, directions):
    for direction in directions:
        seed = lp_mutate(seed, seed.slot(direction) if isinstance(direction, str) else direction)
    return seed


def seeds_equal(first, second):
    """
    True iff the cluster expressions agree as multisets and, after matching slots by
    expression, the exchange polynomials agree up to sign.
    """
    n = first.n
    if second.n != n or first.frozen_names != second.frozen_names:
        return False
    if first.initial != second.initial:
        return False
    slots = {expression: k for k, expression in enumerate(second.expressions)}
    matching = []
    for expression in first.expressions:
        if expression not in slots:
            return False
        matching.append(slots[expression])
    if len(set(matching)) != n:
        return False
    order = matching + list(range(n, len(first.table)))
    for i in range(n):
        other = permute(second.exchange[matching[i]], order, first.table)
        if first.exchange[i] != other and first.exchange[i] != -other:
            return False
    return True


def seed_key(seed):
    """Hex digest identifying a seed up to slot order, cluster names and signs."""
    n = seed.n
    slots = sorted(range(n), key=lambda k: str(seed.expressions[k]))
    placeholders = VariableTable(
        tuple(("_{}".format(p), CLUSTER) for p in range(n)) + seed.table.variables[n:]
    )
    order = slots + list(range(n, len(seed.table)))
    lines = [str(seed.expressions[k]) for k in slots]
    lines.extend(
        str(normalize_sign(permute(seed.exchange[k], order, placeholders))) for k in slots
    )
    return hashlib.sha1("\n".join(lines).encode("utf-8")).hexdigest()


def seed_label(seed):
    return tuple(sorted(str(expression) for expression in seed.expressions))


def specialize(seed, ones):
    """
    Set the frozen variables in ``ones`` to 1 everywhere. Validity is flagged, not enforced: an
    exchange polynomial that becomes reducible, a monomial or zero is recorded in ``verdicts``.
    """
    ones = set(ones)
    unknown = ones - set(seed.frozen_names)
    if unknown:
        raise InvalidSeed("Not frozen variables: {}".format(", ".join(sorted(unknown))))
    if not ones:
        return seed
    return make_seed(
        seed.table,
        [specialize_to_one(F, ones) for F in seed.exchange],
        seed.initial,
        [specialize_to_one(expression, ones) for expression in seed.expressions],
        strict=False,
    )


def specialization_commutes(seed, i, ones):
    """
    Whether mutating at ``i`` commutes with setting ``ones`` to 1. When the specialized seed can
    no longer be mutated the two sides are reported as not commuting.
    """
    specialized = specialize(seed, ones)
    mutated = specialize(lp_mutate(seed, i), ones)
    try:
        other = lp_mutate(specialized, i)
    except (LPStructureError, InvalidSeed) as e:
        logger.info("specialized seed cannot be mutated at %s: %s", seed.table.names[i], e)
        return False
    return seeds_equal(mutated, other)


def _mutations(seed):
    results = []
    for i in range(seed.n):
        try:
            results.append((i, lp_mutate(seed, i)))
        except (LPStructureError, InvalidSeed) as e:
            results.append((i, str(e)))
    return results


def exchange_graph(seed, limit=None, depth=None, jobs=None):
    return explore(
        seed, seed_key, _mutations, seed_label, max_nodes=limit, max_depth=depth, jobs=jobs
    )


def laurent_check(graph):
    """
    Confirm that every cluster expression lies in the Laurent ring over ``ZZ[frozen]`` (no frozen
    variable in a denominator) and, edge by edge, that the exchanged expressions satisfy
    ``x * x' = F^(x)`` exactly. Mutations that failed to divide are reported as well.
    """
    report = Report("laurent")
    for key, seed in graph.payloads():
        path = graph.path(key)
        for expression in seed.expressions:
            if expression.table != seed.initial:
                report.check("expression", False, path, "not written over the initial seed")
            elif _frozen_denominator(expression):
                detail = "frozen denominator in {}".format(expression)
                report.check("expression", False, path, detail)
            else:
                report.check("expression", True, path)

    for u, v, data in graph.graph.edges(data=True):
        if u not in data["directions"]:
            u, v = v, u
        source, target = graph.payload(u), graph.payload(v)
        path = graph.path(u) + (data["directions"][u],)
        new = set(target.expressions) - set(source.expressions)
        old = set(source.expressions) - set(target.expressions)
        if len(new) != 1 or len(old) != 1:
            report.check("exchange", False, path, "clusters differ in more than one variable")
            continue
        i = source.expressions.index(old.pop())
        normalized = normalize(source)
        images = _images(source)
        lhs = source.expressions[i] * new.pop() * compose(normalized.denominators[i], images)
        report.check("exchange", lhs == compose(source.exchange[i], images), path)

    for violation in graph.violations:
        report.check("division", False, violation["path"], violation["detail"])
    return report
