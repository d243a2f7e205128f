"""
Exact multivariate Laurent polynomials with integer coefficients.

A polynomial is a finite map from exponent vectors to nonzero integers. The layout of an exponent
vector is fixed by a :class:`VariableTable`. Every other module computes in this ring. The heavy
lifting (exact quotient, gcd, factorization) is delegated to sympy's dense integer polynomial
kernels after the monomial part has been split off.
"""
import logging
import re
from dataclasses import dataclass
from functools import cached_property, lru_cache, reduce
from math import gcd as int_gcd
from types import MappingProxyType

from sympy.polys.densearith import dmp_exquo
from sympy.polys.densebasic import dmp_from_dict, dmp_to_dict
from sympy.polys.domains import ZZ
from sympy.polys.euclidtools import dmp_rr_prs_gcd
from sympy.polys.factortools import dmp_factor_list
from sympy.polys.polyerrors import ExactQuotientFailed

from .conf import NAME_RE, get_lpalgebra_setting

logger = logging.getLogger(__name__)

CLUSTER = "cluster"
BOUNDARY = "boundary-frozen"
LAMINATION = "lamination-frozen"
ROLES = (CLUSTER, BOUNDARY, LAMINATION)

IRREDUCIBLE = "irreducible"
REDUCIBLE = "reducible"
UNKNOWN = "unknown"


class ParseError(ValueError):
    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = "{} at position {}".format(message, position)
        super().__init__(message)


class UnknownVariable(ParseError):
    pass


class NotDivisible(ArithmeticError):
    pass


@dataclass(frozen=True)
class VariableTable:
    """
    Ordered ``(name, role)`` pairs. The order defines the exponent-vector layout of every
    polynomial built over the table.
    """

    variables: tuple

    def __post_init__(self):
        variables = tuple((str(name), role) for name, role in self.variables)
        object.__setattr__(self, "variables", variables)

        for name, role in variables:
            if not NAME_RE.match(name):
                raise ValueError("Invalid variable name {!r}".format(name))
            if role not in ROLES:
                raise ValueError("Variable {!r} has unknown role {!r}".format(name, role))
        if len(set(self.names)) != len(variables):
            raise ValueError("Variable names must be unique: {}".format(", ".join(self.names)))

    @classmethod
    def build(cls, cluster=(), boundary=(), lamination=()):
        return cls(
            tuple((name, CLUSTER) for name in cluster)
            + tuple((name, BOUNDARY) for name in boundary)
            + tuple((name, LAMINATION) for name in lamination)
        )

    @cached_property
    def names(self):
        return tuple(name for name, _ in self.variables)

    @cached_property
    def roles(self):
        return tuple(role for _, role in self.variables)

    @cached_property
    def _positions(self):
        return {name: position for position, name in enumerate(self.names)}

    @cached_property
    def cluster_positions(self):
        return tuple(i for i, role in enumerate(self.roles) if role == CLUSTER)

    @cached_property
    def frozen_positions(self):
        return tuple(i for i, role in enumerate(self.roles) if role != CLUSTER)

    def __len__(self):
        return len(self.variables)

    def __contains__(self, name):
        return name in self._positions

    def index(self, name):
        try:
            return self._positions[name]
        except KeyError:
            raise UnknownVariable("Unknown variable {!r}".format(name)) from None

    def role(self, name):
        return self.roles[self.index(name)]

    def renamed(self, position, name):
        variables = list(self.variables)
        variables[position] = (name, variables[position][1])
        return VariableTable(tuple(variables))

    def extended(self, name, role=CLUSTER):
        return VariableTable(self.variables + ((name, role),))


@dataclass(frozen=True)
class Irreducibility:
    verdict: str
    witness: object = None

    @property
    def is_reducible(self):
        return self.verdict == REDUCIBLE


def _add_exponents(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _grlex_key(item):
    exps = item[0]
    return (sum(exps), exps)


class LaurentPoly:
    """
    An immutable Laurent polynomial over a :class:`VariableTable`.

    Two polynomials are equal iff their tables and term maps are equal; zero is the empty map.
    """

    __slots__ = ("table", "_terms", "_hash")

    def __init__(self, table, terms=None):
        width = len(table)
        cleaned = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != width:
                raise ValueError(
                    "Exponent vector {} does not match a table of {} variables".format(exps, width)
                )
            if coeff:
                cleaned[exps] = cleaned.get(exps, 0) + int(coeff)
        self.table = table
        self._terms = {e: c for e, c in cleaned.items() if c}
        self._hash = None

    @classmethod
    def _make(cls, table, terms):
        poly = object.__new__(cls)
        poly.table = table
        poly._terms = {e: c for e, c in terms.items() if c}
        poly._hash = None
        return poly

    @classmethod
    def zero(cls, table):
        return cls._make(table, {})

    @classmethod
    def constant(cls, table, value):
        return cls._make(table, {(0,) * len(table): int(value)})

    @classmethod
    def one(cls, table):
        return cls.constant(table, 1)

    @classmethod
    def monomial(cls, table, exps, coeff=1):
        return cls(table, {tuple(exps): coeff})

    @classmethod
    def variable(cls, table, name):
        exps = [0] * len(table)
        exps[table.index(name)] = 1
        return cls._make(table, {tuple(exps): 1})

    @property
    def terms(self):
        return MappingProxyType(self._terms)

    def sorted_terms(self):
        """Terms in descending graded lexicographic order over the table order."""
        return sorted(self._terms.items(), key=_grlex_key, reverse=True)

    @property
    def leading_coefficient(self):
        if not self._terms:
            return 0
        return max(self._terms.items(), key=_grlex_key)[1]

    @property
    def is_zero(self):
        return not self._terms

    @property
    def is_monomial(self):
        return len(self._terms) == 1

    @property
    def is_unit(self):
        return self.is_monomial and abs(next(iter(self._terms.values()))) == 1

    @property
    def is_constant(self):
        return self.is_zero or (self.is_monomial and not any(next(iter(self._terms))))

    @property
    def is_polynomial(self):
        return all(e >= 0 for exps in self._terms for e in exps)

    def min_exponents(self):
        return tuple(min(column) for column in zip(*self._terms)) if self._terms else ()

    def max_exponents(self):
        return tuple(max(column) for column in zip(*self._terms)) if self._terms else ()

    def total_degree(self):
        return max((sum(exps) for exps in self._terms), default=0)

    def degree(self, name):
        position = self.table.index(name)
        return max((exps[position] for exps in self._terms), default=0)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            other = LaurentPoly.constant(self.table, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.table == other.table and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            if other.table != self.table:
                raise ValueError("Polynomials live over different variable tables")
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return LaurentPoly.constant(self.table, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self._terms)
        for exps, coeff in other._terms.items():
            terms[exps] = terms.get(exps, 0) + coeff
        return LaurentPoly._make(self.table, terms)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._make(self.table, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                exps = _add_exponents(e1, e2)
                terms[exps] = terms.get(exps, 0) + c1 * c2
        return LaurentPoly._make(self.table, terms)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return _invert_unit(self) ** (-k)
        result = LaurentPoly.one(self.table)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __str__(self):
        if not self._terms:
            return "0"
        names = self.table.names
        chunks = []
        for index, (exps, coeff) in enumerate(self.sorted_terms()):
            factors = []
            for name, e in zip(names, exps):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append("{}^{}".format(name, e))
                elif e < 0:
                    factors.append("{}^({})".format(name, e))
            magnitude = abs(coeff)
            if not factors:
                body = str(magnitude)
            elif magnitude == 1:
                body = "*".join(factors)
            else:
                body = "{}*{}".format(magnitude, "*".join(factors))
            if index == 0:
                chunks.append(("-" if coeff < 0 else "") + body)
            else:
                chunks.append(("- " if coeff < 0 else "+ ") + body)
        return " ".join(chunks)

    def __repr__(self):
        return "<LaurentPoly {}>".format(self)


def _invert_unit(poly):
    if not poly.is_unit:
        raise ValueError("{} is not a unit of the Laurent ring".format(poly))
    ((exps, coeff),) = poly.terms.items()
    return LaurentPoly._make(poly.table, {tuple(-e for e in exps): coeff})


# parsing

_TOKEN_RE = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*'*)|(?P<op>[-+*^()]))")


def _tokenize(text):
    tokens = []
    position = 0
    while True:
        match = _TOKEN_RE.match(text, position)
        if match is None:
            rest = text[position:]
            if rest.strip():
                offset = position + len(rest) - len(rest.lstrip())
                raise ParseError("Unexpected character {!r}".format(text[offset]), offset)
            tokens.append(("end", None, len(text)))
            return tokens
        kind = match.lastgroup
        tokens.append((kind, match.group(kind), match.start(kind)))
        position = match.end()


class _Parser:
    def __init__(self, text, table):
        self.tokens = _tokenize(text)
        self.table = table
        self.index = 0

    def peek(self):
        return self.tokens[self.index]

    def take(self):
        token = self.tokens[self.index]
        self.index += 1
        return token

    def expect(self, op):
        kind, value, position = self.take()
        if kind != "op" or value != op:
            raise ParseError("Expected {!r}".format(op), position)

    def parse(self):
        result = self.expr()
        kind, value, position = self.peek()
        if kind != "end":
            raise ParseError("Unexpected {!r}".format(value), position)
        return result

    def expr(self):
        kind, value, _ = self.peek()
        negate = False
        if kind == "op" and value in "+-":
            self.take()
            negate = value == "-"
        result = self.term()
        if negate:
            result = -result
        while True:
            kind, value, _ = self.peek()
            if kind != "op" or value not in "+-":
                return result
            self.take()
            if value == "+":
                result = result + self.term()
            else:
                result = result - self.term()

    def term(self):
        result = self.factor()
        while self.peek()[:2] == ("op", "*"):
            self.take()
            result = result * self.factor()
        return result

    def factor(self):
        _, _, position = self.peek()
        base = self.atom()
        if self.peek()[:2] != ("op", "^"):
            return base
        self.take()
        exponent = self.exponent()
        if exponent < 0 and not base.is_unit:
            raise ParseError("Negative exponent of a non-monomial", position)
        return base**exponent

    def atom(self):
        kind, value, position = self.take()
        if kind == "int":
            return LaurentPoly.constant(self.table, int(value))
        if kind == "name":
            if value not in self.table:
                raise UnknownVariable("Unknown variable {!r}".format(value), position)
            return LaurentPoly.variable(self.table, value)
        if kind == "op" and value == "(":
            result = self.expr()
            self.expect(")")
            return result
        if kind == "end":
            raise ParseError("Unexpected end of input", position)
        raise ParseError("Unexpected {!r}".format(value), position)

    def exponent(self):
        kind, value, position = self.take()
        if kind == "int":
            return int(value)
        if kind == "op" and value == "(":
            sign = 1
            if self.peek()[:2] == ("op", "-"):
                self.take()
                sign = -1
            kind, value, position = self.take()
            if kind != "int":
                raise ParseError("Expected an integer exponent", position)
            self.expect(")")
            return sign * int(value)
        raise ParseError("Expected an integer exponent", position)


def parse(text, table):
    """
    Parse ``text`` into a polynomial over ``table``.

    Integer literals, variable names, ``+ - * ^`` and parentheses are understood; ``^`` takes an
    integer exponent, which must be parenthesized when negative: ``x^(-1)*y + 2``.
    """
    return _Parser(text, table).parse()


def arith(op, F, G):
    if op == "add":
        return F + G
    if op == "sub":
        return F - G
    if op == "mul":
        return F * G
    if op == "pow":
        if not isinstance(G, int) or G < 0:
            raise ValueError("pow takes a non-negative integer exponent")
        return F**G
    raise ValueError("Unknown operation {!r}".format(op))


def involves(F, name):
    position = F.table.index(name)
    return any(exps[position] for exps in F.terms)


def _power(G, e, cache):
    if e not in cache:
        if e < 0:
            if G.is_zero:
                raise ZeroDivisionError("Substitution of zero into a negative power")
            cache[e] = _invert_unit(G) ** (-e)
        else:
            cache[e] = G**e
    return cache[e]


def substitute(F, name, G):
    """
    Replace every occurrence of ``name`` in ``F`` by ``G``.

    ``G`` may itself involve ``name``. Negative powers of ``name`` in ``F`` require ``G`` to be a
    unit.
    """
    position = F.table.index(name)
    groups = {}
    for exps, coeff in F.terms.items():
        rest = exps[:position] + (0,) + exps[position + 1 :]
        groups.setdefault(exps[position], {})[rest] = coeff
    if set(groups) <= {0}:
        return F
    if G.table != F.table:
        raise ValueError("Substituted polynomial lives over a different variable table")
    cache = {}
    result = LaurentPoly.zero(F.table)
    for e, rest in groups.items():
        result = result + LaurentPoly._make(F.table, rest) * _power(G, e, cache)
    return result


def compose(F, images):
    """
    Evaluate ``F`` at ``images``, one polynomial per variable of ``F.table``.

    All images share one target table. Negative exponents are allowed only where the image is
    a unit.
    """
    images = tuple(images)
    if len(images) != len(F.table):
        raise ValueError("compose needs one image per variable")
    if not images:
        raise ValueError("compose needs a non-empty variable table")
    target = images[0].table
    caches = [{} for _ in images]
    result = LaurentPoly.zero(target)
    for exps, coeff in F.terms.items():
        term = LaurentPoly.constant(target, coeff)
        for position, e in enumerate(exps):
            if e:
                term = term * _power(images[position], e, caches[position])
        result = result + term
    return result


def _shift(F, offset):
    return LaurentPoly._make(
        F.table, {_add_exponents(exps, offset): c for exps, c in F.terms.items()}
    )


def _split(F):
    mins = F.min_exponents()
    return mins, _shift(F, tuple(-m for m in mins))


def _used_positions(*polys):
    used = set()
    for F in polys:
        for exps in F.terms:
            used.update(i for i, e in enumerate(exps) if e)
    return tuple(sorted(used)) or (0,)


def _to_dense(F, positions):
    """Dense sympy form of a polynomial restricted to the variables at ``positions``."""
    terms = {tuple(exps[p] for p in positions): ZZ(c) for exps, c in F.terms.items()}
    return dmp_from_dict(terms, len(positions) - 1, ZZ)


def _from_dense(f, positions, table):
    width = len(table)
    terms = {}
    for key, coeff in dmp_to_dict(f, len(positions) - 1, ZZ).items():
        exps = [0] * width
        for p, e in zip(positions, key):
            exps[p] = e
        terms[tuple(exps)] = int(coeff)
    return LaurentPoly._make(table, terms)


def normalize_sign(F):
    """Return the associate of ``F`` with a positive leading coefficient."""
    return -F if F.leading_coefficient < 0 else F


def leading_sign(F):
    return -1 if F.leading_coefficient < 0 else 1


def strip_monomial(F, positions=None):
    """
    Split ``F`` as ``sign * monomial * core``.

    ``monomial`` is a Laurent monomial with coefficient 1. ``core`` has minimum exponent 0 in
    every stripped variable and a positive leading coefficient. The sign is reported by
    :func:`leading_sign`. ``positions`` restricts stripping to those variables.
    """
    if F.is_zero:
        raise ValueError("Cannot strip the zero polynomial")
    mins = list(F.min_exponents())
    if positions is not None:
        keep = set(positions)
        mins = [m if i in keep else 0 for i, m in enumerate(mins)]
    monomial = LaurentPoly._make(F.table, {tuple(mins): 1})
    core = _shift(F, tuple(-m for m in mins))
    return monomial, normalize_sign(core)


def divide_exact(F, G):
    """
    Exact quotient in the Laurent ring, where monomials are units.

    Raises :class:`NotDivisible` when ``G`` does not divide ``F``.
    """
    if G.table != F.table:
        raise ValueError("Polynomials live over different variable tables")
    if G.is_zero:
        raise ZeroDivisionError("Division by the zero polynomial")
    if F.is_zero:
        return F
    if G.is_monomial:
        ((g_exps, g_coeff),) = G.terms.items()
        terms = {}
        for exps, coeff in F.terms.items():
            quotient, remainder = divmod(coeff, g_coeff)
            if remainder:
                raise NotDivisible("{} does not divide {}".format(G, F))
            terms[tuple(a - b for a, b in zip(exps, g_exps))] = quotient
        return LaurentPoly._make(F.table, terms)

    f_mins, f_core = _split(F)
    g_mins, g_core = _split(G)
    positions = _used_positions(f_core, g_core)
    try:
        quotient = dmp_exquo(
            _to_dense(f_core, positions), _to_dense(g_core, positions), len(positions) - 1, ZZ
        )
    except ExactQuotientFailed:
        raise NotDivisible("{} does not divide {}".format(G, F)) from None
    quotient = _from_dense(quotient, positions, F.table)
    return _shift(quotient, tuple(a - b for a, b in zip(f_mins, g_mins)))


def max_power_dividing(F, G):
    if G.is_zero:
        raise ZeroDivisionError("Division by the zero polynomial")
    if G.is_unit:
        raise ValueError("Every power of the unit {} divides".format(G))
    if F.is_zero:
        raise ValueError("Every power divides the zero polynomial")
    power = 0
    while True:
        try:
            F = divide_exact(F, G)
        except NotDivisible:
            return power
        power += 1


def gcd(F, G, positions=None):
    """
    Greatest common divisor with a positive leading coefficient.

    Monomials in the variables at ``positions`` (every variable by default) are units and are
    stripped; the other variables must occur with non-negative exponents and keep their monomial
    content.
    """
    if F.is_zero and G.is_zero:
        raise ValueError("gcd(0, 0) is undefined")
    if F.is_zero:
        return strip_monomial(G, positions)[1]
    if G.is_zero:
        return strip_monomial(F, positions)[1]
    if G.table != F.table:
        raise ValueError("Polynomials live over different variable tables")
    f_core, g_core = strip_monomial(F, positions)[1], strip_monomial(G, positions)[1]
    if not (f_core.is_polynomial and g_core.is_polynomial):
        raise ValueError("gcd needs non-negative exponents outside the unit variables")
    used = _used_positions(f_core, g_core)
    h, _, _ = dmp_rr_prs_gcd(_to_dense(f_core, used), _to_dense(g_core, used), len(used) - 1, ZZ)
    return strip_monomial(_from_dense(h, used, F.table), positions)[1]


def binomial_criterion(F):
    """
    ``A ± B`` with unit coefficients, coprime monomials ``A`` and ``B``, and all their exponents
    together of gcd 1, is irreducible.
    """
    if len(F) != 2 or not F.is_polynomial:
        return False
    (a, ca), (b, cb) = F.terms.items()
    if abs(ca) != 1 or abs(cb) != 1:
        return False
    if any(x and y for x, y in zip(a, b)):
        return False
    return reduce(int_gcd, a + b, 0) == 1


@lru_cache(maxsize=4096)
def factor_search(F):
    """Decide irreducibility of the polynomial ``F`` by complete factorization over the integers."""
    positions = _used_positions(F)
    coeff, factors = dmp_factor_list(_to_dense(F, positions), len(positions) - 1, ZZ)
    coeff = int(coeff)
    if len(factors) == 1 and factors[0][1] == 1 and abs(coeff) == 1:
        return Irreducibility(IRREDUCIBLE)
    if len(factors) > 1 or (factors and factors[0][1] > 1):
        witness = normalize_sign(_from_dense(factors[0][0], positions, F.table))
    else:
        witness = LaurentPoly.constant(F.table, abs(coeff))
    return Irreducibility(REDUCIBLE, witness)


def is_irreducible(F, budget=None):
    """
    Classify ``F`` as irreducible, reducible (with a factor as witness) or unknown.

    The binomial criterion is tried first. Otherwise ``F`` is factored when its total degree is
    within ``budget`` (``LPALGEBRA_IRREDUCIBILITY_BUDGET`` by default).
    """
    if F.is_zero or F.is_monomial:
        raise ValueError("Irreducibility is undefined for monomials and constants: {}".format(F))
    if not F.is_polynomial:
        raise ValueError("Irreducibility is only decided for polynomials: {}".format(F))
    if binomial_criterion(F):
        return Irreducibility(IRREDUCIBLE)
    if budget is None:
        budget = get_lpalgebra_setting("LPALGEBRA_IRREDUCIBILITY_BUDGET")
    if F.total_degree() > budget:
        logger.info("irreducibility of %s left undecided (degree above %s)", F, budget)
        return Irreducibility(UNKNOWN)
    return factor_search(F)


def evaluate_at_zero(F, name):
    position = F.table.index(name)
    terms = {}
    for exps, coeff in F.terms.items():
        if exps[position] < 0:
            raise ZeroDivisionError("{} has a negative power of {}".format(F, name))
        if exps[position] == 0:
            terms[exps] = coeff
    return LaurentPoly._make(F.table, terms)


def specialize_to_one(F, names):
    positions = {F.table.index(name) for name in names}
    if not positions:
        return F
    terms = {}
    for exps, coeff in F.terms.items():
        exps = tuple(0 if i in positions else e for i, e in enumerate(exps))
        terms[exps] = terms.get(exps, 0) + coeff
    return LaurentPoly._make(F.table, terms)


def rebase(F, table):
    """The same exponent data read over another table of equal width."""
    if len(table) != len(F.table):
        raise ValueError("Tables differ in width")
    return LaurentPoly._make(table, dict(F.terms))


def extend(F, table):
    """Embed ``F`` into ``table``, whose leading variables are those of ``F.table``."""
    padding = (0,) * (len(table) - len(F.table))
    if table.names[: len(F.table)] != F.table.names:
        raise ValueError("Target table does not extend the source table")
    return LaurentPoly._make(table, {exps + padding: c for exps, c in F.terms.items()})


def permute(F, order, table):
    """Move the variable at position ``order[p]`` of ``F.table`` to position ``p`` of ``table``."""
    return LaurentPoly._make(
        table, {tuple(exps[q] for q in order): c for exps, c in F.terms.items()}
    )
