"""Exact sparse multivariate polynomials and rational functions over Q.

Coefficients are ``fractions.Fraction`` values stored in lowest terms; a
coefficient whose denominator is 1 is stored as a plain ``int`` (the q=1 case),
which keeps integer expansion on the fast path. Every ``Polynomial`` is
immutable and canonical: no zero coefficients, no zero exponents, monomials as
sorted ``(VariableId, exponent)`` tuples. Two polynomials are equal iff their
term mappings are identical.
"""
from __future__ import annotations

import contextlib
import contextvars
import math
import re
from enum import IntEnum
from fractions import Fraction
from types import MappingProxyType
from typing import (
    Dict,
    FrozenSet,
    Iterable,
    Iterator,
    List,
    Mapping,
    NamedTuple,
    Optional,
    Tuple,
    Union,
)

from critval.core.exceptions import (
    BoundContainsVariableError,
    BudgetExceededError,
    ExactDivisionFailedError,
    UnboundVariableError,
)

ExactRational = Fraction
Scalar = Union[int, Fraction]


class Family(IntEnum):
    """Variable families in their fixed canonical order."""
    X = 0
    Z = 1
    Y = 2
    W = 3
    BIGZ = 4


_PREFIX = {
    Family.X: "x",
    Family.Z: "z",
    Family.Y: "y",
    Family.W: "w",
    Family.BIGZ: "Z",
}
_INDEXED = frozenset({Family.X, Family.Z, Family.Y})


class VariableId(NamedTuple):
    """A variable: family plus 1-based index (0 for the unindexed w and Z)."""
    family: Family
    index: int = 0

    @property
    def name(self) -> str:
        if self.family in _INDEXED:
            return f"{_PREFIX[self.family]}{self.index}"
        return _PREFIX[self.family]

    def __str__(self) -> str:
        return self.name

    def __repr__(self) -> str:
        return f"VariableId({self.name})"


def _indexed(family: Family, index: int) -> VariableId:
    if index < 1:
        raise ValueError(f"variable index must be positive, got {index}")
    return VariableId(family, index)


def x_var(i: int) -> VariableId:
    return _indexed(Family.X, i)


def z_var(i: int) -> VariableId:
    return _indexed(Family.Z, i)


def y_var(i: int) -> VariableId:
    return _indexed(Family.Y, i)


W_VAR = VariableId(Family.W, 0)
BIGZ_VAR = VariableId(Family.BIGZ, 0)

_VAR_RE = re.compile(r"^(?:([xzy])([1-9]\d*)|(w)|(Z))$")
_FAMILY_BY_PREFIX = {"x": Family.X, "z": Family.Z, "y": Family.Y}


def parse_variable(name: str) -> VariableId:
    """Parse ``x3``, ``z1``, ``y2``, ``w`` or ``Z``."""
    match = _VAR_RE.match(name.strip())
    if not match:
        raise ValueError(f"unknown variable name {name!r}")
    prefix, index, w, big_z = match.groups()
    if w:
        return W_VAR
    if big_z:
        return BIGZ_VAR
    return VariableId(_FAMILY_BY_PREFIX[prefix], int(index))


# Monomials -----------------------------------------------------------------

Monomial = Tuple[Tuple[VariableId, int], ...]
ONE_MONOMIAL: Monomial = ()


def monomial(exponents: Mapping[VariableId, int]) -> Monomial:
    """Canonical monomial from a variable -> exponent mapping."""
    for v, e in exponents.items():
        if e < 0:
            raise ValueError(f"negative exponent {e} for {v}")
    return tuple(sorted((v, e) for v, e in exponents.items() if e))


def monomial_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    merged = dict(a)
    for v, e in b:
        merged[v] = merged.get(v, 0) + e
    return tuple(sorted(merged.items()))


def _monomial_div(m: Monomial, d: Monomial) -> Optional[Monomial]:
    """m / d if d divides m, else None."""
    if not d:
        return m
    exps = dict(m)
    for v, e in d:
        have = exps.get(v, 0)
        if have < e:
            return None
        if have == e:
            del exps[v]
        else:
            exps[v] = have - e
    return tuple(sorted(exps.items()))


def order_key(m: Monomial) -> tuple:
    """Graded lexicographic key: larger key sorts first in canonical order.

    Ties in total degree are broken by comparing exponent vectors under the
    fixed variable order, the earliest variable being most significant.
    """
    return (monomial_degree(m), tuple((-v[0], -v[1], e) for v, e in m))


def monomial_str(m: Monomial) -> str:
    return "*".join(v.name if e == 1 else f"{v.name}^{e}" for v, e in m)


# Term budget ---------------------------------------------------------------

_term_budget: contextvars.ContextVar[Optional[int]] = contextvars.ContextVar(
    "critval_term_budget", default=None
)


@contextlib.contextmanager
def term_budget(limit: Optional[int]) -> Iterator[None]:
    """Cap the term count of every intermediate product inside the block."""
    token = _term_budget.set(limit)
    try:
        yield
    finally:
        _term_budget.reset(token)


def _check_budget(size: int) -> None:
    limit = _term_budget.get()
    if limit is not None and size > limit:
        raise BudgetExceededError(limit, size)


# Coefficients --------------------------------------------------------------

def _norm(c: Scalar) -> Scalar:
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _as_scalar(value: object) -> Optional[Scalar]:
    if isinstance(value, bool):
        return None
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return _norm(value)
    return None


def _coefficient(value: object) -> Scalar:
    """Exact coefficient from an int or Fraction; floats and other types are refused."""
    c = _as_scalar(value)
    if c is None:
        raise TypeError(f"coefficients must be int or Fraction, got {type(value).__name__}")
    return c


def format_rational(c: Scalar) -> str:
    c = _norm(c)
    if isinstance(c, int):
        return str(c)
    return f"{c.numerator}/{c.denominator}"


def factorial(k: int) -> int:
    """Exact k!, used for the b! prod a_i! / (n + b + sum a)! constants."""
    if k < 0:
        raise ValueError(f"factorial of negative {k}")
    return math.factorial(k)


# Polynomial ----------------------------------------------------------------

class Polynomial:
    """Immutable sparse polynomial ``{Monomial: coefficient}`` in canonical form."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Monomial, Scalar]] = None):
        cleaned: Dict[Monomial, Scalar] = {}
        for m, c in (terms or {}).items():
            key = monomial(dict(m))
            total = cleaned.get(key, 0) + _coefficient(c)
            if total:
                cleaned[key] = _norm(total)
            else:
                cleaned.pop(key, None)
        self._terms = cleaned
        self._hash: Optional[int] = None

    @classmethod
    def _wrap(cls, terms: Dict[Monomial, Scalar]) -> "Polynomial":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    # Constructors

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls._wrap({})

    @classmethod
    def one(cls) -> "Polynomial":
        return cls._wrap({ONE_MONOMIAL: 1})

    @classmethod
    def constant(cls, c: Scalar) -> "Polynomial":
        c = _coefficient(c)
        return cls._wrap({ONE_MONOMIAL: c} if c else {})

    @classmethod
    def var(cls, v: VariableId) -> "Polynomial":
        if not isinstance(v, VariableId):
            raise TypeError(f"expected VariableId, got {type(v).__name__}")
        return cls._wrap({((v, 1),): 1})

    @classmethod
    def from_terms(
        cls, terms: Iterable[Tuple[Scalar, Mapping[VariableId, int]]]
    ) -> "Polynomial":
        """Build from ``(coefficient, {variable: exponent})`` pairs in any order."""
        acc: Dict[Monomial, Scalar] = {}
        for c, exps in terms:
            key = monomial(exps)
            acc[key] = acc.get(key, 0) + _coefficient(c)
        return cls._wrap({m: _norm(c) for m, c in acc.items() if c})

    @classmethod
    def parse(cls, text: str) -> "Polynomial":
        return parse_polynomial(text)

    # Introspection

    @property
    def terms(self) -> Mapping[Monomial, Scalar]:
        return MappingProxyType(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and ONE_MONOMIAL in self._terms)

    def constant_term(self) -> Fraction:
        return Fraction(self._terms.get(ONE_MONOMIAL, 0))

    def coefficient(self, m: Monomial) -> Fraction:
        return Fraction(self._terms.get(m, 0))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((monomial_degree(m) for m in self._terms), default=-1)

    def degree_in(self, v: VariableId) -> int:
        return max((dict(m).get(v, 0) for m in self._terms), default=-1)

    def monomial_degrees(self) -> FrozenSet[int]:
        return frozenset(monomial_degree(m) for m in self._terms)

    def variables(self) -> FrozenSet[VariableId]:
        return frozenset(v for m in self._terms for v, _ in m)

    def sorted_terms(self) -> List[Tuple[Monomial, Scalar]]:
        """Terms in canonical order (graded, then lexicographic, descending)."""
        return sorted(self._terms.items(), key=lambda t: order_key(t[0]), reverse=True)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    # Equality

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Polynomial):
            return self._terms == other._terms
        scalar = _as_scalar(other)
        if scalar is None:
            return NotImplemented
        return self._terms == ({ONE_MONOMIAL: scalar} if scalar else {})

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # Ring operations

    @staticmethod
    def _coerce(other: object) -> Optional["Polynomial"]:
        if isinstance(other, Polynomial):
            return other
        scalar = _as_scalar(other)
        if scalar is None:
            return None
        return Polynomial.constant(scalar)

    def __add__(self, other: object) -> "Polynomial":
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        if not q._terms:
            return self
        if not self._terms:
            return q
        acc = dict(self._terms)
        for m, c in q._terms.items():
            total = acc.get(m, 0) + c
            if total:
                acc[m] = _norm(total)
            else:
                del acc[m]
        return Polynomial._wrap(acc)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._wrap({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: object) -> "Polynomial":
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        return self + (-q)

    def __rsub__(self, other: object) -> "Polynomial":
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        return q + (-self)

    def scale(self, c: Scalar) -> "Polynomial":
        c = _coefficient(c)
        if not c:
            return Polynomial.zero()
        if c == 1:
            return self
        return Polynomial._wrap({m: _norm(v * c) for m, v in self._terms.items()})

    def __mul__(self, other: object) -> "Polynomial":
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        a, b = self._terms, q._terms
        if not a or not b:
            return Polynomial.zero()
        if len(b) == 1 and ONE_MONOMIAL in b:
            return self.scale(b[ONE_MONOMIAL])
        if len(a) == 1 and ONE_MONOMIAL in a:
            return q.scale(a[ONE_MONOMIAL])
        if len(a) < len(b):
            a, b = b, a
        acc: Dict[Monomial, Scalar] = {}
        get = acc.get
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = monomial_mul(m1, m2)
                acc[m] = get(m, 0) + c1 * c2
            _check_budget(len(acc))
        return Polynomial._wrap({m: _norm(c) for m, c in acc.items() if c})

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Polynomial":
        if not isinstance(e, int) or e < 0:
            raise ValueError(f"exponent must be a non-negative integer, got {e!r}")
        # p^0 = 1 for every p, including the zero polynomial
        result = Polynomial.one()
        for _ in range(e):
            result = result * self
        return result

    # Calculus

    def derivative(self, v: VariableId) -> "Polynomial":
        """Formal partial derivative with respect to ``v``."""
        acc: Dict[Monomial, Scalar] = {}
        for m, c in self._terms.items():
            exps = dict(m)
            e = exps.get(v, 0)
            if not e:
                continue
            if e == 1:
                del exps[v]
            else:
                exps[v] = e - 1
            key = tuple(sorted(exps.items()))
            acc[key] = acc.get(key, 0) + c * e
        return Polynomial._wrap({m: _norm(c) for m, c in acc.items() if c})

    def antiderivative(self, v: VariableId) -> "Polynomial":
        """Antiderivative in ``v`` with zero constant term in ``v``."""
        acc: Dict[Monomial, Scalar] = {}
        for m, c in self._terms.items():
            exps = dict(m)
            e = exps.get(v, 0) + 1
            exps[v] = e
            acc[tuple(sorted(exps.items()))] = _norm(Fraction(c) / e)
        return Polynomial._wrap(acc)

    def substitute(self, v: VariableId, r: Union["Polynomial", Scalar]) -> "Polynomial":
        """Replace every occurrence of ``v`` by ``r``."""
        return self.compose({v: r})

    def compose(self, mapping: Mapping[VariableId, Union["Polynomial", Scalar]]) -> "Polynomial":
        """Simultaneously replace each mapped variable by its image."""
        constants: Dict[VariableId, Fraction] = {}
        images: Dict[VariableId, Polynomial] = {}
        live = self.variables()
        for v, r in mapping.items():
            if v not in live:
                continue
            image = self._coerce(r)
            if image is None:
                raise TypeError(f"cannot substitute {type(r).__name__} for {v}")
            if image.is_constant:
                constants[v] = image.constant_term()
            else:
                images[v] = image
        if not constants and not images:
            return self

        groups: Dict[Monomial, Dict[Monomial, Scalar]] = {}
        for m, c in self._terms.items():
            key: List[Tuple[VariableId, int]] = []
            rest: List[Tuple[VariableId, int]] = []
            for v, e in m:
                if v in constants:
                    c = c * constants[v] ** e
                elif v in images:
                    key.append((v, e))
                else:
                    rest.append((v, e))
            if not c:
                continue
            bucket = groups.setdefault(tuple(key), {})
            r_m = tuple(rest)
            bucket[r_m] = bucket.get(r_m, 0) + c

        powers: Dict[VariableId, List[Polynomial]] = {v: [Polynomial.one()] for v in images}

        def power(v: VariableId, e: int) -> Polynomial:
            cache = powers[v]
            while len(cache) <= e:
                cache.append(cache[-1] * images[v])
            return cache[e]

        acc: Dict[Monomial, Scalar] = {}
        for key, bucket in groups.items():
            part = Polynomial._wrap({m: _norm(c) for m, c in bucket.items() if c})
            for v, e in key:
                part = part * power(v, e)
            for m, c in part._terms.items():
                acc[m] = acc.get(m, 0) + c
            _check_budget(len(acc))
        return Polynomial._wrap({m: _norm(c) for m, c in acc.items() if c})

    def definite_integral(
        self,
        v: VariableId,
        lower: Union["Polynomial", Scalar],
        upper: Union["Polynomial", Scalar],
    ) -> "Polynomial":
        """F(upper) - F(lower) with F the antiderivative in ``v``."""
        lo, hi = self._coerce(lower), self._coerce(upper)
        if lo is None or hi is None:
            raise TypeError("integration bounds must be polynomials or rationals")
        if v in lo.variables() or v in hi.variables():
            raise BoundContainsVariableError(v.name)
        primitive = self.antiderivative(v)
        return primitive.substitute(v, hi) - primitive.substitute(v, lo)

    # Evaluation and division

    def evaluate(self, point: Mapping[VariableId, Scalar]) -> Fraction:
        """Exact value at ``point``; every variable must be assigned."""
        missing = self.variables() - point.keys()
        if missing:
            raise UnboundVariableError(v.name for v in sorted(missing))
        values = {v: Fraction(point[v]) for v in self.variables()}
        total = Fraction(0)
        for m, c in self._terms.items():
            term = Fraction(c)
            for v, e in m:
                term *= values[v] ** e
            total += term
        return total

    def exact_divide(self, divisor: "Polynomial") -> "Polynomial":
        """Quotient of an exact division; raises if a remainder is left."""
        if divisor.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        if divisor.is_constant:
            return self.scale(1 / divisor.constant_term())
        lead_m, lead_c = max(divisor._terms.items(), key=lambda t: order_key(t[0]))
        remainder = dict(self._terms)
        quotient: Dict[Monomial, Scalar] = {}
        while remainder:
            m = max(remainder, key=order_key)
            q_m = _monomial_div(m, lead_m)
            if q_m is None:
                raise ExactDivisionFailedError(
                    f"leading term {monomial_str(m) or '1'} is not divisible by "
                    f"{monomial_str(lead_m)}"
                )
            q_c = _norm(Fraction(remainder[m]) / lead_c)
            quotient[q_m] = q_c
            for d_m, d_c in divisor._terms.items():
                key = monomial_mul(q_m, d_m)
                value = remainder.get(key, 0) - q_c * d_c
                if value:
                    remainder[key] = _norm(value)
                else:
                    remainder.pop(key, None)
        return Polynomial._wrap(quotient)

    # Text

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts: List[str] = []
        for idx, (m, c) in enumerate(self.sorted_terms()):
            negative = c < 0
            mag = -c if negative else c
            if not m:
                body = format_rational(mag)
            elif mag == 1:
                body = monomial_str(m)
            else:
                body = f"{format_rational(mag)}*{monomial_str(m)}"
            if idx == 0:
                parts.append(f"-{body}" if negative else body)
            else:
                parts.append(f" - {body}" if negative else f" + {body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"Polynomial({str(self)!r})"


# Text codec ----------------------------------------------------------------

_SIGNED_TERM_RE = re.compile(r"([+-]?)([^+-]+)")
_NUMBER_RE = re.compile(r"^(\d+)(?:/(\d+))?$")
_POWER_RE = re.compile(r"^([A-Za-z]\w*?)(?:\^(\d+))?$")


def parse_polynomial(text: str) -> Polynomial:
    """Parse the canonical text format; whitespace and term order are free."""
    compact = re.sub(r"\s+", "", text)
    if not compact:
        raise ValueError("empty polynomial text")
    terms: List[Tuple[Scalar, Dict[VariableId, int]]] = []
    pos = 0
    for match in _SIGNED_TERM_RE.finditer(compact):
        if match.start() != pos or (pos and not match.group(1)):
            raise ValueError(f"malformed polynomial text near {compact[pos:pos + 20]!r}")
        pos = match.end()
        sign = -1 if match.group(1) == "-" else 1
        coef: Fraction = Fraction(sign)
        exps: Dict[VariableId, int] = {}
        for factor in match.group(2).split("*"):
            number = _NUMBER_RE.match(factor)
            if number:
                num, den = number.groups()
                if den is not None and int(den) == 0:
                    raise ValueError(f"zero denominator in {factor!r}")
                coef *= Fraction(int(num), int(den) if den else 1)
                continue
            power = _POWER_RE.match(factor)
            if not power:
                raise ValueError(f"cannot parse factor {factor!r}")
            v = parse_variable(power.group(1))
            exps[v] = exps.get(v, 0) + int(power.group(2) or 1)
        terms.append((coef, exps))
    if pos != len(compact):
        raise ValueError(f"trailing characters in polynomial text: {compact[pos:]!r}")
    return Polynomial.from_terms(terms)


# Rational functions --------------------------------------------------------

class RationalFunction:
    """Unreduced quotient ``num / den``; equality is by cross-multiplication."""

    __slots__ = ("num", "den")

    def __init__(
        self,
        num: Union[Polynomial, Scalar],
        den: Union[Polynomial, Scalar] = 1,
    ):
        n = Polynomial._coerce(num)
        d = Polynomial._coerce(den)
        if n is None or d is None:
            raise TypeError("numerator and denominator must be polynomials or rationals")
        if d.is_zero:
            raise ZeroDivisionError("rational function with zero denominator")
        self.num = n
        self.den = d

    @staticmethod
    def _coerce(other: object) -> Optional["RationalFunction"]:
        if isinstance(other, RationalFunction):
            return other
        p = Polynomial._coerce(other)
        return None if p is None else RationalFunction(p)

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def __eq__(self, other: object) -> bool:
        g = self._coerce(other)
        if g is None:
            return NotImplemented
        return rf_equal(self, g)

    __hash__ = None  # type: ignore[assignment]

    def __add__(self, other: object) -> "RationalFunction":
        g = self._coerce(other)
        if g is None:
            return NotImplemented
        if self.den == g.den:
            return RationalFunction(self.num + g.num, self.den)
        return RationalFunction(self.num * g.den + g.num * self.den, self.den * g.den)

    __radd__ = __add__

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other: object) -> "RationalFunction":
        g = self._coerce(other)
        if g is None:
            return NotImplemented
        return self + (-g)

    def __rsub__(self, other: object) -> "RationalFunction":
        g = self._coerce(other)
        if g is None:
            return NotImplemented
        return g + (-self)

    def __mul__(self, other: object) -> "RationalFunction":
        g = self._coerce(other)
        if g is None:
            return NotImplemented
        return RationalFunction(self.num * g.num, self.den * g.den)

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> "RationalFunction":
        g = self._coerce(other)
        if g is None:
            return NotImplemented
        if g.is_zero:
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * g.den, self.den * g.num)

    def evaluate(self, point: Mapping[VariableId, Scalar]) -> Fraction:
        den = self.den.evaluate(point)
        if not den:
            raise ZeroDivisionError("denominator vanishes at the evaluation point")
        return self.num.evaluate(point) / den

    def __str__(self) -> str:
        if self.den == 1:
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def __repr__(self) -> str:
        return f"RationalFunction({str(self)!r})"


def rf_equal(f: RationalFunction, g: RationalFunction) -> bool:
    """True iff f.num * g.den - g.num * f.den is the zero polynomial."""
    return (f.num * g.den - g.num * f.den).is_zero
