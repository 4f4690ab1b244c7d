"""
Exact sparse multivariate polynomials over the rationals and exact rank.

Polynomials are immutable maps Monomial -> nonzero coefficient. Coefficients
are ints whenever possible and Fractions otherwise. Rank is computed by
fraction-free elimination on sparse integer rows.
"""
from enum import IntEnum
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd, lcm
from types import MappingProxyType
from typing import Dict, Iterable, List, Mapping, NamedTuple, Optional, Sequence, Tuple, Union

Rational = Union[int, Fraction]


class MonomialNotInBasis(KeyError):
    """A polynomial term has a monomial outside the requested basis."""


class DimensionMismatch(ValueError):
    """Rows passed to a rank computation have different lengths."""


class VarKind(IntEnum):
    DIAGONAL = 0
    OFF_DIAGONAL = 1
    GENERIC = 2


_GENERIC_LETTERS = "abc"


class VarId(NamedTuple):
    """A commuting variable. Tuple order gives the fixed variable order."""
    kind: VarKind
    indices: Tuple[int, ...]

    def __str__(self):
        if self.kind == VarKind.GENERIC:
            slot, index = self.indices
            return f"{_GENERIC_LETTERS[slot]}{index}"
        p, q, index = self.indices
        return f"x{p}{q}^({index})"


class Monomial(NamedTuple):
    """Sorted (variable, positive exponent) pairs."""
    exponents: Tuple[Tuple[VarId, int], ...] = ()

    @classmethod
    def one(cls) -> "Monomial":
        return _ONE

    @classmethod
    def of(cls, var: VarId, exp: int = 1) -> "Monomial":
        if exp <= 0:
            return _ONE
        return cls(((var, exp),))

    @classmethod
    def from_mapping(cls, exps: Mapping[VarId, int]) -> "Monomial":
        return cls(tuple(sorted((v, e) for v, e in exps.items() if e > 0)))

    @property
    def degree(self) -> int:
        return sum(e for _, e in self.exponents)

    def grlex_key(self):
        return (self.degree, self.exponents)

    def times(self, other: "Monomial") -> "Monomial":
        return _monomial_product(self, other)

    def __str__(self):
        if not self.exponents:
            return "1"
        return "*".join(str(v) if e == 1 else f"{v}^{e}" for v, e in self.exponents)


_ONE = Monomial(())


@lru_cache(maxsize=1 << 16)
def _monomial_product(a: Monomial, b: Monomial) -> Monomial:
    if not a.exponents:
        return b
    if not b.exponents:
        return a
    merged = dict(a.exponents)
    for var, exp in b.exponents:
        merged[var] = merged.get(var, 0) + exp
    return Monomial(tuple(sorted(merged.items())))


def _normalize(c: Rational) -> Rational:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class Polynomial:
    """Immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Monomial, Rational]] = None):
        clean = {}
        if terms:
            for mono, coeff in terms.items():
                if coeff:
                    clean[mono] = _normalize(coeff)
        self._terms = clean
        self._hash = None

    @classmethod
    def _from_clean(cls, terms: Dict[Monomial, Rational]) -> "Polynomial":
        poly = cls.__new__(cls)
        poly._terms = terms
        poly._hash = None
        return poly

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls._from_clean({})

    @classmethod
    def constant(cls, c: Rational) -> "Polynomial":
        return cls({_ONE: c})

    @classmethod
    def variable(cls, var: VarId, coeff: Rational = 1) -> "Polynomial":
        return cls({Monomial.of(var): coeff})

    @property
    def terms(self) -> Mapping[Monomial, Rational]:
        return MappingProxyType(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def monomials(self) -> List[Monomial]:
        return sorted(self._terms, key=Monomial.grlex_key)

    def variables(self) -> List[VarId]:
        return sorted({v for mono in self._terms for v, _ in mono.exponents})

    def coefficient(self, mono: Monomial) -> Rational:
        return self._terms.get(mono, 0)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == ({_ONE: other} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __neg__(self):
        return Polynomial._from_clean({m: -c for m, c in self._terms.items()})

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return poly_add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return poly_add(self, -other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return poly_add(other, -self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, Polynomial):
            return poly_mul(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def scale(self, c: Rational) -> "Polynomial":
        if not c:
            return Polynomial.zero()
        return Polynomial._from_clean({m: _normalize(v * c) for m, v in self._terms.items()})

    def __repr__(self):
        return f"Polynomial({str(self)!r})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for mono in self.monomials():
            coeff = self._terms[mono]
            if mono.exponents and coeff == 1:
                parts.append(str(mono))
            elif mono.exponents and coeff == -1:
                parts.append(f"-{mono}")
            elif mono.exponents:
                parts.append(f"{coeff}*{mono}")
            else:
                parts.append(str(coeff))
        return " + ".join(parts).replace("+ -", "- ")


def _coerce(value) -> Optional[Polynomial]:
    if isinstance(value, Polynomial):
        return value
    if isinstance(value, (int, Fraction)):
        return Polynomial.constant(value)
    return None


def poly_add(a: Polynomial, b: Polynomial) -> Polynomial:
    if not b._terms:
        return a
    if not a._terms:
        return b
    terms = dict(a._terms)
    for mono, coeff in b._terms.items():
        value = terms.get(mono, 0) + coeff
        if value:
            terms[mono] = _normalize(value)
        else:
            terms.pop(mono, None)
    return Polynomial._from_clean(terms)


def poly_mul(a: Polynomial, b: Polynomial) -> Polynomial:
    if not a._terms or not b._terms:
        return Polynomial.zero()
    terms: Dict[Monomial, Rational] = {}
    for ma, ca in a._terms.items():
        for mb, cb in b._terms.items():
            mono = _monomial_product(ma, mb)
            value = terms.get(mono, 0) + ca * cb
            if value:
                terms[mono] = value
            else:
                del terms[mono]
    return Polynomial._from_clean({m: _normalize(c) for m, c in terms.items()})


def poly_sum(polys: Iterable[Polynomial]) -> Polynomial:
    return reduce(poly_add, polys, Polynomial.zero())


def basis_index(basis: Sequence[Monomial]) -> Dict[Monomial, int]:
    return {mono: i for i, mono in enumerate(basis)}


def coeff_items(p: Polynomial, index: Mapping[Monomial, int]) -> List[Tuple[int, Rational]]:
    """Sparse form of coeff_vector: (position, coefficient) pairs."""
    items = []
    for mono, coeff in p.terms.items():
        try:
            items.append((index[mono], coeff))
        except KeyError:
            raise MonomialNotInBasis(f"monomial {mono} is not in the basis") from None
    return items


def coeff_vector(p: Polynomial, basis: Sequence[Monomial]) -> List[Rational]:
    vector: List[Rational] = [0] * len(basis)
    for position, coeff in coeff_items(p, basis_index(basis)):
        vector[position] = coeff
    return vector


def _primitive(row: Dict[int, int]) -> Dict[int, int]:
    """Divide by the content and make the leading entry positive."""
    content = reduce(gcd, row.values())
    if row[min(row)] < 0:
        content = -content
    if content != 1:
        row = {c: v // content for c, v in row.items()}
    return row


def _integer_row(items: Iterable[Tuple[int, Rational]]) -> Dict[int, int]:
    entries = [(c, v) for c, v in items if v]
    if not entries:
        return {}
    denominators = [v.denominator for _, v in entries if isinstance(v, Fraction)]
    if denominators:
        scale = lcm(*denominators)
        entries = [(c, int(v * scale)) for c, v in entries]
    return _primitive(dict(entries))


class RankAccumulator:
    """Incremental echelon basis over the rationals using integer rows.

    Each stored row is primitive and keyed by its pivot (smallest column).
    Reduction cross-multiplies by gcd-reduced pivot factors, so no fractions
    appear; content is removed after every step.
    """

    def __init__(self, width: Optional[int] = None):
        self.width = width
        self._pivots: Dict[int, Dict[int, int]] = {}
        self._seen = set()

    @property
    def rank(self) -> int:
        return len(self._pivots)

    @property
    def is_full(self) -> bool:
        return self.width is not None and self.rank >= self.width

    def add_vector(self, vector: Sequence[Rational]) -> bool:
        if self.width is None:
            self.width = len(vector)
        elif len(vector) != self.width:
            raise DimensionMismatch(f"row of length {len(vector)} in a rank computation of width {self.width}")
        return self.add_sparse(enumerate(vector))

    def add_sparse(self, items: Iterable[Tuple[int, Rational]]) -> bool:
        """Insert a row given as (column, value) pairs; True if the rank grew."""
        row = _integer_row(items)
        if not row:
            return False
        key = frozenset(row.items())
        if key in self._seen:
            return False
        self._seen.add(key)

        pivots = self._pivots
        while row:
            col = min(row)
            base = pivots.get(col)
            if base is None:
                pivots[col] = row
                return True
            a, b = base[col], row[col]
            g = gcd(a, b)
            fa, fb = a // g, b // g
            reduced = {}
            for c in row.keys() | base.keys():
                value = fa * row.get(c, 0) - fb * base.get(c, 0)
                if value:
                    reduced[c] = value
            row = _primitive(reduced) if reduced else reduced
        return False


def exact_rank(rows: Sequence[Sequence[Rational]]) -> int:
    """Rank over Q of the given rows, computed exactly."""
    acc = RankAccumulator()
    for row in rows:
        acc.add_vector(row)
    return acc.rank


def rational_rank(rows: Sequence[Sequence[Rational]]) -> int:
    """Rank by Gauss-Jordan elimination over Fractions."""
    if not rows:
        return 0
    width = len(rows[0])
    if any(len(row) != width for row in rows):
        raise DimensionMismatch("ragged rows")
    matrix = [[Fraction(v) for v in row] for row in rows]
    rank = 0
    for col in range(width):
        pivot = next((r for r in range(rank, len(matrix)) if matrix[r][col] != 0), None)
        if pivot is None:
            continue
        matrix[rank], matrix[pivot] = matrix[pivot], matrix[rank]
        lead = matrix[rank][col]
        matrix[rank] = [v / lead for v in matrix[rank]]
        for r in range(len(matrix)):
            if r != rank and matrix[r][col] != 0:
                factor = matrix[r][col]
                matrix[r] = [v - factor * w for v, w in zip(matrix[r], matrix[rank])]
        rank += 1
        if rank == len(matrix):
            break
    return rank
