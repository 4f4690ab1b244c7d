"""
Graded Lie algebra models realized by generic matrices.

Three gradings of sl2 (by Z2, Z2 x Z2 and Z) and the Z_n-grading of sl_n in
which degree i is spanned by the matrix units e_pq with q - p = i mod n.
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Mapping, Sequence, Tuple, Union

from algebra.poly import Polynomial, VarId, VarKind, poly_add, poly_mul, poly_sum

Degree = Union[int, Tuple[int, int]]
Letter = Tuple[Degree, int]


class UnsupportedFamily(ValueError):
    """Unknown grading family or invalid matrix size for it."""


class SizeMismatch(ValueError):
    """Matrices of different sizes were combined."""


class UnknownLetter(KeyError):
    """A word uses a letter that has no generic generator."""


class Family(Enum):
    SL2_Z2 = "sl2-z2"
    SL2_Z2xZ2 = "sl2-z2xz2"
    SL2_Z = "sl2-z"
    SLN_VASILOVSKY = "sln"

    @classmethod
    def parse(cls, value) -> "Family":
        if isinstance(value, cls):
            return value
        try:
            return cls(value)
        except ValueError:
            try:
                return cls[str(value)]
            except KeyError:
                raise UnsupportedFamily(f"unknown grading family: {value!r}") from None

    @property
    def is_sl2(self) -> bool:
        return self is not Family.SLN_VASILOVSKY


SL2_FAMILIES = (Family.SL2_Z2, Family.SL2_Z2xZ2, Family.SL2_Z)

# sl2 basis as integer 2x2 matrices
_H = ((1, 0), (0, -1))
_E = ((0, 1), (0, 0))
_F = ((0, 0), (1, 0))
_E_PLUS_F = ((0, 1), (1, 0))
_E_MINUS_F = ((0, 1), (-1, 0))

# degree -> [(basis matrix, variable slot)]; slots 0/1/2 print as a/b/c
_SL2_TEMPLATES = {
    Family.SL2_Z2: {0: [(_H, 0)], 1: [(_E, 1), (_F, 2)]},
    Family.SL2_Z2xZ2: {(1, 0): [(_H, 0)], (0, 1): [(_E_PLUS_F, 1)], (1, 1): [(_E_MINUS_F, 2)]},
    Family.SL2_Z: {-1: [(_E, 0)], 0: [(_H, 1)], 1: [(_F, 2)]},
}


@dataclass(frozen=True)
class GradingSpec:
    family: Family
    n: int
    group_elements: Tuple[Degree, ...]
    component_dims: Tuple[Tuple[Degree, int], ...]

    @property
    def label(self) -> str:
        if self.family is Family.SLN_VASILOVSKY:
            return f"sln-n{self.n}"
        return self.family.value

    def add(self, g: Degree, h: Degree) -> Degree:
        if self.family is Family.SL2_Z2:
            return (g + h) % 2
        if self.family is Family.SL2_Z2xZ2:
            return ((g[0] + h[0]) % 2, (g[1] + h[1]) % 2)
        if self.family is Family.SL2_Z:
            return g + h
        return (g + h) % self.n

    def is_identity(self, g: Degree) -> bool:
        return g == ((0, 0) if self.family is Family.SL2_Z2xZ2 else 0)

    def dim_of(self, g: Degree) -> int:
        return dict(self.component_dims).get(g, 0)

    def letters(self, k: int) -> List[Letter]:
        """All generator letters in the fixed letter order."""
        return sorted((g, r) for g in self.group_elements for r in range(1, k + 1))


def grading_spec(family, n: int = None) -> GradingSpec:
    family = Family.parse(family)
    if family is Family.SL2_Z2:
        return GradingSpec(family, 2, (0, 1), ((0, 1), (1, 2)))
    if family is Family.SL2_Z2xZ2:
        degrees = ((1, 0), (0, 1), (1, 1))
        return GradingSpec(family, 2, degrees, tuple((g, 1) for g in degrees))
    if family is Family.SL2_Z:
        return GradingSpec(family, 2, (-1, 0, 1), ((-1, 1), (0, 1), (1, 1)))
    if n is None or n < 2:
        raise UnsupportedFamily(f"the Z_n-graded sl_n model needs n >= 2, got {n!r}")
    return GradingSpec(family, n, tuple(range(n)),
                       tuple((i, n - 1 if i == 0 else n) for i in range(n)))


@dataclass(frozen=True)
class GenericMatrix:
    size: int
    entries: Tuple[Tuple[Polynomial, ...], ...]
    degree: Degree
    grading: GradingSpec = field(compare=False, repr=False)

    @classmethod
    def zero(cls, spec: GradingSpec, degree: Degree) -> "GenericMatrix":
        row = tuple(Polynomial.zero() for _ in range(spec.n))
        return cls(spec.n, tuple(row for _ in range(spec.n)), degree, spec)

    def entry(self, p: int, q: int) -> Polynomial:
        """1-based access, matching matrix-unit notation."""
        return self.entries[p - 1][q - 1]

    def trace(self) -> Polynomial:
        return poly_sum(self.entries[i][i] for i in range(self.size))

    def is_traceless(self) -> bool:
        return self.trace().is_zero()

    def is_zero(self) -> bool:
        return all(entry.is_zero() for row in self.entries for entry in row)

    def support_positions(self) -> List[Tuple[int, int]]:
        return [(p + 1, q + 1) for p, row in enumerate(self.entries)
                for q, entry in enumerate(row) if not entry.is_zero()]

    def __neg__(self):
        return GenericMatrix(self.size, tuple(tuple(-e for e in row) for row in self.entries),
                             self.degree, self.grading)

    def __str__(self):
        return "[" + "; ".join(", ".join(str(e) for e in row) for row in self.entries) + "]"


def _product_entries(a: GenericMatrix, b: GenericMatrix):
    n = a.size
    zero = Polynomial.zero()
    out = [[zero] * n for _ in range(n)]
    for i in range(n):
        for t in range(n):
            left = a.entries[i][t]
            if left.is_zero():
                continue
            row_b = b.entries[t]
            for j in range(n):
                if not row_b[j].is_zero():
                    out[i][j] = poly_add(out[i][j], poly_mul(left, row_b[j]))
    return out


def _check_sizes(a: GenericMatrix, b: GenericMatrix):
    if a.size != b.size:
        raise SizeMismatch(f"cannot combine {a.size}x{a.size} with {b.size}x{b.size}")


def matrix_product(a: GenericMatrix, b: GenericMatrix) -> GenericMatrix:
    """Associative product AB; the degree is the sum of degrees."""
    _check_sizes(a, b)
    out = _product_entries(a, b)
    return GenericMatrix(a.size, tuple(map(tuple, out)), a.grading.add(a.degree, b.degree), a.grading)


def bracket(a: GenericMatrix, b: GenericMatrix) -> GenericMatrix:
    """Commutator AB - BA."""
    _check_sizes(a, b)
    spec = a.grading
    degree = spec.add(a.degree, b.degree)
    if spec.dim_of(degree) == 0 or a.is_zero() or b.is_zero():
        return GenericMatrix.zero(spec, degree)
    ab = _product_entries(a, b)
    ba = _product_entries(b, a)
    entries = tuple(tuple(poly_add(x, -y) for x, y in zip(row_ab, row_ba)) for row_ab, row_ba in zip(ab, ba))
    return GenericMatrix(a.size, entries, degree, spec)


def _sl2_generator(spec: GradingSpec, degree: Degree, r: int) -> GenericMatrix:
    cells = [[Polynomial.zero(), Polynomial.zero()], [Polynomial.zero(), Polynomial.zero()]]
    for basis, slot in _SL2_TEMPLATES[spec.family][degree]:
        var = Polynomial.variable(VarId(VarKind.GENERIC, (slot, r)))
        for p in range(2):
            for q in range(2):
                if basis[p][q]:
                    cells[p][q] = poly_add(cells[p][q], var.scale(basis[p][q]))
    return GenericMatrix(2, tuple(map(tuple, cells)), degree, spec)


def _sln_generator(spec: GradingSpec, degree: int, r: int) -> GenericMatrix:
    n = spec.n
    cells = [[Polynomial.zero()] * n for _ in range(n)]
    if degree == 0:
        diagonal = [Polynomial.variable(VarId(VarKind.DIAGONAL, (i, i, r))) for i in range(1, n)]
        for i, var in enumerate(diagonal):
            cells[i][i] = var
        cells[n - 1][n - 1] = -poly_sum(diagonal)
    else:
        for p in range(1, n + 1):
            for q in range(1, n + 1):
                if (q - p) % n == degree:
                    cells[p - 1][q - 1] = Polynomial.variable(VarId(VarKind.OFF_DIAGONAL, (p, q, r)))
    return GenericMatrix(n, tuple(map(tuple, cells)), degree, spec)


def generic_generators(spec: GradingSpec, k: int) -> Dict[Letter, GenericMatrix]:
    """One generic homogeneous element per (degree, index 1..k)."""
    if not isinstance(spec, GradingSpec) or not isinstance(spec.family, Family):
        raise UnsupportedFamily(f"unsupported grading specification: {spec!r}")
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    build = _sln_generator if spec.family is Family.SLN_VASILOVSKY else _sl2_generator
    return {(g, r): build(spec, g, r) for g, r in spec.letters(k)}


@dataclass(frozen=True)
class LieWord:
    """Letters read left-normed: [[...[l1, l2], l3]..., lr]."""
    letters: Tuple[Letter, ...]

    def __post_init__(self):
        if not self.letters:
            raise ValueError("a Lie word needs at least one letter")
        object.__setattr__(self, "letters", tuple(tuple(letter) for letter in self.letters))

    def __len__(self):
        return len(self.letters)


def evaluate_word(word: Union[LieWord, Sequence[Letter]], gens: Mapping[Letter, GenericMatrix]) -> GenericMatrix:
    letters = word.letters if isinstance(word, LieWord) else tuple(word)
    try:
        result = gens[letters[0]]
        for letter in letters[1:]:
            result = bracket(result, gens[letter])
    except KeyError as e:
        raise UnknownLetter(f"no generator for letter {e.args[0]!r}") from None
    return result


def evaluate_product(word: Sequence[Letter], gens: Mapping[Letter, GenericMatrix]) -> GenericMatrix:
    """Associative product of the generators along the word."""
    try:
        result = gens[word[0]]
        for letter in word[1:]:
            result = matrix_product(result, gens[letter])
    except KeyError as e:
        raise UnknownLetter(f"no generator for letter {e.args[0]!r}") from None
    return result
