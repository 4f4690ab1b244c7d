"""
Closed-form growth of the three graded sl2 models.

The cocharacter multiplicities are 0 or 1 and every multiplicity-1 shape has
one or two rows, so a_m is a sum of products of one- and two-row Schur
dimension counts. fit_degree recovers the polynomial degree of g(n) from
exact values.
"""
from dataclasses import asdict, dataclass
from typing import Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from algebra.graded_model import SL2_FAMILIES, Family, grading_spec
from combinatorics.tableaux import Partition, schur_dim
from config.system_config import SystemConfig
from growth.spanning import GrowthTable, Method
from utils.logger import get_logger, log_function_call

log = get_logger("cocharacter")


class ArityMismatch(ValueError):
    """Number of partitions does not match the number of grading degrees."""


class InvalidDegree(ValueError):
    """Total degree outside the range a formula covers."""


class InsufficientData(ValueError):
    """Too few sample points for the requested degree bound."""


_ARITY = {Family.SL2_Z2: 2, Family.SL2_Z2xZ2: 3, Family.SL2_Z: 3}


def _sl2_family(family) -> Family:
    family = Family.parse(family)
    if family not in SL2_FAMILIES:
        raise InvalidDegree(f"no cocharacter formula for {family.value}")
    return family


@dataclass(frozen=True)
class MultiPartition:
    """One partition per grading degree, in the family's support order."""
    components: Tuple[Partition, ...]

    @classmethod
    def of(cls, *parts: Sequence[int]) -> "MultiPartition":
        return cls(tuple(Partition(tuple(p)) for p in parts))

    @property
    def degrees(self) -> Tuple[int, ...]:
        return tuple(c.size for c in self.components)

    @property
    def total(self) -> int:
        return sum(self.degrees)

    def __str__(self):
        return "<" + ", ".join(str(c) for c in self.components) + ">"


def _one_row(shape: Partition) -> bool:
    return shape.rows <= 1


def multiplicity(family, mp: MultiPartition, m: int) -> int:
    family = _sl2_family(family)
    if len(mp.components) != _ARITY[family]:
        raise ArityMismatch(f"{family.value} needs {_ARITY[family]} partitions, got {len(mp.components)}")
    if mp.total != m:
        raise ValueError(f"multipartition {mp} has total {mp.total}, expected {m}")

    if family is Family.SL2_Z2:
        sigma, tau = mp.components
        if not _one_row(sigma) or tau.rows > 2:
            return 0
        p = sigma.size
        q = tau.parts[1] if tau.rows == 2 else 0
        r = m - p - 2 * q
        if p == m or r == m:
            return 0
        return 1 if (r % 2 == 1 or (p + q) % 2 == 1) else 0

    if not all(_one_row(c) for c in mp.components):
        return 0
    p, q, r = mp.degrees
    if m in (p, q, r):
        return 0
    if family is Family.SL2_Z2xZ2:
        return 1 if ((p + q) % 2 == 1 or (q + r) % 2 == 1) else 0
    return 1 if abs(p - r) <= 1 else 0


def _row(size: int) -> Tuple[int, ...]:
    return (size,) if size else ()


def admissible_multipartitions(family, m: int) -> Iterator[MultiPartition]:
    """Multipartitions of total m with multiplicity 1, size splits first."""
    family = _sl2_family(family)
    if family is Family.SL2_Z2:
        for p in range(m + 1):
            for q in range((m - p) // 2 + 1):
                r = m - p - 2 * q
                candidate = MultiPartition.of(_row(p), tuple(x for x in (q + r, q) if x))
                if multiplicity(family, candidate, m):
                    yield candidate
        return
    for p in range(m + 1):
        for q in range(m - p + 1):
            candidate = MultiPartition.of(_row(p), _row(q), _row(m - p - q))
            if multiplicity(family, candidate, m):
                yield candidate


def a_m_formula(family, k: int, m: int) -> int:
    if m < 2:
        raise InvalidDegree(f"the cocharacter formula covers m >= 2, got {m}")
    total = 0
    for mp in admissible_multipartitions(family, m):
        term = 1
        for shape in mp.components:
            term *= schur_dim(shape, k)
            if not term:
                break
        total += term
    return total


def a_1_direct(family, k: int) -> int:
    """Degree-1 component: one generator per index and supported degree."""
    return k * len(grading_spec(family).group_elements)


def a_m(family, k: int, m: int) -> int:
    if m == 1:
        return a_1_direct(family, k)
    return a_m_formula(family, k, m)


def growth(family, k: int, n: int) -> int:
    """g(n) = sum of a_m for 1 <= m <= n."""
    return sum(a_m(family, k, m) for m in range(1, n + 1))


def growth_sequence(family, k: int, m_max: int) -> List[Tuple[int, int]]:
    sequence, running = [], 0
    for m in range(1, m_max + 1):
        running += a_m(family, k, m)
        sequence.append((m, running))
    return sequence


@log_function_call("cocharacter")
def growth_table_formula(family, k: int, m_max: int) -> GrowthTable:
    family = _sl2_family(family)
    return GrowthTable({m: a_m(family, k, m) for m in range(1, m_max + 1)}, k, family.value, Method.FORMULA)


def expected_gk_dimension(family, k: int, n: Optional[int] = None) -> int:
    """GK dimension stated for each model: 3k-1, 3k+1, 3k-1, and k(n^2-1)-n+1 for sl_n."""
    family = Family.parse(family)
    if family is Family.SL2_Z2xZ2:
        return 3 * k + 1
    if family is Family.SLN_VASILOVSKY:
        return k * (n * n - 1) - n + 1
    return 3 * k - 1


@dataclass
class FitReport:
    degree: Optional[int]
    window: Tuple[int, int]
    stable: bool
    stride: Optional[int] = None

    def to_dict(self):
        data = asdict(self)
        data["window"] = list(self.window)
        return data


def _is_eventually_constant(diffs: np.ndarray, tail: int) -> bool:
    if len(diffs) < tail:
        return False
    last = diffs[-tail:]
    return bool(np.all(last == last[0]))


def _class_degree(values: np.ndarray, max_degree: int) -> Optional[int]:
    for d in range(max_degree + 1):
        diffs = np.diff(values, n=d) if d else values
        tail = max(2, len(diffs) // 2)
        if len(diffs) < 2:
            return None
        if _is_eventually_constant(diffs, tail):
            return d
    return None


def _detect(values: Sequence[int], max_degree: int, strides: Sequence[int]) -> Tuple[Optional[int], Optional[int]]:
    series = np.array([int(v) for v in values], dtype=object)
    for stride in strides:
        degrees = [_class_degree(series[offset::stride], max_degree) for offset in range(stride)]
        if degrees and all(d is not None for d in degrees):
            return max(degrees), stride
    return None, None


def _as_values(samples) -> Tuple[List[int], Tuple[int, int]]:
    samples = list(samples)
    if samples and isinstance(samples[0], (tuple, list)):
        ms = [int(m) for m, _ in samples]
        values = [int(v) for _, v in samples]
        return values, (ms[0], ms[-1])
    return [int(v) for v in samples], (1, len(samples))


@log_function_call("cocharacter")
def fit_degree(samples, max_degree: Optional[int] = None,
               strides: Sequence[int] = SystemConfig.FIT_STRIDES) -> FitReport:
    """Smallest d whose d-th finite differences are eventually constant.

    samples are (m, g(m)) pairs at consecutive m, or bare values for
    m = 1, 2, .... Each stride s splits the samples into s residue classes
    and the degree is the maximum over classes. The fit is stable when the
    window that drops the first few samples gives the same degree.
    """
    values, window = _as_values(samples)
    extra = SystemConfig.FIT_MIN_EXTRA_POINTS
    if max_degree is None:
        max_degree = (len(values) - extra) // 2
        if max_degree < 0:
            raise InsufficientData(f"need at least {extra} samples, got {len(values)}")
    required = 2 * max_degree + extra
    if len(values) < required:
        raise InsufficientData(
            f"degree bound {max_degree} needs at least {required} samples, got {len(values)}"
        )

    degree, stride = _detect(values, max_degree, strides)
    shift = SystemConfig.FIT_STABILITY_SHIFT
    later, _ = _detect(values[shift:], max_degree, strides)
    stable = degree is not None and degree == later
    log.debug(f"fit over m={window[0]}..{window[1]}: degree {degree}, stride {stride}, stable {stable}")
    return FitReport(degree, window, stable, stride)
