"""
Multihomogeneous components of the relatively free graded Lie algebra.

Left-normed words of a multidegree are evaluated on generic generators and
the dimension of the component is the exact rank of their coefficient
vectors. Associative products under the word filter of the K[X]-module are
handled the same way.
"""
import threading
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from itertools import combinations_with_replacement
from math import factorial, prod
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from sympy.utilities.iterables import multiset_permutations

from algebra.graded_model import (
    Family,
    GenericMatrix,
    GradingSpec,
    Letter,
    LieWord,
    UnsupportedFamily,
    bracket,
    evaluate_product,
    generic_generators,
    matrix_product,
)
from algebra.poly import Monomial, RankAccumulator, basis_index, coeff_items
from config.system_config import SystemConfig
from utils.logger import get_logger, log_function_call

log = get_logger("spanning")


class EmptyMultiDegree(ValueError):
    """A multidegree with total degree 0."""


class ResourceLimitExceeded(RuntimeError):
    """Word enumeration would exceed the configured cap."""


@dataclass(frozen=True)
class MultiDegree:
    """Occurrence count per letter; zero counts are dropped, letters sorted."""
    counts: Tuple[Tuple[Letter, int], ...]

    def __post_init__(self):
        if any(c < 0 for _, c in self.counts):
            raise ValueError("multidegree counts must be nonnegative")
        object.__setattr__(self, "counts", tuple(sorted((tuple(l), c) for l, c in self.counts if c > 0)))

    @classmethod
    def from_mapping(cls, counts: Mapping[Letter, int]) -> "MultiDegree":
        return cls(tuple(counts.items()))

    @classmethod
    def from_letters(cls, letters: Sequence[Letter]) -> "MultiDegree":
        return cls(tuple(Counter(tuple(l) for l in letters).items()))

    @property
    def total(self) -> int:
        return sum(c for _, c in self.counts)

    def letters(self) -> List[Letter]:
        return [letter for letter, _ in self.counts]

    def as_dict(self) -> Dict[Letter, int]:
        return dict(self.counts)

    def key(self) -> str:
        return "|".join(f"{g}:{r}^{c}" for (g, r), c in self.counts)

    def relabel(self, mapping: Mapping[Letter, Letter]) -> "MultiDegree":
        return MultiDegree(tuple((mapping.get(l, l), c) for l, c in self.counts))


class Method(Enum):
    BRUTE_FORCE = "brute_force"
    FORMULA = "formula"


@dataclass
class GrowthTable:
    """a_m per total degree m for one model."""
    entries: Dict[int, int]
    k: int
    family: str
    method: Method

    def partial_sums(self) -> Dict[int, int]:
        sums, running = {}, 0
        for m in sorted(self.entries):
            running += self.entries[m]
            sums[m] = running
        return sums

    def growth(self, n: int) -> int:
        return sum(a for m, a in self.entries.items() if m <= n)

    def is_monotone(self) -> bool:
        values = list(self.partial_sums().values())
        return all(a <= b for a, b in zip(values, values[1:]))


def _first_letters(md: MultiDegree, fix_first: bool) -> List[Letter]:
    order = md.letters()
    return order[:1] if fix_first else order


def enumerate_words(md: MultiDegree, fix_first: bool = False) -> List[LieWord]:
    """Distinct letter sequences realizing md, in lexicographic letter order."""
    if md.total < 1:
        raise EmptyMultiDegree("cannot enumerate words of total degree 0")
    pool = [letter for letter, count in md.counts for _ in range(count)]
    words = []
    for first in _first_letters(md, fix_first):
        rest = list(pool)
        rest.remove(first)
        for tail in multiset_permutations(rest):
            words.append(LieWord((first,) + tuple(tail)))
    return words


def count_words(md: MultiDegree, fix_first: bool = False) -> int:
    """Number of words enumerate_words would return, without enumerating."""
    if md.total < 1:
        return 0
    counts = [c for _, c in md.counts]
    if fix_first:
        counts[0] -= 1
        return factorial(md.total - 1) // prod(factorial(c) for c in counts)
    return factorial(md.total) // prod(factorial(c) for c in counts)


def iter_multidegrees(spec: GradingSpec, k: int, m: int) -> Iterator[MultiDegree]:
    """All multidegrees of total m over the letters of spec, deterministic order."""
    letters = spec.letters(k)

    def compositions(position: int, left: int):
        if position == len(letters) - 1:
            yield (left,)
            return
        for c in range(left, -1, -1):
            for rest in compositions(position + 1, left - c):
                yield (c,) + rest

    for parts in compositions(0, m):
        yield MultiDegree(tuple(zip(letters, parts)))


def max_word_count(spec: GradingSpec, k: int, m: int, fix_first: bool = False) -> int:
    """Word count of the most balanced multidegree of total m."""
    size = len(spec.letters(k))
    base, extra = divmod(m, size)
    parts = [base + 1] * extra + [base] * (size - extra)
    return count_words(MultiDegree(tuple(zip(spec.letters(k), parts))), fix_first)


def check_word_budget(spec: GradingSpec, k: int, m_max: int, cap: int, fix_first: bool = False):
    for m in range(2, m_max + 1):
        words = max_word_count(spec, k, m, fix_first)
        if words > cap:
            raise ResourceLimitExceeded(
                f"{spec.label} with k={k} needs {words} words for one multidegree at m={m}; "
                f"the cap is {cap} words per multidegree (raise it with --word-cap)"
            )


class ComponentDimStore:
    """Thread-safe memo of component dimensions with optional write-through
    to a DatabaseManager."""

    def __init__(self, database=None):
        self._values: Dict[tuple, int] = {}
        self._lock = threading.Lock()
        self.database = database
        self.hits = 0

    def get(self, key: tuple) -> Optional[int]:
        with self._lock:
            value = self._values.get(key)
            if value is not None:
                self.hits += 1
                return value
        if self.database is not None:
            value = self.database.get_dimension(*key)
            if value is not None:
                with self._lock:
                    self._values.setdefault(key, value)
                    self.hits += 1
        return value

    def put(self, key: tuple, value: int):
        with self._lock:
            existing = self._values.setdefault(key, value)
        if existing != value:
            log.error(f"Conflicting memo values for {key}: {existing} != {value}")
        elif self.database is not None:
            self.database.save_dimension(*key, value)

    def clear(self):
        with self._lock:
            self._values.clear()
            self.hits = 0

    def __len__(self):
        with self._lock:
            return len(self._values)


_default_store: Optional[ComponentDimStore] = None
_store_lock = threading.Lock()


def get_default_store() -> ComponentDimStore:
    global _default_store
    with _store_lock:
        if _default_store is None:
            database = None
            cache_dir = SystemConfig.cache_dir()
            if cache_dir is not None:
                from database.models import DatabaseManager
                database = DatabaseManager.for_directory(cache_dir)
                log.info(f"Persistent memo store at {cache_dir}")
            _default_store = ComponentDimStore(database)
        return _default_store


def set_default_store(store: Optional[ComponentDimStore]):
    global _default_store
    with _store_lock:
        _default_store = store


@lru_cache(maxsize=64)
def _generators(spec: GradingSpec, k: int) -> Dict[Letter, GenericMatrix]:
    return generic_generators(spec, k)


@lru_cache(maxsize=256)
def _generator_variables(spec: GradingSpec, k: int, letter: Letter):
    matrix = _generators(spec, k)[letter]
    return sorted({v for row in matrix.entries for entry in row for v in entry.variables()})


def multidegree_basis(spec: GradingSpec, k: int, md: MultiDegree) -> List[Monomial]:
    """Every monomial of the prescribed multidegree, graded-lex ordered."""
    monomials = [Monomial.one()]
    for letter, count in md.counts:
        variables = _generator_variables(spec, k, letter)
        powers = [Monomial.from_mapping(Counter(choice))
                  for choice in combinations_with_replacement(variables, count)]
        monomials = [a.times(b) for a in monomials for b in powers]
    return sorted(monomials, key=Monomial.grlex_key)


def _row_items(matrix: GenericMatrix, index: Mapping[Monomial, int]):
    width = len(index)
    n = matrix.size
    for p, row in enumerate(matrix.entries):
        for q, entry in enumerate(row):
            if entry:
                offset = (p * n + q) * width
                for position, coeff in coeff_items(entry, index):
                    yield offset + position, coeff


def _iter_lie_evaluations(gens: Mapping[Letter, GenericMatrix], md: MultiDegree,
                          fix_first: bool) -> Iterator[GenericMatrix]:
    """Left-normed evaluations sharing prefixes; zero prefixes prune."""
    remaining = md.as_dict()
    order = md.letters()
    total = md.total

    def extend(current: GenericMatrix, depth: int):
        if depth == total:
            yield current
            return
        for letter in order:
            if remaining[letter]:
                remaining[letter] -= 1
                nxt = bracket(current, gens[letter])
                if not nxt.is_zero():
                    yield from extend(nxt, depth + 1)
                remaining[letter] += 1

    for first in _first_letters(md, fix_first):
        remaining[first] -= 1
        yield from extend(gens[first], 1)
        remaining[first] += 1


def _validate_multidegree(spec: GradingSpec, k: int, md: MultiDegree):
    for g, r in md.letters():
        if g not in spec.group_elements or not 1 <= r <= k:
            raise ValueError(f"letter {(g, r)!r} is outside the support of {spec.label} with k={k}")


def component_dim(spec: GradingSpec, k: int, md: MultiDegree, fix_first: bool = False,
                  store: Optional[ComponentDimStore] = None, word_cap: Optional[int] = None) -> int:
    """Dimension of the multihomogeneous component of multidegree md."""
    if md.total < 1:
        raise EmptyMultiDegree("component of total degree 0")
    _validate_multidegree(spec, k, md)
    if md.total == 1:
        (g, _), = md.letters()
        return 1 if spec.dim_of(g) else 0

    cap = SystemConfig.WORD_CAP if word_cap is None else word_cap
    words = count_words(md, fix_first)
    if words > cap:
        raise ResourceLimitExceeded(
            f"multidegree {md.key()} of {spec.label} needs {words} words; the cap is {cap} words per multidegree"
        )

    store = get_default_store() if store is None else store
    key = (spec.label, k, md.key(), fix_first)
    cached = store.get(key)
    if cached is not None:
        return cached

    gens = _generators(spec, k)
    index = basis_index(multidegree_basis(spec, k, md))
    acc = RankAccumulator(spec.n * spec.n * len(index))
    for matrix in _iter_lie_evaluations(gens, md, fix_first):
        acc.add_sparse(_row_items(matrix, index))
        if acc.is_full:
            break
    log.debug(f"{spec.label} {md.key()}: {words} words, rank {acc.rank}")
    store.put(key, acc.rank)
    return acc.rank


def _component_dim_task(args) -> int:
    spec, k, md, fix_first, word_cap = args
    return component_dim(spec, k, md, fix_first=fix_first, word_cap=word_cap)


def component_dims(spec: GradingSpec, k: int, m: int, fix_first: bool = False,
                   store: Optional[ComponentDimStore] = None, word_cap: Optional[int] = None,
                   workers: int = 1) -> List[Tuple[MultiDegree, int]]:
    """(multidegree, dimension) for every multidegree of total m, in enumeration order."""
    mds = list(iter_multidegrees(spec, k, m))
    if workers > 1 and m > 1:
        store = get_default_store() if store is None else store
        known = {md: store.get((spec.label, k, md.key(), fix_first)) for md in mds}
        pending = [md for md in mds if known[md] is None]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            computed = pool.map(_component_dim_task, [(spec, k, md, fix_first, word_cap) for md in pending])
            for md, dim in zip(pending, computed):
                store.put((spec.label, k, md.key(), fix_first), dim)
                known[md] = dim
        dims = [known[md] for md in mds]
    else:
        dims = [component_dim(spec, k, md, fix_first, store, word_cap) for md in mds]
    return list(zip(mds, dims))


def a_m_bruteforce(spec: GradingSpec, k: int, m: int, fix_first: bool = False,
                   store: Optional[ComponentDimStore] = None, word_cap: Optional[int] = None,
                   workers: int = 1) -> int:
    if m < 1:
        raise ValueError(f"total degree must be positive, got {m}")
    total = sum(dim for _, dim in component_dims(spec, k, m, fix_first, store, word_cap, workers))
    log.info(f"{spec.label} k={k}: a_{m} = {total} (brute force)")
    return total


@log_function_call("spanning")
def growth_table_bruteforce(spec: GradingSpec, k: int, m_max: int, **options) -> GrowthTable:
    entries = {m: a_m_bruteforce(spec, k, m, **options) for m in range(1, m_max + 1)}
    return GrowthTable(entries, k, spec.label, Method.BRUTE_FORCE)


def _require_sln(spec: GradingSpec):
    if spec.family is not Family.SLN_VASILOVSKY:
        raise UnsupportedFamily(f"associative words are defined for the Z_n-graded sl_n model, not {spec.label}")


def _iter_assoc_products(spec: GradingSpec, k: int, m: int):
    """(word, product) for every word of length m; zero prefixes prune."""
    gens = _generators(spec, k)
    letters = spec.letters(k)

    def extend(word, current: GenericMatrix):
        if len(word) == m:
            yield word, current
            return
        for letter in letters:
            nxt = matrix_product(current, gens[letter])
            if len(word) + 1 == m or not nxt.is_zero():
                yield from extend(word + (letter,), nxt)

    for letter in letters:
        yield from extend((letter,), gens[letter])


def assoc_words_M(spec: GradingSpec, k: int, m: int) -> List[Tuple[Letter, ...]]:
    """Sequences whose first two letters differ and in which no letter of
    degree 0 follows an initial segment of degree 0."""
    _require_sln(spec)
    if m < 1:
        raise ValueError(f"word length must be positive, got {m}")
    words = []

    def extend(word, degree):
        if len(word) == m:
            words.append(word)
            return
        for letter in spec.letters(k):
            if len(word) == 1 and letter == word[0]:
                continue
            if spec.is_identity(degree) and spec.is_identity(letter[0]):
                continue
            extend(word + (letter,), spec.add(degree, letter[0]))

    for letter in spec.letters(k):
        extend((letter,), letter[0])
    return words


def _assoc_rank(spec: GradingSpec, k: int, products) -> int:
    groups: Dict[MultiDegree, Tuple[RankAccumulator, Dict[Monomial, int]]] = {}
    for word, product in products:
        if product.is_zero():
            continue
        md = MultiDegree.from_letters(word)
        if md not in groups:
            index = basis_index(multidegree_basis(spec, k, md))
            groups[md] = (RankAccumulator(spec.n * spec.n * len(index)), index)
        acc, index = groups[md]
        acc.add_sparse(_row_items(product, index))
    return sum(acc.rank for acc, _ in groups.values())


def assoc_component_dim(spec: GradingSpec, k: int, m: int) -> int:
    """Rank of the degree-m products over assoc_words_M."""
    gens = _generators(spec, k)
    products = ((word, evaluate_product(word, gens)) for word in assoc_words_M(spec, k, m))
    dim = _assoc_rank(spec, k, products)
    log.info(f"{spec.label} k={k}: filtered associative dimension at m={m} is {dim}")
    return dim


def assoc_span_dim(spec: GradingSpec, k: int, m: int) -> int:
    """Dimension of the degree-m part of the full associative generic algebra."""
    return _assoc_rank(spec, k, _iter_assoc_products(spec, k, m))
