"""
Unit tests for word enumeration, component dimensions and the memo store
"""
import os
import sys
import tempfile
import threading
import unittest
from itertools import combinations

# Add project root to path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from algebra.graded_model import (
    Family,
    LieWord,
    UnsupportedFamily,
    evaluate_product,
    generic_generators,
    grading_spec,
)
from database.models import DatabaseManager
from growth.spanning import (
    ComponentDimStore,
    EmptyMultiDegree,
    GrowthTable,
    Method,
    MultiDegree,
    ResourceLimitExceeded,
    a_m_bruteforce,
    assoc_component_dim,
    assoc_span_dim,
    assoc_words_M,
    check_word_budget,
    component_dim,
    count_words,
    enumerate_words,
    get_default_store,
    growth_table_bruteforce,
    iter_multidegrees,
    multidegree_basis,
    set_default_store,
)

Z2 = grading_spec(Family.SL2_Z2)
Z2xZ2 = grading_spec(Family.SL2_Z2xZ2)
Z = grading_spec(Family.SL2_Z)
SL2 = grading_spec(Family.SLN_VASILOVSKY, 2)
SL3 = grading_spec(Family.SLN_VASILOVSKY, 3)

SLOW = os.environ.get("GKDIM_SLOW_TESTS") == "1"


class TestWordEnumeration(unittest.TestCase):
    """enumerate_words / count_words / iter_multidegrees"""

    def test_two_distinct_letters(self):
        words = enumerate_words(MultiDegree.from_mapping({(0, 1): 1, (1, 1): 1}), fix_first=False)
        self.assertEqual(words, [LieWord(((0, 1), (1, 1))), LieWord(((1, 1), (0, 1)))])

    def test_repeated_letter(self):
        for flag in (False, True):
            words = enumerate_words(MultiDegree.from_mapping({(1, 1): 2}), fix_first=flag)
            self.assertEqual(words, [LieWord(((1, 1), (1, 1)))])

    def test_fix_first_pins_minimal_letter(self):
        words = enumerate_words(MultiDegree.from_mapping({(0, 1): 1, (1, 1): 1, (1, 2): 1}), fix_first=True)
        self.assertEqual(len(words), 2)
        self.assertTrue(all(w.letters[0] == (0, 1) for w in words))

    def test_empty_multidegree(self):
        with self.assertRaises(EmptyMultiDegree):
            enumerate_words(MultiDegree(()))

    def test_count_matches_enumeration(self):
        for counts in ({(0, 1): 2, (1, 1): 2}, {(0, 1): 1, (1, 1): 3, (1, 2): 1}, {(-1, 1): 3}):
            degree = MultiDegree.from_mapping(counts)
            for flag in (False, True):
                self.assertEqual(count_words(degree, flag), len(enumerate_words(degree, flag)))

    def test_words_are_distinct(self):
        degree = MultiDegree.from_mapping({(0, 1): 2, (1, 1): 2, (1, 2): 1})
        words = enumerate_words(degree)
        self.assertEqual(len(words), len(set(words)))

    def test_multidegrees_of_total(self):
        self.assertEqual(len(list(iter_multidegrees(Z, 1, 2))), 6)
        self.assertEqual(len(list(iter_multidegrees(SL3, 2, 4))), 126)
        for degree in iter_multidegrees(Z2xZ2, 2, 3):
            self.assertEqual(degree.total, 3)

    def test_zero_counts_dropped(self):
        self.assertEqual(MultiDegree.from_mapping({(0, 1): 0, (1, 1): 2}).counts, (((1, 1), 2),))


class TestComponentDim(unittest.TestCase):
    """component_dim"""

    def setUp(self):
        self.store = ComponentDimStore()

    def dim(self, spec, k, counts, **options):
        return component_dim(spec, k, MultiDegree.from_mapping(counts), store=self.store, **options)

    def test_single_bracket_nonzero(self):
        self.assertEqual(self.dim(Z2, 1, {(0, 1): 1, (1, 1): 1}), 1)

    def test_even_part_abelian(self):
        self.assertEqual(self.dim(Z2, 2, {(0, 1): 1, (0, 2): 1}), 0)

    def test_two_odd_generators(self):
        self.assertEqual(self.dim(Z2, 2, {(1, 1): 1, (1, 2): 1}), 1)

    def test_degree_one_rule(self):
        self.assertEqual(self.dim(Z2, 1, {(1, 1): 1}), 1)
        self.assertEqual(self.dim(SL3, 1, {(2, 1): 1}), 1)

    def test_outside_support(self):
        with self.assertRaises(ValueError):
            self.dim(Z2, 1, {(2, 1): 2})
        with self.assertRaises(ValueError):
            self.dim(Z2, 1, {(0, 3): 2})

    def test_coefficient_basis_size(self):
        basis = multidegree_basis(SL3, 1, MultiDegree.from_mapping({(0, 1): 2, (1, 1): 1}))
        # degree 2 in two diagonal variables times degree 1 in three off-diagonal ones
        self.assertEqual(len(basis), 3 * 3)

    def test_one_dimensional_components(self):
        # every component of these gradings is one-dimensional
        for spec in (Z2xZ2, Z):
            for degree in iter_multidegrees(spec, 2, 3):
                self.assertLessEqual(component_dim(spec, 2, degree, store=self.store), 1)

    def test_resource_cap(self):
        with self.assertRaises(ResourceLimitExceeded):
            self.dim(Z2, 1, {(0, 1): 3, (1, 1): 3}, word_cap=5)
        with self.assertRaises(ResourceLimitExceeded):
            check_word_budget(SL3, 1, 40, 10 ** 6)
        check_word_budget(SL3, 2, 4, 10 ** 6)

    def test_index_symmetry(self):
        swap = {(0, 1): (0, 2), (0, 2): (0, 1), (1, 1): (1, 2), (1, 2): (1, 1)}
        for counts in ({(0, 1): 2, (1, 1): 1, (1, 2): 1}, {(0, 1): 1, (1, 1): 3}, {(0, 2): 1, (1, 1): 2, (1, 2): 1}):
            degree = MultiDegree.from_mapping(counts)
            for spec in (Z2, SL2):
                self.assertEqual(component_dim(spec, 2, degree, store=self.store),
                                 component_dim(spec, 2, degree.relabel(swap), store=self.store))

    def assert_pruning_safe(self, specs, k, degrees):
        for spec in specs:
            for m in degrees:
                for degree in iter_multidegrees(spec, k, m):
                    self.assertEqual(component_dim(spec, k, degree, fix_first=True, store=self.store),
                                     component_dim(spec, k, degree, fix_first=False, store=self.store),
                                     f"{spec.label} k={k} {degree.key()}")

    def test_pruning_safety_small(self):
        self.assert_pruning_safe((Z2, Z2xZ2, Z, SL2, SL3), 1, range(1, 6))
        self.assert_pruning_safe((Z2, Z2xZ2, Z, SL2, SL3), 2, range(1, 5))

    @unittest.skipUnless(SLOW, "set GKDIM_SLOW_TESTS=1 for totals 5 and 6 with two indices")
    def test_pruning_safety_two_indices(self):
        self.assert_pruning_safe((Z2, Z2xZ2, Z, SL2), 2, range(5, 7))

    def test_vasilovsky_n2_matches_z2_model(self):
        for k in (1, 2):
            for m in range(1, 7):
                for degree in iter_multidegrees(Z2, k, m):
                    self.assertEqual(component_dim(SL2, k, degree, store=self.store),
                                     component_dim(Z2, k, degree, store=self.store),
                                     f"k={k} {degree.key()}")

    def test_sl3_low_degrees(self):
        letters = SL3.letters(2)
        for letter in letters:
            self.assertEqual(component_dim(SL3, 2, MultiDegree.from_mapping({letter: 1}), store=self.store), 1)
        for first, second in combinations(letters, 2):
            expected = 0 if first[0] == second[0] == 0 else 1
            degree = MultiDegree.from_mapping({first: 1, second: 1})
            self.assertEqual(component_dim(SL3, 2, degree, store=self.store), expected)
        self.assertEqual(a_m_bruteforce(SL3, 2, 2, store=self.store), 14)


class TestBruteForceGrowth(unittest.TestCase):
    """a_m_bruteforce / GrowthTable"""

    def setUp(self):
        self.store = ComponentDimStore()

    def test_examples(self):
        self.assertEqual(a_m_bruteforce(Z2, 1, 2, store=self.store), 1)
        self.assertEqual(a_m_bruteforce(Z2xZ2, 1, 1, store=self.store), 3)
        # [e,h], [h,f] and [e,f] are all nonzero
        self.assertEqual(a_m_bruteforce(Z, 1, 2, store=self.store), 3)
        self.assertEqual(a_m_bruteforce(Z, 1, 2, fix_first=True, store=self.store), 3)

    def test_z2_single_generator(self):
        # a_m = m/2 for even m and m-1 for odd m
        for m in range(2, 8):
            expected = m // 2 if m % 2 == 0 else m - 1
            self.assertEqual(a_m_bruteforce(Z2, 1, m, store=self.store), expected)

    def test_z2_two_generators(self):
        self.assertEqual(a_m_bruteforce(Z2, 2, 2, store=self.store), 5)
        self.assertEqual(a_m_bruteforce(Z2, 2, 3, store=self.store), 14)

    def test_growth_table(self):
        table = growth_table_bruteforce(Z2xZ2, 1, 5, store=self.store)
        self.assertEqual(table.method, Method.BRUTE_FORCE)
        self.assertEqual(table.entries[1], 3)
        self.assertEqual(table.entries[2], 3)
        self.assertEqual(table.entries[3], 6)
        self.assertTrue(table.is_monotone())
        self.assertEqual(table.growth(3), 12)

    def test_partial_sums(self):
        table = GrowthTable({1: 2, 2: 1, 3: 2}, 1, "sl2-z2", Method.FORMULA)
        self.assertEqual(table.partial_sums(), {1: 2, 2: 3, 3: 5})


class TestAssociativeWords(unittest.TestCase):
    """assoc_words_M / assoc_component_dim / assoc_span_dim"""

    def test_single_letters(self):
        self.assertEqual(len(assoc_words_M(SL3, 2, 1)), 6)

    def test_two_letters_n2(self):
        self.assertEqual(sorted(assoc_words_M(SL2, 1, 2)), [((0, 1), (1, 1)), ((1, 1), (0, 1))])

    def test_degree_zero_rule(self):
        for word in assoc_words_M(SL3, 2, 3):
            self.assertNotEqual(word[0], word[1])
            self.assertFalse(word[0][0] == 0 and word[1][0] == 0)

    def test_requires_sln(self):
        with self.assertRaises(UnsupportedFamily):
            assoc_words_M(Z2, 1, 2)

    def test_dimensions(self):
        self.assertEqual(assoc_component_dim(SL2, 1, 1), 2)
        self.assertEqual(assoc_component_dim(SL3, 1, 1), 3)
        # x_i h (b_j e + c_j f) and its reverse are proportional; the two odd products are independent
        self.assertEqual(assoc_component_dim(SL2, 2, 2), 6)
        self.assertEqual(assoc_span_dim(SL2, 2, 2), 11)

    def test_filtered_products_match_word_evaluation(self):
        gens = generic_generators(SL3, 1)
        words = assoc_words_M(SL3, 1, 3)
        products = [evaluate_product(word, gens) for word in words]
        self.assertTrue(all(product.degree == sum(g for g, _ in word) % 3
                            for word, product in zip(words, products)))
        for m in range(1, 4):
            self.assertLessEqual(assoc_component_dim(SL3, 1, m), assoc_span_dim(SL3, 1, m))

    def test_lie_below_associative(self):
        store = ComponentDimStore()
        for spec in (SL2, SL3):
            for k in (1, 2):
                for m in range(1, 5):
                    self.assertLessEqual(a_m_bruteforce(spec, k, m, store=store), assoc_span_dim(spec, k, m),
                                         f"{spec.label} k={k} m={m}")


class TestMemoStore(unittest.TestCase):
    """ComponentDimStore with persistent backing"""

    def test_round_trip_through_database(self):
        with tempfile.TemporaryDirectory() as directory:
            degree = MultiDegree.from_mapping({(0, 1): 2, (1, 1): 2})
            first = ComponentDimStore(DatabaseManager.for_directory(directory))
            value = component_dim(Z2, 1, degree, store=first)
            self.assertEqual(first.database.count(), 1)

            second = ComponentDimStore(DatabaseManager.for_directory(directory))
            self.assertEqual(component_dim(Z2, 1, degree, store=second), value)
            self.assertEqual(second.hits, 1)
            first.database.engine.dispose()
            second.database.engine.dispose()

    def test_default_store_write_through(self):
        with tempfile.TemporaryDirectory() as directory:
            database = DatabaseManager.for_directory(directory)
            set_default_store(ComponentDimStore(database))
            try:
                degree = MultiDegree.from_mapping({(0, 1): 1, (1, 1): 2})
                self.assertEqual(component_dim(Z2, 1, degree), 1)
                self.assertEqual(database.count(), 1)
                self.assertIs(get_default_store().database, database)
            finally:
                set_default_store(None)
                database.engine.dispose()

    def test_hits_counted_under_concurrency(self):
        store = ComponentDimStore()
        key = ("sl2-z2", 1, "0:1^1|1:1^1", False)
        store.put(key, 1)

        def read():
            for _ in range(500):
                store.get(key)

        threads = [threading.Thread(target=read) for _ in range(8)]
        for thread in threads:
            thread.start()
        for thread in threads:
            thread.join()
        self.assertEqual(store.hits, 4000)

    def test_identical_insert_tolerated(self):
        store = ComponentDimStore(DatabaseManager())
        key = ("sl2-z2", 1, "0:1^1|1:1^1", False)
        store.put(key, 1)
        store.put(key, 1)
        self.assertEqual(store.get(key), 1)
        self.assertEqual(len(store), 1)


if __name__ == "__main__":
    unittest.main(verbosity=2)
