"""
Unit tests for partitions, semistandard tableaux and Schur dimensions
"""
import os
import sys
import unittest

from hypothesis import given, settings
from hypothesis import strategies as st

# Add project root to path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from combinatorics.tableaux import (
    InvalidShape,
    Partition,
    Tableau,
    closed_form_dim,
    iter_semistandard_tableaux,
    partitions,
    schur_dim,
    schur_dim_one_row,
    schur_dim_two_row,
    ssyt_count,
)


class TestPartitions(unittest.TestCase):
    """Partition / partitions"""

    def test_counts(self):
        self.assertEqual([sum(1 for _ in partitions(n)) for n in range(8)], [1, 1, 2, 3, 5, 7, 11, 15])

    def test_max_parts(self):
        self.assertEqual([p.parts for p in partitions(4, max_parts=2)], [(4,), (3, 1), (2, 2)])

    def test_invalid(self):
        with self.assertRaises(InvalidShape):
            Partition((1, 2))
        with self.assertRaises(InvalidShape):
            Partition((2, 0))
        with self.assertRaises(InvalidShape):
            Partition.parse("2,x")

    def test_parse_and_conjugate(self):
        self.assertEqual(Partition.parse("3,1"), Partition((3, 1)))
        self.assertEqual(Partition.parse(""), Partition(()))
        self.assertEqual(Partition((3, 1)).conjugate(), Partition((2, 1, 1)))


class TestSemistandardTableaux(unittest.TestCase):
    """ssyt_count / iter_semistandard_tableaux"""

    def test_examples(self):
        self.assertEqual(ssyt_count(Partition((2,)), 2), 3)
        self.assertEqual(ssyt_count(Partition((1, 1)), 1), 0)
        self.assertEqual(ssyt_count(Partition((2, 1)), 2), 2)
        self.assertEqual(ssyt_count(Partition((2, 1)), 3), 8)

    def test_enumerated_tableaux_are_semistandard(self):
        shape = Partition((3, 2))
        tableaux = list(iter_semistandard_tableaux(shape, 3))
        self.assertEqual(len(tableaux), len(set(tableaux)))
        for tableau in tableaux:
            self.assertTrue(tableau.is_semistandard(3))

    def test_explicit_fillings(self):
        shape = Partition((2, 1))
        fillings = {t.entries for t in iter_semistandard_tableaux(shape, 2)}
        self.assertEqual(fillings, {((1, 1), (2,)), ((1, 2), (2,))})
        self.assertFalse(Tableau(shape, ((1, 2), (1,))).is_semistandard())

    def test_more_rows_than_letters(self):
        for shape in (Partition((1, 1, 1)), Partition((2, 1, 1)), Partition((1, 1, 1, 1))):
            for k in range(1, shape.rows):
                self.assertEqual(ssyt_count(shape, k), 0)

    def test_empty_shape(self):
        self.assertEqual(ssyt_count(Partition(()), 3), 1)


class TestClosedForms(unittest.TestCase):
    """schur_dim_one_row / schur_dim_two_row"""

    def test_one_row_examples(self):
        self.assertEqual(schur_dim_one_row(2, 2), 3)
        self.assertEqual(schur_dim_one_row(0, 4), 1)
        self.assertEqual(schur_dim_one_row(5, 1), 1)

    def test_two_row_examples(self):
        self.assertEqual(schur_dim_two_row(2, 1, 3), 8)
        self.assertEqual(schur_dim_two_row(1, 1, 2), 1)
        self.assertEqual(schur_dim_two_row(3, 1, 1), 0)
        self.assertEqual(schur_dim_two_row(3, 0, 1), 1)

    def test_two_row_invalid(self):
        with self.assertRaises(InvalidShape):
            schur_dim_two_row(1, 2, 3)

    def test_one_row_matches_enumeration(self):
        for p in range(9):
            for k in range(1, 6):
                self.assertEqual(schur_dim_one_row(p, k), ssyt_count(Partition((p,) if p else ()), k))

    def test_two_row_matches_enumeration(self):
        for a in range(7):
            for b in range(a + 1):
                shape = Partition(tuple(x for x in (a, b) if x))
                for k in range(1, 6):
                    self.assertEqual(schur_dim_two_row(a, b, k), ssyt_count(shape, k), f"({a},{b}) k={k}")

    def test_dispatch(self):
        self.assertEqual(schur_dim(Partition((2, 1, 1)), 3), ssyt_count(Partition((2, 1, 1)), 3))
        self.assertIsNone(closed_form_dim(Partition((1, 1, 1)), 2))
        self.assertEqual(closed_form_dim(Partition((4,)), 2), 5)

    @settings(max_examples=100, deadline=None)
    @given(st.integers(0, 40), st.integers(0, 40), st.integers(2, 9))
    def test_two_row_formula_is_integral(self, a, b, k):
        a, b = max(a, b), min(a, b)
        self.assertIsInstance(schur_dim_two_row(a, b, k), int)
        self.assertGreaterEqual(schur_dim_two_row(a, b, k), 0)


if __name__ == "__main__":
    unittest.main(verbosity=2)
