import os
import unittest
from unittest.mock import patch

from hypothesis import given, settings
from hypothesis import strategies as st

from jacobi.diagram import circle_diagram
from jacobi.error_handler import CapExceededError, StratumError
from jacobi.labels import Label, alphabet
from jacobi.necklace import (
    combined_images,
    double_from_half,
    enumerate_necklaces,
    forget,
    iota,
    kernel_basis,
    kernel_rank_formula,
    kernel_report,
    mh,
    mht,
    necklace,
    orbit_representatives,
    parse_necklace,
    period_exponent,
    period_image,
    prime_from_parts,
)
from jacobi.relations import build_presentation
from jacobi.tensor import TensorWord

A, B, C = Label(1, 1), Label(1, -1), Label(2, 1)


class TestNecklaceWithArrow(unittest.TestCase):
    def test_midpoint_text(self):
        x = double_from_half([A, B])
        self.assertEqual(x.beads, (A, B, B, A))
        self.assertEqual(str(x), "O(1+,1- ^ 1-,1+)")
        self.assertEqual(parse_necklace(str(x)), x)

    def test_bead_text(self):
        x = prime_from_parts(A, [B], C)
        self.assertEqual(x.beads, (A, B, C, B))
        self.assertEqual(str(x), "O(1+,1- | 2+ | 1-)")
        self.assertEqual(parse_necklace(str(x)), x)

    def test_arrow_must_be_an_axis(self):
        with self.assertRaises(ValueError):
            necklace([A, B, A, B])
        with self.assertRaises(ValueError):
            necklace([A, B, B])
        with self.assertRaises(ValueError):
            parse_necklace("O(1+,1- ^ 1+,1-)")

    def test_counts(self):
        primes, doubles = enumerate_necklaces(4, 1)
        self.assertEqual((len(primes), len(doubles)), (8, 4))
        primes, doubles = enumerate_necklaces(6, 2)
        self.assertEqual((len(primes), len(doubles)), (4**4, 4**3))

    def test_length_checked(self):
        with self.assertRaises(ValueError):
            enumerate_necklaces(3, 1)
        with self.assertRaises(CapExceededError):
            enumerate_necklaces(12, 1, max_degree=8)


class TestIota(unittest.TestCase):
    def test_free_involution(self):
        for length in (2, 4, 6):
            primes, doubles = enumerate_necklaces(length, 1)
            for x in primes + doubles:
                self.assertNotEqual(iota(x), x)
                self.assertEqual(iota(iota(x)), x)

    @settings(max_examples=50, deadline=None)
    @given(st.lists(st.sampled_from(alphabet(2)), min_size=1, max_size=5), st.booleans())
    def test_free_involution_genus_two(self, word, prime):
        x = prime_from_parts(word[0], word[1:-1], word[-1]) if prime and len(word) > 1 else double_from_half(word)
        self.assertNotEqual(iota(x), x)
        self.assertEqual(iota(iota(x)), x)
        self.assertEqual(sorted(iota(x).beads), sorted(x.beads))

    def test_period_exponent(self):
        self.assertEqual(period_exponent(double_from_half([A, B])), 0)
        self.assertEqual(period_exponent(double_from_half([A, B, B, A])), 1)
        self.assertEqual(period_exponent(double_from_half([A, A])), 2)

    def test_untwisted_iota_turns_half_way(self):
        self.assertEqual(iota(double_from_half([A, B])), double_from_half([B, A]))

    def test_orbits(self):
        primes, doubles = enumerate_necklaces(4, 1)
        self.assertEqual(len(orbit_representatives(primes + doubles)), 6)
        untwisted = [x for x in doubles if period_exponent(x) == 0]
        self.assertEqual(len(untwisted), 2**2 - 2)
        self.assertEqual(len(orbit_representatives(untwisted)), 1)


class TestSixteenBeads(unittest.TestCase):
    def setUp(self):
        self.x = double_from_half([A, B, B, A, A, B, B, A])

    def test_period_exponent(self):
        self.assertEqual(len(self.x.beads), 16)
        self.assertEqual(period_exponent(self.x), 2)

    def test_iota(self):
        self.assertEqual(iota(self.x), double_from_half([B, A, A, B, B, A, A, B]))
        self.assertEqual(iota(iota(self.x)), self.x)

    def test_mh(self):
        self.assertEqual(mh(self.x), circle_diagram([A, B, B, A, A, B, B, A, B, B, A, A, B, B, A]))
        self.assertEqual(mh(iota(self.x)), circle_diagram([B, A, A, B, B, A, A, B, A, A, B, B, A, A, B]))

    def test_period_image(self):
        expected = TensorWord.from_terms([((A, B, B, A), 1), ((B, A, A, B), 1)])
        self.assertEqual(period_image(self.x), expected)


class TestMerging(unittest.TestCase):
    def test_mh(self):
        self.assertEqual(mh(double_from_half([A, B])), circle_diagram([A, B, A]))

    def test_mht(self):
        self.assertEqual(mht(double_from_half([A, B, C])), circle_diagram([A, B, C, B]))
        with self.assertRaises(ValueError):
            mht(double_from_half([A]))

    def test_needs_midpoint_arrow(self):
        with self.assertRaises(StratumError):
            mh(prime_from_parts(A, [B], C))

    def test_forget(self):
        self.assertEqual(forget(prime_from_parts(A, [B], C)), circle_diagram([A, B, C, B]))


class TestPeriodImage(unittest.TestCase):
    def test_two_blocks(self):
        image = period_image(double_from_half([A, B, B, A]))
        self.assertEqual(image, TensorWord.from_terms([((A, B), 1), ((B, A), 1)]))

    def test_untwisted(self):
        with self.assertRaises(ValueError):
            period_image(double_from_half([A, B]))


class TestKernel(unittest.TestCase):
    def test_formula(self):
        self.assertEqual(kernel_rank_formula(2, 1), 1)
        self.assertEqual(kernel_rank_formula(3, 1), 2)
        self.assertEqual(kernel_rank_formula(2, 2), 6)

    def test_basis_is_mod2(self):
        basis, representatives = kernel_basis(2, 1)
        self.assertEqual(len(basis), len(representatives))
        for element in basis:
            self.assertTrue(all(c == 1 for _, c in element.items()))

    def test_small_m(self):
        with self.assertRaises(ValueError):
            kernel_basis(1, 1)

    def test_report_m2(self):
        report = kernel_report(2, 1)
        self.assertEqual(report.rank, 1)
        self.assertEqual(report.formula, 1)
        self.assertTrue(report.matches_combined_kernel)

    def test_report_m3(self):
        report = kernel_report(3, 1)
        self.assertEqual(report.rank, report.formula)
        self.assertEqual(report.rank, 2)
        self.assertTrue(report.matches_combined_kernel)

    def test_fold_map_only_for_even_m(self):
        with patch("jacobi.necklace.fold_map") as fold:
            report = kernel_report(3, 1)
        fold.assert_not_called()
        self.assertTrue(report.matches_combined_kernel)

    def test_combined_rows_extend_delta_prime(self):
        _, doubles = enumerate_necklaces(4, 1)
        upper = build_presentation(4, 1, 1)
        lower = build_presentation(2, 1, 1)
        short = combined_images(doubles, upper)
        full = combined_images(doubles, upper, lower)
        for head, row in zip(short, full):
            self.assertEqual(row[: len(head)], head)
            self.assertGreater(len(row), len(head))

    @unittest.skipUnless(os.environ.get("JD_SLOW"), "set JD_SLOW=1 for genus two kernels")
    def test_report_genus_two(self):
        report = kernel_report(2, 2)
        self.assertEqual(report.rank, 6)
        self.assertTrue(report.matches_combined_kernel)


if __name__ == "__main__":
    unittest.main()
