import unittest
from itertools import product

from jacobi.canonical import canonicalize
from jacobi.diagram import tree_diagram
from jacobi.enumeration import (
    as_classes,
    check_degree,
    enumerate_diagrams,
    leg_count,
    shapes,
    validate_stratum,
)
from jacobi.error_handler import CapExceededError, StratumError
from jacobi.labels import alphabet
from jacobi.witt import necklace_count


class TestShapes(unittest.TestCase):
    def test_strut(self):
        (strut,) = shapes(0, 0)
        self.assertEqual(strut.n_legs, 2)

    def test_tree_shapes(self):
        self.assertEqual(len(shapes(1, 0)), 1)
        self.assertEqual(len(shapes(2, 0)), 1)
        self.assertEqual(len(shapes(3, 0)), 1)
        self.assertEqual(len(shapes(4, 0)), 2)

    def test_shapes_are_connected(self):
        for n, l in ((3, 1), (4, 2), (2, 2)):
            for shape in shapes(n, l):
                self.assertTrue(shape.is_connected)
                self.assertEqual((shape.ideg, shape.betti), (n, l))
                self.assertEqual(shape.n_legs, leg_count(n, l))

    def test_empty_stratum(self):
        self.assertEqual(shapes(0, 2), ())


class TestEnumerateDiagrams(unittest.TestCase):
    def test_degree_one_trees(self):
        self.assertEqual(len(enumerate_diagrams(1, 0, 1)), 4)

    def test_one_loop_with_one_leg(self):
        self.assertEqual(len(enumerate_diagrams(1, 1, 1)), 2)

    def test_trees_match_brute_force(self):
        for g in (1, 2):
            brute = {canonicalize(tree_diagram(w)) for w in product(alphabet(g), repeat=3)}
            found = enumerate_diagrams(1, 0, g)
            self.assertEqual(set(found), brute)
            self.assertEqual(len(found), necklace_count(3, 2 * g))

    def test_sorted_and_canonical(self):
        found = enumerate_diagrams(2, 1, 1)
        self.assertEqual(found, sorted(found))
        for diagram in found:
            self.assertEqual(canonicalize(diagram), diagram)

    def test_as_classes_are_fewer(self):
        self.assertLessEqual(len(as_classes(3, 1, 1)), len(enumerate_diagrams(3, 1, 1)))

    def test_cap(self):
        with self.assertRaises(CapExceededError):
            enumerate_diagrams(9, 0, 1, max_degree=8)
        with self.assertRaises(CapExceededError):
            check_degree(3, max_degree=2)
        check_degree(2, max_degree=2)

    def test_invalid_stratum(self):
        with self.assertRaises(StratumError):
            validate_stratum(0, 2, 1)
        with self.assertRaises(StratumError):
            enumerate_diagrams(2, 0, 0)


if __name__ == "__main__":
    unittest.main()
