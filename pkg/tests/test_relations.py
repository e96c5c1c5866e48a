import io
import os
import unittest

from jacobi.diagram import circle_diagram, theta_diagram, tree_diagram
from jacobi.error_handler import CapExceededError, StratumError
from jacobi.labels import Label
from jacobi.relations import (
    as_relator,
    build_presentation,
    ihx_relator,
    internal_edges,
    invariants_to_json,
    is_zero,
    presentation_to_json,
    rank_and_torsion,
    reduce,
    reduce_mod2,
    relators,
    theta_submodule_generators,
    torsion_mod2,
    write_rank_table,
)
from jacobi.sums import DiagramSum

P1, M1 = Label(1, 1), Label(1, -1)

SLOW = os.environ.get("JD_SLOW")


class TestRelators(unittest.TestCase):
    def test_as_relator_terms(self):
        tree = tree_diagram([P1, M1, Label(2, 1)])
        relator = as_relator(tree, 0)
        self.assertEqual(relator, DiagramSum.of(tree) + DiagramSum.of(tree.mirror()))

    def test_internal_edges(self):
        self.assertEqual(len(internal_edges(tree_diagram([P1, P1, P1, P1]))), 1)
        self.assertEqual(len(internal_edges(circle_diagram([P1, M1, P1]))), 3)
        self.assertEqual(internal_edges(tree_diagram([P1, M1, P1])), [])

    def test_ihx_needs_internal_edge(self):
        tree = tree_diagram([P1, M1, P1])
        with self.assertRaises(ValueError):
            ihx_relator(tree, tree.legs[0][0])

    def test_ihx_has_three_terms(self):
        tree = tree_diagram([P1, M1, Label(2, 1), Label(2, -1)])
        (edge,) = internal_edges(tree)
        self.assertEqual(len(ihx_relator(tree, edge)), 3)

    def test_relators_vanish(self):
        presentation = build_presentation(2, 1, 1)
        for relator in relators(2, 1, 1):
            self.assertTrue(is_zero(relator, presentation))


class TestPresentations(unittest.TestCase):
    def test_degree_four_one_loop(self):
        invariants = rank_and_torsion(build_presentation(4, 1, 1))
        self.assertEqual(invariants.rank, 6)
        self.assertTrue(invariants.torsion_free)

    def test_degree_four_two_loops(self):
        invariants = rank_and_torsion(build_presentation(4, 2, 1))
        self.assertEqual(invariants.rank, 3)
        self.assertTrue(invariants.torsion_free)

    def test_degree_four_three_loops(self):
        invariants = rank_and_torsion(build_presentation(4, 3, 1))
        self.assertEqual(invariants.rank, 1)
        self.assertTrue(invariants.torsion_free)

    def test_degree_four_trees(self):
        invariants = rank_and_torsion(build_presentation(4, 0, 1))
        self.assertEqual(invariants.rank, 3)
        self.assertTrue(invariants.torsion_free)

    def test_degree_three_one_loop_torsion(self):
        invariants = rank_and_torsion(build_presentation(3, 1, 1))
        self.assertEqual(invariants.invariant_factors, (2, 2, 2, 2))
        self.assertEqual(invariants.two_rank(), 4)

    def test_degree_one_trees(self):
        invariants = rank_and_torsion(build_presentation(1, 0, 1))
        self.assertEqual(invariants.rank, 0)
        self.assertEqual(invariants.invariant_factors, (2, 2, 2, 2))

    def test_oriented_generators_agree(self):
        for n, l, g in ((1, 0, 2), (2, 1, 1), (3, 1, 1), (3, 0, 1)):
            reduced = rank_and_torsion(build_presentation(n, l, g))
            oriented = rank_and_torsion(build_presentation(n, l, g, as_reduced=False))
            self.assertEqual(reduced, oriented, (n, l, g))

    def test_quotient_extras(self):
        extra = tree_diagram([P1, P1, M1])
        invariants = rank_and_torsion(build_presentation(1, 0, 1, quotient_extras=[extra]))
        self.assertEqual(invariants.invariant_factors, (2, 2, 2))

    def test_cap(self):
        with self.assertRaises(CapExceededError):
            build_presentation(9, 1, 1, max_degree=8)

    def test_stratum_mismatch(self):
        presentation = build_presentation(2, 1, 1)
        with self.assertRaises(StratumError):
            reduce(circle_diagram([P1]), presentation)

    @unittest.skipUnless(SLOW, "set JD_SLOW=1 for acceptance-size strata")
    def test_degree_four_one_loop_genus_two(self):
        invariants = rank_and_torsion(build_presentation(4, 1, 2))
        self.assertEqual(invariants.rank, 55)
        self.assertTrue(invariants.torsion_free)

    @unittest.skipUnless(SLOW, "set JD_SLOW=1 for acceptance-size strata")
    def test_degree_five_two_loops_matches_degree_one_trees(self):
        self.assertEqual(
            rank_and_torsion(build_presentation(5, 2, 1)),
            rank_and_torsion(build_presentation(1, 0, 1)),
        )


class TestReduce(unittest.TestCase):
    def setUp(self):
        self.presentation = build_presentation(3, 1, 1)

    def test_two_torsion_class(self):
        palindrome = circle_diagram([P1, M1, P1])
        self.assertTrue(is_zero(DiagramSum.of(palindrome, 2), self.presentation))
        self.assertEqual(len(torsion_mod2(palindrome, self.presentation)), 4)

    def test_generators_span(self):
        self.assertTrue(
            any(not is_zero(d, self.presentation) for d in self.presentation.generators)
        )

    def test_mirror_is_negative(self):
        circle = circle_diagram([P1, M1, M1])
        total = DiagramSum.of(circle) + DiagramSum.of(circle.mirror())
        self.assertTrue(reduce(total, self.presentation).is_zero())

    def test_reduce_mod2_length(self):
        coordinates = reduce_mod2(circle_diagram([P1, P1, M1]), self.presentation)
        invariants = rank_and_torsion(self.presentation)
        self.assertEqual(len(coordinates), invariants.rank + invariants.two_rank())


class TestExport(unittest.TestCase):
    def test_presentation_json(self):
        presentation = build_presentation(2, 1, 1)
        data = presentation_to_json(presentation)
        self.assertEqual((data["n"], data["l"], data["g"]), (2, 1, 1))
        self.assertEqual(len(data["generators"]), len(presentation.generators))
        for row, column, value in data["relators"]:
            self.assertEqual(presentation.relators[row][column], value)

    def test_rank_table(self):
        presentation = build_presentation(3, 1, 1)
        record = invariants_to_json(presentation, rank_and_torsion(presentation))
        stream = io.StringIO()
        write_rank_table([record], stream)
        header, line = stream.getvalue().splitlines()
        self.assertEqual(header, "n,l,g,generators,rank,torsion")
        self.assertTrue(line.endswith(",2 2 2 2"))


class TestThetaSubmodule(unittest.TestCase):
    def test_three_nonempty_blocks(self):
        generators = theta_submodule_generators(5, 1)
        self.assertTrue(generators)
        for x in generators:
            (diagram,) = list(x.terms)
            self.assertEqual((diagram.ideg, diagram.betti), (5, 2))
        self.assertIn(DiagramSum.of(theta_diagram([P1], [M1], [P1])), generators)

    def test_too_small(self):
        self.assertEqual(theta_submodule_generators(4, 1), [])


if __name__ == "__main__":
    unittest.main()
