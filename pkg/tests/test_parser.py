import unittest
from unittest.mock import Mock

from jacobi.diagram import circle_diagram, theta_diagram, tree_diagram
from jacobi.error_handler import ErrorHandler, GenusError, PairingError, ParseError
from jacobi.labels import Label
from jacobi.parser import Parser, parse
from jacobi.scanner import Scanner

P1, M1, P2, M2 = Label(1, 1), Label(1, -1), Label(2, 1), Label(2, -1)


class TestParser(unittest.TestCase):
    def setUp(self):
        self.error_handler = Mock(spec=ErrorHandler)
        self.error_handler.parse_error.side_effect = lambda token, message: ParseError(token, message)

    def make_parser(self, source: str, genus=None) -> Parser:
        tokens = Scanner(source, ErrorHandler()).scan_tokens()
        return Parser(tokens, self.error_handler, genus)

    def test_parse_tree(self):
        diagram = self.make_parser("T(1+,2-,1+)").parse()

        self.assertEqual(diagram.ideg, 1)
        self.assertEqual(diagram.betti, 0)
        self.assertEqual(diagram.labels, (P1, M2, P1))
        self.assertEqual(diagram, tree_diagram([P1, M2, P1]))

    def test_parse_strut(self):
        diagram = self.make_parser("T(1+,1-)").parse()

        self.assertEqual(diagram.ideg, 0)
        self.assertEqual(diagram.n_legs, 2)

    def test_parse_circle(self):
        diagram = self.make_parser("O(1+,1-)").parse()

        self.assertEqual(diagram.ideg, 2)
        self.assertEqual(diagram.betti, 1)
        self.assertEqual(diagram, circle_diagram([P1, M1]))

    def test_parse_theta(self):
        diagram = self.make_parser("theta(1+;2+;1-)").parse()

        self.assertEqual(diagram.ideg, 5)
        self.assertEqual(diagram.betti, 2)
        self.assertEqual(diagram, theta_diagram([P1], [P2], [M1]))

    def test_parse_theta_with_empty_blocks(self):
        diagram = self.make_parser("theta(;;)").parse()

        self.assertEqual(diagram.ideg, 2)
        self.assertEqual(diagram.n_legs, 0)

    def test_parse_lifted_labels(self):
        diagram = self.make_parser("T(~1+_1,1+_2,2-)").parse()

        self.assertEqual(
            diagram.labels,
            (Label(1, 1, 1, True), Label(1, 1, 2), M2),
        )

    def test_parse_generic_graph(self):
        diagram = self.make_parser("G[t1=(a,b,c);u(2+)=a,u(1+)=b,u(1-)=c]").parse()

        self.assertEqual(diagram.canonical(), tree_diagram([P1, P2, M1]).canonical())

    def test_unpaired_half_edge(self):
        parser = self.make_parser("G[t1=(a,b,c);u(1+)=a,u(2+)=b]")

        with self.assertRaises(PairingError):
            parser.parse()
        self.error_handler.error.assert_called_once()

    def test_genus_violation(self):
        parser = self.make_parser("O(1+,3-)", genus=2)

        with self.assertRaises(GenusError) as context:
            parser.parse()
        self.assertEqual(context.exception.position, 5)

    def test_missing_parenthesis(self):
        with self.assertRaises(ParseError) as context:
            self.make_parser("T(1+").parse()
        self.assertEqual(context.exception.position, 4)
        self.assertEqual(str(context.exception), "Expect ')' after labels.")
        self.error_handler.parse_error.assert_called_once()

    def test_tree_needs_two_labels(self):
        with self.assertRaises(ParseError) as context:
            self.make_parser("T(1+)").parse()
        self.assertEqual(context.exception.position, 1)

    def test_unknown_constructor(self):
        with self.assertRaises(ParseError):
            self.make_parser("X(1+)").parse()

    def test_trailing_input(self):
        with self.assertRaises(ParseError):
            self.make_parser("O(1+) O(1-)").parse()

    def test_missing_sign(self):
        with self.assertRaises(ParseError):
            self.make_parser("O(1)").parse()

    def test_necklace_midpoint(self):
        before, head, after = self.make_parser("O(1+,1- ^ 1-,1+)").necklace()

        self.assertEqual(before, [P1, M1])
        self.assertIsNone(head)
        self.assertEqual(after, [M1, P1])

    def test_necklace_bead(self):
        before, head, after = self.make_parser("O(1+,1- | 2+ | 1-)").necklace()

        self.assertEqual(before, [P1, M1])
        self.assertEqual(head, P2)
        self.assertEqual(after, [M1])

    def test_necklace_with_empty_side(self):
        before, head, after = self.make_parser("O(1+ | 1- |)").necklace()

        self.assertEqual(before, [P1])
        self.assertEqual(head, M1)
        self.assertEqual(after, [])


class TestParseFunction(unittest.TestCase):
    def test_lexical_error_position(self):
        with self.assertRaises(ParseError) as context:
            parse("T(1+,$)")
        self.assertEqual(context.exception.position, 5)

    def test_printed_form_round_trip(self):
        from jacobi.printer import format_diagram

        diagram = parse("O(1+,1-,2+)")
        self.assertEqual(parse(format_diagram(diagram)).canonical(), diagram.canonical())


if __name__ == "__main__":
    unittest.main()
