import json
import unittest

from jacobi.diagram import circle_diagram, theta_diagram, tree_diagram
from jacobi.labels import Label
from jacobi.parser import parse
from jacobi.printer import (
    diagram_from_json,
    diagram_to_json,
    format_diagram,
    format_generic,
    format_sum,
    sum_to_json,
)
from jacobi.sums import DiagramSum, diagram_sum

A, B, C = Label(1, 1), Label(1, -1), Label(2, 1)


class TestFormatDiagram(unittest.TestCase):
    def assert_round_trip(self, diagram):
        self.assertEqual(parse(format_diagram(diagram)).canonical(), diagram.canonical())

    def test_tree(self):
        tree = tree_diagram([A, B, C, A])
        self.assertTrue(format_diagram(tree).startswith("T("))
        self.assert_round_trip(tree)

    def test_circle(self):
        circle = circle_diagram([A, C, B])
        self.assertTrue(format_diagram(circle).startswith("O("))
        self.assert_round_trip(circle)
        self.assert_round_trip(circle.mirror())

    def test_theta(self):
        theta = theta_diagram([A, C], [], [B])
        self.assertTrue(format_diagram(theta).startswith("theta("))
        self.assert_round_trip(theta)

    def test_generic(self):
        eyeglass = parse("G[t1=(a,a,x),t2=(b,b,y),t3=(x,y,z);u(1+)=z]")
        text = format_diagram(eyeglass)
        self.assertTrue(text.startswith("G["))
        self.assert_round_trip(eyeglass)

    def test_generic_form_of_any_diagram(self):
        circle = circle_diagram([A, B])
        self.assertEqual(parse(format_generic(circle)).canonical(), circle.canonical())


class TestFormatSum(unittest.TestCase):
    def test_zero(self):
        self.assertEqual(format_sum(DiagramSum()), "0")

    def test_coefficients(self):
        circle = circle_diagram([A, B])
        text = format_diagram(circle)
        self.assertEqual(format_sum(DiagramSum.of(circle, -2)), f"-2*{text}")
        self.assertEqual(format_sum(DiagramSum.of(circle)), text)

    def test_sum_to_json(self):
        circle = circle_diagram([A, B])
        self.assertEqual(
            sum_to_json(diagram_sum((circle, 3))),
            [{"diagram": format_diagram(circle), "coefficient": 3}],
        )


class TestJson(unittest.TestCase):
    def test_theta_fields(self):
        data = diagram_to_json(parse("theta(1+;2+;1-)"))
        self.assertEqual(data["ideg"], 5)
        self.assertEqual(data["betti"], 2)
        self.assertEqual(data["legs"], 3)
        self.assertTrue(data["connected"])
        self.assertEqual(len(data["vertices"]), 5)
        json.dumps(data)

    def test_round_trip(self):
        circle = circle_diagram([A, C, B])
        self.assertEqual(diagram_from_json(diagram_to_json(circle)).canonical(), circle.canonical())

    def test_same_json_after_reparse(self):
        data = diagram_to_json(parse("O(1+,1-)"))
        self.assertEqual(diagram_to_json(parse(data["dsl"])), data)

    def test_schema_version_checked(self):
        data = diagram_to_json(circle_diagram([A]))
        data["schema_version"] = 99
        with self.assertRaises(ValueError):
            diagram_from_json(data)


if __name__ == "__main__":
    unittest.main()
