import json
import os
import tempfile
import unittest
from unittest.mock import patch

from click.testing import CliRunner

from jacobi.cli import (
    EXIT_CAP,
    EXIT_CHECK_FAILED,
    EXIT_OK,
    EXIT_PARSE,
    EXIT_USAGE,
    cli,
)
from jacobi.diagram import circle_diagram
from jacobi.labels import Label
from jacobi.parser import parse
from jacobi.suites import SUITES, check
from jacobi.weight import sl2


class CliTestCase(unittest.TestCase):
    def setUp(self):
        self.runner = CliRunner()

    def run_jd(self, *args, **kwargs):
        return self.runner.invoke(cli, list(args), **kwargs)


class TestParseCommand(CliTestCase):
    def test_theta(self):
        result = self.run_jd("parse", "theta(1+;2+;1-)")
        self.assertEqual(result.exit_code, EXIT_OK)
        data = json.loads(result.output)
        self.assertEqual((data["ideg"], data["betti"]), (5, 2))

    def test_text(self):
        result = self.run_jd("parse", "O(1+,1-)", "--out", "text")
        self.assertEqual(parse(result.output.strip()).canonical(), parse("O(1+,1-)").canonical())

    def test_csv(self):
        result = self.run_jd("parse", "T(1+,1-,1+)", "--out", "csv")
        header = result.output.splitlines()[0]
        self.assertEqual(header, "dsl,ideg,betti,legs,connected")

    def test_parse_error(self):
        result = self.run_jd("parse", "T(1+")
        self.assertEqual(result.exit_code, EXIT_PARSE)
        self.assertIn("[col", result.output)

    def test_genus(self):
        result = self.run_jd("parse", "T(1+,2+,1-)", "--genus", "1")
        self.assertEqual(result.exit_code, EXIT_PARSE)


class TestModuleCommand(CliTestCase):
    def test_rank(self):
        result = self.run_jd("module", "--n", "4", "--loops", "1", "--genus", "1")
        self.assertEqual(result.exit_code, EXIT_OK)
        data = json.loads(result.output)
        self.assertEqual(data["rank"], 6)
        self.assertEqual(data["invariant_factors"], [])

    def test_text(self):
        result = self.run_jd("module", "--n", "1", "--loops", "0", "--out", "text")
        self.assertIn("rank 0, torsion Z/2 Z/2 Z/2 Z/2", result.output)

    def test_cap(self):
        result = self.run_jd("module", "--n", "9", "--loops", "1", "--max-degree", "8")
        self.assertEqual(result.exit_code, EXIT_CAP)

    def test_bad_environment(self):
        result = self.run_jd("module", "--n", "2", "--loops", "1", env={"JD_MAX_DEGREE": "x"})
        self.assertEqual(result.exit_code, EXIT_USAGE)

    def test_missing_option(self):
        result = self.run_jd("module", "--n", "2")
        self.assertEqual(result.exit_code, EXIT_USAGE)


class TestVerifyCommand(CliTestCase):
    def test_kernel_suite(self):
        result = self.run_jd("verify", "--suite", "ker-sn1", "--m", "2", "--genus", "1")
        self.assertEqual(result.exit_code, EXIT_OK)
        self.assertTrue(json.loads(result.output)["passed"])

    def test_text(self):
        result = self.run_jd("verify", "--suite", "eta-symmetry", "--out", "text")
        self.assertEqual(result.output.splitlines()[-1], "PASS")

    def test_failure(self):
        failing = {"failing": lambda options: [check("one", 1, 2, "test")]}
        with patch.dict(SUITES, failing):
            result = self.run_jd("verify", "--suite", "failing")
        self.assertEqual(result.exit_code, EXIT_CHECK_FAILED)

    def test_unknown_suite(self):
        result = self.run_jd("verify", "--suite", "nope")
        self.assertEqual(result.exit_code, EXIT_USAGE)
        self.assertIn("unknown suite", result.output)


class TestMapCommand(CliTestCase):
    def test_blow_up(self):
        result = self.run_jd("map", "--name", "bu", "--input", "T(1+,2+,1+)")
        self.assertEqual(result.exit_code, EXIT_OK)
        (term,) = json.loads(result.output)["result"]
        self.assertEqual(term["coefficient"], 1)
        expected = circle_diagram([Label(1, 1), Label(2, 1), Label(1, 1)])
        self.assertEqual(parse(term["diagram"]).canonical(), expected.canonical())

    def test_eta(self):
        result = self.run_jd("map", "--name", "eta", "--input", "T(1+,1-)", "--out", "csv")
        self.assertEqual(result.output.splitlines(), ["word,coefficient", "1+ 1-,1", "1- 1+,1"])

    def test_wrong_stratum(self):
        result = self.run_jd("map", "--name", "bd", "--input", "O(1+,1-)")
        self.assertEqual(result.exit_code, EXIT_USAGE)

    def test_unknown_map(self):
        result = self.run_jd("map", "--name", "nope", "--input", "O(1+)")
        self.assertEqual(result.exit_code, EXIT_USAGE)


class TestWeightCommand(CliTestCase):
    def test_sl2(self):
        result = self.run_jd("weight", "--system", "sl2", "--input", "O(1+,2-)")
        self.assertEqual(result.exit_code, EXIT_OK)
        weight = json.loads(result.output)["weight"]
        self.assertEqual(len(weight), 3)
        self.assertTrue(all(term["coefficient"] == -2 for term in weight))

    def test_half(self):
        result = self.run_jd("weight", "--system", "sl2", "--input", "O(1+,2-)", "--half", "1")
        (term,) = json.loads(result.output)["weight"]
        self.assertEqual(term["coefficient"], -1)

    def test_constants_file(self):
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, "constants.json")
            with open(path, "w", encoding="utf-8") as stream:
                json.dump(sl2().to_json(), stream)
            result = self.run_jd("weight", "--constants", path, "--input", "O(1+,1-)", "--out", "text")
        self.assertEqual(result.exit_code, EXIT_OK)
        self.assertIn("-2*", result.output)

    def test_exactly_one_source(self):
        self.assertEqual(self.run_jd("weight", "--input", "O(1+)").exit_code, EXIT_USAGE)


class TestNecklaceCommand(CliTestCase):
    def test_count(self):
        result = self.run_jd("necklace", "--length", "4", "--genus", "1", "--count")
        self.assertEqual(result.exit_code, EXIT_OK)
        data = json.loads(result.output)
        self.assertEqual((data["prime"], data["doublePrime"], data["orbits"]), (8, 4, 6))

    def test_list(self):
        result = self.run_jd("necklace", "--length", "2", "--list", "--out", "csv")
        lines = result.output.splitlines()
        self.assertEqual(lines[0], "necklace,e,iota")
        self.assertEqual(len(lines), 1 + 4 + 2)

    def test_kernel(self):
        result = self.run_jd("necklace", "--length", "4", "--kernel")
        data = json.loads(result.output)
        self.assertEqual((data["rank"], data["formula"]), (1, 1))

    def test_odd_length(self):
        self.assertEqual(self.run_jd("necklace", "--length", "3").exit_code, EXIT_USAGE)


if __name__ == "__main__":
    unittest.main()
