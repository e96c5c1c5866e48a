import os
import unittest

from jacobi.config import RunConfig
from jacobi.suites import (
    DEFAULT_ORDER,
    SUITES,
    CheckRecord,
    SuiteOptions,
    UnknownSuiteError,
    check,
    report_to_json,
    run_suite,
)

SLOW = os.environ.get("JD_SLOW")


class TestCheckRecords(unittest.TestCase):
    def test_check(self):
        record = check("sum", 4, 2 + 2, "arithmetic")
        self.assertTrue(record.passed)
        self.assertFalse(check("sum", 5, 4, "arithmetic").passed)

    def test_report(self):
        records = [CheckRecord("a", 1, 1, True, "x"), CheckRecord("b", 1, 2, False, "y")]
        report = report_to_json("demo", records)
        self.assertEqual(report["suite"], "demo")
        self.assertFalse(report["passed"])
        self.assertEqual(report["checks"][1]["actual"], 2)

    def test_every_suite_is_ordered(self):
        self.assertEqual(set(DEFAULT_ORDER), set(SUITES))

    def test_unknown(self):
        with self.assertRaises(UnknownSuiteError):
            run_suite("no-such-suite", SuiteOptions())


class TestSuites(unittest.TestCase):
    def assert_passes(self, name, options=SuiteOptions()):
        records = run_suite(name, options)
        self.assertTrue(records)
        for record in records:
            self.assertTrue(record.passed, record)

    def test_necklace_counts(self):
        self.assert_passes("necklace-counts")

    def test_eta_symmetry(self):
        self.assert_passes("eta-symmetry")

    def test_weight_axioms(self):
        self.assert_passes("weight-axioms")

    def test_sym_relations(self):
        self.assert_passes("sym-relations")

    def test_sym_relations_cover_both_families(self):
        names = [record.name for record in run_suite("sym-relations", SuiteOptions())]
        self.assertIn("twice the lift of O(i1,j1,i2)", names)
        self.assertIn("twice the lift of T(i1,j1,k1,j2,i2)", names)

    def test_a4_decomposition(self):
        self.assert_passes("a4-decomposition")

    def test_kernel(self):
        self.assert_passes("ker-sn1")
        self.assert_passes("ker-sn1", SuiteOptions(m=3))

    def test_higher_loop(self):
        self.assert_passes("higher-loop", SuiteOptions(k=1))

    @unittest.skipUnless(SLOW, "set JD_SLOW=1 for suites on (5, 2) strata")
    def test_theta_vanish(self):
        self.assert_passes("theta-vanish")

    @unittest.skipUnless(SLOW, "set JD_SLOW=1 for suites on (5, 2) strata")
    def test_blow_up_isomorphism(self):
        self.assert_passes("bu-isom")

    @unittest.skipUnless(SLOW, "set JD_SLOW=1 for the (7, 2) quotient")
    def test_blow_up_quotient(self):
        records = run_suite("bu-quotient", SuiteOptions())
        self.assertEqual(len(records), 3)
        for record in records:
            self.assertTrue(record.passed, record)

    @unittest.skipUnless(SLOW, "set JD_SLOW=1 for the full run")
    def test_all(self):
        self.assert_passes("all")

    @unittest.skipUnless(SLOW, "set JD_SLOW=1 for genus two suites")
    def test_genus_two(self):
        options = SuiteOptions(RunConfig(genus=2))
        for name in ("necklace-counts", "eta-symmetry", "ker-sn1"):
            self.assert_passes(name, options)


if __name__ == "__main__":
    unittest.main()
