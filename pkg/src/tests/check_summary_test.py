import unittest
import json
import numpy as np
from repositories.structures import CheckResult
from utilities.check_summary import CheckSummary


class TestCheckSummary(unittest.TestCase):
    def setUp(self):
        self.summary_test = CheckSummary([
            CheckResult("gamma_reflection_identity", "specfun", 1e-12, 3e-15, True),
            CheckResult("gamma_functional_equation", "specfun", 1e-12, 2e-3, False),
            CheckResult("basis_orthonormality", "basis", 1e-7, np.inf, False),
        ])

    def test_module_frequencies(self):
        output = self.summary_test.module_frequencies()
        self.assertEqual(list(output["Module"]), ["specfun", "basis"])
        self.assertEqual(list(output["Passed_number"]), [1, 0])
        self.assertEqual(list(output["Total_number"]), [2, 1])
        self.assertEqual(list(output["Perc_Passed"]), [50.0, 0.0])

    def test_all_passed(self):
        self.assertFalse(self.summary_test.all_passed)
        self.assertTrue(CheckSummary(self.summary_test.results[:1]).all_passed)

    def test_report_writes_null_for_infinite_error(self):
        output = json.loads(self.summary_test.report())
        self.assertFalse(output["passed"])
        self.assertEqual(len(output["checks"]), 3)
        self.assertIsNone(output["checks"][2]["achieved"])
        self.assertEqual(output["checks"][0]["name"], "gamma_reflection_identity")
