import unittest
import numpy as np
from services.checks import InvariantChecks, SUITES
from services.errors import QuadratureError
from services.special_functions import SpecialFunctions, STIRLING_COEFFICIENTS


class TestInvariantChecks(unittest.TestCase):
    def setUp(self):
        self.checks_test = InvariantChecks()

    def test_every_suite_has_checks(self):
        names = [name for suite in SUITES for name, _, _ in self.checks_test.checks[suite]]
        self.assertGreaterEqual(len(names), 20)
        self.assertEqual(len(names), len(set(names)))

    def test_special_function_suite_passes(self):
        output = self.checks_test.run_suite("specfun")
        self.assertEqual(len(output), 5)
        for result in output:
            with self.subTest(name=result.name):
                self.assertTrue(result.passed)
                self.assertEqual(result.module, "specfun")

    def test_spectra_suite_passes(self):
        output = self.checks_test.run_suite("spectra")
        self.assertTrue(all(result.passed for result in output))

    def test_orthopoly_suite_passes(self):
        output = self.checks_test.run_suite("orthopoly")
        failed = [result.name for result in output if not result.passed]
        self.assertEqual(failed, [])

    def test_corrupted_stirling_coefficient_fails_reflection(self):
        corrupted = (1.0 / 10.0,) + STIRLING_COEFFICIENTS[1:]
        checks = InvariantChecks(special_functions=SpecialFunctions(coefficients=corrupted))
        with self.assertLogs("services.checks", level="WARNING"):
            output = checks.run_suite("specfun")
        failed = [result.name for result in output if not result.passed]
        self.assertIn("gamma_reflection_identity", failed)

    def test_library_error_counts_as_failure(self):
        def broken():
            raise QuadratureError("quadrature failed", 1e-3, 1e-7)
        with self.assertLogs("services.checks", level="WARNING"):
            output = self.checks_test._run_check("broken", "basis", 1e-7, broken)
        self.assertFalse(output.passed)
        self.assertTrue(np.isinf(output.achieved))

    def test_unknown_suite(self):
        with self.assertRaises(ValueError):
            self.checks_test.run_suite("nothing")
