import unittest
import numpy as np
from repositories.parameters import BasisSpec, ContinuousHahnParams
from repositories.structures import ReconstructionResult, SymTridiag
from services.errors import InsufficientPointsError, LinearityError, SizeMismatchError
from services.reconstruction import PotentialReconstruction, default_grid


class TestPotentialReconstruction(unittest.TestCase):
    def setUp(self):
        self.reconstruction_test = PotentialReconstruction()
        self.configurations = [
            (ContinuousHahnParams(3.0, 4.0, 2.0, 2.0), BasisSpec.jacobi_radial(5.0, 2.0, 1.0)),
            (ContinuousHahnParams(3.0, 4.0, 2.5, -2.5), BasisSpec.jacobi_trig(1.5, 3.5, 2.0)),
            (ContinuousHahnParams(3.0, 4.0, 2.5, -2.5), BasisSpec.laguerre_line(2.7, 1.0)),
            (ContinuousHahnParams(3.0, 4.0, 2.5, 2.5), BasisSpec.laguerre_radial(1, 2.0)),
        ]

    def test_default_grid(self):
        radial = default_grid(BasisSpec.jacobi_radial(5.0, 2.0, 2.0))
        self.assertEqual(len(radial), 400)
        self.assertAlmostEqual(radial[0], 0.025)
        self.assertAlmostEqual(radial[-1], 3.0)
        trig = default_grid(BasisSpec.jacobi_trig(1.5, 3.5, 2.0))
        self.assertAlmostEqual(trig[0], -0.98)
        self.assertAlmostEqual(trig[-1], 0.98)

    def test_reconstruct_potential_of_zero_matrix(self):
        vt = SymTridiag(np.zeros(5), np.zeros(4))
        output = self.reconstruction_test.reconstruct_potential(vt, self.configurations[0][1], 5)
        self.assertEqual(np.max(np.abs(output.v_tilde)), 0.0)
        self.assertEqual(output.residual, 0.0)

    def test_reconstruct_potential_constant(self):
        vt = SymTridiag([4.0, 1.0, 2.0], [0.0, 0.5])
        output = self.reconstruction_test.reconstruct_potential(vt, self.configurations[2][1], 3)
        self.assertAlmostEqual(output.v0, 4.0, places=12)
        self.assertAlmostEqual(output.v1, 0.0, places=12)
        self.assertEqual(output.residual, 0.0)

    def test_reconstruct_potential_exact_line(self):
        for _, spec in self.configurations:
            vt = SymTridiag([2.0, -1.0, 0.3, 0.0], [3.0, 0.7, 0.1])
            output = self.reconstruction_test.reconstruct_potential(vt, spec, 4)
            self.assertLess(output.residual, 1e-12)

    def test_reconstruct_potential_rejects_large_order(self):
        vt = SymTridiag(np.zeros(5), np.zeros(4))
        with self.assertRaises(SizeMismatchError):
            self.reconstruction_test.reconstruct_potential(vt, self.configurations[0][1], 6)

    def test_reconstruct_potential_excludes_vanishing_ground_state(self):
        vt = SymTridiag([1.0, 0.0, 0.0], [1.0, 0.0])
        spec = self.configurations[1][1]
        with self.assertLogs("services.reconstruction", level="WARNING"):
            output = self.reconstruction_test.reconstruct_potential(vt, spec, 3, np.linspace(-1.0, 1.0, 21))
        self.assertEqual(output.excluded, (-1.0, 1.0))
        self.assertEqual(len(output.grid), 19)

    def test_linear_fit_in_y_needs_three_points(self):
        spec = self.configurations[0][1]
        result = ReconstructionResult(np.array([0.1, 0.2]), np.array([1.0, 2.0]), 2, 0.0, 0.0, 0.0,
                                      spec.coordinate(np.array([0.1, 0.2])))
        with self.assertRaises(InsufficientPointsError):
            self.reconstruction_test.linear_fit_in_y(result, spec)

    def test_linear_fit_in_y_recovers_line(self):
        spec = self.configurations[2][1]
        grid = np.linspace(-3.0, 1.0, 50)
        y = spec.coordinate(grid)
        result = ReconstructionResult(grid, 1.5 - 0.25 * y, 2, 0.0, 0.0, 0.0, y)
        v0, v1, residual = self.reconstruction_test.linear_fit_in_y(result, spec)
        self.assertAlmostEqual(v0, 1.5, places=12)
        self.assertAlmostEqual(v1, -0.25, places=12)
        self.assertLess(residual, 1e-12)

    def test_figure_configurations_are_linear(self):
        for p, spec in self.configurations:
            result, closed_form, _ = self.reconstruction_test.reconstruct_configuration(p, spec)
            with self.subTest(map_name=spec.map_name):
                self.assertLess(result.residual, 1e-6)
                self.assertEqual(result.excluded, ())
                self.assertEqual(len(result.grid), 400)

    def test_truncation_order_two_is_exact(self):
        for p, spec in self.configurations:
            _, _, matrices = self.reconstruction_test.reconstruct_configuration(p, spec)
            short = self.reconstruction_test.reconstruct_potential(matrices.Vt, spec, 2)
            full = self.reconstruction_test.reconstruct_potential(matrices.Vt, spec, 20)
            self.assertLess(np.max(np.abs(short.v_tilde - full.v_tilde)), 1e-9)

    def test_round_trip_through_quadrature(self):
        for p, spec in self.configurations:
            result, closed_form, matrices = self.reconstruction_test.reconstruct_configuration(p, spec)
            with self.subTest(map_name=spec.map_name):
                output = self.reconstruction_test.round_trip_deviation(matrices.Vt, spec, closed_form)
                self.assertLess(output, 1e-6)

    def test_identify_closed_form_kinds(self):
        kinds = [self.reconstruction_test.reconstruct_configuration(p, spec)[1].kind
                 for p, spec in self.configurations]
        self.assertEqual(kinds, ["poschl_teller_hyperbolic", "scarf_trig_generalized",
                                 "morse_1d", "isotropic_oscillator"])

    def test_identify_closed_form_hyperbolic_matches_total(self):
        p, spec = self.configurations[0]
        result, closed_form, _ = self.reconstruction_test.reconstruct_configuration(p, spec)
        output = closed_form.evaluate(result.grid) + closed_form.energy_shift
        wanted_answer = self.reconstruction_test.total_potential(spec, result)
        self.assertTrue(np.allclose(output, wanted_answer, rtol=1e-9, atol=1e-9))
        self.assertAlmostEqual(closed_form.coefficients["V0"], 0.5 * (4.0 - 0.25), places=14)
        self.assertEqual(closed_form.coefficients["V0_tilde"], -closed_form.coefficients["V1_tilde"])

    def test_identify_closed_form_scarf_coefficients(self):
        p, spec = self.configurations[1]
        _, closed_form, _ = self.reconstruction_test.reconstruct_configuration(p, spec)
        lam = np.pi / 2.0
        self.assertAlmostEqual(closed_form.coefficients["V_plus"], 0.25 * (2.25 + 12.25 - 0.5) * lam ** 2)
        self.assertAlmostEqual(closed_form.coefficients["V_minus"], 0.25 * (12.25 - 2.25) * lam ** 2)
        self.assertEqual(closed_form.energy_shift, 0.0)

    def test_identify_closed_form_morse_vanishes_far_left(self):
        p, spec = self.configurations[2]
        _, closed_form, _ = self.reconstruction_test.reconstruct_configuration(p, spec)
        self.assertEqual(closed_form.coefficients["V0_tilde"], 0.0)
        self.assertLess(abs(closed_form.evaluate(-40.0)), 1e-12)

    def test_identify_closed_form_oscillator_is_quadratic(self):
        p, spec = self.configurations[3]
        result, closed_form, _ = self.reconstruction_test.reconstruct_configuration(p, spec)
        values = self.reconstruction_test.total_potential(spec, result)
        coefficients = np.polyfit(result.grid, values, 2)
        self.assertAlmostEqual(coefficients[0], closed_form.coefficients["V1_tilde_r2"], places=8)
        self.assertAlmostEqual(coefficients[1], 0.0, places=7)
        self.assertTrue(np.allclose(closed_form.evaluate(result.grid), values, rtol=1e-9, atol=1e-9))

    def test_identify_closed_form_rejects_curved_potential(self):
        with self.assertRaises(LinearityError):
            self.reconstruction_test.identify_closed_form(1.0, 2.0, self.configurations[0][1], 1e-3)

    def test_effective_potential_adds_centrifugal_term(self):
        p, spec = self.configurations[3]
        result, _, _ = self.reconstruction_test.reconstruct_configuration(p, spec)
        output = self.reconstruction_test.effective_potential(spec, result) - result.v_tilde
        wanted_answer = 1.0 / result.grid ** 2
        self.assertTrue(np.allclose(output, wanted_answer, rtol=1e-12, atol=0.0))
