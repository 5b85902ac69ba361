import unittest
import numpy as np
import mpmath
from repositories.parameters import (ContinuousHahnParams, ExampleOneParams, ExampleTwoParams,
                                     ExampleThreeParams)
from services.errors import GammaPoleError, InsufficientPointsError, ParameterRegimeError
from services.orthogonal_polynomials import OrthogonalPolynomials
from services.spectra import Spectra, classify


def _oracle_arg(w):
    return float(mpmath.arg(mpmath.gamma(mpmath.mpc(w.real, w.imag))))


def _wrap(theta):
    return float(np.angle(np.exp(1j * theta)))


class TestClassify(unittest.TestCase):
    def test_classify_fourth_quadrant(self):
        self.assertEqual(classify(1.5 - 3j), "resonance")

    def test_classify_third_quadrant(self):
        self.assertEqual(classify(-92.625 - 72.5j), "embedded_resonance")

    def test_classify_real(self):
        self.assertEqual(classify(4 + 0j), "bound")
        self.assertEqual(classify(-3.125), "bound")

    def test_classify_growing(self):
        self.assertEqual(classify(-1.0 + 0.5j), "unphysical")

    def test_classify_threshold(self):
        self.assertEqual(classify(1.0 - 1j, embedded_threshold=2.0), "embedded_resonance")

    def test_classify_index_rule(self):
        self.assertEqual(classify(-3.125 + 0j, 3, 0), "embedded_resonance")
        self.assertEqual(classify(7.5 + 0j, 0.0, 15), "resonance")
        self.assertEqual(classify(-1.0 - 1j, 9.5, 9), "embedded_resonance")
        self.assertEqual(classify(1.0 - 1j, 9.5, 10), "resonance")
        self.assertEqual(classify(1.0 + 1j, 0.0, 2), "unphysical")


class TestSpectra(unittest.TestCase):
    def setUp(self):
        self.spectra_test = Spectra()
        self.polynomials = OrthogonalPolynomials()

    def test_general_spectrum_points_single(self):
        output = self.spectra_test.general_spectrum_points(ContinuousHahnParams(-0.5, 1.0, 0.0, 0.0))
        self.assertEqual(len(output), 2)
        self.assertEqual(output[0].branch, 1)
        self.assertAlmostEqual(output[0].z, -0.5j)
        self.assertAlmostEqual(output[1].z, 0.5j)

    def test_general_spectrum_points_count(self):
        output = self.spectra_test.general_spectrum_points(ContinuousHahnParams(-14.5, 1.0, -5.0, 0.0))
        self.assertEqual(len(output), 30)
        self.assertEqual(sorted({point.k for point in output}), list(range(15)))

    def test_general_spectrum_points_empty(self):
        output = self.spectra_test.general_spectrum_points(ContinuousHahnParams(3.0, 1.0, 0.0, 0.0))
        self.assertEqual(output, [])

    def test_general_spectrum_points_conjugate_branches(self):
        output = self.spectra_test.general_spectrum_points(ContinuousHahnParams(-4.2, 1.0, 1.3, 0.0))
        for plus, minus in zip(output[0::2], output[1::2]):
            self.assertEqual(plus.k, minus.k)
            self.assertEqual(plus.z.conjugate(), minus.z)

    def test_general_spectrum_points_are_amplitude_zeros(self):
        p = ContinuousHahnParams(-14.5, -14.5, -5.0, 5.0)
        for point in self.spectra_test.general_spectrum_points(p):
            if point.branch == 1:
                self.assertEqual(self.polynomials.scattering_amplitude(p, point.z), 0.0)

    def test_example1_spectrum_figure_values(self):
        output = self.spectra_test.example1_spectrum(ExampleOneParams(-14.5, -5.0, 1.0))
        self.assertEqual(len(output), 15)
        self.assertAlmostEqual(output[0].energy.real, -92.625, places=12)
        self.assertAlmostEqual(output[0].energy.imag, -72.5, places=12)
        self.assertEqual(output[0].kind, "embedded_resonance")

    def test_example1_spectrum_quadrant_rule_matches_threshold(self):
        output = self.spectra_test.example1_spectrum(ExampleOneParams(-14.5, -5.0, 1.0))
        for entry in output:
            wanted_answer = "embedded_resonance" if entry.k < -5.0 + 14.5 else "resonance"
            self.assertEqual(entry.kind, wanted_answer)

    def test_example1_spectrum_bound_states(self):
        output = self.spectra_test.example1_spectrum(ExampleOneParams(-3.2, 0.0, 2.0))
        self.assertEqual(len(output), 4)
        for entry in output:
            self.assertEqual(entry.kind, "bound")
            self.assertEqual(entry.energy.imag, 0.0)
            self.assertAlmostEqual(entry.energy.real, -2.0 * (entry.k - 3.2) ** 2, places=12)

    def test_example1_spectrum_positive_a_unphysical(self):
        output = self.spectra_test.example1_spectrum(ExampleOneParams(-3.2, 1.0, 1.0))
        self.assertEqual(output[0].kind, "unphysical")

    def test_example1_spectrum_real_endpoint_is_resonance(self):
        output = self.spectra_test.example1_spectrum(ExampleOneParams(-3.0, -1.0, 1.0))
        self.assertEqual(len(output), 4)
        self.assertEqual(output[-1].energy.imag, 0.0)
        self.assertEqual([entry.kind for entry in output],
                         ["embedded_resonance", "embedded_resonance", "resonance", "resonance"])

    def test_example1_spectrum_positive_a_endpoint_unphysical(self):
        output = self.spectra_test.example1_spectrum(ExampleOneParams(-2.0, 1.0, 1.0))
        for entry in output:
            self.assertEqual(entry.kind, "unphysical")

    def test_example1_spectrum_empty_for_positive_mu(self):
        self.assertEqual(self.spectra_test.example1_spectrum(ExampleOneParams(2.0, 0.0, 1.0)), [])

    def test_example1_spectrum_points_are_amplitude_zeros(self):
        params = ExampleOneParams(-6.5, -2.0, 1.5)
        p = ContinuousHahnParams(params.mu, params.mu, params.a, -params.a)
        for entry in self.spectra_test.example1_spectrum(params):
            z = np.sqrt(2.0 * entry.energy) / params.lam
            if abs(p.mu + 1j * (z + p.a) + entry.k) > 1e-9:
                z = -z
            self.assertEqual(self.polynomials.scattering_amplitude(p, z), 0.0)

    def test_example1_phase_vanishes_at_threshold(self):
        output = self.spectra_test.example1_phase(ExampleOneParams(2.0, 0.0, 1.0), 1e-14)
        self.assertAlmostEqual(output, 0.0, places=6)

    def test_example1_phase_oracle(self):
        output = self.spectra_test.example1_phase(ExampleOneParams(2.0, 1.0, 1.0), 2.0)
        wanted_answer = _wrap(-2.0 * _oracle_arg(2.0 + 3.0j))
        self.assertAlmostEqual(output, wanted_answer, places=11)

    def test_example1_phase_matches_general_phase(self):
        params = ExampleOneParams(1.7, -0.6, 2.0)
        p = ContinuousHahnParams(1.7, 1.7, -0.6, 0.6)
        for energy in [0.3, 2.0, 11.0]:
            output = self.spectra_test.example1_phase(params, energy)
            wanted_answer = self.polynomials.scattering_phase(p, np.sqrt(2.0 * energy) / 2.0)
            self.assertAlmostEqual(output, wanted_answer, places=12)

    def test_example1_phase_requires_positive_mu(self):
        with self.assertRaises(ParameterRegimeError):
            self.spectra_test.example1_phase(ExampleOneParams(-1.0, 0.0, 1.0), 1.0)

    def test_example2_spectrum_figure_values(self):
        output = self.spectra_test.example2_spectrum(ExampleTwoParams(3.75, -10.0, -10.0, 1.0), 10)
        self.assertEqual(len(output), 11)
        self.assertAlmostEqual(output[0].energy.real, -3.125, places=12)
        self.assertEqual(output[0].energy.imag, 0.0)
        self.assertEqual([entry.kind for entry in output[:4]],
                         ["embedded_resonance", "embedded_resonance", "embedded_resonance", "resonance"])
        self.assertAlmostEqual(output[1].energy.imag, -2.5, places=12)
        self.assertEqual(output[10].kind, "resonance")
        self.assertGreater(output[10].energy.real, 0.0)

    def test_example2_spectrum_bound_family(self):
        output = self.spectra_test.example2_spectrum(ExampleTwoParams(5.0, -10.0, 3.0, 1.0))
        self.assertEqual(len(output), 51)
        for entry in output:
            self.assertEqual(entry.kind, "bound")
            self.assertAlmostEqual(entry.energy.real, 0.5 * entry.k ** 2, places=10)

    def test_example2_spectrum_integer_threshold_is_embedded(self):
        output = self.spectra_test.example2_spectrum(ExampleTwoParams(4.0, -11.0, 0.0, 1.0), 4)
        self.assertEqual([entry.kind for entry in output],
                         ["embedded_resonance"] * 4 + ["resonance"])
        self.assertAlmostEqual(output[3].energy.real, 0.0, places=12)

    def test_example2_spectrum_growing_family_unphysical(self):
        output = self.spectra_test.example2_spectrum(ExampleTwoParams(2.0, -1.0, 0.0, 1.0), 5)
        for entry in output:
            self.assertEqual(entry.kind, "unphysical")

    def test_example2_spectrum_rejects_negative_k_max(self):
        with self.assertRaises(ParameterRegimeError):
            self.spectra_test.example2_spectrum(ExampleTwoParams(1.0, 0.0, 0.0, 1.0), -1)

    def test_example2_phase_free_case(self):
        output = self.spectra_test.example2_phase(ExampleTwoParams(0.0, 0.0, 0.0, 1.0), 1.3)
        self.assertAlmostEqual(output, 0.0, places=12)

    def test_example2_phase_oracle(self):
        output = self.spectra_test.example2_phase(ExampleTwoParams(3.75, -10.0, -10.0, 1.0), 1.0)
        wanted_answer = _wrap(-_oracle_arg(2.0 + 7.5j - 10.0j) - _oracle_arg(2.0 + 7.5j + 10.0j))
        self.assertAlmostEqual(output, wanted_answer, places=10)

    def test_example2_phase_sign_flip(self):
        for energy in [0.4, 2.2]:
            first = self.spectra_test.example2_phase(ExampleTwoParams(1.2, 0.7, -2.1, 1.3), energy)
            second = self.spectra_test.example2_phase(ExampleTwoParams(-1.2, -0.7, 2.1, 1.3), energy)
            self.assertAlmostEqual(_wrap(first + second), 0.0, places=12)

    def test_example3_spectrum_figure_values(self):
        output = self.spectra_test.example3_spectrum(ExampleThreeParams(-2.0, -7.5, 1.0, 1.0))
        self.assertEqual(len(output), 16)
        self.assertAlmostEqual(output[0].energy.real, 1.5, places=12)
        self.assertAlmostEqual(output[0].energy.imag, -3.0, places=12)
        self.assertEqual(output[-1].energy.imag, 0.0)
        self.assertAlmostEqual(output[-1].energy.real, 7.5, places=12)
        for entry in output[:-1]:
            self.assertLess(entry.energy.imag, 0.0)
        for entry in output:
            self.assertEqual(entry.kind, "resonance")

    def test_example3_spectrum_empty(self):
        self.assertEqual(self.spectra_test.example3_spectrum(ExampleThreeParams(2.0, -7.5, 1.0, 1.0)), [])

    def test_chain_line_slope_and_intercept(self):
        for gamma in [-0.5, -1.0, -1.5, -2.0, -3.0, -5.0]:
            entries = self.spectra_test.example3_spectrum(ExampleThreeParams(gamma, -7.5, 1.0, 2.0))
            slope, intercept, residual = self.spectra_test.chain_line(entries, 2.0)
            self.assertAlmostEqual(slope, -1.0 / gamma, places=10)
            self.assertAlmostEqual(intercept, 7.5, places=10)
            self.assertLess(residual, 1e-12)

    def test_chain_line_needs_two_points(self):
        entries = self.spectra_test.example3_spectrum(ExampleThreeParams(-0.1, -7.5, 1.0, 1.0))
        with self.assertRaises(InsufficientPointsError):
            self.spectra_test.chain_line(entries)

    def test_example3_phase_pole(self):
        with self.assertRaises(GammaPoleError):
            self.spectra_test.example3_phase(ExampleThreeParams(-2.0, 0.0, 1.0, 1.0), 0.0)

    def test_example3_phase_without_gamma(self):
        output = self.spectra_test.example3_phase(ExampleThreeParams(0.0, 0.0, 1.4, 1.0), 2.5)
        wanted_answer = _wrap(-_oracle_arg(2.5j) - _oracle_arg(1.4 + 2.5j))
        self.assertAlmostEqual(output, wanted_answer, places=10)

    def test_example3_phase_oracle(self):
        output = self.spectra_test.example3_phase(ExampleThreeParams(-2.0, -7.5, 1.0, 1.0), 3.0)
        wanted_answer = _wrap(-_oracle_arg(-6.0 - 4.5j) - _oracle_arg(1.0 - 4.5j))
        self.assertAlmostEqual(output, wanted_answer, places=10)

    def test_general_phase_scales_energy(self):
        p = ContinuousHahnParams(3.0, 4.0, 2.0, -2.0)
        output = self.spectra_test.general_phase(p, 8.0, 2.0)
        wanted_answer = self.polynomials.scattering_phase(p, 2.0)
        self.assertAlmostEqual(output, wanted_answer, places=14)

    def test_general_spectrum_energies(self):
        output = self.spectra_test.general_spectrum(ContinuousHahnParams(-2.5, 1.0, 0.0, 0.0), 2.0)
        self.assertEqual(len(output), 3)
        self.assertAlmostEqual(output[0].energy, -10.0j)
