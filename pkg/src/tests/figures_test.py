import unittest
import numpy as np
from services.errors import ParameterRegimeError
from services.figures import FigureData


class TestFigureData(unittest.TestCase):
    def setUp(self):
        self.figures_test = FigureData()

    def test_figure_one_rows_and_columns(self):
        table, metadata = self.figures_test.figure(1)
        self.assertEqual(len(table), 60)
        self.assertEqual(list(table.columns), ["k", "a_or_gamma", "Re_E", "Im_E", "kind", "units"])
        self.assertEqual(metadata["units"], "lambda^2/2")
        self.assertEqual(metadata["target"], "1")

    def test_figure_one_first_energy_in_figure_units(self):
        table, _ = self.figures_test.figure(1)
        self.assertAlmostEqual(table["Re_E"][0], -185.25, places=10)
        self.assertAlmostEqual(table["Im_E"][0], -145.0, places=10)
        self.assertEqual(table["a_or_gamma"][0], -5.0)

    def test_figure_one_single_series_override(self):
        table, metadata = self.figures_test.figure(1, {"a": -5.0})
        self.assertEqual(len(table), 15)
        self.assertEqual(metadata["parameters"]["a"], -5.0)

    def test_figure_two_rows(self):
        table, _ = self.figures_test.figure(2)
        self.assertEqual(len(table), 44)
        first = table.iloc[0]
        self.assertAlmostEqual(first["Re_E"], -6.25, places=12)
        self.assertEqual(first["Im_E"], 0.0)
        self.assertEqual(first["kind"], "embedded_resonance")

    def test_figure_three_rows_and_chains(self):
        table, metadata = self.figures_test.figure(3)
        self.assertEqual(len(table), 101)
        self.assertEqual(len(metadata["chains"]), 6)
        for chain in metadata["chains"]:
            self.assertAlmostEqual(chain["slope"], -1.0 / chain["gamma"], places=10)
            self.assertAlmostEqual(chain["intercept"], 7.5, places=9)

    def test_figure_rejects_unknown_id(self):
        with self.assertRaises(ParameterRegimeError):
            self.figures_test.figure(8)

    def test_potential_figures(self):
        for figure_id, coordinate in [(4, "r"), (5, "x"), (6, "x"), (7, "r")]:
            table, metadata = self.figures_test.figure(figure_id)
            self.assertEqual(len(table), 400)
            self.assertEqual(table.columns[0], coordinate)
            self.assertLess(metadata["fit"]["residual"], 1e-6)
            self.assertEqual(metadata["excluded_points"], 0)

    def test_figure_seven_has_effective_potential(self):
        table, metadata = self.figures_test.figure(7)
        self.assertIn("V_eff", table.columns)
        self.assertEqual(metadata["closed_form"]["kind"], "isotropic_oscillator")

    def test_phase_table_rows(self):
        table, metadata = self.figures_test.phase_table(0)
        self.assertEqual(len(table), 201)
        self.assertEqual(list(table.columns), ["E", "delta", "flag"])
        self.assertTrue(np.all(table["flag"] == "ok"))
        self.assertTrue(np.all(np.abs(table["delta"]) <= np.pi))
        self.assertEqual(metadata["command"], "phase")

    def test_phase_table_flags_pole(self):
        with self.assertLogs("services.figures", level="WARNING"):
            table, _ = self.figures_test.phase_table(3, {"E_min": 7.5, "E_max": 7.5, "steps": 1})
        self.assertEqual(table["flag"][0], "pole")
        self.assertTrue(np.isnan(table["delta"][0]))

    def test_phase_table_rejects_zero_steps(self):
        with self.assertRaises(ParameterRegimeError):
            self.figures_test.phase_table(1, {"steps": 0})

    def test_spectrum_table_general_branches(self):
        table, _ = self.figures_test.spectrum_table(0)
        self.assertEqual(len(table), 30)
        self.assertEqual(list(table["branch"][:2]), [1, -1])
        self.assertEqual(table["Im_E"][0], -table["Im_E"][1])

    def test_spectrum_table_example_three(self):
        table, _ = self.figures_test.spectrum_table(3)
        self.assertEqual(len(table), 16)
        self.assertEqual(list(table.columns), ["k", "series", "Re_E", "Im_E", "kind"])
        self.assertEqual(set(table["kind"]), {"resonance"})

    def test_reconstruction_table_configurations(self):
        table, metadata = self.figures_test.reconstruction_table({"config": "laguerre_line"})
        self.assertEqual(metadata["closed_form"]["kind"], "morse_1d")
        self.assertEqual(list(table.columns), ["x", "V_tilde", "V_total"])

    def test_reconstruction_table_default_configuration(self):
        _, metadata = self.figures_test.reconstruction_table()
        self.assertEqual(metadata["target"], "jacobi_radial")
        self.assertEqual(metadata["closed_form"]["kind"], "poschl_teller_hyperbolic")

    def test_reconstruction_table_rejects_unknown_configuration(self):
        with self.assertRaises(ParameterRegimeError):
            self.figures_test.reconstruction_table({"config": "hermite"})
