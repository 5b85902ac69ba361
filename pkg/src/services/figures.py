import logging
import numpy as np
import pandas as pd
from repositories.config_utilities import figure_defaults as default_figure_defaults
from repositories.parameters import (BasisSpec, ContinuousHahnParams, ExampleOneParams,
                                     ExampleThreeParams, ExampleTwoParams)
from services.errors import GammaPoleError, InsufficientPointsError, ParameterRegimeError
from services.reconstruction import default_grid, potential_reconstruction as default_reconstruction
from services.spectra import classify, spectra as default_spectra

logger = logging.getLogger(__name__)

SPECTRUM_FIGURES = (1, 2, 3)
POTENTIAL_FIGURES = (4, 5, 6, 7)
CONFIGURATIONS = ("jacobi_radial", "jacobi_trig", "laguerre_line", "laguerre_radial")
FIGURE_UNIT_DIVISORS = {1: 0.5, 2: 0.5, 3: 1.0}


def _series(value):
    return [float(item) for item in np.atleast_1d(value)]


def _basis_spec(parameters):
    config = parameters["config"]
    if config == "jacobi_radial":
        return BasisSpec.jacobi_radial(parameters["alpha"], parameters["beta"], parameters["lambda"])
    if config == "jacobi_trig":
        return BasisSpec.jacobi_trig(parameters["alpha"], parameters["beta"], parameters["L"])
    if config == "laguerre_line":
        return BasisSpec.laguerre_line(parameters["beta"], parameters["lambda"])
    if config == "laguerre_radial":
        return BasisSpec.laguerre_radial(parameters["ell"], parameters["lambda"])
    raise ParameterRegimeError(f"unknown configuration {config}")


def _second_shift(parameters):
    if "b" in parameters:
        return float(parameters["b"])
    return float(parameters.get("b_sign", 1)) * float(parameters["a"])


class FigureData:
    """Class turns resolved parameter sets into the data tables of the figures,
    the phase sweeps, the spectra and the reconstructions. Every method returns
    a pandas DataFrame with a fixed column order and a metadata dictionary.
    """

    def __init__(self, spectra=default_spectra, reconstruction=default_reconstruction,
                 figure_defaults=default_figure_defaults):
        self.spectra = spectra
        self.reconstruction = reconstruction
        self.figure_defaults = figure_defaults

    def _metadata(self, command, target, section, key, parameters):
        entry = self.figure_defaults.entry(section, key)
        return {"command": command, "target": str(target), "parameters": parameters,
                "units": entry["units"], "reference": entry["reference"]}

    def figure(self, figure_id, overrides=None):
        """Method returns the data of figure 1..7 with the caption defaults and the
        given overrides.

        Raises:
            ParameterRegimeError: Unknown figure id.
        """

        if figure_id not in SPECTRUM_FIGURES + POTENTIAL_FIGURES:
            raise ParameterRegimeError(f"unknown figure id {figure_id}")
        parameters = self.figure_defaults.resolve("figures", figure_id, overrides)
        metadata = self._metadata("figure", figure_id, "figures", figure_id, parameters)
        if figure_id in POTENTIAL_FIGURES:
            table, extra = self._reconstruction_frame(parameters)
            metadata.update(extra)
            return table, metadata
        table, extra = self._spectrum_figure(figure_id, parameters)
        metadata.update(extra)
        return table, metadata

    def _spectrum_figure(self, figure_id, parameters):
        lam = float(parameters["lambda"])
        divisor = FIGURE_UNIT_DIVISORS[figure_id] * lam ** 2
        units = self.figure_defaults.entry("figures", figure_id)["units"]
        rows = []
        chains = []
        if figure_id == 3:
            for gamma in _series(parameters["gamma"]):
                entries = self.spectra.example3_spectrum(
                    ExampleThreeParams(gamma, float(parameters["a"]), float(parameters["nu"]), lam))
                rows.extend((entry, gamma) for entry in entries)
                chains.append(self._chain_summary(gamma, entries, lam))
        else:
            for a in _series(parameters["a"]):
                if figure_id == 1:
                    entries = self.spectra.example1_spectrum(ExampleOneParams(float(parameters["mu"]), a, lam))
                else:
                    strength = 0.5 * float(parameters["V"]) * lam ** 2
                    entries = self.spectra.example2_spectrum(
                        ExampleTwoParams(strength, a, float(parameters.get("b", a)), lam),
                        int(parameters["k_max"]))
                rows.extend((entry, a) for entry in entries)
        table = pd.DataFrame({
            "k": [entry.k for entry, _ in rows],
            "a_or_gamma": [series for _, series in rows],
            "Re_E": [entry.energy.real / divisor for entry, _ in rows],
            "Im_E": [entry.energy.imag / divisor for entry, _ in rows],
            "kind": [entry.kind for entry, _ in rows],
            "units": [units] * len(rows),
        })
        return table, ({"chains": chains} if chains else {})

    def _chain_summary(self, gamma, entries, lam):
        try:
            slope, intercept, residual = self.spectra.chain_line(entries, lam)
        except InsufficientPointsError:
            return {"gamma": gamma, "points": len(entries)}
        return {"gamma": gamma, "points": len(entries), "slope": slope,
                "intercept": intercept, "residual": residual}

    def phase_table(self, example, overrides=None):
        """Method sweeps the phase shift of example 0..3 over a uniform energy grid.
        Energies on a gamma pole give a row flagged 'pole' with an empty phase.

        Raises:
            ParameterRegimeError: steps < 1 or parameters outside the scattering regime.
        """

        parameters = self.figure_defaults.resolve("phase", example, overrides)
        steps = int(parameters["steps"])
        if steps < 1:
            raise ParameterRegimeError(f"steps must be positive, got {steps}")
        phase = self._phase_function(example, parameters)
        energies = np.linspace(float(parameters["E_min"]), float(parameters["E_max"]), steps)
        deltas, flags = [], []
        for energy in energies:
            try:
                deltas.append(phase(float(energy)))
                flags.append("ok")
            except GammaPoleError:
                logger.warning("phase undefined at E=%.17g, row flagged", energy)
                deltas.append(np.nan)
                flags.append("pole")
        table = pd.DataFrame({"E": energies, "delta": deltas, "flag": flags})
        return table, self._metadata("phase", example, "phase", example, parameters)

    def _phase_function(self, example, parameters):
        lam = float(parameters["lambda"])
        if example == 0:
            p = ContinuousHahnParams(float(parameters["mu"]), float(parameters["nu"]),
                                     float(parameters["a"]), float(parameters["b"]))
            return lambda energy: self.spectra.general_phase(p, energy, lam)
        if example == 1:
            p = ExampleOneParams(float(parameters["mu"]), float(parameters["a"]), lam)
            return lambda energy: self.spectra.example1_phase(p, energy)
        if example == 2:
            p = ExampleTwoParams(0.5 * float(parameters["V"]) * lam ** 2, float(parameters["a"]),
                                 float(parameters["b"]), lam)
            return lambda energy: self.spectra.example2_phase(p, energy)
        if example == 3:
            p = ExampleThreeParams(float(parameters["gamma"]), float(parameters["a"]),
                                   float(parameters["nu"]), lam)
            return lambda energy: self.spectra.example3_phase(p, energy)
        raise ParameterRegimeError(f"unknown example {example}")

    def spectrum_table(self, example, overrides=None):
        """Method lists the discrete spectrum of example 1..3, or the amplitude zeros
        of the general system (example 0) with both sign branches, as energies in
        absolute units.
        """

        parameters = self.figure_defaults.resolve("spectrum", example, overrides)
        lam = float(parameters["lambda"])
        if example == 0:
            p = ContinuousHahnParams(float(parameters["mu"]), float(parameters["nu"]),
                                     float(parameters["a"]), float(parameters["b"]))
            points = self.spectra.general_spectrum_points(p)
            energies = [lam ** 2 * point.z for point in points]
            table = pd.DataFrame({
                "k": [point.k for point in points],
                "branch": [point.branch for point in points],
                "Re_E": [energy.real for energy in energies],
                "Im_E": [energy.imag for energy in energies],
                "kind": [classify(energy) for energy in energies],
            })
            return table, self._metadata("spectrum", example, "spectrum", example, parameters)
        if example == 1:
            series = float(parameters["a"])
            entries = self.spectra.example1_spectrum(ExampleOneParams(float(parameters["mu"]), series, lam))
        elif example == 2:
            series = float(parameters["a"])
            entries = self.spectra.example2_spectrum(
                ExampleTwoParams(0.5 * float(parameters["V"]) * lam ** 2, series, float(parameters["b"]), lam),
                int(parameters["k_max"]))
        elif example == 3:
            series = float(parameters["gamma"])
            entries = self.spectra.example3_spectrum(
                ExampleThreeParams(series, float(parameters["a"]), float(parameters["nu"]), lam))
        else:
            raise ParameterRegimeError(f"unknown example {example}")
        table = pd.DataFrame({
            "k": [entry.k for entry in entries],
            "series": [series] * len(entries),
            "Re_E": [entry.energy.real for entry in entries],
            "Im_E": [entry.energy.imag for entry in entries],
            "kind": [entry.kind for entry in entries],
        })
        return table, self._metadata("spectrum", example, "spectrum", example, parameters)

    def reconstruction_table(self, overrides=None):
        """Method reconstructs the potential of one basis configuration, chosen by
        the 'config' parameter, with its defaults and the given overrides.
        """

        overrides = dict(overrides or {})
        config = overrides.get("config", CONFIGURATIONS[0])
        if config not in CONFIGURATIONS:
            raise ParameterRegimeError(f"unknown configuration {config}")
        parameters = self.figure_defaults.resolve("reconstruct", config, overrides)
        table, extra = self._reconstruction_frame(parameters)
        metadata = self._metadata("reconstruct", config, "reconstruct", config, parameters)
        metadata.update(extra)
        return table, metadata

    def _reconstruction_frame(self, parameters):
        spec = _basis_spec(parameters)
        p = ContinuousHahnParams(float(parameters["mu"]), float(parameters["nu"]),
                                 float(parameters["a"]), _second_shift(parameters))
        grid = default_grid(spec, int(parameters["points"]))
        result, closed_form, _ = self.reconstruction.reconstruct_configuration(
            p, spec, int(parameters["dimension"]), int(parameters["M"]), grid)
        logger.debug("fit v0=%.17g v1=%.17g residual %.3e, closed form %s",
                     result.v0, result.v1, result.residual, closed_form.kind)
        coordinate = "x" if spec.map_name in ("trig_sine", "exp_line") else "r"
        columns = {coordinate: result.grid, "V_tilde": result.v_tilde,
                   "V_total": self.reconstruction.total_potential(spec, result)}
        if spec.map_name == "radial_square":
            columns["V_eff"] = self.reconstruction.effective_potential(spec, result)
        extra = {"fit": {"v0": result.v0, "v1": result.v1, "residual": result.residual},
                 "closed_form": {"kind": closed_form.kind, "coefficients": closed_form.coefficients,
                                 "energy_shift": closed_form.energy_shift},
                 "excluded_points": len(result.excluded)}
        return pd.DataFrame(columns), extra


figure_data = FigureData()
