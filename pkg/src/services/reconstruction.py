import logging
import numpy as np
from repositories.structures import ClosedFormPotential, ReconstructionResult
from services.errors import InsufficientPointsError, LinearityError, SizeMismatchError
from services.basis import basis_functions as default_basis_functions
from services.hamiltonian import hamiltonian_builder as default_hamiltonian_builder

logger = logging.getLogger(__name__)

DEFAULT_TRUNCATION_ORDER = 20
DEFAULT_GRID_POINTS = 400
LINEARITY_THRESHOLD = 1e-6
ORACLE_POINTS = 60
LOG_UNDERFLOW = float(np.log(np.finfo(float).tiny))

CLOSED_FORM_KINDS = {
    "radial_tanh": "poschl_teller_hyperbolic",
    "trig_sine": "scarf_trig_generalized",
    "exp_line": "morse_1d",
    "radial_square": "isotropic_oscillator",
}


def default_grid(spec, points=DEFAULT_GRID_POINTS):
    """Function returns the uniform reconstruction grid of a basis: [0.05, 6]/lambda
    for the radial maps, the inner 98 % of [-L/2, L/2] for the trigonometric map
    and [-6, 2]/lambda on the line.
    """

    if spec.map_name == "trig_sine":
        length = spec.scale
        return np.linspace(-0.5 * length + 0.01 * length, 0.5 * length - 0.01 * length, points)
    if spec.map_name == "exp_line":
        return np.linspace(-6.0, 2.0, points) / spec.rate
    return np.linspace(0.05, 6.0, points) / spec.rate


def _least_squares_line(y, values):
    if len(y) < 3:
        raise InsufficientPointsError(f"insufficient points for a linear fit: {len(y)}")
    design = np.column_stack([np.ones_like(y), y])
    (v0, v1), *_ = np.linalg.lstsq(design, values, rcond=None)
    spread = float(np.max(values) - np.min(values))
    deviation = float(np.max(np.abs(values - (v0 + v1 * y))))
    residual = 0.0 if spread == 0 else deviation / spread
    return float(v0), float(v1), residual


class PotentialReconstruction:
    """Class recovers the potential from the first column of its tridiagonal
    matrix, checks that it is a straight line in the basis coordinate and
    identifies the matching closed-form potential.
    """

    def __init__(self, basis_functions=default_basis_functions,
                 hamiltonian_builder=default_hamiltonian_builder):
        self.basis_functions = basis_functions
        self.hamiltonian_builder = hamiltonian_builder

    def _valid_points(self, spec, grid):
        _, envelope = self.basis_functions.log_envelope(spec, grid)
        log_ground = envelope + self.basis_functions.log_normalization(spec, 0)
        lower, upper = spec.domain
        inside = (grid > lower) & (grid < upper)
        return inside & np.isfinite(log_ground) & (log_ground > LOG_UNDERFLOW)

    def reconstruct_potential(self, vt, spec, M=DEFAULT_TRUNCATION_ORDER, grid=None):
        """Method evaluates V(x) = sum_{m<M} [phi_m(x)/phi_0(x)] Vt_{m,0} on a grid and
        fits it as v0 + v1 y.

        Args:
            vt (SymTridiag): Potential matrix.
            spec (BasisSpec): Basis the matrix is written in.
            M (int, optional): Truncation order. Defaults to DEFAULT_TRUNCATION_ORDER.
            grid (array-like, optional): Points in the domain. Defaults to default_grid(spec).

        Raises:
            SizeMismatchError: M exceeds the matrix dimension.
            DomainError: Some grid point lies outside the domain.
            InsufficientPointsError: Fewer than three usable points remain.

        Returns:
            ReconstructionResult: Values, fit and excluded points.
        """

        if M < 1 or M > vt.dimension:
            raise SizeMismatchError(f"truncation order {M} does not fit dimension {vt.dimension}")
        grid = default_grid(spec) if grid is None else np.asarray(grid, dtype=float)
        valid = self._valid_points(spec, grid)
        excluded = tuple(float(x) for x in grid[~valid])
        if excluded:
            logger.warning("excluded %d grid points on the boundary or where phi_0 underflows", len(excluded))
            logger.debug("excluded grid points: %s", excluded)
        kept = grid[valid]
        column = vt.column(0)[:M]
        values = column @ self.basis_functions.ratio_table(spec, M - 1, kept)
        y = spec.coordinate(kept)
        v0, v1, residual = _least_squares_line(y, values)
        logger.debug("reconstruction on %s: v0=%.6g v1=%.6g residual=%.3e", spec.map_name, v0, v1, residual)
        return ReconstructionResult(kept, values, M, v0, v1, residual, y, excluded)

    def linear_fit_in_y(self, result, spec):
        """Method fits the reconstructed values as v0 + v1 y(x).

        Raises:
            InsufficientPointsError: Fewer than three grid points.

        Returns:
            tuple: (v0, v1, residual) with the residual relative to the value range.
        """

        return _least_squares_line(spec.coordinate(result.grid), np.asarray(result.v_tilde))

    def identify_closed_form(self, v0, v1, spec, residual=0.0, threshold=LINEARITY_THRESHOLD):
        """Method names the closed-form potential of the basis configuration.

        The hyperbolic form fixes the additive constant by V0_tilde = -V1_tilde and
        the Morse form by V0_tilde = 0; the constant removed is kept as energy_shift.
        The trigonometric form keeps both coefficients.

        Args:
            v0, v1 (float): Fit coefficients of v0 + v1 y.
            spec (BasisSpec): Basis configuration.
            residual (float, optional): Fit residual. Defaults to 0.
            threshold (float, optional): Largest accepted residual.

        Raises:
            LinearityError: Residual above threshold.

        Returns:
            ClosedFormPotential: Kind, coefficients and energy shift.
        """

        if residual > threshold:
            raise LinearityError("potential not linear in y; identification unavailable")
        lam = spec.rate
        kind = CLOSED_FORM_KINDS[spec.map_name]
        if spec.map_name == "radial_tanh":
            coefficients = {"V0": 0.5 * (spec.beta ** 2 - 0.25) * lam ** 2,
                            "V1_tilde": v1, "V0_tilde": -v1, "lambda": lam}
            return ClosedFormPotential(kind, coefficients, v0 + v1)
        if spec.map_name == "trig_sine":
            alpha, beta = spec.alpha, spec.beta
            coefficients = {"V_plus": 0.25 * (alpha ** 2 + beta ** 2 - 0.5) * lam ** 2,
                            "V_minus": 0.25 * (beta ** 2 - alpha ** 2) * lam ** 2,
                            "V1_tilde": v1, "V0_tilde": v0, "L": spec.scale}
            return ClosedFormPotential(kind, coefficients, 0.0)
        if spec.map_name == "exp_line":
            return ClosedFormPotential(kind, {"lambda": lam, "V1_tilde": v1, "V0_tilde": 0.0}, v0)
        return ClosedFormPotential(kind, {"V0_tilde": v0, "V1_tilde_r2": 0.25 * v1 * lam ** 2}, 0.0)

    def total_potential(self, spec, result):
        """Method returns the full potential on the result grid: the reference part
        plus the reconstructed one, or the reconstructed one alone for the radial
        oscillator basis, where the reference operator is purely kinetic.
        """

        if spec.map_name == "radial_square":
            return np.asarray(result.v_tilde)
        return self.hamiltonian_builder.reference_potential(spec, result.grid) + result.v_tilde

    def effective_potential(self, spec, result):
        """Method returns l(l+1)/2r^2 + V(r) for the radial oscillator basis.
        """

        centrifugal = self.hamiltonian_builder.reference_potential(spec, result.grid)
        return centrifugal + self.total_potential(spec, result)

    def reconstructed_part(self, spec, closed_form, x):
        """Method returns the part of the closed form that the potential matrix
        represents, i.e. the closed form with the reference potential removed and
        the energy shift added back.
        """

        values = closed_form.evaluate(x) + closed_form.energy_shift
        if spec.map_name == "radial_square":
            return values
        return values - self.hamiltonian_builder.reference_potential(spec, x)

    def matrix_column_by_quadrature(self, spec, potential, n_max, points=ORACLE_POINTS):
        """Method returns <phi_n|V|phi_0> for n = 0..n_max by the measure rule.

        Args:
            spec (BasisSpec): Basis description.
            potential (callable): V(x) on arrays.
            n_max (int): Highest row.
            points (int, optional): Nodes of the rule.

        Returns:
            np.ndarray: Column of length n_max + 1.
        """

        x, weights = self.basis_functions.measure_rule(spec, points)
        table = self.basis_functions.basis_table(spec, n_max, x)
        return table @ (weights * potential(x) * table[0])

    def round_trip_deviation(self, vt, spec, closed_form, n_max=4):
        """Method compares the column rebuilt from the closed form with column 0 of
        the potential matrix and returns the largest difference.
        """

        column = self.matrix_column_by_quadrature(
            spec, lambda x: self.reconstructed_part(spec, closed_form, x), n_max)
        return float(np.max(np.abs(column - vt.column(0)[:n_max + 1])))

    def reconstruct_configuration(self, p, spec, dimension=30, M=DEFAULT_TRUNCATION_ORDER, grid=None):
        """Method builds H, the reference matrix and their difference, reconstructs
        the potential and identifies it.

        Returns:
            tuple: (ReconstructionResult, ClosedFormPotential, HamiltonianSet).
        """

        matrices = self.hamiltonian_builder.hamiltonian_set(p, spec, dimension)
        result = self.reconstruct_potential(matrices.Vt, spec, M, grid)
        closed_form = self.identify_closed_form(result.v0, result.v1, spec, result.residual)
        logger.debug("identified %s with coefficients %s", closed_form.kind, closed_form.coefficients)
        return result, closed_form, matrices


potential_reconstruction = PotentialReconstruction()
