import logging
import numpy as np
from repositories.structures import SymTridiag, HamiltonianSet
from services.errors import ParameterRegimeError, SizeMismatchError
from services.orthogonal_polynomials import (continuous_hahn_coefficients,
                                             orthogonal_polynomials as default_orthogonal_polynomials)
from services.basis import basis_functions as default_basis_functions
from services.quadrature import quadrature as default_quadrature

logger = logging.getLogger(__name__)

DEFAULT_DIMENSION = 30
ORACLE_POINTS = 60
ORACLE_STEP = 1e-2
BOUNDARY_STEP_FRACTION = 0.25


def _require_jacobi_parameters(alpha, beta):
    if alpha <= -1 or beta <= -1:
        raise ParameterRegimeError(f"Jacobi parameters must exceed -1: alpha={alpha}, beta={beta}")


def _require_dimension(n):
    if n < 1:
        raise SizeMismatchError(f"matrix dimension must be at least 1, got {n}")


class HamiltonianBuilder:
    """Class builds the symmetric tridiagonal matrices of the total Hamiltonian, the
    reference Hamiltonians and kinetic operator of the four basis configurations, and
    the potential matrix. It also evaluates matrix elements independently by finite
    differences and quadrature, which the tests and checks compare against.
    """

    def __init__(self, orthogonal_polynomials=default_orthogonal_polynomials,
                 basis_functions=default_basis_functions, quadrature=default_quadrature):
        self.orthogonal_polynomials = orthogonal_polynomials
        self.basis_functions = basis_functions
        self.quadrature = quadrature

    def build_H(self, p, lam, n=DEFAULT_DIMENSION):
        """Method returns the total Hamiltonian whose matrix wave equation is the
        continuous Hahn recursion with E = lambda^2 z.

        Args:
            p (ContinuousHahnParams): Parameters with mu, nu > 0.
            lam (float): Length scale lambda.
            n (int, optional): Dimension. Defaults to DEFAULT_DIMENSION.

        Raises:
            ParameterDegeneracyError: mu + nu = 1/2.

        Returns:
            SymTridiag: H in absolute units.
        """

        p.require_orthogonality_regime()
        _require_dimension(n)
        c, d = continuous_hahn_coefficients(p, n)
        scale = lam ** 2
        return SymTridiag(scale * (-p.a + 0.5 * c), 0.5 * scale * d[:n - 1])

    def build_H0_jacobi_radial(self, alpha, beta, lam, n=DEFAULT_DIMENSION):
        """Method returns the reference Hamiltonian -1/2 d^2/dr^2 + V0/sinh^2(lambda r)
        in the Jacobi basis with y = 2 tanh^2(lambda r) - 1. The removable 0/0 terms
        at n = 0 take their limits.
        """

        _require_jacobi_parameters(alpha, beta)
        _require_dimension(n)
        s = alpha + beta
        diag = np.zeros(n)
        off = np.zeros(n - 1)
        for k in range(n):
            bracket = (k + 0.5 * s + 1) ** 2 - 1.0 / 16.0
            if k == 0:
                c_k = (beta - alpha) / (s + 2)
                first = 0.0
                d_k = 2.0 / (s + 2) * np.sqrt((alpha + 1) * (beta + 1) / (s + 3))
            else:
                c_k = (beta ** 2 - alpha ** 2) / ((2 * k + s) * (2 * k + s + 2))
                first = 2.0 * k * (k + beta) / (2 * k + s)
                d_k = 2.0 / (2 * k + s + 2) * np.sqrt(
                    (k + 1) * (k + alpha + 1) * (k + beta + 1) * (k + s + 1) / ((2 * k + s + 1) * (2 * k + s + 3)))
            diag[k] = -first - 0.5 * (alpha + 1) ** 2 + bracket * (1 - c_k)
            if k < n - 1:
                off[k] = -bracket * d_k
        return SymTridiag(lam ** 2 * diag, lam ** 2 * off)

    def build_H0_jacobi_trig(self, alpha, beta, L, n=DEFAULT_DIMENSION):
        """Method returns the diagonal reference Hamiltonian of the trigonometric
        Jacobi basis, lambda = pi/L.
        """

        _require_jacobi_parameters(alpha, beta)
        _require_dimension(n)
        if not L > 0:
            raise ParameterRegimeError(f"L must be positive, got {L}")
        lam = np.pi / L
        k = np.arange(n, dtype=float)
        return SymTridiag(0.5 * lam ** 2 * (k + 0.5 * (alpha + beta + 1)) ** 2, np.zeros(n - 1))

    def build_H0_laguerre_1d(self, beta, lam, n=DEFAULT_DIMENSION):
        """Method returns the reference Hamiltonian -1/2 d^2/dx^2 + lambda^2 e^{2 lambda x}/8
        in the Laguerre basis with y = e^{lambda x}.
        """

        if beta <= -1:
            raise ParameterRegimeError(f"Laguerre parameter must exceed -1, got {beta}")
        _require_dimension(n)
        k = np.arange(n, dtype=float)
        diag = (2 * k + beta + 1) * (k + 0.5 * beta + 1) - k - 0.25 * (beta + 1) ** 2
        k = k[:n - 1]
        off = -(k + 0.5 * beta + 1) * np.sqrt((k + 1) * (k + beta + 1))
        return SymTridiag(0.5 * lam ** 2 * diag, 0.5 * lam ** 2 * off)

    def build_T_laguerre_radial(self, ell, lam, n=DEFAULT_DIMENSION):
        """Method returns the radial kinetic operator including l(l+1)/2r^2 in the
        Laguerre basis with y = (lambda r/2)^2 and beta = l + 1/2. The basis scale is
        lambda/2, hence the lambda^2/8 factor.
        """

        if int(ell) != ell or ell < 0:
            raise ParameterRegimeError(f"ell must be a nonnegative integer, got {ell}")
        _require_dimension(n)
        beta = ell + 0.5
        factor = 0.125 * lam ** 2
        k = np.arange(n, dtype=float)
        diag = factor * (2 * k + beta + 1)
        k = k[:n - 1]
        return SymTridiag(diag, factor * np.sqrt((k + 1) * (k + beta + 1)))

    def potential_matrix(self, H, H0):
        """Method returns Vt = H - H0 entry by entry.

        Raises:
            SizeMismatchError: Dimensions differ.
        """

        if H.dimension != H0.dimension:
            raise SizeMismatchError(f"size mismatch: {H.dimension} and {H0.dimension}")
        return SymTridiag(H.diag - H0.diag, H.off - H0.off, H.scale_note)

    def reference_matrix(self, spec, n=DEFAULT_DIMENSION):
        """Method returns H0 (or T for the radial oscillator basis) matching the basis.
        """

        if spec.map_name == "radial_tanh":
            return self.build_H0_jacobi_radial(spec.alpha, spec.beta, spec.scale, n)
        if spec.map_name == "trig_sine":
            return self.build_H0_jacobi_trig(spec.alpha, spec.beta, spec.scale, n)
        if spec.map_name == "exp_line":
            return self.build_H0_laguerre_1d(spec.beta, spec.scale, n)
        return self.build_T_laguerre_radial(spec.ell, spec.scale, n)

    def hamiltonian_set(self, p, spec, n=DEFAULT_DIMENSION):
        """Method builds H with E = rate^2 z, the reference matrix of the basis and
        their difference.
        """

        H = self.build_H(p, spec.rate, n)
        H0 = self.reference_matrix(spec, n)
        return HamiltonianSet(H, H0, self.potential_matrix(H, H0))

    def wave_equation_residual(self, H, p, lam, z):
        """Method returns max_n |E P_n - (H P)_n| / (lambda^2 max|P|) over the rows
        0..dim-2, with E = lambda^2 z and P from the recursion.
        """

        dimension = H.dimension
        values = self.orthogonal_polynomials.cont_hahn_recursion(p, z, dimension).values
        energy = lam ** 2 * z
        rows = np.arange(dimension - 1)
        applied = H.diag[rows] * values[rows] + H.off[rows] * values[rows + 1]
        applied[1:] += H.off[rows[1:] - 1] * values[rows[1:] - 1]
        residual = np.abs(energy * values[rows] - applied)
        return float(np.max(residual) / (lam ** 2 * np.max(np.abs(values))))

    def reference_potential(self, spec, x):
        """Method returns the potential part of the reference operator at x:
        V0/sinh^2(lambda r), (V+ - V- sin)/cos^2, lambda^2 e^{2 lambda x}/8 or
        l(l+1)/2r^2.
        """

        x = np.asarray(x, dtype=float)
        lam = spec.rate
        beta = spec.beta
        if spec.map_name == "radial_tanh":
            strength = 0.5 * (beta ** 2 - 0.25) * lam ** 2
            return strength / np.sinh(lam * x) ** 2
        if spec.map_name == "trig_sine":
            alpha = spec.alpha
            plus = 0.25 * (alpha ** 2 + beta ** 2 - 0.5) * lam ** 2
            minus = 0.25 * (beta ** 2 - alpha ** 2) * lam ** 2
            return (plus - minus * np.sin(lam * x)) / np.cos(lam * x) ** 2
        if spec.map_name == "exp_line":
            return lam ** 2 * np.exp(2.0 * lam * x) / 8.0
        return 0.5 * spec.ell * (spec.ell + 1) / x ** 2

    def _finite_difference_steps(self, spec, x):
        step = np.full_like(x, ORACLE_STEP / spec.rate)
        lower, upper = spec.domain
        distance = np.minimum(x - lower, upper - x)
        return np.minimum(step, BOUNDARY_STEP_FRACTION * distance)

    def operator_matrix_by_quadrature(self, spec, n_max, points=ORACLE_POINTS):
        """Method evaluates <phi_n| -1/2 d^2/dx^2 + V_ref |phi_m> for n, m <= n_max by
        differentiating the basis functions numerically and integrating with the
        basis measure rule.

        Args:
            spec (BasisSpec): Basis description.
            n_max (int): Highest degree.
            points (int, optional): Nodes of the measure rule.

        Returns:
            np.ndarray: Dense (n_max + 1) x (n_max + 1) matrix in absolute units.
        """

        x, weights = self.basis_functions.measure_rule(spec, points)
        table = self.basis_functions.basis_table(spec, n_max, x)
        step = self._finite_difference_steps(spec, x)
        applied = np.empty_like(table)
        for m in range(n_max + 1):
            second = self.quadrature.second_derivative(
                lambda t, degree=m: self.basis_functions.basis_table(spec, degree, t)[degree], x, step)
            # the measure is rate dx, the operator acts in x
            applied[m] = -0.5 * second + self.reference_potential(spec, x) * table[m]
        logger.debug("operator oracle evaluated on %d nodes for %s", len(x), spec.map_name)
        return (table * weights) @ applied.T


hamiltonian_builder = HamiltonianBuilder()
