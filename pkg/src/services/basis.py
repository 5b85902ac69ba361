import logging
import numpy as np
from scipy import special
from services.errors import ParameterRegimeError, QuadratureError
from services.orthogonal_polynomials import orthogonal_polynomials as default_orthogonal_polynomials
from services.quadrature import quadrature as default_quadrature

logger = logging.getLogger(__name__)

MAX_VALIDATED_DEGREE = 12
GRAM_TOLERANCE = 1e-7
EXTRA_NODES = 20


def _scaled_log(power, log_value):
    # 0 * log(0) counts as 0
    if power == 0:
        return np.zeros_like(log_value)
    with np.errstate(divide="ignore"):
        return power * log_value


class BasisFunctions:
    """Class evaluates the orthonormal Jacobi and Laguerre basis functions under
    the four coordinate maps and checks their orthonormality.
    """

    def __init__(self, orthogonal_polynomials=default_orthogonal_polynomials,
                 quadrature=default_quadrature):
        self.orthogonal_polynomials = orthogonal_polynomials
        self.quadrature = quadrature

    def log_envelope(self, spec, x):
        """Method returns y(x) and the logarithm of the envelope without A_n:
        sigma log(1-y) + tau log(1+y) for Jacobi bases and
        alpha_exp log y - y/2 for Laguerre bases. The logarithms of 1-y, 1+y and y
        are taken from the map directly so that nothing underflows near the ends.

        Args:
            spec (BasisSpec): Basis description.
            x (array-like): Points in the map domain.

        Raises:
            DomainError: Some x lies outside the domain.

        Returns:
            tuple: (y, log_envelope) arrays.
        """

        x = np.atleast_1d(np.asarray(x, dtype=float))
        y = spec.coordinate(x)
        u = spec.rate * x
        with np.errstate(divide="ignore"):
            if spec.map_name == "radial_tanh":
                log_cosh = u + np.log1p(np.exp(-2.0 * u)) - np.log(2.0)
                log_tanh = np.log(-np.expm1(-2.0 * u)) - np.log1p(np.exp(-2.0 * u))
                log_minus = np.log(2.0) - 2.0 * log_cosh
                log_plus = np.log(2.0) + 2.0 * log_tanh
            elif spec.map_name == "trig_sine":
                log_minus = np.log(2.0) + 2.0 * np.log(np.abs(np.sin(0.25 * np.pi - 0.5 * u)))
                log_plus = np.log(2.0) + 2.0 * np.log(np.abs(np.cos(0.25 * np.pi - 0.5 * u)))
            elif spec.map_name == "exp_line":
                log_y = u
            else:
                log_y = 2.0 * np.log(0.5 * u)
        if spec.family == "jacobi":
            envelope = _scaled_log(spec.sigma, log_minus) + _scaled_log(spec.tau, log_plus)
        else:
            envelope = _scaled_log(spec.alpha_exp, log_y) - 0.5 * y
        return y, envelope

    def log_normalization(self, spec, n):
        """Method returns log A_n.
        """

        gammaln = special.gammaln
        beta = spec.beta
        if spec.family == "laguerre":
            return 0.5 * (gammaln(n + 1) - gammaln(n + beta + 1))
        alpha = spec.alpha
        s = alpha + beta
        if n == 0:
            leading = gammaln(s + 2)
        else:
            leading = np.log(2 * n + s + 1) + gammaln(n + s + 1)
        exponent = s + (0.5 if spec.map_name == "radial_tanh" else 1.0)
        return (0.5 * (leading + gammaln(n + 1) - gammaln(n + beta + 1) - gammaln(n + alpha + 1))
                - 0.5 * exponent * np.log(2.0))

    def normalization_constant(self, spec, n):
        """Method returns the constant A_n making phi_n of unit norm.

        Args:
            spec (BasisSpec): Basis description.
            n (int): Degree.

        Returns:
            float: A_n > 0.
        """

        return float(np.exp(self.log_normalization(spec, n)))

    def polynomial_table(self, spec, n_max, y):
        if spec.family == "jacobi":
            return self.orthogonal_polynomials.jacobi_table(spec.alpha, spec.beta, n_max, y)
        return self.orthogonal_polynomials.laguerre_table(spec.beta, n_max, y)

    def basis_table(self, spec, n_max, x):
        """Method returns phi_0..phi_{n_max} at x, shape (n_max + 1, len(x)).
        """

        y, envelope = self.log_envelope(spec, x)
        constants = np.array([self.log_normalization(spec, n) for n in range(n_max + 1)])
        return np.exp(constants[:, None] + envelope[None, :]) * self.polynomial_table(spec, n_max, y)

    def basis_eval(self, spec, n, x):
        """Method returns phi_n(x); x may be an array.

        Raises:
            DomainError: x outside the map domain.
        """

        values = self.basis_table(spec, n, x)[n]
        return float(values[0]) if np.ndim(x) == 0 else values

    def ratio_table(self, spec, n_max, x):
        """Method returns phi_m(x)/phi_0(x), m = 0..n_max; the envelope cancels so the
        ratio stays finite where phi_0 underflows.
        """

        y = spec.coordinate(np.atleast_1d(np.asarray(x, dtype=float)))
        log_zero = self.log_normalization(spec, 0)
        constants = np.array([self.log_normalization(spec, n) - log_zero for n in range(n_max + 1)])
        return np.exp(constants)[:, None] * self.polynomial_table(spec, n_max, y)

    def measure_rule(self, spec, points):
        """Method returns nodes x_i and weights w_i with sum w_i f(x_i) equal to the
        integral of f over the basis measure whenever f is phi_n times phi_m (or an
        operator applied to phi_m) up to the rule's polynomial degree. The rule is
        the Gauss rule of the polynomial weight in y with that weight divided out.

        Args:
            spec (BasisSpec): Basis description.
            points (int): Number of nodes.

        Returns:
            tuple: (x, weights) arrays.
        """

        if spec.family == "jacobi":
            y, weights = self.quadrature.gauss_jacobi_rule(points, spec.alpha, spec.beta)
            log_weight = spec.alpha * np.log1p(-y) + spec.beta * np.log1p(y)
        else:
            y, weights = self.quadrature.gauss_laguerre_rule(points, spec.beta)
            log_weight = spec.beta * np.log(y) - y
        x = spec.coordinate_map.inverse(y, spec.rate)
        order = np.argsort(x)
        effective = weights * np.exp(-log_weight) * spec.coordinate_map.jacobian(y)
        return x[order], effective[order]

    def gram_matrix(self, spec, n_max, points):
        x, weights = self.measure_rule(spec, points)
        table = self.basis_table(spec, n_max, x)
        return (table * weights) @ table.T

    def orthonormality_matrix(self, spec, n_max):
        """Method returns the Gram matrix of phi_0..phi_{n_max} under the basis measure,
        comparing two Gauss rules of different size.

        Raises:
            ParameterRegimeError: n_max above MAX_VALIDATED_DEGREE.
            QuadratureError: The two rules disagree by more than GRAM_TOLERANCE.

        Returns:
            np.ndarray: Shape (n_max + 1, n_max + 1), close to the identity.
        """

        if n_max > MAX_VALIDATED_DEGREE:
            raise ParameterRegimeError(f"orthonormality validated up to degree {MAX_VALIDATED_DEGREE}")
        points = n_max + EXTRA_NODES
        coarse = self.gram_matrix(spec, n_max, points)
        fine = self.gram_matrix(spec, n_max, points + 8)
        achieved = float(np.max(np.abs(fine - coarse)))
        logger.debug("basis Gram matrix rules differ by %.3e", achieved)
        if achieved > GRAM_TOLERANCE:
            raise QuadratureError("quadrature failed", achieved, GRAM_TOLERANCE)
        return 0.5 * (fine + fine.T)

    def projection_coefficients(self, spec, function, n_max, points=60):
        """Method returns c_n = <phi_n|f> for n = 0..n_max by the measure rule.
        """

        x, weights = self.measure_rule(spec, points)
        table = self.basis_table(spec, n_max, x)
        return table @ (weights * function(x))


basis_functions = BasisFunctions()
