import logging
import numpy as np
import mpmath
from scipy import special
from repositories.structures import PolySequence
from services.errors import (DegreeTooLargeError, IndexRangeError, NumericalError,
                             ParameterDegeneracyError, ParameterRegimeError, GammaPoleError)
from services.special_functions import special_functions as default_special_functions, principal_angle
from services.quadrature import quadrature as default_quadrature

logger = logging.getLogger(__name__)

MAX_DIRECT_DEGREE = 150
CANCELLATION_LIMIT = 1e3
MAX_EXTRA_DIGITS = 120
TRUNCATION_DECADES = 40
IMAGINARY_TOLERANCE = 1e-9
SCAN_HALF_WIDTH = 200.0


def continuous_hahn_coefficients(p, count):
    """Function returns the recursion coefficients c_n and d_n, n = 0..count-1, of the
    normalized continuous Hahn polynomial:
    d_n P_{n+1} = (2(z+a) - c_n) P_n - d_{n-1} P_{n-1}.

    Args:
        p (ContinuousHahnParams): Parameters with mu, nu > 0.
        count (int): Number of coefficients.

    Raises:
        ParameterDegeneracyError: mu + nu = 1/2 makes a denominator vanish.

    Returns:
        tuple: (c, d) arrays.
    """

    n = np.arange(count, dtype=float)
    s = p.a + p.b
    m = p.mu + p.nu
    if count > 0 and abs(2.0 * m - 1.0) < 1e-14:
        raise ParameterDegeneracyError("parameter degeneracy: mu + nu = 1/2")
    second = np.zeros(count)
    later = n > 0
    second[later] = n[later] * (n[later] + 2 * p.nu - 1) / (n[later] + m - 1)
    c = s / (2 * n + 2 * m - 1) * ((n + 2 * p.mu) * (n + 2 * m - 1) / (n + m) + second)
    radicand = ((n + 1) * (n + 2 * p.mu) * (n + 2 * p.nu) * (n + 2 * m - 1) * ((n + m) ** 2 + s ** 2)
                / ((2 * n + 2 * m - 1) * (2 * n + 2 * m + 1)))
    d = np.sqrt(radicand) / (n + m)
    return c, d


def hahn_coefficients(h, count):
    """Function returns the recursion coefficients B_n and E_n, n = 0..count-1, of the
    normalized Hahn polynomial: E_n Q_{n+1} = (B_n - k) Q_n - E_{n-1} Q_{n-1}.
    The n = 0 terms are taken in their cancelled form.
    """

    size, alpha, beta = h.N, h.alpha, h.beta
    s = alpha + beta
    b_values = np.zeros(count)
    e_values = np.zeros(count)
    for n in range(count):
        if n == 0:
            b_values[0] = size * (alpha + 1) / (s + 2)
            radicand = size * (alpha + 1) * (beta + 1) * (size + s + 2) / (s + 3)
            e_values[0] = np.sqrt(max(radicand, 0.0)) / (s + 2)
        else:
            b_values[n] = ((size - n) * (n + alpha + 1) * (n + s + 1) / (2 * n + s + 2)
                           + n * (n + beta) * (n + size + s + 1) / (2 * n + s)) / (2 * n + s + 1)
            radicand = ((n + 1) * (size - n) * (n + alpha + 1) * (n + beta + 1) * (n + s + 1)
                        * (n + size + s + 2) / ((2 * n + s + 1) * (2 * n + s + 3)))
            e_values[n] = np.sqrt(max(radicand, 0.0)) / (2 * n + s + 2)
        if radicand < 0:
            raise ParameterRegimeError("non-orthogonality regime: negative recursion radicand")
    return b_values, e_values


class OrthogonalPolynomials:
    """Class evaluates the normalized continuous Hahn polynomials, their weight,
    scattering amplitude and phase and large-degree asymptotics, the normalized Hahn
    polynomials with their weight, and the classical Jacobi and Laguerre polynomials.
    """

    def __init__(self, special_functions=default_special_functions, quadrature=default_quadrature):
        self.special_functions = special_functions
        self.quadrature = quadrature

    def recursion_table(self, p, z, n_max):
        """Method runs the three-term recursion for many arguments at once.

        Args:
            p (ContinuousHahnParams): Parameters with mu, nu > 0.
            z (array-like): Real arguments.
            n_max (int): Highest degree.

        Returns:
            np.ndarray: Shape (n_max + 1, len(z)); row n holds P_n.
        """

        p.require_orthogonality_regime()
        z = np.atleast_1d(np.asarray(z, dtype=float))
        table = np.zeros((n_max + 1, z.size))
        table[0] = 1.0
        if n_max == 0:
            return table
        c, d = continuous_hahn_coefficients(p, n_max)
        shifted = 2.0 * (z + p.a)
        table[1] = (shifted - c[0]) / d[0]
        for n in range(1, n_max):
            table[n + 1] = ((shifted - c[n]) * table[n] - d[n - 1] * table[n - 1]) / d[n]
        return table

    def cont_hahn_recursion(self, p, z, n_max):
        """Method returns P_0(z)..P_{n_max}(z) by forward recursion.
        """

        if n_max < 0:
            raise IndexRangeError(f"n_max must be nonnegative, got {n_max}")
        return PolySequence(self.recursion_table(p, [z], n_max)[:, 0])

    def terminating_hypergeometric(self, upper, lower, n_terms):
        """Method sums a terminating 3F2(upper; lower; 1) series term by term.

        When the ratio of the summed term moduli to the modulus of the sum exceeds
        CANCELLATION_LIMIT, the sum is repeated with mpmath at a precision that
        covers the lost digits.

        Args:
            upper (tuple): Three numerator parameters; one of them is -n.
            lower (tuple): Two denominator parameters.
            n_terms (int): Index of the last nonzero term.

        Raises:
            DegreeTooLargeError: Terms overflow double precision.

        Returns:
            tuple: (value, magnitude) with magnitude = sum of |term|.
        """

        terms = np.empty(n_terms + 1, dtype=complex)
        term = complex(1.0)
        terms[0] = term
        for k in range(n_terms):
            numerator = (upper[0] + k) * (upper[1] + k) * (upper[2] + k)
            denominator = (lower[0] + k) * (lower[1] + k) * (k + 1)
            term = term * numerator / denominator
            terms[k + 1] = term
        magnitude = float(np.sum(np.abs(terms)))
        if not np.isfinite(magnitude):
            raise DegreeTooLargeError("degree too large for direct sum")
        value = complex(np.sum(terms))
        if magnitude > CANCELLATION_LIMIT * abs(value):
            value = self._extended_precision_sum(upper, lower, n_terms, magnitude, value)
        return value, magnitude

    def _extended_precision_sum(self, upper, lower, n_terms, magnitude, value):
        lost = MAX_EXTRA_DIGITS if value == 0 else np.log10(magnitude / abs(value))
        digits = 30 + int(min(lost, MAX_EXTRA_DIGITS))
        logger.debug("terminating sum repeated with %d digits (%.1f digits lost)", digits, lost)
        with mpmath.workdps(digits):
            upper_mp = [mpmath.mpc(complex(item)) for item in upper]
            lower_mp = [mpmath.mpc(complex(item)) for item in lower]
            term = mpmath.mpc(1)
            total = mpmath.mpc(1)
            for k in range(n_terms):
                term = term * ((upper_mp[0] + k) * (upper_mp[1] + k) * (upper_mp[2] + k)
                               / ((lower_mp[0] + k) * (lower_mp[1] + k) * (k + 1)))
                total += term
            return complex(total)

    def cont_hahn_hypergeometric(self, p, z, n):
        """Method evaluates P_n(z) from its terminating hypergeometric form.

        The complex normalization is split into the unit phase of
        (mu+nu+i(a+b))_n and the positive root of the remaining real factor, which
        keeps the leading coefficient positive.

        Args:
            p (ContinuousHahnParams): Parameters with mu, nu > 0.
            z (float): Real argument.
            n (int): Degree.

        Raises:
            DegreeTooLargeError: n above MAX_DIRECT_DEGREE or overflow.
            NumericalError: The imaginary residue is not negligible.

        Returns:
            float: P_n(z).
        """

        p.require_orthogonality_regime()
        if n == 0:
            return 1.0
        if n > MAX_DIRECT_DEGREE:
            raise DegreeTooLargeError(f"degree too large for direct sum: {n}")
        two_mu, two_nu = 2.0 * p.mu, 2.0 * p.nu
        shifted = two_mu + two_nu - 1.0
        upper = (-n, n + shifted, complex(p.mu, z + p.a))
        lower = (two_mu, complex(p.mu + p.nu, p.a + p.b))
        value, magnitude = self.terminating_hypergeometric(upper, lower, n)
        gammaln = special.gammaln
        log_norm = 0.5 * (np.log(2 * n + shifted) + gammaln(shifted + n) - gammaln(shifted + 1)
                          + gammaln(two_mu + n) - gammaln(two_mu)
                          - gammaln(two_nu + n) + gammaln(two_nu) - gammaln(n + 1))
        phase = sum(np.arctan2(p.a + p.b, p.mu + p.nu + j) for j in range(n))
        prefactor = np.exp(log_norm)
        result = (1j ** n) * np.exp(1j * phase) * prefactor * value
        if not np.isfinite(result):
            raise DegreeTooLargeError(f"degree too large for direct sum: {n}")
        allowed = IMAGINARY_TOLERANCE * abs(result.real) + 1e-13 * prefactor * magnitude
        if abs(result.imag) > allowed:
            raise NumericalError(
                f"imaginary residue {abs(result.imag):.3e} exceeds {allowed:.3e} at degree {n}")
        return float(result.real)

    def log_weight(self, p, z):
        """Method returns log rho(z), elementwise for arrays.
        """

        p.require_orthogonality_regime()
        gammaln = special.gammaln
        z = np.asarray(z, dtype=float)
        log_abs = self.special_functions.log_abs_gamma
        constant = (-np.log(2 * np.pi) + gammaln(2 * p.mu + 2 * p.nu) - gammaln(2 * p.mu)
                    - gammaln(2 * p.nu) - 2 * log_abs(complex(p.mu + p.nu, p.a + p.b)))
        return (constant + 2 * log_abs(p.mu + 1j * (z + p.a))
                + 2 * log_abs(p.nu + 1j * (z - p.b)))

    def cont_hahn_weight(self, p, z):
        """Method returns the normalized weight rho(z) = |Gamma(mu+i(z+a)) Gamma(nu+i(z-b))|^2
        times the constant making its integral one.
        """

        return np.exp(self.log_weight(p, z))

    def truncation_interval(self, p, n_max):
        """Method returns the interval outside which rho P_n P_m (n, m <= n_max) is
        below TRUNCATION_DECADES decades of its peak.
        """

        centre = 0.5 * (p.b - p.a)
        z = centre + np.linspace(-SCAN_HALF_WIDTH, SCAN_HALF_WIDTH, 1601)
        log_bound = self.log_weight(p, z) + 2 * n_max * np.log1p(np.abs(z - centre))
        keep = z[log_bound >= log_bound.max() - TRUNCATION_DECADES * np.log(10.0)]
        lower, upper = float(keep[0]) - 1.0, float(keep[-1]) + 1.0
        logger.debug("continuous Hahn integrals truncated to [%.3f, %.3f]", lower, upper)
        return lower, upper

    def cont_hahn_gram(self, p, n_max, tolerance=1e-10):
        """Method returns the Gram matrix of integrals of rho P_n P_m over the real line.

        Args:
            p (ContinuousHahnParams): Parameters with mu, nu > 0.
            n_max (int): Highest degree.
            tolerance (float, optional): Agreement of successive refinements.

        Returns:
            np.ndarray: Shape (n_max + 1, n_max + 1).
        """

        lower, upper = self.truncation_interval(p, n_max)

        def integrand(nodes):
            table = self.recursion_table(p, nodes, n_max)
            return table[:, None, :] * table[None, :, :] * self.cont_hahn_weight(p, nodes)

        panels = max(4, int(np.ceil(upper - lower)))
        return self.quadrature.integrate(integrand, lower, upper, panels, tolerance)

    def cont_hahn_weight_integral(self, p):
        """Method returns the integral of rho over the real line (one when normalized).
        """

        return float(self.cont_hahn_gram(p, 0)[0, 0])

    def _amplitude_constant(self, p):
        log_abs = self.special_functions.log_abs_gamma
        return (np.log(2.0 * np.sqrt(2.0))
                + 0.5 * (log_abs(2 * p.mu) + log_abs(2 * p.nu) - log_abs(2 * p.mu + 2 * p.nu))
                + log_abs(complex(p.mu + p.nu, p.a + p.b)))

    def scattering_amplitude(self, p, z):
        """Method returns the scattering amplitude A(z). It is exactly zero where
        mu + i(z+a) or nu + i(z-b) hits a pole of gamma.

        Args:
            p (ContinuousHahnParams): Parameters.
            z (complex or array): Energy argument.

        Returns:
            float or np.ndarray: A(z) >= 0.
        """

        z = np.asarray(z, dtype=complex)
        reciprocal = self.special_functions.reciprocal_gamma_abs
        product = reciprocal(p.mu + 1j * (z + p.a)) * reciprocal(p.nu + 1j * (z - p.b))
        # Gamma(2 mu) is itself infinite for half-integer mu < 0
        with np.errstate(invalid="ignore", over="ignore"):
            amplitude = np.where(product == 0, 0.0, np.exp(self._amplitude_constant(p)) * product)
        return float(amplitude) if amplitude.ndim == 0 else amplitude

    def scattering_phase(self, p, z):
        """Method returns delta(z) = -arg Gamma(mu+i(z+a)) - arg Gamma(nu+i(z-b)),
        reduced to (-pi, pi]. Works elementwise on arrays.

        Raises:
            GammaPoleError: Either argument is a pole.
        """

        z = np.asarray(z, dtype=float)
        try:
            total = (-self.special_functions.gamma_arg(p.mu + 1j * (z + p.a))
                     - self.special_functions.gamma_arg(p.nu + 1j * (z - p.b)))
        except GammaPoleError as error:
            raise GammaPoleError("phase undefined at spectrum point") from error
        return principal_angle(total)

    def cont_hahn_asymptotic(self, p, z, n):
        """Method returns the large-degree approximation of P_n(z),
        K n^-1/2 / |A| cos((2z+a-b) log n - arg A - n pi/2) with
        A = Gamma(mu+i(z+a)) Gamma(nu+i(z-b)). The approximation is meant for
        n of a hundred and more; n may be an array.
        """

        p.require_orthogonality_regime()
        degrees = np.asarray(n)
        first = p.mu + 1j * (z + p.a)
        second = p.nu + 1j * (z - p.b)
        log_abs = self.special_functions.log_abs_gamma
        log_modulus = log_abs(first) + log_abs(second)
        argument = self.special_functions.gamma_arg(first) + self.special_functions.gamma_arg(second)
        quarter_turns = np.mod(degrees, 4) * (0.5 * np.pi)
        angle = (2 * z + p.a - p.b) * np.log(degrees) - argument - quarter_turns
        return np.exp(self._amplitude_constant(p) - log_modulus) / np.sqrt(degrees) * np.cos(angle)

    def _check_hahn_index(self, h, index, what):
        if int(index) != index or index < 0 or index > h.N:
            raise IndexRangeError(f"{what} index exceeds N: {index} > {h.N}")

    def hahn_eval(self, h, n, k):
        """Method evaluates the normalized Hahn polynomial Q_n(k) from its
        terminating hypergeometric form.

        Args:
            h (HahnParams): Family parameters.
            n (int): Degree, 0..N.
            k (int): Argument, 0..N.

        Raises:
            IndexRangeError: n or k outside 0..N.
            ParameterRegimeError: The normalization is negative.

        Returns:
            float: Q_n(k).
        """

        self._check_hahn_index(h, n, "degree")
        self._check_hahn_index(h, k, "argument")
        if n == 0:
            return 1.0
        size, alpha, beta = h.N, h.alpha, h.beta
        s = alpha + beta
        radicand = (2 * n + s + 1) / (n + s + 1) * special.comb(size, n)
        for j in range(n):
            radicand *= (alpha + 1 + j) / (beta + 1 + j)
        for j in range(1, size + 1):
            radicand *= (s + 1 + j) / (n + s + 1 + j)
        if radicand < 0:
            raise ParameterRegimeError("non-orthogonality regime: negative normalization")
        value, _ = self.terminating_hypergeometric((-n, -k, n + s + 1), (alpha + 1, -size), min(n, k))
        return float(np.sqrt(radicand) * value.real)

    def hahn_weight(self, h, k):
        """Method returns the normalized discrete weight omega_k.

        Raises:
            ParameterRegimeError: alpha or beta is not above -1.
            IndexRangeError: k outside 0..N.
        """

        self._check_hahn_index(h, k, "argument")
        return float(self.hahn_weights(h)[k])

    def hahn_weights(self, h):
        """Method returns omega_0..omega_N; they are positive and sum to one.
        """

        if not h.is_orthogonality_regime:
            raise ParameterRegimeError("non-orthogonality regime: weights change sign")
        gammaln = special.gammaln
        size, alpha, beta = h.N, h.alpha, h.beta
        k = np.arange(size + 1, dtype=float)
        log_weights = (gammaln(size + 1) - gammaln(alpha + beta + 2 + size) + gammaln(alpha + beta + 2)
                       + gammaln(alpha + 1 + k) - gammaln(alpha + 1)
                       + gammaln(beta + 1 + size - k) - gammaln(beta + 1)
                       - gammaln(k + 1) - gammaln(size - k + 1))
        return np.exp(log_weights)

    def hahn_table(self, h, k, n_max):
        """Method runs the Hahn recursion for an array of arguments k.

        Returns:
            np.ndarray: Shape (n_max + 1, len(k)); row n holds Q_n.
        """

        if n_max > h.N:
            raise IndexRangeError(f"degree exceeds family size: {n_max} > {h.N}")
        k = np.atleast_1d(np.asarray(k, dtype=float))
        table = np.zeros((n_max + 1, k.size))
        table[0] = 1.0
        if n_max == 0:
            return table
        b_values, e_values = hahn_coefficients(h, n_max)
        table[1] = (b_values[0] - k) / e_values[0]
        for n in range(1, n_max):
            table[n + 1] = ((b_values[n] - k) * table[n] - e_values[n - 1] * table[n - 1]) / e_values[n]
        return table

    def hahn_recursion(self, h, k, n_max):
        """Method returns Q_0(k)..Q_{n_max}(k) by forward recursion.
        """

        self._check_hahn_index(h, k, "argument")
        return PolySequence(self.hahn_table(h, [k], n_max)[:, 0])

    def jacobi_table(self, alpha, beta, n_max, y):
        """Method returns the classical Jacobi polynomials P_0..P_{n_max} at y,
        shape (n_max + 1, len(y)).
        """

        y = np.atleast_1d(np.asarray(y, dtype=float))
        table = np.zeros((n_max + 1, y.size))
        table[0] = 1.0
        if n_max == 0:
            return table
        s = alpha + beta
        table[1] = (alpha + 1) + (s + 2) * (y - 1) / 2
        for n in range(1, n_max):
            lead = 2 * (n + 1) * (n + s + 1) * (2 * n + s)
            middle = (2 * n + s + 1) * ((2 * n + s + 2) * (2 * n + s) * y + alpha ** 2 - beta ** 2)
            trailing = 2 * (n + alpha) * (n + beta) * (2 * n + s + 2)
            table[n + 1] = (middle * table[n] - trailing * table[n - 1]) / lead
        return table

    def jacobi_eval(self, alpha, beta, n, y):
        """Method returns the classical Jacobi polynomial P_n^(alpha, beta)(y).
        """

        values = self.jacobi_table(alpha, beta, n, y)[n]
        return float(values[0]) if np.ndim(y) == 0 else values

    def laguerre_table(self, beta, n_max, y):
        """Method returns the generalized Laguerre polynomials L_0..L_{n_max} at y.
        """

        y = np.atleast_1d(np.asarray(y, dtype=float))
        table = np.zeros((n_max + 1, y.size))
        table[0] = 1.0
        if n_max == 0:
            return table
        table[1] = 1 + beta - y
        for n in range(1, n_max):
            table[n + 1] = ((2 * n + 1 + beta - y) * table[n] - (n + beta) * table[n - 1]) / (n + 1)
        return table

    def laguerre_eval(self, beta, n, y):
        """Method returns the generalized Laguerre polynomial L_n^beta(y).
        """

        values = self.laguerre_table(beta, n, y)[n]
        return float(values[0]) if np.ndim(y) == 0 else values


orthogonal_polynomials = OrthogonalPolynomials()
