import logging
from dataclasses import dataclass
import numpy as np
from scipy import special
from services.errors import GammaPoleError

logger = logging.getLogger(__name__)

# B_2k / (2k (2k - 1)) for k = 1..12
STIRLING_COEFFICIENTS = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
    77683.0 / 5796.0,
    -236364091.0 / 1506960.0,
)
SHIFT_THRESHOLD = 10.0
POLE_TOLERANCE = 1e-12
HALF_LOG_TWO_PI = 0.5 * np.log(2.0 * np.pi)


def principal_angle(theta):
    """Reduces an angle (or an array of angles) to the interval (-pi, pi].
    """

    reduced = np.mod(np.asarray(theta, dtype=float) + np.pi, 2.0 * np.pi) - np.pi
    reduced = np.where(reduced <= -np.pi, np.pi, reduced)
    if reduced.ndim == 0:
        return float(reduced)
    return reduced


@dataclass(frozen=True)
class GammaValue:
    """Logarithm of the gamma function split into modulus and phase.

    Attributes:
        log_modulus (float): log |Gamma(w)|.
        argument (float): principal value of arg Gamma(w).
    """

    log_modulus: float
    argument: float

    @property
    def value(self):
        return complex(np.exp(self.log_modulus + 1j * self.argument))


class SpecialFunctions:
    """Class provides the complex gamma function quantities needed by the weights,
    amplitudes and phase shifts: log-gamma by a shifted Stirling series with the
    reflection formula, the modulus and principal argument of gamma, and
    Pochhammer symbols.
    """

    def __init__(self, coefficients=STIRLING_COEFFICIENTS, shift_threshold=SHIFT_THRESHOLD):
        """Method initializes the evaluator.

        Args:
            coefficients (tuple, optional): Stirling series coefficients
            B_2k/(2k(2k-1)). Defaults to STIRLING_COEFFICIENTS.
            shift_threshold (float, optional): Real part the argument is shifted
            to before the series is summed. Defaults to SHIFT_THRESHOLD.
        """

        self.coefficients = tuple(coefficients)
        self.shift_threshold = shift_threshold

    def is_pole(self, w):
        """Method tells which arguments lie on a pole of gamma, i.e. on a
        nonpositive integer (within POLE_TOLERANCE relative distance).

        Args:
            w (complex or array): Argument(s).

        Returns:
            bool or array of bool: True at poles.
        """

        w = np.asarray(w, dtype=complex)
        nearest = np.round(w.real)
        tolerance = POLE_TOLERANCE * np.maximum(1.0, np.abs(nearest))
        return (nearest <= 0) & (np.abs(w.real - nearest) <= tolerance) & (np.abs(w.imag) <= tolerance)

    def _stirling_series(self, z):
        inverse = 1.0 / z
        inverse_squared = inverse * inverse
        series = np.zeros_like(z)
        for coefficient in reversed(self.coefficients):
            series = series * inverse_squared + coefficient
        return (z - 0.5) * np.log(z) - z + HALF_LOG_TWO_PI + series * inverse

    def _log_gamma_shifted(self, w):
        shifts = np.maximum(0, np.ceil(self.shift_threshold - w.real)).astype(int)
        correction = np.zeros_like(w)
        for j in range(int(shifts.max(initial=0))):
            active = shifts > j
            correction[active] += np.log(w[active] + j)
        return self._stirling_series(w + shifts) - correction

    def _log_sin_pi(self, w):
        flip = w.imag < 0
        upper = np.where(flip, np.conj(w), w)
        value = -1j * np.pi * upper + np.log(np.exp(2j * np.pi * upper) - 1.0) - np.log(2j)
        return np.where(flip, np.conj(value), value)

    def log_gamma_complex(self, w):
        """Method returns a complex logarithm of gamma (imaginary part not reduced).
        Poles give +inf real part.

        Args:
            w (complex or array): Argument(s).

        Returns:
            complex array: log Gamma(w) up to multiples of 2 pi i.
        """

        w = np.atleast_1d(np.asarray(w, dtype=complex))
        result = np.empty_like(w)
        poles = self.is_pole(w)
        reflect = (w.real < 0) & ~poles
        direct = (w.real >= 0) & ~poles
        if np.any(reflect):
            reflected = w[reflect]
            result[reflect] = (np.log(np.pi) - self._log_sin_pi(reflected)
                               - self._log_gamma_shifted(1.0 - reflected))
        if np.any(direct):
            result[direct] = self._log_gamma_shifted(w[direct])
        result[poles] = complex(np.inf, 0.0)
        return result

    def ln_gamma(self, w):
        """Method returns log Gamma(w) split into log-modulus and principal argument.

        Args:
            w (complex): Argument, not a nonpositive integer.

        Raises:
            GammaPoleError: w is a pole of gamma.

        Returns:
            GammaValue: log |Gamma(w)| and arg Gamma(w) in (-pi, pi].
        """

        if bool(self.is_pole(w)):
            raise GammaPoleError(f"gamma pole at nonpositive integer: {complex(w)}")
        value = self.log_gamma_complex(w)[0]
        return GammaValue(float(value.real), principal_angle(value.imag))

    def log_abs_gamma(self, w):
        """Method returns log |Gamma(w)|, +inf at poles. Works elementwise on arrays.
        """

        values = self.log_gamma_complex(w).real
        if np.ndim(w) == 0:
            return float(values[0])
        return values.reshape(np.shape(w))

    def gamma_abs(self, w):
        """Method returns |Gamma(w)|, +inf at poles.
        """

        return np.exp(self.log_abs_gamma(w))

    def reciprocal_gamma_abs(self, w):
        """Method returns 1/|Gamma(w)|; exactly 0 at the poles.
        """

        return np.exp(-self.log_abs_gamma(w))

    def gamma_arg(self, w):
        """Method returns the principal argument of Gamma(w). Works elementwise on arrays.

        Raises:
            GammaPoleError: some argument is a pole.
        """

        if np.any(self.is_pole(w)):
            raise GammaPoleError("gamma pole: argument undefined")
        values = principal_angle(self.log_gamma_complex(w).imag)
        if np.ndim(w) == 0:
            return float(values[0])
        return values.reshape(np.shape(w))

    def pochhammer(self, x, n):
        """Method returns the rising factorial (x)_n = x(x+1)...(x+n-1).

        Args:
            x (complex): Base.
            n (int): Nonnegative number of factors.

        Returns:
            complex: (x)_0 = 1.
        """

        result = complex(1.0)
        for j in range(n):
            result *= x + j
        return result

    def log_gamma_real(self, x):
        """Method returns log Gamma(x) for real positive x.
        """

        return special.gammaln(x)


special_functions = SpecialFunctions()
