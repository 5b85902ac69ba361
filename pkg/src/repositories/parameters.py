from dataclasses import dataclass, field
from typing import Optional
import numpy as np
from services.errors import ParameterRegimeError, DomainError


@dataclass(frozen=True)
class ContinuousHahnParams:
    """Parameters (mu, nu, a, b) of the normalized continuous Hahn polynomial.

    Evaluation and orthogonality need mu > 0 and nu > 0. Spectrum analysis
    accepts negative mu, so the record itself does not reject it.
    """

    mu: float
    nu: float
    a: float
    b: float

    def require_orthogonality_regime(self):
        """Method raises ParameterRegimeError unless mu and nu are positive.
        """

        if self.mu <= 0 or self.nu <= 0:
            raise ParameterRegimeError(
                f"parameters outside orthogonality regime: mu={self.mu}, nu={self.nu}")

    def relabelled(self):
        """Method returns the parameters with (mu, a) and (nu, b) swapped.
        """

        return ContinuousHahnParams(self.nu, self.mu, self.b, self.a)


@dataclass(frozen=True)
class HahnParams:
    """Parameters (N, alpha, beta) of the normalized Hahn polynomial on {0, ..., N}.
    """

    N: int
    alpha: float
    beta: float

    def __post_init__(self):
        if isinstance(self.N, bool) or int(self.N) != self.N or self.N < 0:
            raise ParameterRegimeError(f"N must be a nonnegative integer, got {self.N}")
        object.__setattr__(self, "N", int(self.N))
        for name, value in (("alpha", self.alpha), ("beta", self.beta)):
            if not (value > -1 or value < -self.N):
                raise ParameterRegimeError(
                    f"{name}={value} must be greater than -1 or less than -N")

    @property
    def is_orthogonality_regime(self):
        return self.alpha > -1 and self.beta > -1

    @classmethod
    def from_first_map(cls, mu, nu, i_ab):
        """Method builds the discrete parameters from 2mu = -N, 2nu = alpha+beta+N+2
        and i(a+b) = (alpha-beta)/2.

        Args:
            mu (float): Negative half-integer or integer with -2mu a nonnegative integer.
            nu (float): Continuous parameter nu.
            i_ab (float): The real number i(a+b).

        Returns:
            HahnParams: Matching discrete parameters.
        """

        size = -2.0 * mu
        if abs(size - round(size)) > 1e-12:
            raise ParameterRegimeError(f"-2mu must be an integer, got {size}")
        size = int(round(size))
        alpha_plus_beta = 2.0 * nu - size - 2.0
        alpha_minus_beta = 2.0 * i_ab
        return cls(size, 0.5 * (alpha_plus_beta + alpha_minus_beta),
                   0.5 * (alpha_plus_beta - alpha_minus_beta))

    @classmethod
    def from_second_map(cls, mu, nu, i_ab):
        """Method builds the discrete parameters from 2mu = alpha+1, 2nu = beta+1
        and i(a+b) = -(alpha+beta)/2 - N - 1.
        """

        alpha = 2.0 * mu - 1.0
        beta = 2.0 * nu - 1.0
        size = -i_ab - 0.5 * (alpha + beta) - 1.0
        if abs(size - round(size)) > 1e-12:
            raise ParameterRegimeError(f"N must be an integer, got {size}")
        return cls(int(round(size)), alpha, beta)

    def continuous_parameters(self, map_id):
        """Method inverts one of the two parameter maps.

        Args:
            map_id (int): 1 for the first map, 2 for the second.

        Returns:
            tuple: (mu, nu, i_ab).
        """

        if map_id == 1:
            return (-0.5 * self.N, 0.5 * (self.alpha + self.beta + self.N + 2.0),
                    0.5 * (self.alpha - self.beta))
        if map_id == 2:
            return (0.5 * (self.alpha + 1.0), 0.5 * (self.beta + 1.0),
                    -0.5 * (self.alpha + self.beta) - self.N - 1.0)
        raise ValueError(f"unknown parameter map {map_id}")


def _require_positive_scale(value):
    if not value > 0:
        raise ParameterRegimeError(f"length scale must be positive, got {value}")


@dataclass(frozen=True)
class ExampleOneParams:
    mu: float
    a: float
    lam: float = 1.0

    def __post_init__(self):
        _require_positive_scale(self.lam)


@dataclass(frozen=True)
class ExampleTwoParams:
    V: float
    a: float
    b: float
    lam: float = 1.0

    def __post_init__(self):
        _require_positive_scale(self.lam)


@dataclass(frozen=True)
class ExampleThreeParams:
    gamma: float
    a: float
    nu: float
    lam: float = 1.0

    def __post_init__(self):
        _require_positive_scale(self.lam)


@dataclass(frozen=True)
class CoordinateMap:
    """Substitution y(x) taking the physical coordinate to the polynomial argument.

    Attributes:
        name (str): radial_tanh, trig_sine, exp_line or radial_square.
        rule (str): The map in words.
        measure (str): Integration measure the basis is orthonormal under.
    """

    name: str
    rule: str
    measure: str

    def coordinate(self, x, rate):
        """Method evaluates y(x). rate is lambda, or pi/L for trig_sine.
        """

        x = np.asarray(x, dtype=float)
        if self.name == "radial_tanh":
            return 2.0 * np.tanh(rate * x) ** 2 - 1.0
        if self.name == "trig_sine":
            return np.sin(rate * x)
        if self.name == "exp_line":
            return np.exp(rate * x)
        return (0.5 * rate * x) ** 2

    def inverse(self, y, rate):
        """Method returns x(y) on the map domain.
        """

        y = np.asarray(y, dtype=float)
        if self.name == "radial_tanh":
            return np.arctanh(np.sqrt(0.5 * (1.0 + y))) / rate
        if self.name == "trig_sine":
            return np.arcsin(y) / rate
        if self.name == "exp_line":
            return np.log(y) / rate
        return 2.0 * np.sqrt(y) / rate

    def jacobian(self, y):
        """Method returns rate * dx/dy, the measure factor when integrating in y.
        """

        y = np.asarray(y, dtype=float)
        if self.name == "radial_tanh":
            return 1.0 / (np.sqrt(2.0) * np.sqrt(1.0 + y) * (1.0 - y))
        if self.name == "trig_sine":
            return 1.0 / np.sqrt(1.0 - y * y)
        if self.name == "exp_line":
            return 1.0 / y
        return 1.0 / np.sqrt(y)


COORDINATE_MAPS = {
    "radial_tanh": CoordinateMap("radial_tanh", "y = 2 tanh^2(lambda r) - 1", "lambda dr"),
    "trig_sine": CoordinateMap("trig_sine", "y = sin(pi x / L)", "(pi/L) dx"),
    "exp_line": CoordinateMap("exp_line", "y = exp(lambda x)", "lambda dx"),
    "radial_square": CoordinateMap("radial_square", "y = (lambda r / 2)^2", "lambda dr"),
}

FAMILY_OF_MAP = {
    "radial_tanh": "jacobi",
    "trig_sine": "jacobi",
    "exp_line": "laguerre",
    "radial_square": "laguerre",
}


@dataclass(frozen=True)
class BasisSpec:
    """Square-integrable basis: polynomial family, coordinate map, parameters and
    the envelope exponents the map forces. Build with the class methods.

    Attributes:
        family (str): jacobi or laguerre.
        map_name (str): Key of COORDINATE_MAPS.
        alpha (float or None): Jacobi alpha; None for Laguerre bases.
        beta (float): Jacobi beta or Laguerre beta.
        scale (float): lambda, or L for trig_sine.
        sigma, tau (float or None): Jacobi envelope exponents.
        alpha_exp (float or None): Laguerre envelope exponent.
        ell (int or None): Angular momentum of the radial oscillator basis.
    """

    family: str
    map_name: str
    alpha: Optional[float]
    beta: float
    scale: float
    sigma: Optional[float] = None
    tau: Optional[float] = None
    alpha_exp: Optional[float] = None
    ell: Optional[int] = field(default=None)

    def __post_init__(self):
        if self.map_name not in COORDINATE_MAPS:
            raise ValueError(f"unknown coordinate map {self.map_name}")
        if FAMILY_OF_MAP[self.map_name] != self.family:
            raise ValueError(f"map {self.map_name} does not belong to the {self.family} family")
        _require_positive_scale(self.scale)
        if self.beta <= -1 or (self.alpha is not None and self.alpha <= -1):
            raise ParameterRegimeError("basis parameters must exceed -1")
        assert self._exponents_consistent(), "envelope exponents violate the map constraint"

    def _exponents_consistent(self):
        if self.map_name == "radial_tanh":
            return 2 * self.sigma == self.alpha + 1 and 2 * self.tau == self.beta + 0.5
        if self.map_name == "trig_sine":
            return 2 * self.sigma == self.alpha + 0.5 and 2 * self.tau == self.beta + 0.5
        if self.map_name == "exp_line":
            return 2 * self.alpha_exp == self.beta + 1
        return 2 * self.alpha_exp == self.beta + 0.5

    @classmethod
    def jacobi_radial(cls, alpha, beta, lam):
        return cls("jacobi", "radial_tanh", float(alpha), float(beta), float(lam),
                   sigma=0.5 * (alpha + 1.0), tau=0.5 * (beta + 0.5))

    @classmethod
    def jacobi_trig(cls, alpha, beta, L):
        return cls("jacobi", "trig_sine", float(alpha), float(beta), float(L),
                   sigma=0.5 * (alpha + 0.5), tau=0.5 * (beta + 0.5))

    @classmethod
    def laguerre_line(cls, beta, lam):
        return cls("laguerre", "exp_line", None, float(beta), float(lam),
                   alpha_exp=0.5 * (beta + 1.0))

    @classmethod
    def laguerre_radial(cls, ell, lam):
        if int(ell) != ell or ell < 0:
            raise ParameterRegimeError(f"ell must be a nonnegative integer, got {ell}")
        beta = ell + 0.5
        return cls("laguerre", "radial_square", None, beta, float(lam),
                   alpha_exp=0.5 * (beta + 0.5), ell=int(ell))

    @property
    def coordinate_map(self):
        return COORDINATE_MAPS[self.map_name]

    @property
    def rate(self):
        """The inverse length the map uses: pi/L for trig_sine, lambda otherwise.
        """

        if self.map_name == "trig_sine":
            return np.pi / self.scale
        return self.scale

    @property
    def domain(self):
        if self.map_name == "trig_sine":
            return (-0.5 * self.scale, 0.5 * self.scale)
        if self.map_name == "exp_line":
            return (-np.inf, np.inf)
        return (0.0, np.inf)

    def coordinate(self, x):
        """Method returns y(x), raising DomainError outside the map domain.
        """

        x = np.asarray(x, dtype=float)
        lower, upper = self.domain
        if np.any(x < lower) or np.any(x > upper) or np.any(np.isnan(x)):
            raise DomainError(f"coordinate out of domain [{lower}, {upper}]")
        return self.coordinate_map.coordinate(x, self.rate)
