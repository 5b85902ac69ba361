import logging
import numpy as np
from repositories.structures import SpectrumEntry, SpectrumPoint
from services.errors import GammaPoleError, InsufficientPointsError, ParameterRegimeError
from services.special_functions import special_functions as default_special_functions, principal_angle
from services.orthogonal_polynomials import orthogonal_polynomials as default_orthogonal_polynomials

logger = logging.getLogger(__name__)

DEFAULT_K_MAX = 50
FLOOR_TOLERANCE = 1e-12
BOUND_TOLERANCE = 1e-12

BOUND = "bound"
RESONANCE = "resonance"
EMBEDDED_RESONANCE = "embedded_resonance"
UNPHYSICAL = "unphysical"


def _largest_index(value):
    # floor with a guard for values that are integers up to rounding
    if value < 0:
        return -1
    return int(np.floor(value + FLOOR_TOLERANCE * max(1.0, abs(value))))


def classify(energy, embedded_threshold=0.0, k=None):
    """Function classifies a discrete energy.

    Without an index the quadrant rule applies: real energies are bound, Im E > 0
    is unphysical, and a resonance with Re E below the threshold is embedded.
    With an index k the energy is a member of a resonance family and the index
    decides instead: embedded when k < embedded_threshold. Bound families are
    recognised by their parameters, so an index never yields bound.

    Args:
        energy (complex): Energy E_k.
        embedded_threshold (float, optional): Threshold on Re E, or on k when an
        index is given. Defaults to 0.
        k (int, optional): Index of the energy in its family. Defaults to None.

    Returns:
        str: bound, unphysical, resonance or embedded_resonance.
    """

    energy = complex(energy)
    if energy.imag > 0:
        return UNPHYSICAL
    if k is not None:
        return EMBEDDED_RESONANCE if k < embedded_threshold else RESONANCE
    if energy.imag == 0:
        return BOUND
    if energy.real < embedded_threshold:
        return EMBEDDED_RESONANCE
    return RESONANCE


class Spectra:
    """Class evaluates the phase shifts and discrete spectra of the general
    continuous Hahn system and of its three physical examples.
    """

    def __init__(self, special_functions=default_special_functions,
                 orthogonal_polynomials=default_orthogonal_polynomials):
        self.special_functions = special_functions
        self.orthogonal_polynomials = orthogonal_polynomials

    def _phase_from_arguments(self, first, second):
        try:
            total = -self.special_functions.gamma_arg(first) - self.special_functions.gamma_arg(second)
        except GammaPoleError as error:
            raise GammaPoleError("phase undefined at spectrum point") from error
        return principal_angle(total)

    def general_spectrum_points(self, p):
        """Method returns the roots z_k = -a +- i(k + mu), k = 0..floor(-mu), of the
        amplitude-zero condition mu + i(z + a) = -k. Branch +1 is the exact zero of
        Gamma(mu + i(z + a))^-1, branch -1 its conjugate.

        Args:
            p (ContinuousHahnParams): Parameters, any sign of mu.

        Returns:
            list: SpectrumPoint entries ordered by k, branch +1 first; empty for mu >= 0.
        """

        if p.mu >= 0:
            return []
        points = []
        for k in range(_largest_index(-p.mu) + 1):
            z = complex(-p.a, k + p.mu)
            points.append(SpectrumPoint(k, 1, z))
            points.append(SpectrumPoint(k, -1, z.conjugate()))
        return points

    def general_spectrum(self, p, lam=1.0):
        """Method returns the branch +1 points as energies E = lambda^2 z.
        """

        return [SpectrumEntry(point.k, lam ** 2 * point.z, classify(lam ** 2 * point.z))
                for point in self.general_spectrum_points(p) if point.branch == 1]

    def general_phase(self, p, energy, lam=1.0):
        """Method returns delta(E) of the general system with z = E / lambda^2.

        Raises:
            ParameterRegimeError: mu or nu is not positive.
            GammaPoleError: The energy hits a spectrum point.
        """

        p.require_orthogonality_regime()
        return self.orthogonal_polynomials.scattering_phase(p, energy / lam ** 2)

    def example1_phase(self, p, energy):
        """Method returns delta(E) = -2 arg Gamma(mu + i(a + kappa/lambda)) with
        kappa = sqrt(2E).

        Args:
            p (ExampleOneParams): Parameters with mu > 0.
            energy (float): Positive energy.

        Raises:
            ParameterRegimeError: mu <= 0 or E <= 0.

        Returns:
            float: Phase in (-pi, pi].
        """

        if p.mu <= 0:
            raise ParameterRegimeError("scattering regime requires mu>0")
        if energy <= 0:
            raise ParameterRegimeError(f"scattering energy must be positive, got {energy}")
        kappa = np.sqrt(2.0 * energy)
        argument = p.mu + 1j * (p.a + kappa / p.lam)
        return self._phase_from_arguments(argument, argument)

    def example1_spectrum(self, p):
        """Method returns E_k = -(lambda^2/2)(k + mu + ia)^2 for k = 0..floor(-mu).
        Bound states exist only for a = 0 and a > 0 gives unphysical growth. For
        a < 0 the entries are resonances, embedded when k < a - mu.
        Real and imaginary parts are formed separately so that a = 0 gives exactly
        real energies.
        """

        if p.mu >= 0:
            return []
        entries = []
        for k in range(_largest_index(-p.mu) + 1):
            shifted = min(k + p.mu, 0.0)
            energy = complex(-0.5 * p.lam ** 2 * (shifted ** 2 - p.a ** 2), -p.lam ** 2 * shifted * p.a)
            entries.append(SpectrumEntry(k, energy, self._example1_kind(p, energy, k)))
        return entries

    def _example1_kind(self, p, energy, k):
        if p.a == 0:
            return BOUND
        if p.a > 0:
            return UNPHYSICAL
        return classify(energy, p.a - p.mu, k)

    def example2_phase(self, p, energy):
        """Method returns -arg Gamma((2/lambda^2)(E+iV) + ia) - arg Gamma((2/lambda^2)(E+iV) - ib).

        Raises:
            GammaPoleError: An argument is a pole.
        """

        scaled = 2.0 * (energy + 1j * p.V) / p.lam ** 2
        return self._phase_from_arguments(scaled + 1j * p.a, scaled - 1j * p.b)

    def example2_is_bound(self, p):
        """Method tells whether a = -2V/lambda^2, where the spectrum is real.
        """

        return abs(p.a + 2.0 * p.V / p.lam ** 2) <= BOUND_TOLERANCE * max(1.0, abs(p.a))

    def example2_spectrum(self, p, k_max=DEFAULT_K_MAX):
        """Method returns E_k = (lambda^2/2)[k + i(a + 2V/lambda^2)]^2, k = 0..k_max.
        The family is infinite; k_max bounds what is emitted. It is bound only for
        a = -2V/lambda^2. Below that line the entries are resonances, embedded for
        k <= -(a + 2V/lambda^2); above it the family grows and is unphysical.

        Args:
            p (ExampleTwoParams): Parameters.
            k_max (int, optional): Last index. Defaults to DEFAULT_K_MAX.

        Returns:
            list: SpectrumEntry values.
        """

        if k_max < 0:
            raise ParameterRegimeError(f"k_max must be nonnegative, got {k_max}")
        bound = self.example2_is_bound(p)
        shift = 0.0 if bound else p.a + 2.0 * p.V / p.lam ** 2
        logger.debug("example 2 spectrum emitted up to k=%d, bound family: %s", k_max, bound)
        threshold = _largest_index(-shift) + 1
        half = 0.5 * p.lam ** 2
        entries = []
        for k in range(k_max + 1):
            energy = complex(half * (k ** 2 - shift ** 2), 2.0 * half * k * shift)
            if bound:
                kind = BOUND
            elif shift > 0:
                kind = UNPHYSICAL
            else:
                kind = classify(energy, threshold, k)
            entries.append(SpectrumEntry(k, energy, kind))
        return entries

    def example3_phase(self, p, energy):
        """Method returns -arg Gamma((E/lambda^2)(gamma+i) + ia) - arg Gamma(nu + (i/lambda^2)(E + a lambda^2)).

        Raises:
            GammaPoleError: An argument is a pole, e.g. E = 0 with a = 0.
        """

        scaled = energy / p.lam ** 2
        first = scaled * (p.gamma + 1j) + 1j * p.a
        second = p.nu + 1j * (scaled + p.a)
        return self._phase_from_arguments(first, second)

    def example3_spectrum(self, p):
        """Method returns the resonance chain
        E_k = lambda^2 [-(a + k gamma) + i(k - a gamma)] / (1 + gamma^2), k = 0..floor(gamma a).
        Empty when gamma a <= 0. Every entry is a resonance, including the endpoint
        k = gamma a on the real axis.
        """

        product = p.gamma * p.a
        if product <= 0:
            return []
        denominator = 1.0 + p.gamma ** 2
        entries = []
        for k in range(_largest_index(product) + 1):
            energy = p.lam ** 2 * complex(-(p.a + k * p.gamma), min(k - product, 0.0)) / denominator
            entries.append(SpectrumEntry(k, energy, classify(energy, 0.0, k)))
        return entries

    def chain_line(self, entries, lam=1.0):
        """Method fits Im E = slope Re E + intercept through a chain of energies in
        units of lambda^2 and returns (slope, real-axis intercept, residual).

        Raises:
            InsufficientPointsError: Fewer than two entries.
        """

        if len(entries) < 2:
            raise InsufficientPointsError("a chain needs at least two energies")
        values = np.array([entry.energy for entry in entries]) / lam ** 2
        slope, offset = np.polyfit(values.real, values.imag, 1)
        residual = float(np.max(np.abs(values.imag - (slope * values.real + offset))))
        return float(slope), float(-offset / slope), residual


spectra = Spectra()
