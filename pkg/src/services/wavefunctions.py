import logging
import numpy as np
from repositories.structures import WavefunctionSample
from services.errors import IndexRangeError
from services.basis import basis_functions as default_basis_functions
from services.orthogonal_polynomials import orthogonal_polynomials as default_orthogonal_polynomials

logger = logging.getLogger(__name__)

DEFAULT_SCATTERING_TERMS = 40
TAIL_TERMS = 4


class Wavefunctions:
    """Class synthesizes scattering and bound-state wavefunctions as truncated
    expansions sum c_n phi_n(x) over a basis.
    """

    def __init__(self, basis_functions=default_basis_functions,
                 orthogonal_polynomials=default_orthogonal_polynomials):
        self.basis_functions = basis_functions
        self.orthogonal_polynomials = orthogonal_polynomials

    def synthesize(self, spec, coefficients, grid):
        """Method returns sum_n c_n phi_n(x) and the tail estimate: the largest
        magnitude of the last TAIL_TERMS retained terms relative to max |psi|.

        Args:
            spec (BasisSpec): Basis description.
            coefficients (array-like): c_0..c_{n_max}.
            grid (array-like): Points in the map domain.

        Returns:
            WavefunctionSample: Samples, truncation order and tail estimate.
        """

        coefficients = np.asarray(coefficients, dtype=float)
        grid = np.atleast_1d(np.asarray(grid, dtype=float))
        n_max = len(coefficients) - 1
        terms = coefficients[:, None] * self.basis_functions.basis_table(spec, n_max, grid)
        psi = terms.sum(axis=0)
        peak = float(np.max(np.abs(psi)))
        tail = float(np.max(np.abs(terms[-TAIL_TERMS:])))
        if peak > 0:
            tail_estimate = tail / peak
        else:
            tail_estimate = 0.0 if tail == 0 else np.inf
        return WavefunctionSample(grid, psi, n_max, tail_estimate, coefficients)

    def scattering_wavefunction(self, p, spec, z, grid, n_max=DEFAULT_SCATTERING_TERMS):
        """Method returns psi(x) = sqrt(rho(z)) sum_{n<=n_max} P_n(z) phi_n(x).

        Raises:
            ParameterRegimeError: mu or nu is not positive.
        """

        p.require_orthogonality_regime()
        polynomials = self.orthogonal_polynomials.cont_hahn_recursion(p, z, n_max).values
        weight = float(self.orthogonal_polynomials.cont_hahn_weight(p, z))
        sample = self.synthesize(spec, np.sqrt(weight) * polynomials, grid)
        logger.debug("scattering state at z=%g, n_max=%d, tail estimate %.3e", z, n_max, sample.tail_estimate)
        return sample

    def bound_wavefunction(self, h, spec, k, grid, n_max=None):
        """Method returns psi_k(x) = sqrt(omega_k) sum_{n<=n_max} Q_n(k) phi_n(x). The
        expansion is finite, so the default n_max = N is exact.

        Args:
            h (HahnParams): Hahn family.
            spec (BasisSpec): Basis description.
            k (int): Bound state index, 0..N.
            grid (array-like): Points in the map domain.
            n_max (int, optional): Last degree. Defaults to N.

        Raises:
            IndexRangeError: k or n_max exceeds N.

        Returns:
            WavefunctionSample: Samples of psi_k.
        """

        if int(k) != k or k < 0 or k > h.N:
            raise IndexRangeError(f"index exceeds spectrum size: {k} > {h.N}")
        n_max = h.N if n_max is None else n_max
        polynomials = self.orthogonal_polynomials.hahn_recursion(h, k, n_max).values
        weight = self.orthogonal_polynomials.hahn_weight(h, k)
        return self.synthesize(spec, np.sqrt(weight) * polynomials, grid)

    def bound_state_overlap(self, h, j, k):
        """Method returns <psi_j|psi_k> = sqrt(omega_j omega_k) sum_{n=0}^{N} Q_n(j) Q_n(k)
        for the full expansions; it equals the Kronecker delta.
        """

        for index in (j, k):
            if int(index) != index or index < 0 or index > h.N:
                raise IndexRangeError(f"index exceeds spectrum size: {index} > {h.N}")
        weights = self.orthogonal_polynomials.hahn_weights(h)
        table = self.orthogonal_polynomials.hahn_table(h, [j, k], h.N)
        return float(np.sqrt(weights[j] * weights[k]) * np.dot(table[:, 0], table[:, 1]))


wavefunctions = Wavefunctions()
