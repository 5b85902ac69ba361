from dataclasses import dataclass, field
from typing import Tuple
import numpy as np
from services.errors import NumericalError, SizeMismatchError


def _frozen_array(values):
    array = np.array(values, dtype=float)
    array.flags.writeable = False
    return array


@dataclass(frozen=True)
class PolySequence:
    """Values P_0..P_n_max of a normalized polynomial family at one argument.
    """

    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", _frozen_array(self.values))

    def __len__(self):
        return len(self.values)

    def __getitem__(self, index):
        return self.values[index]


@dataclass(frozen=True)
class SymTridiag:
    """Real symmetric tridiagonal matrix stored as its diagonal and its single
    off-diagonal sequence.

    Attributes:
        diag (np.ndarray): Diagonal, length n.
        off (np.ndarray): Off-diagonal (n, n+1) elements, length n-1.
        scale_note (str): Unit of the entries, e.g. "lambda^2".
    """

    diag: np.ndarray
    off: np.ndarray
    scale_note: str = "lambda^2"

    def __post_init__(self):
        diag = _frozen_array(self.diag)
        off = _frozen_array(self.off)
        if diag.ndim != 1 or off.ndim != 1 or len(diag) < 1 or len(off) != len(diag) - 1:
            raise SizeMismatchError(
                f"off-diagonal length {len(off)} does not fit diagonal length {len(diag)}")
        if not (np.all(np.isfinite(diag)) and np.all(np.isfinite(off))):
            raise NumericalError("tridiagonal matrix has non-finite entries")
        object.__setattr__(self, "diag", diag)
        object.__setattr__(self, "off", off)

    @property
    def dimension(self):
        return len(self.diag)

    def element(self, row, column):
        if row == column:
            return float(self.diag[row])
        if abs(row - column) == 1:
            return float(self.off[min(row, column)])
        return 0.0

    def column(self, column):
        """Method returns column `column` as a dense vector.
        """

        values = np.zeros(self.dimension)
        values[column] = self.diag[column]
        if column > 0:
            values[column - 1] = self.off[column - 1]
        if column < self.dimension - 1:
            values[column + 1] = self.off[column]
        return values

    def to_dense(self):
        return np.diag(self.diag) + np.diag(self.off, 1) + np.diag(self.off, -1)


@dataclass(frozen=True)
class HamiltonianSet:
    """Total Hamiltonian H, reference H0 and the potential matrix Vt = H - H0.
    """

    H: SymTridiag
    H0: SymTridiag
    Vt: SymTridiag


@dataclass(frozen=True)
class SpectrumPoint:
    """Root z of the amplitude-zero condition with its sign branch (+1 or -1).
    """

    k: int
    branch: int
    z: complex


@dataclass(frozen=True)
class SpectrumEntry:
    """Discrete energy E_k with its classification: bound, resonance,
    embedded_resonance or unphysical.
    """

    k: int
    energy: complex
    kind: str


@dataclass(frozen=True)
class ReconstructionResult:
    """Potential reconstructed on a grid together with its straight-line fit in y.

    Attributes:
        grid (np.ndarray): Valid grid points, strictly increasing.
        v_tilde (np.ndarray): Reconstructed potential on the grid.
        M (int): Truncation order of the sum.
        v0, v1 (float): Fit coefficients of v0 + v1 y.
        residual (float): Max deviation from the fit over the value range.
        y (np.ndarray): Map coordinate at the grid points.
        excluded (tuple): Grid points dropped because phi_0 underflowed.
    """

    grid: np.ndarray
    v_tilde: np.ndarray
    M: int
    v0: float
    v1: float
    residual: float
    y: np.ndarray
    excluded: Tuple[float, ...] = field(default=())


@dataclass(frozen=True)
class ClosedFormPotential:
    """Identified potential of one of the four basis configurations.

    Attributes:
        kind (str): poschl_teller_hyperbolic, scarf_trig_generalized, morse_1d
        or isotropic_oscillator.
        coefficients (dict): Named coefficients of the closed form.
        energy_shift (float): Constant removed from the fitted potential.
    """

    kind: str
    coefficients: dict
    energy_shift: float = 0.0

    def evaluate(self, x):
        x = np.asarray(x, dtype=float)
        c = self.coefficients
        if self.kind == "poschl_teller_hyperbolic":
            u = c["lambda"] * x
            return c["V0"] / np.sinh(u) ** 2 - 2.0 * c["V1_tilde"] / np.cosh(u) ** 2
        if self.kind == "scarf_trig_generalized":
            u = np.pi * x / c["L"]
            return ((c["V_plus"] - c["V_minus"] * np.sin(u)) / np.cos(u) ** 2
                    + c["V1_tilde"] * np.sin(u) + c["V0_tilde"])
        if self.kind == "morse_1d":
            u = c["lambda"] * x
            return c["lambda"] ** 2 * np.exp(2.0 * u) / 8.0 + c["V1_tilde"] * np.exp(u)
        return c["V0_tilde"] + c["V1_tilde_r2"] * x ** 2


@dataclass(frozen=True)
class WavefunctionSample:
    """Truncated expansion sum c_n phi_n sampled on a grid.
    """

    x: np.ndarray
    psi: np.ndarray
    truncation: int
    tail_estimate: float
    coefficients: np.ndarray


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one named invariant check.
    """

    name: str
    module: str
    tolerance: float
    achieved: float
    passed: bool
