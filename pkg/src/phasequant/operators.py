"""Phase coherent states and the quantization map on the circle.

The Hilbert space is spanned by the number states |0>, ..., |N-1>.  The phase
state |theta) has amplitudes exp(i n theta)/sqrt(N) and quantizing f(theta)
gives the Toeplitz matrix with entries A[n, n'] = c_{n'-n}(f).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .observables import (
    ClassicalObservable,
    FourierSpectrum,
    Sawtooth,
    fourier_spectrum,
    reduce_angle,
    wrap_angle,
)

HERMITIAN_TOL = 1e-12
# below this distance from 2pi*Z the Dirichlet ratio is taken from its Taylor series
SINGULAR_TOL = 1e-8


def check_dim(n) -> int:
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise ValueError(f"dimension must be a positive integer, got {n!r}")
    return int(n)


@dataclass(frozen=True)
class OperatorMatrix:
    """Dense N x N matrix in the number basis.

    ``hermitian`` is metadata; setting it on a matrix that is not Hermitian to
    within 1e-12 raises.
    """

    entries: np.ndarray
    hermitian: bool = False

    def __post_init__(self):
        entries = np.array(self.entries, dtype=complex)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1] or entries.shape[0] < 1:
            raise ValueError(f"operator must be a non-empty square matrix, got {entries.shape}")
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)
        if self.hermitian and self.hermiticity_defect() > HERMITIAN_TOL:
            raise ValueError(
                f"matrix flagged Hermitian but A - A^dagger reaches {self.hermiticity_defect():.3e}"
            )

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def hermiticity_defect(self) -> float:
        return float(np.max(np.abs(self.entries - self.entries.conj().T)))

    def toeplitz_defect(self) -> float:
        """Largest spread of entries along any diagonal n' - n = const."""
        a = self.entries
        worst = 0.0
        for offset in range(-(self.dim - 1), self.dim):
            diag = np.diagonal(a, offset)
            worst = max(worst, float(np.max(np.abs(diag - diag[0]))))
        return worst

    def adjoint(self) -> "OperatorMatrix":
        return OperatorMatrix(self.entries.conj().T, self.hermitian)

    def __array__(self, dtype=None, copy=None):
        return self.entries if dtype is None else self.entries.astype(dtype)

    def __matmul__(self, other):
        return OperatorMatrix(self.entries @ as_matrix(other))

    def __add__(self, other):
        return OperatorMatrix(self.entries + as_matrix(other))

    def __sub__(self, other):
        return OperatorMatrix(self.entries - as_matrix(other))


def as_matrix(a) -> np.ndarray:
    if isinstance(a, OperatorMatrix):
        return a.entries
    return np.asarray(a, dtype=complex)


@dataclass(frozen=True)
class PhaseStateVector:
    theta: float
    amplitudes: np.ndarray

    def __post_init__(self):
        self.amplitudes.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


def phase_state(theta: float, n: int) -> PhaseStateVector:
    """The coherent state |theta) = N**-0.5 * sum_n exp(i n theta) |n>."""
    n = check_dim(n)
    theta = reduce_angle(theta)
    amps = np.exp(1j * theta * np.arange(n)) / math.sqrt(n)
    return PhaseStateVector(theta, amps)


def dirichlet_ratio(delta, n: int):
    """sin(n delta / 2) / sin(delta / 2), with the removable singularity filled in.

    ``delta`` should already be wrapped to [-pi, pi).
    """
    delta = np.asarray(delta, dtype=float)
    near = np.abs(delta) < SINGULAR_TOL
    safe = np.where(near, 1.0, delta)
    direct = np.sin(0.5 * n * safe) / np.sin(0.5 * safe)
    series = n * (1.0 - (n * n - 1.0) * delta**2 / 24.0)
    out = np.where(near, series, direct)
    return float(out) if out.ndim == 0 else out


def overlap(theta: float, theta_prime: float, n: int) -> complex:
    """(theta'|theta) in closed form."""
    n = check_dim(n)
    # the closed form is invariant under delta -> delta + 2pi, so wrap for stability
    delta = wrap_angle(reduce_angle(theta) - reduce_angle(theta_prime))
    phase = np.exp(0.5j * (n - 1) * delta)
    return complex(phase * dirichlet_ratio(delta, n) / n)


def quantize(f: ClassicalObservable, n: int) -> OperatorMatrix:
    """Frame quantization A_f = sum_{n,n'} c_{n'-n}(f) |n><n'|."""
    n = check_dim(n)
    spectrum = fourier_spectrum(f, n)
    return toeplitz_from_spectrum(spectrum, hermitian=f.real_valued)


def toeplitz_from_spectrum(spectrum: FourierSpectrum, hermitian: bool = False) -> OperatorMatrix:
    n = spectrum.max_frequency + 1
    idx = np.arange(n)
    offsets = idx[None, :] - idx[:, None]
    return OperatorMatrix(spectrum.coefficients[offsets + n - 1], hermitian=hermitian)


def phase_operator(n: int, include_reference_diagonal: bool = False) -> OperatorMatrix:
    """Toeplitz phase operator with off-diagonal entries -i/(n - n').

    The quantization of theta also puts c_0 = pi on the diagonal; that term is
    kept only when ``include_reference_diagonal`` is set.  It commutes with the
    number operator so commutator results do not depend on the choice.
    """
    n = check_dim(n)
    idx = np.arange(n)
    diff = (idx[:, None] - idx[None, :]).astype(float)
    off = ~np.eye(n, dtype=bool)
    entries = np.zeros((n, n), dtype=complex)
    entries[off] = -1j / diff[off]
    if include_reference_diagonal:
        entries[np.diag_indices(n)] = math.pi
    return OperatorMatrix(entries, hermitian=True)


def number_operator(n: int) -> OperatorMatrix:
    n = check_dim(n)
    return OperatorMatrix(np.diag(np.arange(n, dtype=complex)), hermitian=True)


def identity(n: int) -> OperatorMatrix:
    return OperatorMatrix(np.eye(check_dim(n), dtype=complex), hermitian=True)


def commutator(a, b) -> OperatorMatrix:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return OperatorMatrix(a @ b - b @ a)


def uniform_vector(n: int) -> np.ndarray:
    """|v_N> = (1, ..., 1)/sqrt(N), equal to the phase state at theta = 0."""
    n = check_dim(n)
    return np.full(n, 1.0 / math.sqrt(n), dtype=complex)


def commutator_number_phase(n: int) -> OperatorMatrix:
    """[N, A_theta] = i (I - N |v_N><v_N|), assembled from the closed form."""
    n = check_dim(n)
    v = uniform_vector(n)
    return OperatorMatrix(1j * (np.eye(n) - n * np.outer(v, v.conj())))


def sawtooth_phase_operator(n: int) -> OperatorMatrix:
    """Same as ``phase_operator(n, True)`` but routed through the quantization map."""
    return quantize(Sawtooth(), n)
