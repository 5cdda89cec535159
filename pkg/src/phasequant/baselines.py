"""Comparison constructions: Pegg-Barnett phase, Susskind-Glogower shifts, ladder operators."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .observables import Exponential, reduce_angle
from .operators import OperatorMatrix, as_matrix, check_dim, number_operator, quantize


@dataclass(frozen=True)
class PeggBarnettBasis:
    """Orthonormal phase states |theta_m>, theta_m = theta0 + 2 pi m / N.

    ``states[m]`` holds the amplitudes of |theta_m> in the number basis.
    """

    dim: int
    theta0: float
    angles: np.ndarray
    states: np.ndarray

    def gram(self) -> np.ndarray:
        return self.states.conj() @ self.states.T


def pegg_barnett_states(n: int, theta0: float = 0.0) -> PeggBarnettBasis:
    n = check_dim(n)
    theta0 = reduce_angle(theta0)
    angles = theta0 + 2.0 * math.pi * np.arange(n) / n
    states = np.exp(1j * np.outer(angles, np.arange(n))) / math.sqrt(n)
    angles.setflags(write=False)
    states.setflags(write=False)
    return PeggBarnettBasis(n, theta0, angles, states)


def pegg_barnett_operator(n: int, theta0: float = 0.0) -> OperatorMatrix:
    """Spectral resolution sum_m theta_m |theta_m><theta_m|."""
    basis = pegg_barnett_states(n, theta0)
    s = basis.states
    entries = s.T @ (basis.angles[:, None] * s.conj())
    # exact Hermitian symmetrization; the sum is Hermitian up to rounding
    entries = 0.5 * (entries + entries.conj().T)
    return OperatorMatrix(entries, hermitian=True)


def sg_shift(n: int, direction: str = "lower") -> OperatorMatrix:
    """Truncated Susskind-Glogower shift.

    ``lower`` is E_- = sum_{n<N-1} |n><n+1|, ``raise`` its adjoint E_+.
    """
    n = check_dim(n)
    e_minus = np.eye(n, k=1, dtype=complex)
    if direction == "lower":
        return OperatorMatrix(e_minus)
    if direction == "raise":
        return OperatorMatrix(e_minus.T.copy())
    raise ValueError(f"direction must be 'lower' or 'raise', got {direction!r}")


def cosine_sine(n: int) -> tuple[OperatorMatrix, OperatorMatrix]:
    """C = (E_- + E_+)/2 and S = (E_- - E_+)/(2i)."""
    n = check_dim(n)
    if n < 2:
        raise ValueError("cosine and sine operators need N >= 2")
    e_minus = sg_shift(n, "lower").entries
    e_plus = sg_shift(n, "raise").entries
    c = OperatorMatrix((e_minus + e_plus) / 2, hermitian=True)
    s = OperatorMatrix((e_minus - e_plus) / 2j, hermitian=True)
    return c, s


@dataclass(frozen=True)
class LadderPair:
    a: OperatorMatrix
    a_dagger: OperatorMatrix


def sqrt_number(n: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(check_dim(n), dtype=float))).astype(complex)


def ladder_from_quantization(n: int) -> LadderPair:
    """a = A_{exp(i theta)} N**0.5 and a^dagger = N**0.5 A_{exp(-i theta)}."""
    root = sqrt_number(n)
    a = quantize(Exponential(1), n).entries @ root
    a_dag = root @ quantize(Exponential(-1), n).entries
    return LadderPair(OperatorMatrix(a), OperatorMatrix(a_dag))


def ladder_commutator(n: int) -> OperatorMatrix:
    """[a, a^dagger] by multiplication; equals I - N |N-1><N-1|."""
    pair = ladder_from_quantization(n)
    a, ad = pair.a.entries, pair.a_dagger.entries
    return OperatorMatrix(a @ ad - ad @ a)


def ladder_commutator_expected(n: int) -> OperatorMatrix:
    n = check_dim(n)
    diag = np.ones(n, dtype=complex)
    diag[-1] = 1 - n
    return OperatorMatrix(np.diag(diag), hermitian=True)


NORMS = ("frobenius", "max_entry")


def operator_distance(a, b, norm: str = "frobenius") -> float:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    diff = a - b
    if norm == "frobenius":
        return float(np.linalg.norm(diff, "fro"))
    if norm in ("max_entry", "max"):
        return float(np.max(np.abs(diff)))
    raise ValueError(f"unknown norm {norm!r}; choose from {', '.join(NORMS)}")


def number_diagonal_commutator(x) -> np.ndarray:
    """Diagonal of [N, X]; identically zero for any X."""
    x = as_matrix(x)
    num = number_operator(x.shape[0]).entries
    return np.diagonal(num @ x - x @ num).copy()
