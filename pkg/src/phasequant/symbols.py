"""Lower symbols, the Fejer kernel and large-N convergence scans."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Sequence

import numpy as np

from .observables import ClassicalObservable, QuadratureGrid, Sampled, wrap_angle
from .operators import (
    OperatorMatrix,
    as_matrix,
    check_dim,
    commutator,
    dirichlet_ratio,
    number_operator,
    overlap,
    phase_operator,
    phase_state,
)


class UnderResolvedGridWarning(UserWarning):
    pass


def lower_symbol(a, theta: float) -> complex:
    """Coherent-state expectation (theta|A|theta)."""
    a = as_matrix(a)
    psi = phase_state(theta, a.shape[0]).amplitudes
    return complex(psi.conj() @ a @ psi)


def allones_matrix(n: int) -> OperatorMatrix:
    n = check_dim(n)
    return OperatorMatrix(np.ones((n, n), dtype=complex), hermitian=True)


@dataclass(frozen=True)
class AllOnesSpectrum:
    eigenvalues: np.ndarray
    top_eigenvector: np.ndarray
    # largest component of any (|n+1> - |n>)/sqrt2 outside the numerical 0-eigenspace
    null_residual: float


def allones_spectrum(n: int, tol: float = 1e-10) -> AllOnesSpectrum:
    """Eigen-decomposition of the all-ones matrix, eigenvalues sorted descending.

    The top eigenvector is phase-fixed so its first entry is real positive.
    Raises ``ArithmeticError`` if the difference vectors (|n+1> - |n>)/sqrt2 do
    not lie in the computed null space.
    """
    n = check_dim(n)
    vals, vecs = np.linalg.eigh(allones_matrix(n).entries)
    order = np.argsort(vals)[::-1]
    vals, vecs = vals[order], vecs[:, order]
    top = vecs[:, 0]
    top = top * (abs(top[0]) / top[0])
    null = vecs[:, 1:]
    worst = 0.0
    for k in range(n - 1):
        d = np.zeros(n, dtype=complex)
        d[k + 1], d[k] = 1 / math.sqrt(2), -1 / math.sqrt(2)
        outside = d - null @ (null.conj().T @ d)
        worst = max(worst, float(np.linalg.norm(outside)))
    if worst > tol:
        raise ArithmeticError(f"difference vectors leave the null space by {worst:.3e}")
    return AllOnesSpectrum(vals, top, worst)


def fejer_kernel(theta, n: int):
    """(1/N) sin^2(N theta/2) / sin^2(theta/2), the lower symbol of the all-ones matrix."""
    n = check_dim(n)
    ratio = dirichlet_ratio(wrap_angle(theta), n)
    return ratio * ratio / n


def comb_pairing(g: ClassicalObservable, n: int, grid: QuadratureGrid) -> complex:
    """int F_N(theta) g(theta) dtheta/2pi on a uniform grid.

    Exact for trigonometric g of degree < M - N + 1.  Grids with M < 4N trigger
    an :class:`UnderResolvedGridWarning`.
    """
    n = check_dim(n)
    if grid.m < 4 * n:
        warnings.warn(
            f"grid of {grid.m} nodes under-resolves the kernel for N={n} (want M >= {4 * n})",
            UnderResolvedGridWarning,
            stacklevel=2,
        )
    if isinstance(g, Sampled) and g.grid.m != grid.m:
        raise ValueError("sampled observable lives on a different grid")
    nodes = grid.nodes
    return grid.integrate(fejer_kernel(nodes, n) * g(nodes))


def fejer_weighted_sum(g: ClassicalObservable, n: int) -> complex:
    """sum_{|k|<N} (1 - |k|/N) c_k(g): the exact value of ``comb_pairing``."""
    n = check_dim(n)
    ks = np.arange(-(n - 1), n)
    weights = 1.0 - np.abs(ks) / n
    return complex(np.sum(weights * g.coefficients(ks)))


def commutator_lower_symbol(theta: float, n: int) -> complex:
    """(theta|[N, A_theta]|theta) = i (1 - F_N(theta))."""
    return 1j * (1.0 - fejer_kernel(theta, n))


def resolution_identity_residual(n: int, grid: QuadratureGrid) -> float:
    """max |(N/M) sum_j |theta_j)(theta_j| - I| over entries."""
    n = check_dim(n)
    states = np.exp(1j * np.outer(grid.nodes, np.arange(n))) / math.sqrt(n)
    frame = (n / grid.m) * (states.T @ states.conj())
    return float(np.max(np.abs(frame - np.eye(n))))


class ScanQuantity(str, Enum):
    COMMUTATOR = "commutator"
    RESOLUTION = "resolution"
    COMB = "comb"


@dataclass(frozen=True)
class ScanReport:
    quantity: str
    axis: list
    measured: list
    reference: list
    residuals: list = field(default=None)
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.residuals is None:
            res = [abs(complex(m) - complex(r)) for m, r in zip(self.measured, self.reference)]
            object.__setattr__(self, "residuals", res)
        lengths = {len(self.axis), len(self.measured), len(self.reference), len(self.residuals)}
        if len(lengths) != 1:
            raise ValueError("scan columns must have equal length")


GridPolicy = Callable[[int], int]


def _resolve_policy(policy, default: GridPolicy) -> GridPolicy:
    if policy is None:
        return default
    if isinstance(policy, int):
        return lambda n: policy
    return policy


def convergence_scan(
    quantity,
    dims: Sequence[int],
    theta: float | None = None,
    grid_policy: GridPolicy | int | None = None,
    observable: ClassicalObservable | None = None,
) -> ScanReport:
    """Tabulate a large-N limit quantity against its reference for each N in ``dims``.

    ``commutator``: matrix-route lower symbol of [N, A_theta] against i, with
    the envelope 1/(N sin^2(theta/2)) recorded in the metadata.
    ``resolution``: frame residual against 0 on an M = grid_policy(N) grid
    (default M = N).
    ``comb``: Fejer pairing with ``observable`` against its exact finite-N
    value; the N -> infinity limit g(0) goes into the metadata.
    """
    try:
        quantity = ScanQuantity(quantity)
    except ValueError:
        raise ValueError(
            f"unknown scan quantity {quantity!r}; choose from "
            + ", ".join(q.value for q in ScanQuantity)
        ) from None
    dims = [check_dim(n) for n in dims]
    if not dims:
        raise ValueError("scan needs at least one dimension")
    if any(b <= a for a, b in zip(dims, dims[1:])):
        raise ValueError("scan dimensions must be strictly increasing")

    measured, reference = [], []
    meta: dict = {"quantity": quantity.value}

    if quantity is ScanQuantity.COMMUTATOR:
        theta = math.pi / 2 if theta is None else float(theta)
        for n in dims:
            c = commutator(number_operator(n), phase_operator(n, False))
            measured.append(lower_symbol(c, theta))
            reference.append(1j)
        s2 = math.sin(0.5 * wrap_angle(theta)) ** 2
        meta["theta"] = theta
        meta["envelope"] = [1.0 / (n * s2) if s2 > 0 else math.inf for n in dims]
    elif quantity is ScanQuantity.RESOLUTION:
        policy = _resolve_policy(grid_policy, lambda n: n)
        grids = []
        for n in dims:
            grid = QuadratureGrid(policy(n))
            grids.append(grid.m)
            measured.append(resolution_identity_residual(n, grid))
            reference.append(0.0)
        meta["grid"] = grids
    else:
        if observable is None:
            raise ValueError("comb scan needs an observable")
        policy = _resolve_policy(grid_policy, lambda n: 4 * n)
        grids = []
        for n in dims:
            grid = QuadratureGrid(policy(n))
            grids.append(grid.m)
            measured.append(comb_pairing(observable, n, grid))
            reference.append(fejer_weighted_sum(observable, n))
        meta["grid"] = grids
        meta["limit"] = complex(observable(0.0))

    return ScanReport(quantity.value, list(dims), measured, reference, metadata=meta)


def kernel_via_overlap(theta: float, n: int) -> float:
    """N |(0|theta)|^2, an alternative route to the Fejer kernel."""
    return n * abs(overlap(theta, 0.0, n)) ** 2
