"""Classical observables on the unit circle and their Fourier coefficients.

An observable is a 2pi-periodic function f(theta).  Catalog observables know
their Fourier coefficients in closed form; sampled observables carry values on
a uniform :class:`QuadratureGrid` and obtain coefficients from the discrete
transform on that grid.

Coefficients follow the convention

    c_k(f) = int_0^{2pi} f(theta) exp(-i k theta) dtheta / 2pi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

TWO_PI = 2.0 * math.pi


class AliasingError(ValueError):
    """Requested a coefficient the sampling grid cannot resolve."""


def reduce_angle(theta):
    """Reduce angle(s) to the fundamental domain [0, 2pi)."""
    reduced = np.mod(theta, TWO_PI)
    # np.mod(-tiny, 2pi) rounds up to exactly 2pi
    reduced = np.where(reduced >= TWO_PI, 0.0, reduced)
    if np.ndim(reduced) == 0:
        return float(reduced)
    return reduced


def wrap_angle(theta):
    """Signed representative of theta in [-pi, pi)."""
    wrapped = np.mod(np.asarray(theta, dtype=float) + math.pi, TWO_PI) - math.pi
    if np.ndim(wrapped) == 0:
        return float(wrapped)
    return wrapped


@dataclass(frozen=True)
class QuadratureGrid:
    """Uniform nodes theta_j = 2 pi j / M with weight 1/M each."""

    m: int

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 1:
            raise ValueError(f"grid size must be a positive integer, got {self.m!r}")

    @property
    def nodes(self) -> np.ndarray:
        return TWO_PI * np.arange(self.m) / self.m

    @property
    def weights(self) -> np.ndarray:
        return np.full(self.m, 1.0 / self.m)

    def integrate(self, values) -> complex:
        """Rectangle rule for int f dtheta/2pi; exact for trig polynomials of degree < M."""
        values = np.asarray(values)
        if values.shape != (self.m,):
            raise ValueError(f"expected {self.m} samples, got shape {values.shape}")
        return complex(np.mean(values))


class ClassicalObservable:
    """Base class for functions on the circle that can be quantized."""

    #: True when coefficients are exact closed forms.
    analytic: bool = True

    @property
    def real_valued(self) -> bool:
        raise NotImplementedError

    def coefficient(self, k: int) -> complex:
        raise NotImplementedError

    def __call__(self, theta):
        raise NotImplementedError

    def coefficients(self, ks) -> np.ndarray:
        return np.array([self.coefficient(int(k)) for k in ks], dtype=complex)


@dataclass(frozen=True)
class Constant(ClassicalObservable):
    value: complex = 1.0

    @property
    def real_valued(self) -> bool:
        return complex(self.value).imag == 0.0

    def coefficient(self, k: int) -> complex:
        return complex(self.value) if k == 0 else 0j

    def __call__(self, theta):
        out = np.full(np.shape(theta), complex(self.value))
        return out if out.ndim else complex(out)


@dataclass(frozen=True)
class Sawtooth(ClassicalObservable):
    """f(theta) = theta on [0, 2pi), the angle itself."""

    @property
    def real_valued(self) -> bool:
        return True

    def coefficient(self, k: int) -> complex:
        if k == 0:
            return complex(math.pi)
        return 1j / k

    def __call__(self, theta):
        return reduce_angle(theta)


@dataclass(frozen=True)
class SawtoothSquared(ClassicalObservable):
    """f(theta) = theta**2 on [0, 2pi)."""

    @property
    def real_valued(self) -> bool:
        return True

    def coefficient(self, k: int) -> complex:
        if k == 0:
            return complex(4.0 * math.pi**2 / 3.0)
        return complex(2.0 / k**2, 2.0 * math.pi / k)

    def __call__(self, theta):
        return reduce_angle(theta) ** 2


@dataclass(frozen=True)
class Exponential(ClassicalObservable):
    """f(theta) = exp(i k theta) for an integer frequency k."""

    frequency: int = 1

    def __post_init__(self):
        if int(self.frequency) != self.frequency:
            raise ValueError("exponential frequency must be an integer")

    @property
    def real_valued(self) -> bool:
        return self.frequency == 0

    def coefficient(self, k: int) -> complex:
        return 1.0 + 0j if k == self.frequency else 0j

    def __call__(self, theta):
        return np.exp(1j * self.frequency * np.asarray(theta, dtype=float))


@dataclass(frozen=True)
class TrigPolynomial(ClassicalObservable):
    """Finite sum sum_k c_k exp(i k theta); ``terms`` maps k to c_k."""

    terms: Mapping[int, complex] = field(default_factory=dict)

    def __post_init__(self):
        clean = {int(k): complex(c) for k, c in dict(self.terms).items()}
        object.__setattr__(self, "terms", clean)

    @classmethod
    def from_list(cls, k0: int, coeffs) -> "TrigPolynomial":
        """Consecutive coefficients starting at frequency ``k0``."""
        return cls({k0 + j: c for j, c in enumerate(coeffs)})

    @property
    def real_valued(self) -> bool:
        return all(
            abs(self.terms.get(-k, 0j) - c.conjugate()) <= 1e-14 * max(1.0, abs(c))
            for k, c in self.terms.items()
        )

    def coefficient(self, k: int) -> complex:
        return self.terms.get(k, 0j)

    def __call__(self, theta):
        theta = np.asarray(theta, dtype=float)
        out = np.zeros(theta.shape, dtype=complex)
        for k, c in self.terms.items():
            out = out + c * np.exp(1j * k * theta)
        return out if out.ndim else complex(out)

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items(), key=lambda kv: kv[0])))


class Sampled(ClassicalObservable):
    """Observable known only through its values on a uniform grid."""

    analytic = False

    def __init__(self, values, grid: QuadratureGrid | None = None):
        values = np.array(values, dtype=complex)
        if values.ndim != 1 or values.size < 1:
            raise ValueError("sampled observable needs a non-empty 1-d array of values")
        if grid is None:
            grid = QuadratureGrid(values.size)
        if grid.m != values.size:
            raise ValueError(f"{values.size} values do not match a grid of {grid.m} nodes")
        values.setflags(write=False)
        self.values = values
        self.grid = grid
        self._spectrum = None

    @classmethod
    def from_function(cls, func, m: int) -> "Sampled":
        grid = QuadratureGrid(m)
        return cls(func(grid.nodes), grid)

    @property
    def real_valued(self) -> bool:
        return bool(np.all(self.values.imag == 0.0))

    def _dft(self) -> np.ndarray:
        if self._spectrum is None:
            spec = np.fft.fft(self.values) / self.grid.m
            spec.setflags(write=False)
            self._spectrum = spec
        return self._spectrum

    def coefficient(self, k: int) -> complex:
        if 2 * abs(k) >= self.grid.m:
            raise AliasingError(
                f"coefficient k={k} needs |k| < M/2 but the grid has M={self.grid.m} nodes"
            )
        return complex(self._dft()[k % self.grid.m])

    def __call__(self, theta):
        theta = np.asarray(theta, dtype=float)
        pos = reduce_angle(theta) * self.grid.m / TWO_PI
        idx = np.rint(pos).astype(int)
        if not np.allclose(pos, idx, rtol=0.0, atol=1e-9):
            raise ValueError("sampled observable can only be evaluated on its grid nodes")
        out = self.values[idx % self.grid.m]
        return out if out.ndim else complex(out)


@dataclass(frozen=True)
class FourierSpectrum:
    """Coefficients c_k for k = -(N-1) .. N-1, stored in that order."""

    coefficients: np.ndarray
    analytic: bool

    def __post_init__(self):
        if self.coefficients.ndim != 1 or self.coefficients.size % 2 != 1:
            raise ValueError("spectrum must hold an odd number 2N-1 of coefficients")
        self.coefficients.setflags(write=False)

    @property
    def max_frequency(self) -> int:
        return (self.coefficients.size - 1) // 2

    @property
    def frequencies(self) -> np.ndarray:
        top = self.max_frequency
        return np.arange(-top, top + 1)

    def __getitem__(self, k: int) -> complex:
        top = self.max_frequency
        if abs(k) > top:
            raise IndexError(f"frequency {k} outside [-{top}, {top}]")
        return complex(self.coefficients[k + top])

    def hermitian_defect(self) -> float:
        """max |c_{-k} - conj(c_k)|; zero for a real-valued observable."""
        c = self.coefficients
        return float(np.max(np.abs(c[::-1] - c.conj())))


def fourier_coefficient(f: ClassicalObservable, k: int) -> complex:
    """c_k(f); exact for catalog entries, grid transform for sampled ones."""
    return f.coefficient(int(k))


def fourier_spectrum(f: ClassicalObservable, n: int) -> FourierSpectrum:
    top = int(n) - 1
    coeffs = f.coefficients(range(-top, top + 1))
    return FourierSpectrum(coeffs, analytic=f.analytic)


CATALOG_NAMES = ("const:<c>", "theta", "theta2", "exp:<k>", "trigpoly:<k0>:<re>,<im>;...")


def parse_observable(spec: str) -> ClassicalObservable:
    """Parse the observable grammar used by the command line.

    ``const:<c>``, ``theta``, ``theta2``, ``exp:<k>`` and
    ``trigpoly:<k0>:<re>,<im>;<re>,<im>;...`` (consecutive coefficients from
    frequency ``k0`` upward).
    """
    text = spec.strip()
    head, _, rest = text.partition(":")
    try:
        if head == "theta" and not rest:
            return Sawtooth()
        if head == "theta2" and not rest:
            return SawtoothSquared()
        if head == "const" and rest:
            return Constant(complex(rest.replace(" ", "")))
        if head == "exp" and rest:
            return Exponential(int(rest))
        if head == "trigpoly" and rest:
            k0, _, body = rest.partition(":")
            coeffs = []
            for pair in body.split(";"):
                re_part, im_part = pair.split(",")
                coeffs.append(complex(float(re_part), float(im_part)))
            return TrigPolynomial.from_list(int(k0), coeffs)
    except ValueError as exc:
        raise ValueError(f"malformed observable {spec!r}: {exc}") from None
    raise ValueError(
        f"unknown observable {spec!r}; catalog: {', '.join(CATALOG_NAMES)}"
    )
