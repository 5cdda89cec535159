import math

import numpy as np
import pytest

from phasequant.observables import (
    AliasingError,
    Constant,
    Exponential,
    QuadratureGrid,
    Sampled,
    Sawtooth,
    SawtoothSquared,
    TrigPolynomial,
    fourier_coefficient,
    fourier_spectrum,
    parse_observable,
    reduce_angle,
)

from oracles import quad_coefficient

# c_k of theta and theta**2 on [0, 2pi), from adaptive quadrature (see oracles.quad_coefficient)
SAWTOOTH_FROZEN = {0: math.pi, 1: 1j, -1: -1j, 2: 0.5j, -3: -1j / 3, 5: 0.2j}
SQUARE_FROZEN = {
    0: 13.15947253478581,
    1: 2.0 + 6.283185307179586j,
    2: 0.5 + 3.1415926535897927j,
    -3: 0.22222222222222346 - 2.094395102393197j,
}


@pytest.mark.parametrize("k", [0, 1, 4, -7])
def test_constant_coefficients(k):
    assert fourier_coefficient(Constant(1.0), k) == (1.0 if k == 0 else 0.0)


@pytest.mark.parametrize("k,expected", SAWTOOTH_FROZEN.items())
def test_sawtooth_coefficients_frozen(k, expected):
    assert fourier_coefficient(Sawtooth(), k) == pytest.approx(expected, abs=1e-13)


@pytest.mark.parametrize("k", [0, 1, -2, 6])
def test_sawtooth_coefficients_against_quadrature(k):
    assert fourier_coefficient(Sawtooth(), k) == pytest.approx(
        quad_coefficient(lambda t: t, k), abs=1e-12
    )


@pytest.mark.parametrize("k,expected", SQUARE_FROZEN.items())
def test_theta_squared_coefficients(k, expected):
    assert fourier_coefficient(SawtoothSquared(), k) == pytest.approx(expected, abs=1e-12)
    assert fourier_coefficient(SawtoothSquared(), k) == pytest.approx(
        quad_coefficient(lambda t: t * t, k), abs=1e-11
    )


@pytest.mark.parametrize("k", [-2, 0, 1, 3])
def test_exponential_coefficients(k):
    f = Exponential(1)
    assert fourier_coefficient(f, k) == (1.0 if k == 1 else 0.0)


def test_trig_polynomial_real_flag():
    cosine = TrigPolynomial({1: 0.5, -1: 0.5})
    assert cosine.real_valued
    assert not TrigPolynomial({1: 0.5}).real_valued
    assert cosine(0.0) == pytest.approx(1.0)
    assert cosine.coefficient(1) == 0.5 and cosine.coefficient(2) == 0


def test_real_flags():
    assert Sawtooth().real_valued and SawtoothSquared().real_valued
    assert Constant(2.0).real_valued and not Constant(1j).real_valued
    assert Exponential(0).real_valued and not Exponential(3).real_valued


def test_sampled_path_matches_analytic_sawtooth():
    f = Sampled.from_function(lambda t: t, 2**12)
    for k in range(-5, 6):
        # O(1/M) bias from the jump at theta = 0
        assert abs(f.coefficient(k) - Sawtooth().coefficient(k)) < 4 * math.pi / 2**12


def test_sampled_aliasing_error():
    f = Sampled.from_function(np.cos, 8)
    f.coefficient(3)
    with pytest.raises(AliasingError):
        f.coefficient(4)
    with pytest.raises(AliasingError):
        f.coefficient(-4)


def test_sampled_exact_for_trig_polynomial():
    f = Sampled.from_function(lambda t: 2 * np.cos(2 * t) + 1j * np.sin(t), 16)
    assert f.coefficient(2) == pytest.approx(1.0, abs=1e-14)
    assert f.coefficient(-2) == pytest.approx(1.0, abs=1e-14)
    assert f.coefficient(1) == pytest.approx(0.5, abs=1e-14)
    assert f.coefficient(-1) == pytest.approx(-0.5, abs=1e-14)
    assert not f.real_valued


def test_spectrum_layout():
    spec = fourier_spectrum(Sawtooth(), 4)
    assert spec.coefficients.size == 7
    assert list(spec.frequencies) == [-3, -2, -1, 0, 1, 2, 3]
    assert spec[0] == math.pi and spec[-2] == pytest.approx(-0.5j)
    assert spec.hermitian_defect() == 0.0
    assert spec.analytic
    with pytest.raises(IndexError):
        spec[4]


def test_grid():
    g = QuadratureGrid(5)
    assert np.all(np.diff(g.nodes) > 0) and g.nodes[0] == 0.0
    assert g.weights.sum() == pytest.approx(1.0, abs=1e-15)
    with pytest.raises(ValueError):
        QuadratureGrid(0)


@pytest.mark.parametrize("theta,expected", [(0.0, 0.0), (2 * math.pi, 0.0), (-1e-20, 0.0), (7.0, 7.0 - 2 * math.pi)])
def test_reduce_angle(theta, expected):
    assert reduce_angle(theta) == pytest.approx(expected, abs=1e-15)


def test_parse_observable_catalog():
    assert parse_observable("theta") == Sawtooth()
    assert parse_observable("theta2") == SawtoothSquared()
    assert parse_observable("exp:-2") == Exponential(-2)
    assert parse_observable("const:2.5") == Constant(2.5)
    poly = parse_observable("trigpoly:-1:0.5,0;0,0;0.5,0")
    assert poly.coefficient(-1) == 0.5 and poly.coefficient(1) == 0.5 and poly.real_valued


@pytest.mark.parametrize("bad", ["sine", "exp:x", "trigpoly:1:1", "const:", "theta:3"])
def test_parse_observable_rejects(bad):
    with pytest.raises(ValueError, match="observable"):
        parse_observable(bad)


def test_unknown_observable_lists_catalog():
    with pytest.raises(ValueError, match="theta2"):
        parse_observable("sine")
