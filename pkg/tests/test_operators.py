import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from phasequant.observables import (
    Constant,
    Exponential,
    Sampled,
    Sawtooth,
    SawtoothSquared,
    TrigPolynomial,
    AliasingError,
)
from phasequant.operators import (
    OperatorMatrix,
    commutator,
    commutator_number_phase,
    identity,
    number_operator,
    overlap,
    phase_operator,
    phase_state,
    quantize,
)

from oracles import inner, random_hermitian, state

angles = st.floats(min_value=-20.0, max_value=20.0, allow_nan=False)
dims = st.integers(min_value=1, max_value=64)


def test_phase_state_examples():
    np.testing.assert_allclose(phase_state(0.0, 4).amplitudes, [0.5] * 4, atol=1e-15)
    np.testing.assert_allclose(
        phase_state(math.pi, 2).amplitudes, np.array([1, -1]) / math.sqrt(2), atol=1e-15
    )
    assert phase_state(1.234, 17).norm() == pytest.approx(1.0, abs=1e-13)
    assert phase_state(2 * math.pi, 3).theta == 0.0


@given(angles, dims)
def test_phase_state_normalized_and_flat(theta, n):
    psi = phase_state(theta, n)
    assert abs(psi.norm() - 1.0) <= 1e-13
    np.testing.assert_allclose(np.abs(psi.amplitudes), 1 / math.sqrt(n), atol=1e-15)


def test_overlap_examples():
    assert overlap(0.3, 0.3, 9) == pytest.approx(1.0, abs=1e-15)
    for n in (2, 5, 16):
        assert abs(overlap(0.1 + 2 * math.pi / n, 0.1, n)) < 1e-14
        direct = inner(state(0.1, n), state(0.1 + 2 * math.pi / n, n))
        assert abs(direct) < 1e-14
    assert overlap(1.0, -2.5, 1) == pytest.approx(1.0, abs=1e-15)


@settings(max_examples=100)
@given(angles, angles, dims)
def test_overlap_matches_inner_product(theta, theta_prime, n):
    direct = inner(state(theta_prime, n), state(theta, n))
    assert abs(overlap(theta, theta_prime, n) - direct) <= 1e-12


def test_overlap_near_singularity():
    # distance 1e-10 and across the 2pi seam
    for n in (3, 64):
        for t, tp in [(1.0 + 1e-10, 1.0), (1e-11, 2 * math.pi - 1e-11)]:
            direct = inner(state(tp, n), state(t, n))
            assert abs(overlap(t, tp, n) - direct) <= 1e-12


def test_quantize_examples():
    for n in (1, 3, 7):
        np.testing.assert_array_equal(quantize(Constant(1.0), n).entries, np.eye(n))
    shift = quantize(Exponential(1), 3).entries
    np.testing.assert_array_equal(shift, [[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    theta2 = quantize(Sawtooth(), 2)
    np.testing.assert_allclose(theta2.entries, [[math.pi, 1j], [-1j, math.pi]], atol=1e-15)
    assert theta2.hermitian


def test_quantize_entries_by_hand():
    f = TrigPolynomial({-2: 0.25j, 0: 1.0, 1: 3.0 - 1j})
    a = quantize(f, 4).entries
    for r in range(4):
        for c in range(4):
            assert a[r, c] == f.coefficient(c - r)


@pytest.mark.parametrize("f", [Sawtooth(), SawtoothSquared(), Constant(2.0),
                               TrigPolynomial({1: 0.5 - 0.25j, -1: 0.5 + 0.25j, 0: 0.1})])
@pytest.mark.parametrize("n", [1, 5, 33])
def test_real_observables_give_hermitian_toeplitz(f, n):
    a = quantize(f, n)
    assert a.hermitian
    assert a.hermiticity_defect() <= 1e-12
    assert a.toeplitz_defect() <= 1e-13


def test_toeplitz_random_index_pairs(rng):
    n = 40
    a = quantize(SawtoothSquared(), n).entries
    for _ in range(500):
        r, c = rng.integers(0, n, size=2)
        shift = rng.integers(-min(r, c), n - max(r, c))
        assert abs(a[r, c] - a[r + shift, c + shift]) <= 1e-13


def test_exponential_not_hermitian_and_adjoint():
    up = quantize(Exponential(1), 6)
    down = quantize(Exponential(-1), 6)
    assert not up.hermitian and up.hermiticity_defect() == 1.0
    np.testing.assert_array_equal(up.entries, down.adjoint().entries)


def test_quantize_propagates_aliasing():
    f = Sampled.from_function(lambda t: t, 8)
    quantize(f, 4)
    with pytest.raises(AliasingError):
        quantize(f, 5)


def test_sampled_quantization_hermitian_flag():
    f = Sampled.from_function(np.cos, 64)
    assert quantize(f, 5).hermitian


def test_phase_operator_examples():
    np.testing.assert_allclose(phase_operator(2).entries, [[0, 1j], [-1j, 0]], atol=0)
    assert phase_operator(1).entries[0, 0] == 0
    assert phase_operator(1, True).entries[0, 0] == math.pi
    diff = quantize(Sawtooth(), 8).entries - phase_operator(8, False).entries
    np.testing.assert_allclose(diff, math.pi * np.eye(8), atol=1e-15)


@pytest.mark.parametrize("n", [1, 2, 9, 30])
def test_reference_diagonal_changes_only_diagonal(n):
    a = phase_operator(n, False).entries
    b = phase_operator(n, True).entries
    off = ~np.eye(n, dtype=bool)
    np.testing.assert_array_equal(a[off], b[off])
    np.testing.assert_array_equal(np.diagonal(b - a), np.full(n, math.pi))
    np.testing.assert_array_equal(b, quantize(Sawtooth(), n).entries)


def test_number_operator():
    np.testing.assert_array_equal(number_operator(3).entries, np.diag([0, 1, 2]))
    assert number_operator(1).entries[0, 0] == 0
    psi = phase_state(0.0, 5).amplitudes
    assert (psi.conj() @ number_operator(5).entries @ psi).real == pytest.approx(2.0, abs=1e-14)


def test_commutator_basics(rng):
    b = random_hermitian(rng, 6)
    assert np.max(np.abs(commutator(identity(6), b).entries)) <= 1e-14
    a = phase_operator(5)
    assert np.max(np.abs(commutator(a, a).entries)) == 0.0
    c = commutator(number_operator(4), phase_operator(4)).entries
    off = ~np.eye(4, dtype=bool)
    np.testing.assert_allclose(c[off], -1j, atol=1e-15)
    np.testing.assert_array_equal(np.diagonal(c), 0)
    with pytest.raises(ValueError, match="mismatch"):
        commutator(identity(2), identity(3))


def test_commutator_of_hermitians_is_antihermitian(rng):
    a, b = random_hermitian(rng, 7), random_hermitian(rng, 7)
    c = commutator(a, b).entries
    assert np.max(np.abs(c + c.conj().T)) <= 1e-13


def test_commutator_number_phase_examples():
    np.testing.assert_allclose(commutator_number_phase(2).entries, [[0, -1j], [-1j, 0]], atol=1e-15)
    eig = np.linalg.eigvals(commutator_number_phase(7).entries)
    eig = eig[np.argsort(eig.imag)]
    np.testing.assert_allclose(eig, [-6j] + [1j] * 6, atol=1e-12)
    np.testing.assert_allclose(np.diagonal(commutator_number_phase(10).entries), 0, atol=1e-15)
    assert commutator_number_phase(1).entries[0, 0] == 0


@pytest.mark.parametrize("n", [1, 2, 5, 17, 64])
@pytest.mark.parametrize("flag", [False, True])
def test_commutator_matches_closed_form(n, flag):
    matrix_route = commutator(number_operator(n), phase_operator(n, flag)).entries
    assert np.max(np.abs(matrix_route - commutator_number_phase(n).entries)) <= 1e-13


@pytest.mark.parametrize("n", [3, 20])
def test_pi_shift_commutes_with_number(n):
    a = commutator(number_operator(n), quantize(Sawtooth(), n)).entries
    b = commutator(number_operator(n), phase_operator(n, False)).entries
    assert np.max(np.abs(a - b)) <= 1e-13


@settings(max_examples=30)
@given(st.integers(min_value=1, max_value=20), st.integers(min_value=0, max_value=2**32 - 1))
def test_number_commutator_diagonal_vanishes(n, seed):
    x = random_hermitian(np.random.default_rng(seed), n)
    c = commutator(number_operator(n), x).entries
    assert np.max(np.abs(np.diagonal(c))) == 0.0


def test_operator_matrix_validation():
    with pytest.raises(ValueError):
        OperatorMatrix(np.zeros((2, 3)))
    with pytest.raises(ValueError, match="Hermitian"):
        OperatorMatrix(np.array([[0, 1], [0, 0]]), hermitian=True)
    a = OperatorMatrix(np.eye(2))
    with pytest.raises(ValueError):
        a.entries[0, 0] = 3
    with pytest.raises(ValueError):
        phase_state(0.0, 0)
