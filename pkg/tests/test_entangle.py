import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from yangbaxter.entangle import (
    DensityMatrix,
    PureState,
    concurrence_mixed,
    concurrence_pure,
    concurrence_xstate,
    entangle_basis,
    ghz_state,
    negativity,
    pairwise_concurrences,
    three_tangle,
    w_state,
)
from yangbaxter.linalg import DimensionError
from yangbaxter.xform import build_m, build_r, family_4x4, family_6x6

THETAS = np.linspace(0, 2 * math.pi, 25, endpoint=False)


def bell() -> PureState:
    return PureState(np.array([1, 0, 0, 1]) / math.sqrt(2), (2, 2))


def random_pure(rng, dims):
    v = rng.normal(size=int(np.prod(dims))) + 1j * rng.normal(size=int(np.prod(dims)))
    return PureState(v / np.linalg.norm(v), dims)


def random_xstate(rng) -> DensityMatrix:
    p = rng.dirichlet(np.ones(4))
    # coherences limited by positivity of each 2x2 block
    c14 = rng.uniform(0, 1) * math.sqrt(p[0] * p[3]) * np.exp(1j * rng.uniform(0, 2 * math.pi))
    c23 = rng.uniform(0, 1) * math.sqrt(p[1] * p[2]) * np.exp(1j * rng.uniform(0, 2 * math.pi))
    rho = np.diag(p).astype(complex)
    rho[0, 3], rho[3, 0] = c14, np.conj(c14)
    rho[1, 2], rho[2, 1] = c23, np.conj(c23)
    return DensityMatrix(rho, (2, 2))


def test_state_validation():
    with pytest.raises(ValueError):
        PureState([1, 1], (2,))
    with pytest.raises(DimensionError):
        PureState([1, 0, 0], (2, 2))
    with pytest.raises(ValueError):
        DensityMatrix(np.eye(2), (2,))


def test_entangle_basis_two_qubit_states():
    theta, phi = 0.9, 0.4
    states = entangle_basis(build_r(build_m(family_4x4(phi)), theta))
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    expected = [
        [c, 0, 0, -s * np.exp(-1j * phi)],
        [0, c, -1j * s, 0],
        [0, -1j * s, c, 0],
        [s * np.exp(1j * phi), 0, 0, c],
    ]
    for psi, amps in zip(states, expected):
        assert psi.dims == (2, 2)
        assert np.allclose(psi.amplitudes, amps, atol=1e-15)


def test_entangle_basis_six_dim_states():
    theta, p1, p2 = 1.1, 0.3, -0.8
    states = entangle_basis(build_r(build_m(family_6x6(p1, p2)), theta))
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    e1 = np.zeros(6, dtype=complex)
    e1[0], e1[5] = c, -1j * s * np.exp(-1j * p1)
    e5 = np.zeros(6, dtype=complex)
    e5[1], e5[4] = -1j * s * np.exp(1j * p2), c  # |e5> = -i s e^{i phi2}|1,-1/2> + c|-1,1/2>
    assert np.allclose(states[0].amplitudes, e1, atol=1e-15)
    assert np.allclose(states[4].amplitudes, e5, atol=1e-15)
    assert all(abs(np.linalg.norm(p.amplitudes) - 1) <= 1e-12 for p in states)


def test_entangle_basis_identity_at_zero():
    states = entangle_basis(build_r(build_m(family_6x6(0.3, 0.2)), 0.0))
    assert np.array_equal(np.column_stack([p.amplitudes for p in states]), np.eye(6))


@pytest.mark.parametrize("a", [0.0, 0.3, 0.6, 1 / math.sqrt(2)])
def test_negativity_two_term_states(a):
    b = math.sqrt(1 - a * a)
    psi = PureState([a, 0, 0, b * 1j], (2, 2))
    phi = PureState([0, a, b, 0], (2, 2))
    assert abs(negativity(psi) - 2 * a * b) <= 1e-12
    assert abs(negativity(phi) - 2 * a * b) <= 1e-12


def test_negativity_product_state_and_errors():
    rng = np.random.default_rng(0)
    u = random_pure(rng, (2,)).amplitudes
    v = random_pure(rng, (3,)).amplitudes
    assert abs(negativity(PureState(np.kron(u, v), (2, 3)))) <= 1e-12
    with pytest.raises(DimensionError):
        negativity(ghz_state())


def test_negativity_six_dim_state():
    states = entangle_basis(build_r(build_m(family_6x6(0.5, 0.2)), math.pi / 3))
    assert abs(negativity(states[0]) - 0.8660254037844386) <= 1e-12


@pytest.mark.parametrize("theta", THETAS)
def test_two_qubit_family_entanglement(theta):
    for psi in entangle_basis(build_r(build_m(family_4x4(0.7)), theta)):
        n = negativity(psi)
        assert abs(n - abs(math.sin(theta))) <= 1e-9
        assert abs(concurrence_pure(psi) - n) <= 1e-9
        assert abs(concurrence_mixed(psi) - n) <= 1e-8


def schmidt_negativity(psi: PureState) -> float:
    """Pure-state negativity from Schmidt coefficients, ((sum s_k)^2 - 1)/(d - 1)."""
    da, db = psi.dims
    s = np.linalg.svd(psi.amplitudes.reshape(da, db), compute_uv=False)
    return (s.sum() ** 2 - 1) / (min(da, db) - 1)


@pytest.mark.parametrize("theta", THETAS)
def test_six_dim_family_negativity(theta):
    states = entangle_basis(build_r(build_m(family_6x6(0.7, -1.2)), theta))
    for k, psi in enumerate(states, start=1):
        n = negativity(psi)
        assert abs(n - schmidt_negativity(psi)) <= 1e-9
        if k in (3, 4):
            # the qutrit stays in |0>, so these two are product states
            assert n <= 1e-12
        else:
            assert abs(n - abs(math.sin(theta))) <= 1e-9


def test_negativity_matches_schmidt_oracle():
    rng = np.random.default_rng(2)
    for dims in [(2, 2), (2, 3), (3, 2), (4, 2)]:
        for _ in range(10):
            psi = random_pure(rng, dims)
            assert abs(negativity(psi) - schmidt_negativity(psi)) <= 1e-9


def test_concurrence_pure_examples():
    assert abs(concurrence_pure(bell()) - 1) <= 1e-15
    assert abs(concurrence_pure(PureState([0, 1, 0, 0], (2, 2)))) <= 1e-15
    rng = np.random.default_rng(3)
    for _ in range(20):
        psi = random_pure(rng, (2, 2))
        a, b, c, d = psi.amplitudes
        assert abs(concurrence_pure(psi) - 2 * abs(a * d - b * c)) <= 1e-12
    with pytest.raises(DimensionError):
        concurrence_pure(PureState(np.eye(6)[0], (2, 3)))


def test_concurrence_mixed_examples():
    assert abs(concurrence_mixed(bell().density()) - 1) <= 1e-8
    assert concurrence_mixed(DensityMatrix(np.eye(4) / 4, (2, 2))) <= 1e-12
    with pytest.raises(ValueError):
        concurrence_mixed(DensityMatrix(np.diag([1.2, -0.2, 0, 0]), (2, 2)))


def test_concurrence_mixed_matches_pure_formula():
    rng = np.random.default_rng(4)
    for _ in range(30):
        psi = random_pure(rng, (2, 2))
        assert abs(concurrence_mixed(psi) - concurrence_pure(psi)) <= 1e-8


def test_werner_state_concurrence():
    # rho = p |Bell><Bell| + (1-p) I/4 has C = max(0, (3p - 1)/2)
    b = bell().density().matrix
    for p in (0.1, 1 / 3, 0.5, 0.9):
        rho = DensityMatrix(p * b + (1 - p) * np.eye(4) / 4, (2, 2))
        assert abs(concurrence_mixed(rho) - max(0.0, (3 * p - 1) / 2)) <= 1e-8


def test_concurrence_xstate_examples():
    assert abs(concurrence_xstate(bell()) - 1) <= 1e-15
    assert concurrence_xstate(DensityMatrix(np.diag([0.1, 0.2, 0.3, 0.4]), (2, 2))) == 0
    rng = np.random.default_rng(5)
    with pytest.raises(ValueError):
        concurrence_xstate(random_pure(rng, (2, 2)))


@settings(max_examples=50, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_xstate_formula_matches_wootters(seed):
    rho = random_xstate(np.random.default_rng(seed))
    assert abs(concurrence_mixed(rho) - concurrence_xstate(rho)) <= 1e-8


def test_three_tangle_oracles():
    assert abs(three_tangle(ghz_state()) - 1) <= 1e-15
    assert three_tangle(w_state()) <= 1e-15
    rng = np.random.default_rng(6)
    u, v, w = (random_pure(rng, (2,)).amplitudes for _ in range(3))
    assert three_tangle(PureState(np.kron(np.kron(u, v), w), (2, 2, 2))) <= 1e-12
    with pytest.raises(DimensionError):
        three_tangle(bell())


def test_three_tangle_local_phase_invariance():
    rng = np.random.default_rng(7)
    for _ in range(10):
        psi = random_pure(rng, (2, 2, 2))
        t0 = three_tangle(psi)
        for site in range(3):
            delta = rng.uniform(0, 2 * math.pi)
            phase = np.ones(2, dtype=complex)
            phase[1] = np.exp(1j * delta)
            ops = [np.ones(2)] * 3
            ops[site] = phase
            rotated = psi.amplitudes * np.kron(np.kron(ops[0], ops[1]), ops[2])
            assert abs(three_tangle(PureState(rotated, (2, 2, 2))) - t0) <= 1e-12


def test_three_tangle_bounded():
    rng = np.random.default_rng(8)
    for _ in range(50):
        assert -1e-12 <= three_tangle(random_pure(rng, (2, 2, 2))) <= 1 + 1e-9


def test_pairwise_concurrences_oracles():
    assert max(pairwise_concurrences(ghz_state())) <= 1e-9
    assert np.allclose(pairwise_concurrences(w_state()), [2 / 3] * 3, atol=1e-8)
    with pytest.raises(DimensionError):
        pairwise_concurrences(bell())
