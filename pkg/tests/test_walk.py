import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qwteleport import walk as qw
from qwteleport.algebra import HADAMARD, I2, KET_L, KET_R, haar_unitary, random_unit_vector

seeds = st.integers(min_value=0, max_value=2**32 - 1)
KET_RL = (np.outer(KET_R, KET_R), np.outer(KET_L, KET_L))


def dense_step_operator(coins, n, xmax):
    """W_n = S_n C_n as a dense matrix on positions -xmax..xmax (x) C2^(x)m.

    Built directly from the Kronecker-product definitions; the lattice is
    truncated, so only states that stay away from the edge are valid.
    """
    m = len(coins)
    size = 2 * xmax + 1
    shift = np.eye(size, k=-1)  # |x+1><x|
    ops_r = [I2] * m
    ops_l = [I2] * m
    ops_r[n - 1], ops_l[n - 1] = KET_RL
    ops_c = [I2] * m
    ops_c[n - 1] = coins[n - 1]

    def kron(mats):
        out = np.eye(1)
        for mat in mats:
            out = np.kron(out, mat)
        return out

    s_hat = kron([shift] + ops_r) + kron([shift.T] + ops_l)
    c_hat = kron([np.eye(size)] + ops_c)
    return s_hat @ c_hat


def to_dense(state, xmax):
    """Dense vector with position as the most significant factor and coin 1 next."""
    vec = []
    for x in range(-xmax, xmax + 1):
        # coin 1 first in the Kronecker order
        t = state.tensor(x)
        vec.append(t.reshape(-1))
    return np.concatenate(vec)


def test_initial_state_examples():
    s = qw.initial_state(0, [KET_R, KET_R])
    assert s.positions() == [0]
    np.testing.assert_allclose(s.block(0), [1, 0, 0, 0])

    phi = np.array([0.6, 0.8j])
    psi = np.array([1, 1]) / np.sqrt(2)
    s = qw.initial_state(0, [phi, psi])
    np.testing.assert_allclose(s.tensor(0), np.outer(phi, psi))

    s = qw.initial_state(5, [KET_L])
    assert s.positions() == [5]
    np.testing.assert_allclose(s.block(5), [0, 1])


def test_block_bit_layout():
    # coin k on bit k-1, bit value 1 for L
    s = qw.initial_state(0, [KET_L, KET_R, KET_R])
    assert np.argmax(np.abs(s.block(0))) == 0b001
    s = qw.initial_state(0, [KET_R, KET_R, KET_L])
    assert np.argmax(np.abs(s.block(0))) == 0b100


def test_initial_state_rejects_unnormalized():
    with pytest.raises(ValueError, match="normalized"):
        qw.initial_state(0, [np.array([1, 1])])


def test_config_validation():
    with pytest.raises(ValueError, match="not unitary"):
        qw.WalkConfig([np.array([[1, 1], [0, 1]])])
    with pytest.raises(ValueError, match="coin count"):
        qw.WalkConfig([I2] * 9)
    with pytest.raises(ValueError, match="step index"):
        qw.step(qw.initial_state(0, [KET_R]), 2, qw.WalkConfig([I2]))


def test_identity_coin_moves_right():
    s = qw.step(qw.initial_state(0, [KET_R]), 1, qw.WalkConfig([I2]))
    assert qw.position_distribution(s) == {1: pytest.approx(1.0)}


def test_hadamard_splits_evenly():
    s = qw.step(qw.initial_state(0, [KET_R]), 1, qw.WalkConfig([HADAMARD]))
    dist = qw.position_distribution(s)
    assert dist == {1: pytest.approx(0.5), -1: pytest.approx(0.5)}


def test_basis_distribution():
    assert qw.position_distribution(qw.initial_state(0, [KET_R])) == {0: 1.0}


def test_example1_two_step_distribution():
    # Q1 phi = phi, P1 phi = 0 (C1 = I, phi = R); |Q2 psi|^2 = |P2 psi|^2 = 1/2 (C2 = H, psi = R)
    walk = qw.WalkConfig([I2, HADAMARD])
    s = qw.evolve(qw.initial_state(0, [KET_R, KET_R]), walk)
    dist = qw.position_distribution(s)
    assert dist[2] == pytest.approx(0.5, abs=1e-12)
    assert dist[0] == pytest.approx(0.5, abs=1e-12)
    assert dist.get(-2, 0.0) == pytest.approx(0.0, abs=1e-12)


def test_two_step_closed_form(rng):
    for _ in range(50):
        c1, c2 = haar_unitary(2, rng), haar_unitary(2, rng)
        phi, psi = random_unit_vector(2, rng), random_unit_vector(2, rng)
        p1, q1 = np.diag([0, 1]) @ c1, np.diag([1, 0]) @ c1
        p2, q2 = np.diag([0, 1]) @ c2, np.diag([1, 0]) @ c2
        expected = {
            2: np.outer(q1 @ phi, q2 @ psi),
            0: np.outer(q1 @ phi, p2 @ psi) + np.outer(p1 @ phi, q2 @ psi),
            -2: np.outer(p1 @ phi, p2 @ psi),
        }
        s = qw.evolve(qw.initial_state(0, [phi, psi]), qw.WalkConfig([c1, c2]))
        assert set(s.positions()) <= {2, 0, -2}
        for x, t in expected.items():
            np.testing.assert_allclose(s.tensor(x), t, atol=1e-12)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_step_matches_dense_operator(m, rng):
    xmax = m + 1
    coins = [haar_unitary(2, rng) for _ in range(m)]
    walk = qw.WalkConfig(coins)
    s = qw.initial_state(0, [random_unit_vector(2, rng) for _ in range(m)])
    for n in range(1, m + 1):
        dense = dense_step_operator(coins, n, xmax) @ to_dense(s, xmax)
        s = qw.step(s, n, walk)
        np.testing.assert_allclose(to_dense(s, xmax), dense, atol=1e-12)


@settings(max_examples=100, deadline=None)
@given(seeds, st.integers(min_value=1, max_value=4))
def test_norm_preserved(seed, m):
    rng = np.random.default_rng(seed)
    walk = qw.WalkConfig([haar_unitary(2, rng) for _ in range(m)])
    s = qw.initial_state(int(rng.integers(-5, 5)), [random_unit_vector(2, rng) for _ in range(m)])
    for n in range(1, m + 1):
        s = qw.step(s, n, walk)
        assert s.norm() == pytest.approx(1.0, abs=1e-12)
    assert sum(qw.position_distribution(s).values()) == pytest.approx(1.0, abs=1e-10)


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_step_is_linear(seed):
    rng = np.random.default_rng(seed)
    walk = qw.WalkConfig([haar_unitary(2, rng), haar_unitary(2, rng)])
    s1 = qw.initial_state(0, [random_unit_vector(2, rng), random_unit_vector(2, rng)])
    s2 = qw.initial_state(1, [random_unit_vector(2, rng), random_unit_vector(2, rng)])
    a, b = complex(*rng.standard_normal(2)), complex(*rng.standard_normal(2))
    for n in (1, 2):
        lhs = qw.step(a * s1 + b * s2, n, walk)
        rhs = a * qw.step(s1, n, walk) + b * qw.step(s2, n, walk)
        for x in set(lhs.positions()) | set(rhs.positions()):
            np.testing.assert_allclose(lhs.block(x), rhs.block(x), atol=1e-12)


def test_evolve_rejects_too_many_steps():
    with pytest.raises(ValueError, match="one coin per step"):
        qw.evolve(qw.initial_state(0, [KET_R]), qw.WalkConfig([I2]), 2)
