"""m-coin discrete-time quantum walk on the integer line.

The state is a sparse map ``position -> coin block``. Each coin block is a
dense vector of ``2**m`` amplitudes; coin ``k`` (1-based) sits on bit
``k - 1`` of the block index, with bit value 0 for R and 1 for L.

Step ``n`` applies coin ``C_n`` to slot ``n`` and then shifts the walker by
+1 on that slot's R component and by -1 on its L component.
"""

from dataclasses import dataclass

import numpy as np

from .algebra import UNITARY_TOL, as_complex_array, is_unitary

MAX_COINS = 8


@dataclass(frozen=True)
class WalkConfig:
    coins: tuple

    def __post_init__(self):
        coins = tuple(as_complex_array(c, (2, 2), f"coin {i + 1}")
                      for i, c in enumerate(self.coins))
        if not 1 <= len(coins) <= MAX_COINS:
            raise ValueError(f"coin count must be in 1..{MAX_COINS}, got {len(coins)}")
        for i, c in enumerate(coins):
            if not is_unitary(c, UNITARY_TOL):
                raise ValueError(f"coin {i + 1} is not unitary")
        object.__setattr__(self, "coins", coins)

    @property
    def m(self):
        return len(self.coins)


class WalkState:
    """Sparse amplitude map over position x coin configuration."""

    __slots__ = ("m", "_amps")

    def __init__(self, m, amplitudes):
        if not 1 <= m <= MAX_COINS:
            raise ValueError(f"coin count must be in 1..{MAX_COINS}, got {m}")
        self.m = m
        amps = {}
        for x, block in amplitudes.items():
            block = np.array(block, dtype=complex).reshape(2 ** m)
            block.setflags(write=False)
            amps[int(x)] = block
        self._amps = amps

    @property
    def amplitudes(self):
        return dict(self._amps)

    def positions(self):
        return sorted(self._amps)

    def block(self, x):
        """Coin block at position ``x`` (zeros outside the support)."""
        if x in self._amps:
            return self._amps[x]
        return np.zeros(2 ** self.m, dtype=complex)

    def tensor(self, x):
        """Coin block at ``x`` reshaped so that axis ``k - 1`` is coin ``k``."""
        # C-order reshape puts the most significant bit first
        t = self.block(x).reshape((2,) * self.m)
        return np.transpose(t, tuple(range(self.m - 1, -1, -1)))

    def norm(self):
        return float(np.sqrt(sum(np.vdot(b, b).real for b in self._amps.values())))

    def __add__(self, other):
        if not isinstance(other, WalkState) or other.m != self.m:
            return NotImplemented
        out = {x: b.copy() for x, b in self._amps.items()}
        for x, b in other._amps.items():
            out[x] = out[x] + b if x in out else b.copy()
        return WalkState(self.m, out)

    def __rmul__(self, scalar):
        return WalkState(self.m, {x: scalar * b for x, b in self._amps.items()})

    def __repr__(self):
        return f"WalkState(m={self.m}, support={self.positions()})"


def _check_unit(v, name):
    v = as_complex_array(v, (2,), name)
    if abs(np.linalg.norm(v) - 1) > UNITARY_TOL:
        raise ValueError(f"{name} is not normalized (norm {np.linalg.norm(v):.3g})")
    return v


def _block_from_tensor(t):
    m = t.ndim
    return np.transpose(t, tuple(range(m - 1, -1, -1))).reshape(2 ** m)


def initial_state(position, coin_vectors):
    """Product state |position> (x) |c_1> (x) ... (x) |c_m>."""
    vecs = [_check_unit(v, f"coin vector {i + 1}") for i, v in enumerate(coin_vectors)]
    m = len(vecs)
    if not 1 <= m <= MAX_COINS:
        raise ValueError(f"coin count must be in 1..{MAX_COINS}, got {m}")
    t = vecs[0]
    for v in vecs[1:]:
        t = np.multiply.outer(t, v)
    return WalkState(m, {position: _block_from_tensor(np.asarray(t).reshape((2,) * m))})


def step(state, n, walk):
    """Apply W_n = S_n C_n: coin ``n`` on slot ``n``, then the conditional shift."""
    if walk.m != state.m:
        raise ValueError(f"walk has {walk.m} coins but state has {state.m}")
    if not 1 <= n <= walk.m:
        raise ValueError(f"step index must be in 1..{walk.m}, got {n}")
    axis = n - 1
    coin = walk.coins[axis]
    out = {}
    for x in state.positions():
        t = np.moveaxis(np.tensordot(coin, state.tensor(x), axes=([1], [axis])), 0, axis)
        for label, shift in ((0, 1), (1, -1)):
            part = np.zeros_like(t)
            idx = [slice(None)] * state.m
            idx[axis] = label
            part[tuple(idx)] = t[tuple(idx)]
            y = x + shift
            block = _block_from_tensor(part)
            out[y] = out[y] + block if y in out else block
    return WalkState(state.m, out)


def evolve(state, walk, steps=None):
    """Run steps 1..``steps`` (default: one per coin)."""
    steps = walk.m if steps is None else steps
    if not 0 <= steps <= walk.m:
        raise ValueError(f"steps must be in 0..{walk.m} (one coin per step)")
    for n in range(1, steps + 1):
        state = step(state, n, walk)
    return state


def position_distribution(state):
    """Map position -> probability, dropping exactly-zero sites."""
    dist = {}
    for x in state.positions():
        p = float(np.vdot(state.block(x), state.block(x)).real)
        if p > 0:
            dist[x] = p
    return dist
