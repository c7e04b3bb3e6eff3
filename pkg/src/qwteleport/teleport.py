"""Two-coin walk teleportation: evolution, (j, eps) measurement and correction.

Alice holds the position register and coin A, Bob holds coin B. After two
walk steps Alice measures coin A in the basis ``eta_eps = H1|eps>`` and the
position in the basis ``xi_j = H2|j>``, where ``H2`` acts as the 3x3 block
``h2_tilde`` on span{|2>, |0>, |-2>} (rows and columns in that order) and as
the identity elsewhere. Bob is left with ``V(j, eps) phi`` up to normalization.
"""

from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from . import walk as qw
from .algebra import (
    CLASSIFY_TOL,
    UNITARY_TOL,
    as_complex_array,
    is_unitary,
    proportional_unitary_scale,
)

POSITIONS = (2, 0, -2)
POSITION_INDEX = {2: 0, 0: 1, -2: 2}
COIN_LABELS = ("R", "L")


class Outcome(NamedTuple):
    j: int
    eps: str

    def __str__(self):
        return f"({self.j},{self.eps})"


# table order used throughout: R outcomes first, j descending
OUTCOMES = tuple(Outcome(j, e) for e in COIN_LABELS for j in POSITIONS)


def parse_outcome(text):
    """Parse ``"j,eps"`` such as ``"-2,L"``."""
    try:
        j_text, eps = (s.strip() for s in text.split(","))
        out = Outcome(int(j_text), eps.upper())
    except ValueError:
        raise ValueError(f"cannot parse outcome {text!r}; expected 'j,R' or 'j,L'") from None
    check_outcome(out)
    return out


def check_outcome(out):
    if out.j not in POSITION_INDEX or out.eps not in COIN_LABELS:
        raise ValueError(f"invalid outcome {out}; j in {{-2,0,2}}, eps in {{R,L}}")


class BiasPair(NamedTuple):
    beta_R: complex
    beta_L: complex


def _frozen(arr):
    arr = np.array(arr, dtype=complex)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Procedure:
    """Quantum walk measurement procedure (psi; C1, C2; H1, H2~)."""

    psi: np.ndarray
    c1: np.ndarray
    c2: np.ndarray
    h1: np.ndarray
    h2_tilde: np.ndarray

    def __post_init__(self):
        shapes = {"psi": (2,), "c1": (2, 2), "c2": (2, 2), "h1": (2, 2), "h2_tilde": (3, 3)}
        for name, shape in shapes.items():
            value = as_complex_array(getattr(self, name), shape, name)
            if shape == (2,):
                if abs(np.linalg.norm(value) - 1) > UNITARY_TOL:
                    raise ValueError(f"psi: not normalized (norm {np.linalg.norm(value):.12g})")
            elif not is_unitary(value, UNITARY_TOL):
                raise ValueError(f"{name}: not unitary")
            object.__setattr__(self, name, _frozen(value))

    def alpha(self, k, j):
        """<k|H2|j> for k, j in {2, 0, -2}."""
        return self.h2_tilde[POSITION_INDEX[k], POSITION_INDEX[j]]

    def eta(self, eps):
        return self.h1[:, COIN_LABELS.index(eps)]

    def xi(self, j):
        """Column ``j`` of h2_tilde, i.e. xi_j restricted to positions (2, 0, -2)."""
        return self.h2_tilde[:, POSITION_INDEX[j]]

    def same_as(self, other, tol=0.0):
        return all(np.max(np.abs(getattr(self, f) - getattr(other, f))) <= tol
                   for f in ("psi", "c1", "c2", "h1", "h2_tilde"))


def bias(proc):
    b = proc.c2 @ proc.psi
    return BiasPair(complex(b[0]), complex(b[1]))


def v_matrix(proc, out):
    """Unnormalized Bob map V~(j, eps): Bob's post-measurement state is V~ phi."""
    check_outcome(out)
    beta_r, beta_l = bias(proc)
    a2, a0, am2 = (np.conj(proc.alpha(k, out.j)) for k in POSITIONS)
    eta_bra = np.conj(proc.eta(out.eps))
    # a Q1 + b P1 == diag(a, b) C1
    row_r = (eta_bra * np.array([a2, a0])) @ proc.c1 * beta_r
    row_l = (eta_bra * np.array([a0, am2])) @ proc.c1 * beta_l
    return np.array([row_r, row_l])


@dataclass(frozen=True, eq=False)
class OutcomeAnalysis:
    outcome: Outcome
    v_tilde: np.ndarray
    kappa: Optional[float]
    correction: Optional[np.ndarray]

    def probability_for(self, phi):
        v = self.v_tilde @ np.asarray(phi, dtype=complex)
        return float(np.vdot(v, v).real)

    @property
    def v_normalized(self):
        if self.kappa is None:
            return None
        return self.v_tilde / self.kappa

    @property
    def probability(self):
        """Target-independent outcome probability kappa**2 (members only)."""
        return None if self.kappa is None else self.kappa ** 2


def analyze_outcome(proc, out, tol=CLASSIFY_TOL):
    v = v_matrix(proc, out)
    kappa = proportional_unitary_scale(v, tol)
    if kappa is not None and kappa <= tol:
        kappa = None
    correction = None
    if kappa is not None:
        correction = kappa * np.linalg.inv(v)
        correction.setflags(write=False)
    v.setflags(write=False)
    return OutcomeAnalysis(out, v, kappa, correction)


def outcome_table(proc, tol=CLASSIFY_TOL):
    return [analyze_outcome(proc, out, tol) for out in OUTCOMES]


def outcome_probability(proc, phi, out):
    v = v_matrix(proc, out) @ np.asarray(phi, dtype=complex)
    return float(np.vdot(v, v).real)


class ZeroProbabilityError(ValueError):
    pass


def teleport_round(proc, phi, out, tol=CLASSIFY_TOL):
    """Bob's corrected state and fidelity |<phi|bob>| for a given outcome.

    Without a valid correction Bob's collapsed state is returned as is.
    """
    phi = as_complex_array(phi, (2,), "phi")
    analysis = analyze_outcome(proc, out, tol)
    collapsed = analysis.v_tilde @ phi
    norm = np.linalg.norm(collapsed)
    if norm ** 2 <= tol:
        raise ZeroProbabilityError(f"outcome {out} has zero probability for this target")
    bob = collapsed / norm
    if analysis.correction is not None:
        bob = analysis.correction @ bob
    return bob, float(abs(np.vdot(phi, bob)))


def two_step_state(proc, phi):
    """|Psi_2> from the walk engine with coin A = phi and coin B = psi."""
    walk = qw.WalkConfig((proc.c1, proc.c2))
    state = qw.initial_state(0, [phi, proc.psi])
    return qw.evolve(state, walk, 2)


def project_bob(proc, state, out):
    """Contract |Psi_2> with <xi_j| (x) <eta_eps| and return Bob's vector."""
    xi = proc.xi(out.j)
    eta = proc.eta(out.eps)
    bob = np.zeros(2, dtype=complex)
    for x, weight in zip(POSITIONS, np.conj(xi)):
        # tensor axes: (coin A, coin B)
        bob += weight * (np.conj(eta) @ state.tensor(x))
    return bob


def full_state_check(proc, phi, atol=1e-12):
    """Cross-check V~ phi against projections of the simulated walk state."""
    phi = as_complex_array(phi, (2,), "phi")
    state = two_step_state(proc, phi)
    return all(np.max(np.abs(project_bob(proc, state, out) - v_matrix(proc, out) @ phi)) <= atol
               for out in OUTCOMES)
