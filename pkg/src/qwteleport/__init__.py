"""Teleportation driven by two-coin quantum walks on the integer line."""

from .algebra import (
    CLASSIFY_TOL,
    UNITARY_TOL,
    distance_up_to_phase,
    haar_unitary2,
    is_unitary,
    proportional_unitary_scale,
)
from .config import ConfigError, load_config, load_example
from .criteria import (
    FAMILIES,
    Verdict,
    equivalence_harness,
    oracle_member,
    sample_procedure,
    theorem_member,
    verdict,
)
from .teleport import (
    OUTCOMES,
    Outcome,
    Procedure,
    analyze_outcome,
    full_state_check,
    outcome_probability,
    outcome_table,
    teleport_round,
    v_matrix,
)
from .walk import WalkConfig, WalkState, evolve, initial_state, position_distribution, step

__version__ = "0.1.0"
