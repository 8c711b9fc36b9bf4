"""Quantum-circuit RL agent benchmark (C++ core)."""

from ._ardns import (
    ConfigError,
    Rng,
    curiosity_bonus,
    env_step,
    mann_whitney_u,
    outcome_probabilities,
    prepare_circuit,
    sample_shots,
    savitzky_golay,
    stage_for_episode,
    train,
)

__all__ = [
    "ConfigError",
    "Rng",
    "curiosity_bonus",
    "env_step",
    "mann_whitney_u",
    "outcome_probabilities",
    "prepare_circuit",
    "sample_shots",
    "savitzky_golay",
    "stage_for_episode",
    "train",
]
