"""Quantum diner's dilemma engine: EWL protocol, payoffs, equilibrium search,
and a gate-level circuit back-end with QASM export for the four-player game."""

from .errors import DomainError, GameError, QasmError, ValidationError
from .ewl import Strategy, StrategyProfile, outcome_distribution
from .payoff import builtin_table, expected_payoffs, load_table
from .statevector import OutcomeDistribution, StateVector

__all__ = [
    "DomainError",
    "GameError",
    "QasmError",
    "ValidationError",
    "Strategy",
    "StrategyProfile",
    "outcome_distribution",
    "builtin_table",
    "expected_payoffs",
    "load_table",
    "OutcomeDistribution",
    "StateVector",
]

__version__ = "0.1.0"
