"""EWL quantization of the four-player diner's dilemma.

Pipeline: entangle |0000> with J, apply one local strategy unitary per player,
disentangle with J†, measure. J = (1/√2)(I⊗I⊗I⊗I + i σy⊗σy⊗σy⊗σy), which
maps |0000> to the GHZ-type state (1/√2)(|0000> + i|1111>).

Strategies are the parametric single-qubit unitaries

    U(θ, φ) = [[e^{iφ} cos(θ/2),  sin(θ/2)],
               [-sin(θ/2),        e^{-iφ} cos(θ/2)]]

with θ ∈ [0, π], φ ∈ [0, π/2]. The three named moves are C = U(0, 0)
(cheap), E = U(π, 0) (expensive) and A = U(0, π/2) (the quantum move).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

from .errors import DomainError
from .statevector import (
    I2,
    SIGMA_Y,
    OutcomeDistribution,
    StateVector,
    apply_operator,
    apply_single_qubit,
    new_basis_state,
    probabilities,
)

PLAYERS = ("alice", "bob", "colin", "doug")

# (theta, phi) of the named moves
NAMED_PARAMS = {"C": (0.0, 0.0), "E": (math.pi, 0.0), "A": (0.0, math.pi / 2)}


@dataclass(frozen=True)
class Strategy:
    """A single player's move: named C/E/A or a free (θ, φ) point."""

    theta: float
    phi: float
    name: str | None = None

    def __post_init__(self):
        if self.name is not None and self.name not in NAMED_PARAMS:
            raise DomainError(f"unknown named strategy {self.name!r}")
        if not 0.0 <= self.theta <= math.pi:
            raise DomainError(f"theta must be in [0, pi], got {self.theta}")
        if not 0.0 <= self.phi <= math.pi / 2:
            raise DomainError(f"phi must be in [0, pi/2], got {self.phi}")

    @classmethod
    def named(cls, name: str) -> "Strategy":
        if name not in NAMED_PARAMS:
            raise DomainError(f"unknown named strategy {name!r}")
        theta, phi = NAMED_PARAMS[name]
        return cls(theta, phi, name)

    @classmethod
    def parametric(cls, theta: float, phi: float) -> "Strategy":
        return cls(float(theta), float(phi))

    def __str__(self) -> str:
        if self.name is not None:
            return self.name
        return f"theta={self.theta:g}:phi={self.phi:g}"


C = Strategy.named("C")
E = Strategy.named("E")
A = Strategy.named("A")


@dataclass(frozen=True)
class StrategyProfile:
    """Ordered moves of (Alice, Bob, Colin, Doug)."""

    alice: Strategy
    bob: Strategy
    colin: Strategy
    doug: Strategy

    @classmethod
    def from_letters(cls, letters: str) -> "StrategyProfile":
        if len(letters) != 4:
            raise DomainError(f"profile needs 4 letters, got {letters!r}")
        return cls(*(Strategy.named(ch) for ch in letters))

    def __iter__(self) -> Iterator[Strategy]:
        return iter((self.alice, self.bob, self.colin, self.doug))

    @property
    def letters(self) -> str | None:
        """Four-letter form like "CECE", or None if any entry is parametric."""
        names = [s.name for s in self]
        if any(n is None for n in names):
            return None
        return "".join(names)

    def __str__(self) -> str:
        return ",".join(str(s) for s in self)


def strategy_unitary(s: Strategy) -> np.ndarray:
    """2x2 matrix of U(θ, φ)."""
    c, sn = math.cos(s.theta / 2), math.sin(s.theta / 2)
    ph = np.exp(1j * s.phi)
    return np.array([[ph * c, sn], [-sn, c / ph]])


@lru_cache(maxsize=1)
def entangler() -> np.ndarray:
    """The 16x16 entangling operator J = (1/√2)(I⊗4 + i σy⊗4)."""
    eye16 = np.eye(16, dtype=complex)
    sy4 = SIGMA_Y
    for _ in range(3):
        sy4 = np.kron(sy4, SIGMA_Y)
    j = (eye16 + 1j * sy4) / math.sqrt(2)
    j.flags.writeable = False
    return j


@lru_cache(maxsize=1)
def disentangler() -> np.ndarray:
    """J†, the inverse of entangler()."""
    jd = entangler().conj().T.copy()
    jd.flags.writeable = False
    return jd


def initial_state() -> StateVector:
    """|ψ0> = |0000> = |CCCC>."""
    return new_basis_state(4, 0)


def final_state(profile: StrategyProfile) -> StateVector:
    """|ψf> = J† (U_A ⊗ U_B ⊗ U_C ⊗ U_D) J |0000>."""
    state = apply_operator(initial_state(), entangler())
    for qubit, strategy in enumerate(profile):
        state = apply_single_qubit(state, strategy_unitary(strategy), qubit)
    return apply_operator(state, disentangler())


def outcome_distribution(profile: StrategyProfile) -> OutcomeDistribution:
    """Born probabilities of the 16 outcomes for a strategy profile."""
    return probabilities(final_state(profile))
