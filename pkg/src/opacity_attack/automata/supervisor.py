"""Supervisor realization automata and closed-loop composition.

A supervisor S maps observations to control patterns. It is given by a
deterministic automaton H whose active event set at ξ(z0, α) is S(α).
"""

from __future__ import annotations

import logging
from collections.abc import Iterable
from dataclasses import dataclass

from opacity_attack.automata.automaton import Automaton, State, product
from opacity_attack.automata.constants import RESERVED_IDENTIFIERS, Z_ATT
from opacity_attack.core.errors import ModelValidationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SupervisorAutomaton(Automaton):
    """Deterministic realization H = (Z, Σ, ξ, z0) of a supervisor."""

    def __post_init__(self) -> None:
        super().__post_init__()
        problems = []
        if len(self.initial) != 1:
            problems.append(f"supervisor needs exactly one initial state, got {len(self.initial)}")
        reserved = sorted(str(z) for z in self.states if z in RESERVED_IDENTIFIERS)
        if reserved:
            problems.append(f"state identifiers {reserved} are reserved")
        if problems:
            raise ModelValidationError("Invalid supervisor", problems)

    @property
    def initial_state(self) -> State:
        """z0."""
        return next(iter(self.initial))

    def state_after(self, observation: Iterable[str]) -> State | None:
        """ξ(z0, α), or None when the supervisor cannot follow α."""
        z = self.initial_state
        for event in observation:
            z = self.target(z, event)
            if z is None:
                return None
        return z

    def decision(self, z: State | None) -> frozenset[str]:
        """Unchecked Δ_H(z); empty for z_att and for an undefined state."""
        if z is None or z == Z_ATT:
            return frozenset()
        return frozenset(event for event, _ in self.successors(z))


@dataclass(frozen=True)
class Violation:
    """A single realization-condition violation found in a supervisor."""

    kind: str
    state: State
    event: str
    message: str

    def __str__(self) -> str:
        return self.message


def validate_supervisor(sup: SupervisorAutomaton) -> list[Violation]:
    """Check the realization conditions of a supervisor automaton.

    Reports every non-self-loop transition on an unobservable event and every
    state whose control decision misses an uncontrollable event. Determinism
    is enforced when the automaton is built. Nothing is repaired.
    """
    violations: list[Violation] = []
    unobservable = sup.alphabet.unobservable
    uncontrollable = sup.alphabet.uncontrollable

    for source, event, target in sup.transitions:
        if target != source and event in unobservable:
            violations.append(
                Violation(
                    kind="unobservable-move",
                    state=source,
                    event=event,
                    message=f"state {source}: unobservable event {event} leads to {target}",
                )
            )

    for z in sup.states:
        enabled = sup.decision(z)
        for event in sorted(uncontrollable - enabled):
            violations.append(
                Violation(
                    kind="uncontrollable-disabled",
                    state=z,
                    event=event,
                    message=f"state {z}: uncontrollable event {event} is disabled",
                )
            )

    if violations:
        logger.warning("Supervisor has %d realization violation(s)", len(violations))
    return violations


def control_decision(sup: SupervisorAutomaton, z: State) -> frozenset[str]:
    """Δ_H(z), with Δ_H(z_att) = ∅."""
    if z == Z_ATT:
        return frozenset()
    sup.check_state(z)
    return sup.decision(z)


def closed_loop(plant: Automaton, sup: SupervisorAutomaton) -> Automaton:
    """Automaton H × G recognizing L(S/G); states are (z, x) pairs."""
    return product(sup, plant)
