"""Sensor-deception attacker model.

An attacker sits between the plant's sensors and the supervisor. On every
new observable event σ it either forwards some vulnerable event in its
place or erases it, so the supervisor is driven by a doctored observation
g_A(α) while the plant keeps evolving.
"""

from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from collections.abc import Hashable, Iterable
from dataclasses import dataclass, field

from opacity_attack.automata.automaton import Alphabet, Plant, State, Trace
from opacity_attack.automata.constants import EPSILON, ERASE_LABEL, HAT, Z_ATT
from opacity_attack.automata.estimation import (
    Observation,
    build_augmented,
    current_state_estimate,
    initial_projection,
    observable_reach,
    unobservable_reach,
)
from opacity_attack.automata.supervisor import SupervisorAutomaton
from opacity_attack.core.errors import ContractViolationError, ModelValidationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AttackAction:
    """Hatted attacker action: forward(event) or erase (event is None)."""

    event: str | None = None

    @classmethod
    def erase(cls) -> AttackAction:
        return cls(EPSILON)

    @classmethod
    def forward(cls, event: str) -> AttackAction:
        return cls(event)

    @property
    def is_erase(self) -> bool:
        return self.event is EPSILON

    @property
    def emitted(self) -> Observation:
        """What the supervisor receives."""
        return () if self.event is EPSILON else (self.event,)

    def sort_key(self) -> tuple[int, str]:
        """Erase first, then forwards by event name."""
        return (0, "") if self.is_erase else (1, self.event)

    @classmethod
    def parse(cls, text: str) -> AttackAction:
        """Parse '^eps' or '^b'."""
        if text == ERASE_LABEL:
            return cls.erase()
        if not text.startswith(HAT) or len(text) == len(HAT):
            raise ModelValidationError("Malformed attack action", [repr(text)])
        return cls.forward(text[len(HAT) :])

    def __str__(self) -> str:
        return ERASE_LABEL if self.is_erase else f"{HAT}{self.event}"


def action_space(alphabet: Alphabet, sigma: str) -> tuple[AttackAction, ...]:
    """V(σ): erase plus every vulnerable event if σ is vulnerable, else forward(σ) only.

    Actions come erase first, then forwards in event order.
    """
    alphabet.require(sigma)
    if sigma not in alphabet.observable:
        raise ModelValidationError("Attacker acts on observable events only", [repr(sigma)])
    if sigma not in alphabet.vulnerable:
        return (AttackAction.forward(sigma),)
    return (AttackAction.erase(), *(AttackAction.forward(e) for e in sorted(alphabet.vulnerable)))


class AttackStrategy(ABC):
    """Deterministic attack strategy A over observation histories.

    Subclasses implement choose(); decide() enforces the action-space
    constraints. A(ε) = ε holds because the strategy is only consulted on
    a new observable event.
    """

    def __init__(self, alphabet: Alphabet) -> None:
        self.alphabet = alphabet

    @abstractmethod
    def choose(self, history: Observation, event: str) -> AttackAction:
        """Action for the new event given the actual observation so far."""

    def decide(self, history: Observation, event: str) -> AttackAction:
        """Checked A(history · event)."""
        action = self.choose(tuple(history), event)
        if action not in action_space(self.alphabet, event):
            raise ContractViolationError(f"action {action} is not admissible for event {event!r}")
        return action

    def memory(self, history: Observation) -> Hashable:
        """Internal state after history.

        Histories with equal memory receive equal answers from then on;
        searches use it to merge runs. The history itself is always safe.
        """
        return tuple(history)

    def reset(self) -> None:
        """Clear per-run execution state."""


class PassThroughStrategy(AttackStrategy):
    """Identity attacker: forwards every event unchanged."""

    def choose(self, history: Observation, event: str) -> AttackAction:
        return AttackAction.forward(event)

    def memory(self, history: Observation) -> Hashable:
        return None


class EraseFirstStrategy(AttackStrategy):
    """Erases the first occurrence of one vulnerable event, forwards everything else."""

    def __init__(self, alphabet: Alphabet, event: str) -> None:
        super().__init__(alphabet)
        if event not in alphabet.vulnerable:
            raise ModelValidationError("Erased event must be vulnerable", [repr(event)])
        self.event = event

    def choose(self, history: Observation, event: str) -> AttackAction:
        if event == self.event and self.event not in history:
            return AttackAction.erase()
        return AttackAction.forward(event)

    def memory(self, history: Observation) -> Hashable:
        return self.event in history


def modify(strategy: AttackStrategy, alpha: Iterable[str]) -> Observation:
    """g_A(α): the doctored observation the supervisor receives."""
    alpha = strategy.alphabet.require_observable(alpha)
    strategy.reset()
    doctored: list[str] = []
    for i, sigma in enumerate(alpha):
        doctored.extend(strategy.decide(alpha[:i], sigma).emitted)
    return tuple(doctored)


@dataclass(frozen=True)
class AttackedState:
    """Configuration of the attacked closed loop S_A/G.

    Attributes:
        x: Plant state
        z: Supervisor state reached on the doctored observation, or z_att
        actual: Observation seen by the attacker
        doctored: Observation received by the supervisor
    """

    x: State
    z: State
    actual: Observation = ()
    doctored: Observation = ()

    @property
    def detected(self) -> bool:
        """True once the supervisor could not follow the doctored observation."""
        return self.z == Z_ATT


def attacked_step(
    plant: Plant,
    sup: SupervisorAutomaton,
    strategy: AttackStrategy,
    state: AttackedState,
    event: str,
) -> AttackedState:
    """Execute one plant event in S_A/G.

    The plant may move on σ iff δ(x, σ) is defined and σ is enabled at the
    supervisor's current state. Observable events pass through the attacker;
    a forwarded event the supervisor cannot follow sends it to z_att.
    """
    x_next = plant.step(state.x, event)
    if x_next is None:
        raise ContractViolationError(f"event {event!r} is not feasible at plant state {state.x!r}")
    if event not in sup.decision(state.z):
        raise ContractViolationError(f"event {event!r} is disabled at supervisor state {state.z!r}")

    if event not in plant.alphabet.observable:
        return AttackedState(x_next, state.z, state.actual, state.doctored)

    action = strategy.decide(state.actual, event)
    if action.is_erase:
        z_next = state.z
    else:
        z_next = sup.target(state.z, action.event)
        if z_next is None:
            logger.debug("Supervisor cannot follow %s at %s", action, state.z)
            z_next = Z_ATT
    return AttackedState(x_next, z_next, (*state.actual, event), state.doctored + action.emitted)


def enabled_events(plant: Plant, sup: SupervisorAutomaton, state: AttackedState) -> tuple[str, ...]:
    """Events the attacked closed loop can execute at a configuration, in order."""
    gamma = sup.decision(state.z)
    return tuple(event for event, _ in plant.successors(state.x) if event in gamma)


def is_stealthy(plant: Plant, sup: SupervisorAutomaton, strategy: AttackStrategy, alpha: Iterable[str]) -> bool:
    """True iff E^C_{S/G}(g_A(α)) is nonempty."""
    return bool(current_state_estimate(plant, sup, modify(strategy, alpha)))


def bounded_attacked_language(
    plant: Plant,
    sup: SupervisorAutomaton,
    strategy: AttackStrategy,
    horizon: int,
    initial: Iterable[State] | None = None,
) -> frozenset[Trace]:
    """All strings of L(S_A/G) with length at most horizon.

    Args:
        initial: Restrict runs to these initial plant states (default X_0)
    """
    if horizon < 0:
        raise ModelValidationError("Horizon must be non-negative", [str(horizon)])
    starts = plant.initial if initial is None else frozenset(initial)
    for x0 in starts:
        plant.check_state(x0)

    words: set[Trace] = {()}
    frontier = [((), AttackedState(x0, sup.initial_state)) for x0 in sorted(starts)]
    for _ in range(horizon):
        next_frontier = []
        for word, state in frontier:
            for event in enabled_events(plant, sup, state):
                extended = (*word, event)
                words.add(extended)
                next_frontier.append((extended, attacked_step(plant, sup, strategy, state, event)))
        frontier = next_frontier
    return frozenset(words) if starts else frozenset()


# ============================================================================
# Attacker Knowledge
# ============================================================================


@dataclass(frozen=True)
class AttackerKnowledge:
    """What the attacker knows after an actual observation.

    Attributes:
        qt: Augmented estimate, closed under the supervisor's unobservable moves
        z: Supervisor state driven by the doctored observation
        q: Supervisor's own current-state estimate of the doctored observation
    """

    qt: frozenset[tuple[State, State]]
    z: State
    q: frozenset[State]

    @property
    def current(self) -> frozenset[State]:
        """E^C_{S_A/G}."""
        return frozenset(x for _, x in self.qt)

    @property
    def initial(self) -> frozenset[State]:
        """E^I_{S_A/G}."""
        return initial_projection(self.qt)

    @property
    def stealthy(self) -> bool:
        return bool(self.q)


def initial_knowledge(plant: Plant, sup: SupervisorAutomaton) -> AttackerKnowledge:
    """Knowledge before any observation."""
    augmented = build_augmented(plant)
    z0 = sup.initial_state
    gamma = sup.decision(z0)
    return AttackerKnowledge(
        qt=unobservable_reach(augmented, augmented.initial, gamma),
        z=z0,
        q=unobservable_reach(plant, plant.initial, gamma),
    )


def advance_knowledge(
    plant: Plant,
    sup: SupervisorAutomaton,
    knowledge: AttackerKnowledge,
    sigma: str,
    action: AttackAction,
) -> AttackerKnowledge:
    """Knowledge after the attacker sees σ and answers with action.

    The augmented estimate empties when σ cannot occur in S_A/G.
    """
    augmented = build_augmented(plant)
    if sigma in sup.decision(knowledge.z):
        qt_moved = observable_reach(augmented, knowledge.qt, sigma)
    else:
        qt_moved = frozenset()

    if action.is_erase:
        z_next, q_next = knowledge.z, knowledge.q
    else:
        z_next = sup.target(knowledge.z, action.event) if knowledge.z != Z_ATT else None
        if z_next is None:
            z_next, q_next = Z_ATT, frozenset()
        else:
            q_next = unobservable_reach(plant, observable_reach(plant, knowledge.q, action.event), sup.decision(z_next))
            if not q_next:
                z_next = Z_ATT
    qt_next = unobservable_reach(augmented, qt_moved, sup.decision(z_next))
    return AttackerKnowledge(qt=qt_next, z=z_next, q=q_next)


# ============================================================================
# Attacked Runs
# ============================================================================


@dataclass(frozen=True)
class AttackStep:
    """One attacker move and the estimates it leaves behind."""

    event: str
    action: AttackAction
    supervisor_estimate: frozenset[State]
    attacker_current: frozenset[State]
    attacker_initial: frozenset[State]
    stealthy: bool
    detected: bool


@dataclass(frozen=True)
class AttackRun:
    """Actual and doctored observations with per-step attacker bookkeeping."""

    actual: Observation
    doctored: Observation
    steps: tuple[AttackStep, ...] = field(default=())

    @property
    def stealthy_prefix(self) -> tuple[bool, ...]:
        """Stealth flag after each step."""
        return tuple(step.stealthy for step in self.steps)

    @property
    def longest_stealthy_prefix(self) -> Observation:
        """Longest prefix of the actual observation along which the attack stays stealthy."""
        length = 0
        for step in self.steps:
            if not step.stealthy:
                break
            length += 1
        return self.actual[:length]

    @property
    def detected(self) -> bool:
        """True if the final attacker initial estimate pins the secret."""
        return bool(self.steps) and self.steps[-1].detected


def supervisor_view(
    plant: Plant,
    sup: SupervisorAutomaton,
    strategy: AttackStrategy,
    alpha: Iterable[str],
    secret: Iterable[State] | None = None,
) -> AttackRun:
    """Replay an actual observation through the attacker and report both sides.

    Each step records the supervisor's current estimate of the doctored
    observation, the attacker's current and initial estimates of the actual
    one, whether the attack is still stealthy and whether the secret is pinned.
    """
    alpha = plant.alphabet.require_observable(alpha)
    secret = plant.require_secret(secret)
    strategy.reset()

    knowledge = initial_knowledge(plant, sup)
    doctored: list[str] = []
    steps: list[AttackStep] = []
    for i, sigma in enumerate(alpha):
        action = strategy.decide(alpha[:i], sigma)
        knowledge = advance_knowledge(plant, sup, knowledge, sigma, action)
        doctored.extend(action.emitted)
        estimate = knowledge.initial
        steps.append(
            AttackStep(
                event=sigma,
                action=action,
                supervisor_estimate=knowledge.q,
                attacker_current=knowledge.current,
                attacker_initial=estimate,
                stealthy=knowledge.stealthy,
                detected=bool(estimate) and estimate <= secret,
            )
        )
    return AttackRun(actual=alpha, doctored=tuple(doctored), steps=tuple(steps))
