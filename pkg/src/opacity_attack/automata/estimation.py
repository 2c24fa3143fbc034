"""State estimation under partial observation and supervision.

Implements natural projection, the unobservable/observable reach operators,
the supervised current-state estimate recursion, and initial-state
estimation over the augmented automaton of (initial, current) pairs.
"""

from __future__ import annotations

import functools
import logging
from collections.abc import Iterable
from dataclasses import dataclass

from opacity_attack.automata.automaton import Alphabet, Automaton, Plant, State
from opacity_attack.automata.constants import AUGMENTED_CACHE_SIZE, EPSILON
from opacity_attack.automata.supervisor import SupervisorAutomaton

logger = logging.getLogger(__name__)

Observation = tuple[str, ...]
StateEstimate = frozenset
AugmentedEstimate = frozenset  # of (initial, current) pairs


def project(trace: Iterable[str], alphabet: Alphabet) -> Observation:
    """Natural projection P: delete unobservable events, keep the order of the rest."""
    trace = tuple(trace)
    alphabet.require(*trace)
    return tuple(event for event in trace if event in alphabet.observable)


def unobservable_reach(automaton: Automaton, q: Iterable[State], gamma: Iterable[str]) -> StateEstimate:
    """UR_γ(q): closure of q under enabled unobservable events (Σ_uo ∩ γ)."""
    moves = automaton.alphabet.unobservable & frozenset(gamma)
    reach = set(q)
    if not moves:
        return frozenset(reach)

    worklist = list(reach)
    while worklist:
        x = worklist.pop()
        for event, target in automaton.successors(x):
            if event in moves and target not in reach:
                reach.add(target)
                worklist.append(target)
    return frozenset(reach)


def observable_reach(automaton: Automaton, q: Iterable[State], sigma: str | None) -> StateEstimate:
    """NX_σ(q): one-step image under σ; NX_ε(q) = q for sigma EPSILON."""
    if sigma is EPSILON:
        return frozenset(q)
    automaton.alphabet.require(sigma)
    image = set()
    for x in q:
        target = automaton.target(x, sigma)
        if target is not None:
            image.add(target)
    return frozenset(image)


def observable_events(automaton: Automaton, q: Iterable[State], gamma: Iterable[str]) -> frozenset[str]:
    """O(q, γ): observable events in γ feasible from UR_γ(q)."""
    gamma = frozenset(gamma)
    enabled = automaton.alphabet.observable & gamma
    events = set()
    for x in unobservable_reach(automaton, q, gamma):
        for event, _ in automaton.successors(x):
            if event in enabled:
                events.add(event)
    return frozenset(events)


def supervised_estimate(
    automaton: Automaton,
    sup: SupervisorAutomaton,
    alpha: Iterable[str],
    start: Iterable[State] | None = None,
) -> StateEstimate:
    """Current-state estimate recursion of S/automaton along an observation.

    E(ε) = UR_{S(ε)}(start); E(ασ) = UR_{S(ασ)}(NX_σ(E(α))). The estimate
    becomes empty as soon as the supervisor cannot follow α (σ disabled).
    """
    alpha = automaton.alphabet.require_observable(alpha)
    z = sup.initial_state
    q = unobservable_reach(automaton, automaton.initial if start is None else start, sup.decision(z))
    for sigma in alpha:
        z = sup.target(z, sigma)
        if z is None:
            return frozenset()
        q = unobservable_reach(automaton, observable_reach(automaton, q, sigma), sup.decision(z))
        if not q:
            return frozenset()
    return q


def current_state_estimate(plant: Automaton, sup: SupervisorAutomaton, alpha: Iterable[str]) -> StateEstimate:
    """E^C_{S/G}(α); empty when α is not in P(L(S/G))."""
    return supervised_estimate(plant, sup, alpha)


@dataclass(frozen=True)
class AugmentedPlant(Plant):
    """Augmented automaton G̃ over (initial, current) pairs.

    States are (x0, x) tuples; the diagonal of X_0 is the initial set.
    """


@functools.lru_cache(maxsize=AUGMENTED_CACHE_SIZE)
def build_augmented(plant: Plant) -> AugmentedPlant:
    """Reachable part of X_0 × X from the diagonal, lifting δ on the second component."""
    initial = [(x0, x0) for x0 in sorted(plant.initial)]
    seen = set(initial)
    worklist = list(initial)
    transitions = []

    while worklist:
        x0, x = worklist.pop()
        for event, target in plant.successors(x):
            successor = (x0, target)
            transitions.append(((x0, x), event, successor))
            if successor not in seen:
                seen.add(successor)
                worklist.append(successor)

    logger.debug("Augmented plant built with %d states", len(seen))
    return AugmentedPlant(
        states=tuple(seen),
        alphabet=plant.alphabet,
        transitions=tuple(transitions),
        initial=frozenset(initial),
        secret_initial=frozenset((x0, x0) for x0 in plant.secret_initial),
    )


def initial_projection(qt: Iterable[tuple[State, State]]) -> frozenset[State]:
    """I(q̃): the first components of a set of augmented states."""
    return frozenset(x0 for x0, _ in qt)


def initial_state_estimate(plant: Plant, sup: SupervisorAutomaton, alpha: Iterable[str]) -> frozenset[State]:
    """E^I_{S/G}(α) = I(E^C_{S/G̃}(α))."""
    return initial_projection(supervised_estimate(build_augmented(plant), sup, alpha))

