"""Initial-state opacity verification of a supervised plant.

The observer runs the subset construction over the augmented closed loop,
interleaving unobservable reach and observable steps under the supervisor's
control decisions. The system is opaque iff no reachable observer state
pins the initial state inside the secret set.
"""

from __future__ import annotations

import logging
from collections import deque
from collections.abc import Iterable
from dataclasses import dataclass

from opacity_attack.automata.automaton import Plant, State, format_set, format_trace
from opacity_attack.automata.estimation import (
    Observation,
    build_augmented,
    initial_projection,
    observable_events,
    observable_reach,
    unobservable_reach,
)
from opacity_attack.automata.supervisor import SupervisorAutomaton

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ObserverState:
    """UR-closed augmented estimate together with the supervisor state."""

    qt: frozenset[tuple[State, State]]
    z: State


@dataclass(frozen=True)
class OpacityVerdict:
    """Result of an opacity check.

    Attributes:
        opaque: True if no observation reveals the secret
        witness: Shortest revealing observation (None when opaque)
        estimate: Initial-state estimate after the witness (None when opaque)
        observer_states: Number of observer states explored
    """

    opaque: bool
    witness: Observation | None = None
    estimate: frozenset[State] | None = None
    observer_states: int = 0


def build_observer(plant: Plant, sup: SupervisorAutomaton) -> dict[ObserverState, list[tuple[str, ObserverState]]]:
    """Reachable observer of S/G̃ in breadth-first, event-sorted order."""
    augmented = build_augmented(plant)
    z0 = sup.initial_state
    root = ObserverState(unobservable_reach(augmented, augmented.initial, sup.decision(z0)), z0)

    graph: dict[ObserverState, list[tuple[str, ObserverState]]] = {root: []}
    queue = deque([root])
    while queue:
        node = queue.popleft()
        for sigma in sorted(observable_events(augmented, node.qt, sup.decision(node.z))):
            z_next = sup.target(node.z, sigma)
            qt_next = unobservable_reach(augmented, observable_reach(augmented, node.qt, sigma), sup.decision(z_next))
            successor = ObserverState(qt_next, z_next)
            graph[node].append((sigma, successor))
            if successor not in graph:
                graph[successor] = []
                queue.append(successor)
    return graph


def _reveals(qt: Iterable[tuple[State, State]], secret: frozenset[State]) -> bool:
    estimate = initial_projection(qt)
    return bool(estimate) and estimate <= secret


def check_initial_state_opacity(
    plant: Plant,
    sup: SupervisorAutomaton,
    secret: Iterable[State] | None = None,
) -> OpacityVerdict:
    """Decide initial-state opacity of S/G with respect to the secret initial states.

    Args:
        plant: Plant G
        sup: Supervisor realization H
        secret: Secret initial states; defaults to the plant's X_sec

    Returns:
        Verdict with the shortest witness observation when opacity fails.
        Ties are broken by event order.
    """
    secret = plant.require_secret(secret)
    augmented = build_augmented(plant)
    z0 = sup.initial_state
    root = ObserverState(unobservable_reach(augmented, augmented.initial, sup.decision(z0)), z0)

    parent: dict[ObserverState, tuple[ObserverState, str] | None] = {root: None}
    queue = deque([root])
    violation = root if _reveals(root.qt, secret) else None

    while queue and violation is None:
        node = queue.popleft()
        for sigma in sorted(observable_events(augmented, node.qt, sup.decision(node.z))):
            z_next = sup.target(node.z, sigma)
            qt_next = unobservable_reach(augmented, observable_reach(augmented, node.qt, sigma), sup.decision(z_next))
            successor = ObserverState(qt_next, z_next)
            if successor in parent:
                continue
            parent[successor] = (node, sigma)
            if _reveals(qt_next, secret):
                violation = successor
                break
            queue.append(successor)

    if violation is None:
        logger.info("Closed loop is initial-state opaque (%d observer states)", len(parent))
        return OpacityVerdict(opaque=True, observer_states=len(parent))

    witness: list[str] = []
    node = violation
    while parent[node] is not None:
        node, sigma = parent[node]
        witness.append(sigma)
    witness.reverse()
    estimate = initial_projection(violation.qt)
    logger.info("Opacity violated by %s with estimate %s", format_trace(witness), format_set(estimate))
    return OpacityVerdict(opaque=False, witness=tuple(witness), estimate=estimate, observer_states=len(parent))
