"""Classification of AAS environment states and the simplified AAS (SAAS)."""

from __future__ import annotations

import logging
from collections import deque
from collections.abc import Iterable
from dataclasses import dataclass
from enum import Enum

try:
    from enum import StrEnum
except ImportError:  # Python < 3.11

    class StrEnum(str, Enum):
        """Backport of :class:`enum.StrEnum` (Python 3.11+)."""

        __str__ = str.__str__
        __format__ = str.__format__

        @staticmethod
        def _generate_next_value_(name, start, count, last_values):
            return name.lower()


from opacity_attack.attack.aas import AasGraph, EnvState, Node
from opacity_attack.automata.automaton import Plant, State
from opacity_attack.automata.estimation import build_augmented, initial_projection, unobservable_reach
from opacity_attack.automata.supervisor import SupervisorAutomaton

logger = logging.getLogger(__name__)


class LabelKind(StrEnum):
    """Classification of an environment state with respect to the secret."""

    POSITIVE_DETECTED = "positive_detected"
    NEGATIVE_DETECTED = "negative_detected"
    UNDETECTABLE = "undetectable"
    ATTACK_REVEALING_ONLY = "attack_revealing_only"
    NEUTRAL = "neutral"


@dataclass(frozen=True)
class StateLabel:
    """Label kind plus the independent attack-revealing flag."""

    kind: LabelKind
    attack_revealing: bool = False

    @property
    def terminal(self) -> bool:
        """True if the SAAS removes every outgoing transition of the state."""
        return self.kind in (LabelKind.POSITIVE_DETECTED, LabelKind.NEGATIVE_DETECTED, LabelKind.UNDETECTABLE)

    def __str__(self) -> str:
        return f"{self.kind}+revealing" if self.attack_revealing else str(self.kind)


def is_undetectable(
    plant: Plant,
    sup: SupervisorAutomaton,
    env: EnvState,
    secret: frozenset[State],
) -> bool:
    """Every secret-rooted pair of ŨR(q̃) has a non-secret companion with the same current state."""
    closure = unobservable_reach(build_augmented(plant), env.qt, sup.decision(env.z))
    if not initial_projection(closure) & secret:
        return False
    covered = {x for x0, x in closure if x0 not in secret}
    return all(x in covered for x0, x in closure if x0 in secret)


def classify(
    plant: Plant,
    sup: SupervisorAutomaton,
    env: EnvState,
    secret: Iterable[State] | None = None,
) -> StateLabel:
    """Label an environment state.

    Detected labels are decided before undetectability. An empty q̃ is
    negative detected.
    """
    secret = plant.require_secret(secret)
    estimate = initial_projection(env.qt)
    if estimate and estimate <= secret:
        kind = LabelKind.POSITIVE_DETECTED
    elif not estimate & secret:
        kind = LabelKind.NEGATIVE_DETECTED
    elif is_undetectable(plant, sup, env, secret):
        kind = LabelKind.UNDETECTABLE
    elif env.revealing:
        kind = LabelKind.ATTACK_REVEALING_ONLY
    else:
        kind = LabelKind.NEUTRAL
    return StateLabel(kind, attack_revealing=env.revealing)


def label_all(
    plant: Plant,
    sup: SupervisorAutomaton,
    aas: AasGraph,
    secret: Iterable[State] | None = None,
) -> dict[EnvState, StateLabel]:
    """Labels of every environment state of a graph."""
    secret = plant.require_secret(secret)
    return {env: classify(plant, sup, env, secret) for env in aas.env_states}


def simplify(
    plant: Plant,
    sup: SupervisorAutomaton,
    aas: AasGraph,
    secret: Iterable[State] | None = None,
) -> AasGraph:
    """Simplified AAS M^s.

    Outgoing transitions of detected and undetectable environment states are
    removed and only the part reachable from q0 is kept. Every surviving
    environment state carries its label.
    """
    secret = plant.require_secret(secret)
    labels: dict[EnvState, StateLabel] = {}
    edges: dict[Node, tuple] = {}
    queue: deque[Node] = deque([aas.initial])
    edges[aas.initial] = ()

    while queue:
        node = queue.popleft()
        out = aas.successors(node)
        if isinstance(node, EnvState):
            labels[node] = classify(plant, sup, node, secret)
            if labels[node].terminal:
                out = ()
        edges[node] = out
        for _, target in out:
            if target not in edges:
                edges[target] = ()
                queue.append(target)

    saas = AasGraph(initial=aas.initial, edges=edges, labels=labels)
    before, after = aas.stats(), saas.stats()
    logger.info(
        "SAAS pruned from %d to %d environment states (%d to %d attack states)",
        before.env_states,
        after.env_states,
        before.attack_states,
        after.attack_states,
    )
    return saas
