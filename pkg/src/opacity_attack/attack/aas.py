"""All Attack Structure (AAS).

The AAS is a bipartite game graph. Environment states (q, q̃, z) hold the
supervisor's estimate, the attacker's augmented estimate and the supervisor
state; the system moves by emitting an observable event σ. Attack states
(q, q̃, z, σ) hold the pending event; the attacker moves by picking a
hatted action from V(σ). Both estimates are stored before unobservable
closure, which is applied when leaving a state.
"""

from __future__ import annotations

import itertools
import logging
from collections import deque
from collections.abc import Iterable
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

from opacity_attack.attack.model import AttackAction, action_space
from opacity_attack.automata.automaton import Alphabet, Plant, State, parse_trace
from opacity_attack.automata.constants import Z_ATT
from opacity_attack.automata.estimation import (
    Observation,
    build_augmented,
    observable_events,
    observable_reach,
    unobservable_reach,
)
from opacity_attack.automata.supervisor import SupervisorAutomaton
from opacity_attack.core.errors import ModelValidationError

if TYPE_CHECKING:
    from opacity_attack.attack.classify import StateLabel

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EnvState:
    """Environment state (q, q̃, z); the system picks the next observable event."""

    q: frozenset[State]
    qt: frozenset[tuple[State, State]]
    z: State

    @property
    def revealing(self) -> bool:
        """True if the supervisor has realized the presence of the attacker."""
        return self.z == Z_ATT


@dataclass(frozen=True)
class AttackState:
    """Attack state (q, q̃, z, σ); the attacker picks an action for σ."""

    q: frozenset[State]
    qt: frozenset[tuple[State, State]]
    z: State
    sigma: str

    @property
    def env(self) -> EnvState:
        """Environment state this attack state was entered from."""
        return EnvState(self.q, self.qt, self.z)


Node = EnvState | AttackState
Label = str | AttackAction
ExtendedString = tuple[Label, ...]


@dataclass(frozen=True)
class AasStats:
    """Size summary of an attack structure."""

    env_states: int
    attack_states: int
    revealing_states: int
    edges: int
    bound: int

    def __str__(self) -> str:
        return (
            f"environment states: {self.env_states}\n"
            f"attack states: {self.attack_states}\n"
            f"attack-revealing states: {self.revealing_states}\n"
            f"edges: {self.edges}\n"
            f"worst-case bound: {self.bound}"
        )


@dataclass(frozen=True)
class AasGraph:
    """Attack structure M = (Q, Σ_M, f, q0).

    Used for the AAS, its simplification and single attack structures.
    Node order is construction order; edges of a node follow label order.

    Attributes:
        initial: q0
        edges: Outgoing (label, target) pairs per node
        labels: Classification of environment states (simplified graphs only)
        choice: Selected action per attack state (single attack structures only)
    """

    initial: EnvState
    edges: dict[Node, tuple[tuple[Label, Node], ...]]
    labels: dict[EnvState, StateLabel] = field(default_factory=dict)
    choice: dict[AttackState, AttackAction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        ids: dict[Node, str] = {}
        counters = {EnvState: itertools.count(), AttackState: itertools.count()}
        for node in self.edges:
            prefix = "e" if isinstance(node, EnvState) else "a"
            ids[node] = f"{prefix}{next(counters[type(node)])}"
        object.__setattr__(self, "_ids", ids)

    @property
    def nodes(self) -> tuple[Node, ...]:
        return tuple(self.edges)

    @property
    def env_states(self) -> tuple[EnvState, ...]:
        return tuple(n for n in self.edges if isinstance(n, EnvState))

    @property
    def attack_states(self) -> tuple[AttackState, ...]:
        return tuple(n for n in self.edges if isinstance(n, AttackState))

    def __contains__(self, node: object) -> bool:
        return node in self.edges

    def node_id(self, node: Node) -> str:
        """Stable identifier: e<n> or a<n> in construction order."""
        return self._ids[node]

    def successors(self, node: Node) -> tuple[tuple[Label, Node], ...]:
        return self.edges.get(node, ())

    def step(self, node: Node, label: Label) -> Node | None:
        """f(node, label), or None when undefined."""
        for edge_label, target in self.edges.get(node, ()):
            if edge_label == label:
                return target
        return None

    def stats(self, plant: Plant | None = None, sup: SupervisorAutomaton | None = None) -> AasStats:
        """Node and edge counts, with the worst-case bound when the models are given."""
        bound = 0
        if plant is not None and sup is not None:
            n = len(plant.states)
            bound = 2**n * 2 ** (len(plant.initial) * n) * (len(sup.states) + 1) * (1 + len(plant.alphabet.observable))
        return AasStats(
            env_states=len(self.env_states),
            attack_states=len(self.attack_states),
            revealing_states=sum(1 for n in self.env_states if n.revealing),
            edges=sum(len(out) for out in self.edges.values()),
            bound=bound,
        )


def build_aas(plant: Plant, sup: SupervisorAutomaton) -> AasGraph:
    """Breadth-first construction of the AAS from (X_0, X̃_0, z0).

    At an environment state the active events are the observable events the
    attacker's estimate allows under Δ_H(z). At an attack state every action
    of V(σ) is expanded: erase keeps the supervisor where it is, a forwarded
    event the supervisor cannot use empties its estimate and leads to z_att.
    """
    if not plant.alphabet.same_events(sup.alphabet):
        raise ModelValidationError("Alphabet mismatch between plant and supervisor")

    augmented = build_augmented(plant)
    alphabet = plant.alphabet
    root = EnvState(plant.initial, augmented.initial, sup.initial_state)
    edges: dict[Node, list[tuple[Label, Node]]] = {root: []}
    queue: deque[Node] = deque([root])

    while queue:
        node = queue.popleft()
        gamma = sup.decision(node.z)
        successors: list[tuple[Label, Node]] = []

        if isinstance(node, EnvState):
            if not node.revealing:
                for sigma in sorted(observable_events(augmented, node.qt, gamma)):
                    successors.append((sigma, AttackState(node.q, node.qt, node.z, sigma)))
        else:
            q_closed = unobservable_reach(plant, node.q, gamma)
            qt_next = observable_reach(augmented, unobservable_reach(augmented, node.qt, gamma), node.sigma)
            for action in action_space(alphabet, node.sigma):
                if action.is_erase:
                    q_next, z_next = q_closed, node.z
                elif action.event in gamma:
                    q_next = observable_reach(plant, q_closed, action.event)
                    z_next = sup.target(node.z, action.event) if q_next else Z_ATT
                else:
                    q_next, z_next = frozenset(), Z_ATT
                successors.append((action, EnvState(q_next, qt_next, z_next)))

        edges[node] = successors
        for _, target in successors:
            if target not in edges:
                edges[target] = []
                queue.append(target)

    graph = AasGraph(initial=root, edges={node: tuple(out) for node, out in edges.items()})
    stats = graph.stats(plant, sup)
    logger.info(
        "AAS built: %d environment states, %d attack states, %d revealing",
        stats.env_states,
        stats.attack_states,
        stats.revealing_states,
    )
    return graph


# ============================================================================
# Extended Strings
# ============================================================================


def _check_alternation(h: Iterable[Label]) -> ExtendedString:
    h = tuple(h)
    for position, label in enumerate(h):
        expected = str if position % 2 == 0 else AttackAction
        if not isinstance(label, expected):
            raise ModelValidationError(
                "Malformed extended string", [f"position {position + 1}: expected {expected.__name__}, got {label!r}"]
            )
    return h


def parse_extended(text: str) -> ExtendedString:
    """Parse 'b ^eps c ^c' into an extended string."""
    labels: list[Label] = []
    for position, token in enumerate(parse_trace(text)):
        labels.append(token if position % 2 == 0 else AttackAction.parse(token))
    return _check_alternation(labels)


def format_extended(h: Iterable[Label]) -> str:
    h = tuple(h)
    return " ".join(str(label) for label in h) if h else "ε"


def obs(h: Iterable[Label]) -> Observation:
    """Actual observation: the plain events at odd positions."""
    return tuple(_check_alternation(h)[0::2])


def tam(h: Iterable[Label]) -> Observation:
    """Doctored observation: the hatted actions with hats removed, erase dropped."""
    doctored: list[str] = []
    for action in _check_alternation(h)[1::2]:
        doctored.extend(action.emitted)
    return tuple(doctored)


def run_extended(aas: AasGraph, h: Iterable[Label]) -> Node | None:
    """Fold f over h from q0; None once a transition is missing."""
    node: Node | None = aas.initial
    for label in h:
        node = aas.step(node, label)
        if node is None:
            return None
    return node


def obs_inverse(alphabet: Alphabet, alpha: Iterable[str]) -> list[ExtendedString]:
    """Every extended string whose actual observation is α, in action order."""
    alpha = alphabet.require_observable(alpha)
    choices = [action_space(alphabet, sigma) for sigma in alpha]
    result = []
    for actions in itertools.product(*choices):
        result.append(tuple(label for pair in zip(alpha, actions, strict=True) for label in pair))
    return result
