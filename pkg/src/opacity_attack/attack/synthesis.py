"""IS-attackability, single attack structure (SAS) extraction and induced strategies."""

from __future__ import annotations

import logging
from collections import deque
from collections.abc import Hashable, Iterable, Mapping

from opacity_attack.attack.aas import AasGraph, AttackState, EnvState, ExtendedString, Label, Node
from opacity_attack.attack.classify import LabelKind
from opacity_attack.attack.model import (
    AttackAction,
    AttackerKnowledge,
    AttackStrategy,
    advance_knowledge,
    initial_knowledge,
)
from opacity_attack.automata.automaton import Plant, State
from opacity_attack.automata.constants import DEFAULT_HORIZON
from opacity_attack.automata.estimation import Observation
from opacity_attack.automata.supervisor import SupervisorAutomaton
from opacity_attack.core.errors import ModelValidationError

logger = logging.getLogger(__name__)

Sas = AasGraph


def positive_states(saas: AasGraph) -> list[EnvState]:
    """Positive detected environment states in construction order."""
    return [env for env in saas.env_states if saas.labels[env].kind == LabelKind.POSITIVE_DETECTED]


def is_attackable(saas: AasGraph) -> bool:
    """True iff the SAAS reaches a positive detected state."""
    return bool(positive_states(saas))


def _shortest_path_to_positive(saas: AasGraph) -> list[tuple[Node, Label]] | None:
    parent: dict[Node, tuple[Node, Label] | None] = {saas.initial: None}
    queue: deque[Node] = deque([saas.initial])
    while queue:
        node = queue.popleft()
        if isinstance(node, EnvState) and saas.labels[node].kind == LabelKind.POSITIVE_DETECTED:
            path: list[tuple[Node, Label]] = []
            while parent[node] is not None:
                node, label = parent[node]
                path.append((node, label))
            path.reverse()
            return path
        for label, target in saas.successors(node):
            if target not in parent:
                parent[target] = (node, label)
                queue.append(target)
    return None


def default_action(saas: AasGraph, attack: AttackState) -> AttackAction:
    """Off-path choice: pass-through if offered, else erase, else the first forward."""
    offered = [label for label, _ in saas.successors(attack)]
    passthrough = AttackAction.forward(attack.sigma)
    if passthrough in offered:
        return passthrough
    if AttackAction.erase() in offered:
        return AttackAction.erase()
    return min(offered, key=AttackAction.sort_key)


def complete_sas(saas: AasGraph, pinned: Mapping[AttackState, AttackAction]) -> Sas:
    """Reachable closure of q0 with one action per attack state.

    Pinned attack states use their pinned action, every other attack state
    its default action. Environment states keep all their SAAS transitions.
    """
    edges: dict[Node, tuple] = {saas.initial: ()}
    choice: dict[AttackState, AttackAction] = {}
    queue: deque[Node] = deque([saas.initial])

    while queue:
        node = queue.popleft()
        out = saas.successors(node)
        if isinstance(node, AttackState) and out:
            action = pinned.get(node) or default_action(saas, node)
            choice[node] = action
            out = tuple((label, target) for label, target in out if label == action)
            if not out:
                raise ModelValidationError("Pinned action is not offered", [f"{saas.node_id(node)}: {action}"])
        edges[node] = out
        for _, target in out:
            if target not in edges:
                edges[target] = ()
                queue.append(target)

    labels = {node: saas.labels[node] for node in edges if isinstance(node, EnvState) and node in saas.labels}
    return AasGraph(initial=saas.initial, edges=edges, labels=labels, choice=choice)


def extract_sas(saas: AasGraph) -> Sas | None:
    """SAS containing a positive detected state, or None when not attackable.

    The attack states on a shortest path to a positive detected state are
    pinned to the path's actions; the rest get their default action.
    """
    path = _shortest_path_to_positive(saas)
    if path is None:
        logger.info("No positive detected state reachable; not attackable")
        return None
    pinned = {node: label for node, label in path if isinstance(node, AttackState)}
    sas = complete_sas(saas, pinned)
    logger.info(
        "SAS extracted: %d environment states, %d attack states, path length %d",
        len(sas.env_states),
        len(sas.attack_states),
        len(pinned),
    )
    return sas


def check_sas(sas: Sas, saas: AasGraph) -> list[str]:
    """Structural problems of a SAS with respect to its SAAS; empty when valid.

    Checks the single choice at every attack state, the full branching at
    every environment state, that every edge exists in the SAAS, and that
    every node is reachable.
    """
    problems: list[str] = []
    for node, out in sas.edges.items():
        if node not in saas:
            problems.append(f"node {sas.node_id(node)} is not in the SAAS")
            continue
        name = saas.node_id(node)
        offered = saas.successors(node)
        if any(edge not in offered for edge in out):
            problems.append(f"{name}: transition not in the SAAS")
        if isinstance(node, AttackState):
            if len(out) != (1 if offered else 0):
                problems.append(f"{name}: attack state has {len(out)} choices")
            elif out and sas.choice.get(node) != out[0][0]:
                problems.append(f"{name}: recorded choice does not match its transition")
        elif len(out) != len(offered):
            problems.append(f"{name}: environment state keeps {len(out)} of {len(offered)} events")

    reached = {sas.initial}
    queue: deque[Node] = deque([sas.initial])
    while queue:
        for _, target in sas.successors(queue.popleft()):
            if target not in reached:
                reached.add(target)
                queue.append(target)
    for node in sas.edges:
        if node not in reached:
            problems.append(f"{sas.node_id(node)} is unreachable")
    return problems


def obs_inverse_in(sas: Sas, alpha: Iterable[str]) -> ExtendedString | None:
    """The unique extended string of the SAS whose actual observation is α."""
    node: Node = sas.initial
    labels: list[Label] = []
    for sigma in alpha:
        attack = sas.step(node, sigma)
        if attack is None:
            return None
        action = sas.choice[attack]
        node = sas.step(attack, action)
        labels.extend((sigma, action))
    return tuple(labels)


class InducedStrategy(AttackStrategy):
    """Attack strategy A_m induced by a SAS.

    While the history follows the SAS the answer is the chosen action of the
    attack state reached; after leaving it every event is forwarded.
    """

    def __init__(self, sas: Sas, plant: Plant) -> None:
        super().__init__(plant.alphabet)
        self.sas = sas
        self._positions: dict[Observation, EnvState | None] = {(): sas.initial}
        self.cursor: Node | None = sas.initial

    def _position(self, history: Observation) -> EnvState | None:
        if history in self._positions:
            return self._positions[history]
        previous = self._position(history[:-1])
        position = None
        if previous is not None:
            attack = self.sas.step(previous, history[-1])
            if attack is not None:
                position = self.sas.step(attack, self.sas.choice[attack])
        self._positions[history] = position
        return position

    def choose(self, history: Observation, event: str) -> AttackAction:
        position = self._position(history)
        attack = self.sas.step(position, event) if position is not None else None
        if attack is None:
            self.cursor = None
            return AttackAction.forward(event)
        self.cursor = attack
        return self.sas.choice[attack]

    def memory(self, history: Observation) -> Hashable:
        return self._position(tuple(history))

    def reset(self) -> None:
        self.cursor = self.sas.initial


def induced_strategy(sas: Sas, plant: Plant) -> InducedStrategy:
    return InducedStrategy(sas, plant)


def verify_is_detectable(
    plant: Plant,
    sup: SupervisorAutomaton,
    strategy: AttackStrategy,
    secret: Iterable[State] | None = None,
    horizon: int = DEFAULT_HORIZON,
) -> Observation | None:
    """Shortest observation ασ of L(S_A/G) that reveals the secret under the strategy.

    The strategy must be stealthy along α and the attacker's initial-state
    estimate after ασ must be a nonempty subset of the secret. The empty
    observation qualifies when X_0 itself lies inside the secret.

    Returns:
        The witness observation, or None within the horizon.
    """
    if horizon < 0:
        raise ModelValidationError("Horizon must be non-negative", [str(horizon)])
    secret = plant.require_secret(secret)
    strategy.reset()

    def reveals(knowledge: AttackerKnowledge) -> bool:
        estimate = knowledge.initial
        return bool(estimate) and estimate <= secret

    root = initial_knowledge(plant, sup)
    if reveals(root):
        return ()

    observable = sorted(plant.alphabet.observable)
    seen = {(strategy.memory(()), root)}
    frontier: deque[tuple[Observation, AttackerKnowledge]] = deque([((), root)])
    while frontier:
        alpha, knowledge = frontier.popleft()
        if len(alpha) >= horizon or not knowledge.stealthy:
            continue
        for sigma in observable:
            action = strategy.decide(alpha, sigma)
            successor = advance_knowledge(plant, sup, knowledge, sigma, action)
            if not successor.qt:
                continue
            extended = (*alpha, sigma)
            if reveals(successor):
                return extended
            key = (strategy.memory(extended), successor)
            if key not in seen:
                seen.add(key)
                frontier.append((extended, successor))
    return None
