"""Brute-force decision procedures for cross-checking the synthesis pipeline.

Nothing here uses the estimation recursions or the attack structures.
Estimates come from exploring runs of S_A/G with attacked_step, and
attackability from a search over attack strategy tables.
"""

from __future__ import annotations

import logging
from collections import deque
from collections.abc import Callable, Iterable, Mapping
from dataclasses import dataclass

from opacity_attack.attack.model import (
    AttackAction,
    AttackedState,
    AttackStrategy,
    PassThroughStrategy,
    action_space,
    attacked_step,
    enabled_events,
    modify,
)
from opacity_attack.automata.automaton import Alphabet, Plant, State
from opacity_attack.automata.constants import DEFAULT_HORIZON
from opacity_attack.automata.estimation import Observation
from opacity_attack.automata.supervisor import SupervisorAutomaton
from opacity_attack.core.errors import EnumerationLimitError, ModelValidationError

logger = logging.getLogger(__name__)

Config = tuple[State, AttackedState]  # (initial plant state, attacked configuration)


class StrategyTable(AttackStrategy):
    """Attack strategy given by a finite table.

    Keys are actual observations ending with the event being attacked.
    Observations outside the table are forwarded unchanged.
    """

    def __init__(self, alphabet: Alphabet, table: Mapping[Observation, AttackAction] | None = None) -> None:
        super().__init__(alphabet)
        self.table = dict(table or {})
        for key, action in self.table.items():
            if not key:
                raise ModelValidationError("The attacker cannot act on the empty observation")
            if action not in action_space(alphabet, key[-1]):
                raise ModelValidationError("Inadmissible table entry", [f"{' '.join(key)} -> {action}"])

    def choose(self, history: Observation, event: str) -> AttackAction:
        return self.table.get((*history, event), AttackAction.forward(event))

    def extended(self, observation: Observation, action: AttackAction) -> StrategyTable:
        """Copy with one more entry."""
        return StrategyTable(self.alphabet, {**self.table, observation: action})

    def __repr__(self) -> str:
        entries = ", ".join(f"{' '.join(key)} -> {action}" for key, action in sorted(self.table.items()))
        return f"StrategyTable({entries})"


# ============================================================================
# Run Exploration
# ============================================================================


def _close(plant: Plant, sup: SupervisorAutomaton, strategy: AttackStrategy, configs: Iterable[Config]) -> set[Config]:
    """Extend configurations by every enabled unobservable run."""
    unobservable = plant.alphabet.unobservable
    closed = set(configs)
    stack = list(closed)
    while stack:
        x0, state = stack.pop()
        for event in enabled_events(plant, sup, state):
            if event not in unobservable:
                continue
            config = (x0, attacked_step(plant, sup, strategy, state, event))
            if config not in closed:
                closed.add(config)
                stack.append(config)
    return closed


def _advance(
    plant: Plant,
    sup: SupervisorAutomaton,
    strategy: AttackStrategy,
    configs: Iterable[Config],
    sigma: str,
) -> set[Config]:
    """Configurations after the observable event σ and any unobservable tail."""
    moved = {
        (x0, attacked_step(plant, sup, strategy, state, sigma))
        for x0, state in configs
        if sigma in enabled_events(plant, sup, state)
    }
    return _close(plant, sup, strategy, moved)


def _start(plant: Plant, sup: SupervisorAutomaton, strategy: AttackStrategy) -> set[Config]:
    z0 = sup.initial_state
    return _close(plant, sup, strategy, {(x0, AttackedState(x0, z0)) for x0 in plant.initial})


def _runs(plant: Plant, sup: SupervisorAutomaton, strategy: AttackStrategy, alpha: Observation) -> set[Config]:
    configs = _start(plant, sup, strategy)
    for sigma in alpha:
        configs = _advance(plant, sup, strategy, configs, sigma)
    return configs


@dataclass(frozen=True)
class DefinitionalEstimates:
    """Estimates read off explicit runs."""

    attacker_current: frozenset[State]
    attacker_initial: frozenset[State]
    supervisor_current: frozenset[State]


def definitional_estimates(
    plant: Plant,
    sup: SupervisorAutomaton,
    strategy: AttackStrategy,
    alpha: Iterable[str],
) -> DefinitionalEstimates:
    """E^C_{S_A/G}(α), E^I_{S_A/G}(α) and E^C_{S/G}(g_A(α)) by run enumeration."""
    alpha = plant.alphabet.require_observable(alpha)
    strategy.reset()
    attacked = _runs(plant, sup, strategy, alpha)
    unattacked = _runs(plant, sup, PassThroughStrategy(plant.alphabet), modify(strategy, alpha))
    return DefinitionalEstimates(
        attacker_current=frozenset(state.x for _, state in attacked),
        attacker_initial=frozenset(x0 for x0, _ in attacked),
        supervisor_current=frozenset(state.x for _, state in unattacked),
    )


# ============================================================================
# Strategy Search
# ============================================================================


@dataclass(frozen=True)
class OracleResult:
    """An attack strategy table and the observation on which it reveals the secret."""

    table: StrategyTable
    witness: Observation
    nodes_explored: int


def _search(
    plant: Plant,
    sup: SupervisorAutomaton,
    secret: frozenset[State],
    horizon: int,
    max_nodes: int,
    actions: Callable[[str], tuple[AttackAction, ...]],
) -> OracleResult | None:
    """Breadth-first search over strategy tables grown along one observation.

    Nodes holding the same attacker and supervisor run sets are merged, since
    every continuation open to one is open to the other.
    """

    def reveals(configs: set[Config]) -> bool:
        estimate = {x0 for x0, _ in configs}
        return bool(estimate) and estimate <= secret

    def knowledge(configs: set[Config]) -> frozenset:
        return frozenset((x0, state.x, state.z) for x0, state in configs)

    observable = sorted(plant.alphabet.observable)
    passthrough = PassThroughStrategy(plant.alphabet)
    root_table = StrategyTable(plant.alphabet)
    attacked = _start(plant, sup, root_table)
    if reveals(attacked):
        return OracleResult(root_table, (), 1)

    supervised = {(None, state) for _, state in attacked}
    seen = {(knowledge(attacked), knowledge(supervised))}
    queue = deque([((), root_table, attacked, supervised)])
    explored = 0

    while queue:
        alpha, table, attacked, supervised = queue.popleft()
        if len(alpha) >= horizon or not supervised:
            continue
        for sigma in observable:
            observation = (*alpha, sigma)
            for action in actions(sigma):
                explored += 1
                if explored > max_nodes:
                    logger.warning("Oracle stopped after %d nodes", max_nodes)
                    raise EnumerationLimitError(f"more than {max_nodes} strategy nodes explored")

                candidate = table.extended(observation, action)
                attacked_next = _advance(plant, sup, candidate, attacked, sigma)
                if not attacked_next:
                    break
                if reveals(attacked_next):
                    logger.info("Oracle found a revealing strategy after %d nodes", explored)
                    return OracleResult(candidate, observation, explored)

                if action.is_erase:
                    supervised_next = supervised
                else:
                    supervised_next = _advance(plant, sup, passthrough, supervised, action.event)
                key = (knowledge(attacked_next), knowledge(supervised_next))
                if key not in seen:
                    seen.add(key)
                    queue.append((observation, candidate, attacked_next, supervised_next))

    logger.info("Oracle exhausted %d nodes without a revealing strategy", explored)
    return None


def exists_attacker(
    plant: Plant,
    sup: SupervisorAutomaton,
    secret: Iterable[State] | None = None,
    horizon: int = DEFAULT_HORIZON,
    max_nodes: int = 200_000,
) -> OracleResult | None:
    """Search for a strategy that is stealthy along α and pins the secret after ασ.

    Only the table entries on the witness's prefixes matter, so tables are
    grown along one observation at a time.

    Raises:
        EnumerationLimitError: More than max_nodes candidate entries were tried
    """
    if horizon < 0:
        raise ModelValidationError("Horizon must be non-negative", [str(horizon)])
    secret = plant.require_secret(secret)
    return _search(plant, sup, secret, horizon, max_nodes, lambda sigma: action_space(plant.alphabet, sigma))


def brute_force_opacity(
    plant: Plant,
    sup: SupervisorAutomaton,
    secret: Iterable[State] | None = None,
    horizon: int = DEFAULT_HORIZON,
    max_nodes: int = 200_000,
) -> Observation | None:
    """Language-based opacity check over observations of length at most horizon.

    Returns the shortest observation whose every run starts in the secret,
    or None when each such observation also has a non-secret run.
    """
    if horizon < 0:
        raise ModelValidationError("Horizon must be non-negative", [str(horizon)])
    secret = plant.require_secret(secret)
    result = _search(plant, sup, secret, horizon, max_nodes, lambda sigma: (AttackAction.forward(sigma),))
    return None if result is None else result.witness
