"""Automata, supervision and state estimation."""

from opacity_attack.automata.automaton import (
    Alphabet,
    Automaton,
    Plant,
    Trace,
    bounded_language,
    format_set,
    format_trace,
    parse_trace,
    product,
)
from opacity_attack.automata.constants import Z_ATT
from opacity_attack.automata.estimation import (
    AugmentedPlant,
    build_augmented,
    current_state_estimate,
    initial_projection,
    initial_state_estimate,
    observable_events,
    observable_reach,
    project,
    unobservable_reach,
)
from opacity_attack.automata.supervisor import (
    SupervisorAutomaton,
    Violation,
    closed_loop,
    control_decision,
    validate_supervisor,
)

__all__ = [
    "Alphabet",
    "AugmentedPlant",
    "Automaton",
    "Plant",
    "SupervisorAutomaton",
    "Trace",
    "Violation",
    "Z_ATT",
    "bounded_language",
    "build_augmented",
    "closed_loop",
    "control_decision",
    "current_state_estimate",
    "format_set",
    "format_trace",
    "initial_projection",
    "initial_state_estimate",
    "observable_events",
    "observable_reach",
    "parse_trace",
    "product",
    "project",
    "unobservable_reach",
    "validate_supervisor",
]
