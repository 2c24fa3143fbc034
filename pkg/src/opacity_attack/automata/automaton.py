"""Finite-state automata with partial deterministic transitions.

States and events are opaque identifiers. Plants, supervisors and the
automata composed from them share one representation, so estimation
operators work unchanged over product and augmented state spaces, where
states are tuples of component identifiers.
"""

from __future__ import annotations

import logging
import re
from collections import deque
from collections.abc import Hashable, Iterable
from dataclasses import dataclass, field, replace

from opacity_attack.core.errors import ModelValidationError

logger = logging.getLogger(__name__)

State = Hashable
Trace = tuple[str, ...]

_TRACE_SEPARATORS = re.compile(r"[\s,]+")


@dataclass(frozen=True)
class Alphabet:
    """Event set with observability, controllability and vulnerability flags.

    Events are stored sorted; that order drives every tie-break in the toolkit.

    Attributes:
        events: All event identifiers (Σ)
        observable: Observable events (Σ_o)
        controllable: Controllable events (Σ_c)
        vulnerable: Events an attacker may tamper with (Σ_v ⊆ Σ_o)
    """

    events: tuple[str, ...]
    observable: frozenset[str] = frozenset()
    controllable: frozenset[str] = frozenset()
    vulnerable: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        events = tuple(self.events)
        problems: list[str] = []

        if any(not isinstance(e, str) or not e.strip() for e in events):
            problems.append("event identifiers must be nonempty strings")
        duplicates = sorted({e for e in events if events.count(e) > 1})
        if duplicates:
            problems.append(f"duplicate events {duplicates}")

        event_set = set(events)
        for name in ("observable", "controllable", "vulnerable"):
            flagged = frozenset(getattr(self, name))
            unknown = sorted(flagged - event_set)
            if unknown:
                problems.append(f"{name} events {unknown} are not declared")
            object.__setattr__(self, name, flagged)

        if not self.vulnerable <= self.observable:
            problems.append(f"vulnerable events {sorted(self.vulnerable - self.observable)} are not observable")

        if problems:
            raise ModelValidationError("Invalid alphabet", problems)

        object.__setattr__(self, "events", tuple(sorted(event_set)))

    @property
    def unobservable(self) -> frozenset[str]:
        """Σ_uo = Σ minus Σ_o."""
        return frozenset(self.events) - self.observable

    @property
    def uncontrollable(self) -> frozenset[str]:
        """Σ_uc = Σ minus Σ_c."""
        return frozenset(self.events) - self.controllable

    def __contains__(self, event: object) -> bool:
        return event in self.events

    def require(self, *events: str) -> None:
        """Raise ModelValidationError if any event is not declared."""
        unknown = [e for e in events if e not in self.events]
        if unknown:
            raise ModelValidationError("Unknown event", [repr(e) for e in unknown])

    def require_observable(self, trace: Iterable[str]) -> Trace:
        """Validate that every event of an observation is declared and observable."""
        trace = tuple(trace)
        self.require(*trace)
        hidden = [e for e in trace if e not in self.observable]
        if hidden:
            raise ModelValidationError("Observation contains unobservable events", [repr(e) for e in hidden])
        return trace

    def same_events(self, other: Alphabet) -> bool:
        """True if both alphabets agree on events, observability and controllability."""
        return (
            self.events == other.events
            and self.observable == other.observable
            and self.controllable == other.controllable
        )

    def with_vulnerable(self, vulnerable: Iterable[str]) -> Alphabet:
        """Copy of this alphabet with a different vulnerable set."""
        return replace(self, vulnerable=frozenset(vulnerable))


@dataclass(frozen=True)
class Automaton:
    """Deterministic finite-state automaton with a set of initial states.

    Transitions are a sparse partial map; no sink completion is ever performed.

    Attributes:
        states: State identifiers, sorted
        alphabet: Shared event alphabet
        transitions: Sorted (source, event, target) triples
        initial: Initial states
    """

    states: tuple[State, ...]
    alphabet: Alphabet
    transitions: tuple[tuple[State, str, State], ...] = ()
    initial: frozenset[State] = frozenset()
    _delta: dict = field(init=False, repr=False, compare=False, hash=False)
    _out: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        states = tuple(self.states)
        state_set = set(states)
        initial = frozenset(self.initial)
        problems: list[str] = []

        if len(state_set) != len(states):
            problems.append("duplicate state identifiers")
        unknown_initial = initial - state_set
        if unknown_initial:
            problems.append(f"initial states {sorted(map(str, unknown_initial))} are not declared")

        delta: dict[tuple[State, str], State] = {}
        for source, event, target in self.transitions:
            if source not in state_set:
                problems.append(f"transition source {source!r} is not declared")
            if target not in state_set:
                problems.append(f"transition target {target!r} is not declared")
            if event not in self.alphabet:
                problems.append(f"transition event {event!r} is not declared")
            previous = delta.get((source, event))
            if previous is not None and previous != target:
                problems.append(f"nondeterministic transitions from {source!r} on {event!r}")
            delta[(source, event)] = target

        if problems:
            raise ModelValidationError(f"Invalid {type(self).__name__.lower()}", problems)

        out: dict[State, list[tuple[str, State]]] = {x: [] for x in state_set}
        for (source, event), target in sorted(delta.items()):
            out[source].append((event, target))

        object.__setattr__(self, "states", tuple(sorted(state_set)))
        object.__setattr__(self, "initial", initial)
        object.__setattr__(self, "transitions", tuple((s, e, t) for (s, e), t in sorted(delta.items())))
        object.__setattr__(self, "_delta", delta)
        object.__setattr__(self, "_out", {x: tuple(edges) for x, edges in out.items()})

    def check_state(self, x: State) -> None:
        """Raise ModelValidationError if x is not a state of this automaton."""
        if x not in self._out:
            raise ModelValidationError("Unknown state", [repr(x)])

    def step(self, x: State, event: str) -> State | None:
        """Return δ(x, event), or None when undefined."""
        self.check_state(x)
        self.alphabet.require(event)
        return self._delta.get((x, event))

    def run(self, x0: State, trace: Iterable[str]) -> State | None:
        """Return δ(x0, trace) by folding step; None as soon as a step is undefined."""
        self.check_state(x0)
        x = x0
        for event in trace:
            x = self.step(x, event)
            if x is None:
                return None
        return x

    def feasible_events(self, x: State) -> frozenset[str]:
        """Δ(x): events with a defined transition at x."""
        self.check_state(x)
        return frozenset(event for event, _ in self._out[x])

    def target(self, x: State, event: str) -> State | None:
        """Unchecked δ(x, event) for inner loops."""
        return self._delta.get((x, event))

    def successors(self, x: State) -> tuple[tuple[str, State], ...]:
        """Outgoing (event, target) pairs of x in event order."""
        return self._out.get(x, ())


@dataclass(frozen=True)
class Plant(Automaton):
    """A plant G with a secret subset of its initial states.

    Attributes:
        secret_initial: X_sec ⊆ X_0
    """

    secret_initial: frozenset[State] = frozenset()

    def __post_init__(self) -> None:
        super().__post_init__()
        secret = frozenset(self.secret_initial)
        if not secret <= self.initial:
            raise ModelValidationError(
                "Invalid plant", [f"secret initial states {sorted(map(str, secret - self.initial))} are not initial"]
            )
        object.__setattr__(self, "secret_initial", secret)

    def require_secret(self, secret: Iterable[State] | None) -> frozenset[State]:
        """Resolve an optional secret override against X_0."""
        if secret is None:
            return self.secret_initial
        secret = frozenset(secret)
        if not secret <= self.initial:
            unknown = [repr(x) for x in sorted(secret - self.initial)]
            raise ModelValidationError("Secret states must be initial", unknown)
        return secret


def product(first: Automaton, second: Automaton) -> Automaton:
    """Synchronous product on the shared alphabet, restricted to reachable pairs.

    The initial set is the cross product of both initial sets; the result
    carries the first operand's alphabet.
    """
    if not first.alphabet.same_events(second.alphabet):
        raise ModelValidationError(
            "Alphabet mismatch", [f"{list(first.alphabet.events)} vs {list(second.alphabet.events)}"]
        )

    initial = sorted((p, q) for p in first.initial for q in second.initial)
    seen = set(initial)
    queue = deque(initial)
    transitions = []

    while queue:
        p, q = queue.popleft()
        for event, p_next in first.successors(p):
            q_next = second.target(q, event)
            if q_next is None:
                continue
            pair = (p_next, q_next)
            transitions.append(((p, q), event, pair))
            if pair not in seen:
                seen.add(pair)
                queue.append(pair)

    logger.debug("Product built with %d reachable states", len(seen))
    return Automaton(states=tuple(seen), alphabet=first.alphabet, transitions=tuple(transitions), initial=initial)


def bounded_language(automaton: Automaton, x0: State, horizon: int) -> frozenset[Trace]:
    """All strings generated from x0 with length at most horizon."""
    if horizon < 0:
        raise ModelValidationError("Horizon must be non-negative", [str(horizon)])
    automaton.check_state(x0)

    words: set[Trace] = {()}
    frontier: list[tuple[Trace, State]] = [((), x0)]
    for _ in range(horizon):
        next_frontier = []
        for word, x in frontier:
            for event, target in automaton.successors(x):
                extended = (*word, event)
                words.add(extended)
                next_frontier.append((extended, target))
        frontier = next_frontier
    return frozenset(words)


def parse_trace(text: str) -> Trace:
    """Parse 'b c' or 'b,c' into a trace; blank text is the empty trace."""
    return tuple(token for token in _TRACE_SEPARATORS.split(text.strip()) if token)


def format_trace(trace: Iterable[str]) -> str:
    """Render a trace as space-separated events, ε when empty."""
    trace = tuple(trace)
    return " ".join(trace) if trace else "ε"


def format_state(x: State) -> str:
    """Render a state identifier; composite states print as (a,b)."""
    if isinstance(x, tuple):
        return "(" + ",".join(format_state(part) for part in x) + ")"
    return str(x)


def format_set(states: Iterable[State]) -> str:
    """Render a set in sorted brace notation, e.g. {1,2} or {(1,3),(1,4)}."""
    return "{" + ",".join(format_state(x) for x in sorted(states)) + "}"
