"""Hypothesis strategies for small random plants and supervisors."""

from hypothesis import strategies as st

from opacity_attack.automata.automaton import Alphabet, Plant
from opacity_attack.automata.supervisor import SupervisorAutomaton

EVENTS = ("a", "b", "c", "d")


@st.composite
def alphabets(draw, max_events: int = 4, max_vulnerable: int = 2) -> Alphabet:
    events = EVENTS[: draw(st.integers(1, max_events))]
    observable = draw(st.sets(st.sampled_from(events)))
    controllable = draw(st.sets(st.sampled_from(events)))
    vulnerable = set()
    if observable:
        vulnerable = draw(st.sets(st.sampled_from(sorted(observable)), max_size=max_vulnerable))
    return Alphabet(
        events=events,
        observable=frozenset(observable),
        controllable=frozenset(controllable),
        vulnerable=frozenset(vulnerable),
    )


@st.composite
def plants(draw, alphabet: Alphabet, max_states: int = 5) -> Plant:
    states = [str(i) for i in range(1, draw(st.integers(1, max_states)) + 1)]
    transitions = []
    for x in states:
        for event in alphabet.events:
            target = draw(st.none() | st.sampled_from(states))
            if target is not None:
                transitions.append((x, event, target))
    initial = draw(st.sets(st.sampled_from(states), min_size=1))
    secret = draw(st.sets(st.sampled_from(sorted(initial))))
    return Plant(
        states=tuple(states),
        alphabet=alphabet,
        transitions=tuple(transitions),
        initial=frozenset(initial),
        secret_initial=frozenset(secret),
    )


@st.composite
def supervisors(draw, alphabet: Alphabet, max_states: int = 3) -> SupervisorAutomaton:
    """Supervisors that satisfy the realization conditions.

    Unobservable events only self-loop and uncontrollable events are enabled everywhere.
    """
    states = [f"z{i}" for i in range(draw(st.integers(1, max_states)))]
    transitions = []
    for z in states:
        for event in alphabet.events:
            if event not in alphabet.uncontrollable and not draw(st.booleans()):
                continue
            target = z if event in alphabet.unobservable else draw(st.sampled_from(states))
            transitions.append((z, event, target))
    return SupervisorAutomaton(
        states=tuple(states),
        alphabet=alphabet,
        transitions=tuple(transitions),
        initial=frozenset({"z0"}),
    )


@st.composite
def instances(draw) -> tuple[Plant, SupervisorAutomaton]:
    """A plant and a supervisor over a shared alphabet with |X| ≤ 5, |Σ| ≤ 4, |Z| ≤ 3 and |Σ_v| ≤ 2."""
    alphabet = draw(alphabets())
    return draw(plants(alphabet)), draw(supervisors(alphabet))
