#!/usr/bin/env python3
"""Cross-check attack synthesis against the brute-force oracle on random instances."""

import argparse
import random
import sys
import time
from pathlib import Path

# Add src to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from opacity_attack.attack.aas import build_aas
from opacity_attack.attack.classify import simplify
from opacity_attack.attack.oracle import exists_attacker
from opacity_attack.attack.synthesis import is_attackable
from opacity_attack.automata.automaton import Alphabet, Plant
from opacity_attack.automata.supervisor import SupervisorAutomaton
from opacity_attack.core.config import Settings, setup_logging
from opacity_attack.core.errors import EnumerationLimitError
from opacity_attack.documents.loader import dump_model

EVENTS = ("a", "b", "c", "d")


def random_alphabet(rng: random.Random, max_vulnerable: int) -> Alphabet:
    """Random alphabet over a prefix of EVENTS."""
    events = EVENTS[: rng.randint(1, len(EVENTS))]
    observable = {e for e in events if rng.random() < 0.6}
    controllable = {e for e in events if rng.random() < 0.5}
    vulnerable = rng.sample(sorted(observable), min(len(observable), rng.randint(0, max_vulnerable)))
    return Alphabet(
        events=events,
        observable=frozenset(observable),
        controllable=frozenset(controllable),
        vulnerable=frozenset(vulnerable),
    )


def random_plant(rng: random.Random, alphabet: Alphabet, max_states: int, density: float) -> Plant:
    states = [str(i) for i in range(1, rng.randint(1, max_states) + 1)]
    transitions = [(x, e, rng.choice(states)) for x in states for e in alphabet.events if rng.random() < density]
    initial = set(rng.sample(states, rng.randint(1, len(states))))
    secret = {x for x in initial if rng.random() < 0.5}
    return Plant(
        states=tuple(states),
        alphabet=alphabet,
        transitions=tuple(transitions),
        initial=frozenset(initial),
        secret_initial=frozenset(secret),
    )


def random_supervisor(rng: random.Random, alphabet: Alphabet, max_states: int) -> SupervisorAutomaton:
    """Random supervisor that satisfies the realization conditions."""
    states = [f"z{i}" for i in range(rng.randint(1, max_states))]
    transitions = []
    for z in states:
        for event in alphabet.events:
            if event in alphabet.controllable and rng.random() < 0.5:
                continue
            target = z if event not in alphabet.observable else rng.choice(states)
            transitions.append((z, event, target))
    return SupervisorAutomaton(
        states=tuple(states),
        alphabet=alphabet,
        transitions=tuple(transitions),
        initial=frozenset({"z0"}),
    )


def main():
    parser = argparse.ArgumentParser(description="Compare SAAS attackability with brute-force search")
    parser.add_argument("--count", "-n", type=int, default=200, help="Number of random instances")
    parser.add_argument("--seed", type=int, default=0, help="Random seed")
    parser.add_argument("--max-states", type=int, default=5, help="Largest plant")
    parser.add_argument("--max-supervisor-states", type=int, default=3, help="Largest supervisor")
    parser.add_argument("--max-vulnerable", type=int, default=2, help="Largest vulnerable set")
    parser.add_argument("--density", type=float, default=0.5, help="Probability of each plant transition")
    parser.add_argument("--horizon", type=int, help="Oracle horizon (default: SAAS environment states)")
    parser.add_argument("--dump", type=Path, help="Write disagreeing instances to this directory")
    parser.add_argument("--verbose", "-v", action="store_true", help="Print one line per instance")
    args = parser.parse_args()

    settings = Settings()
    setup_logging(settings.log_level)
    rng = random.Random(args.seed)

    attackable = agreed = aborted = 0
    disagreements: list[int] = []
    start = time.monotonic()

    for i in range(args.count):
        alphabet = random_alphabet(rng, args.max_vulnerable)
        plant = random_plant(rng, alphabet, args.max_states, args.density)
        sup = random_supervisor(rng, alphabet, args.max_supervisor_states)

        saas = simplify(plant, sup, build_aas(plant, sup))
        horizon = args.horizon if args.horizon is not None else len(saas.env_states)
        synthesized = is_attackable(saas)
        try:
            result = exists_attacker(plant, sup, horizon=horizon, max_nodes=settings.oracle_max_nodes)
        except EnumerationLimitError:
            aborted += 1
            continue

        attackable += synthesized
        if synthesized == (result is not None):
            agreed += 1
        else:
            disagreements.append(i)
            if args.dump is not None:
                args.dump.mkdir(parents=True, exist_ok=True)
                (args.dump / f"g_{i}.json").write_text(dump_model(plant))
                (args.dump / f"h_{i}.json").write_text(dump_model(sup))

        if args.verbose:
            verdict = "attackable" if synthesized else "not attackable"
            witness = "-" if result is None else " ".join(result.witness) or "ε"
            print(f"{i:4d}: |X|={len(plant.states)} |Z|={len(sup.states)} {verdict:14s} oracle witness {witness}")

    elapsed = time.monotonic() - start
    checked = args.count - aborted
    print(f"\nChecked {checked} instances in {elapsed:.1f}s ({aborted} aborted by the node budget)")
    print(f"Attackable: {attackable}")
    print(f"Agreement: {agreed}/{checked}")
    if disagreements:
        print(f"Disagreeing instances: {', '.join(map(str, disagreements))}")
        sys.exit(1)


if __name__ == "__main__":
    main()
