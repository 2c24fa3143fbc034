"""Command-line entry point."""

import argparse
import json
import logging
import sys
from collections.abc import Callable
from pathlib import Path

from pydantic import ValidationError

from opacity_attack import __version__
from opacity_attack.analysis.opacity import check_initial_state_opacity
from opacity_attack.attack.aas import build_aas, format_extended
from opacity_attack.attack.classify import simplify
from opacity_attack.attack.model import supervisor_view
from opacity_attack.attack.oracle import exists_attacker
from opacity_attack.attack.synthesis import (
    check_sas,
    extract_sas,
    induced_strategy,
    is_attackable,
    obs_inverse_in,
    verify_is_detectable,
)
from opacity_attack.automata.automaton import Plant, format_set, format_trace, parse_trace
from opacity_attack.automata.constants import EXIT_ERROR, EXIT_NOT_ATTACKABLE, EXIT_NOT_OPAQUE, EXIT_OK
from opacity_attack.automata.estimation import current_state_estimate, initial_state_estimate
from opacity_attack.automata.supervisor import SupervisorAutomaton, closed_loop, validate_supervisor
from opacity_attack.core.config import Settings, setup_logging
from opacity_attack.core.errors import EnumerationLimitError, ModelValidationError
from opacity_attack.documents.dot import automaton_dot, graph_dot
from opacity_attack.documents.loader import (
    dump_graph,
    load_graph,
    load_model,
    load_plant,
    load_supervisor,
    parse_graph,
)

logger = logging.getLogger(__name__)


def _secret(plant: Plant, text: str | None) -> frozenset:
    return plant.secret_initial if text is None else plant.require_secret(parse_trace(text))


def _write(text: str, path: Path | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        path.write_text(text, encoding="utf-8")
        logger.info("Wrote %s", path)


def _models(args: argparse.Namespace) -> tuple[Plant, SupervisorAutomaton]:
    return load_plant(args.plant), load_supervisor(args.supervisor)


# ============================================================================
# Commands
# ============================================================================


def cmd_validate(args: argparse.Namespace, settings: Settings) -> int:
    """Load models and report supervisor realization violations."""
    plant = load_plant(args.plant)
    print(f"plant: {len(plant.states)} states, {len(plant.transitions)} transitions, ok")
    if args.supervisor is None:
        return EXIT_OK

    sup = load_supervisor(args.supervisor)
    if not plant.alphabet.same_events(sup.alphabet):
        print("supervisor: alphabet differs from the plant's")
        return EXIT_ERROR
    violations = validate_supervisor(sup)
    for violation in violations:
        print(f"supervisor: {violation}")
    if violations:
        return EXIT_ERROR
    print(f"supervisor: {len(sup.states)} states, ok")
    return EXIT_OK


def cmd_estimate(args: argparse.Namespace, settings: Settings) -> int:
    """Print the current and initial state estimates of an observation."""
    plant, sup = _models(args)
    alpha = parse_trace(args.obs)
    print(f"observation: {format_trace(alpha)}")
    print(f"current: {format_set(current_state_estimate(plant, sup, alpha))}")
    print(f"initial: {format_set(initial_state_estimate(plant, sup, alpha))}")
    return EXIT_OK


def cmd_check_opacity(args: argparse.Namespace, settings: Settings) -> int:
    """Exit 0 when opaque, 3 with a witness when not."""
    plant, sup = _models(args)
    verdict = check_initial_state_opacity(plant, sup, _secret(plant, args.secret))
    if verdict.opaque:
        print("opaque")
        return EXIT_OK
    print("not opaque")
    print(f"witness: {format_trace(verdict.witness)}")
    print(f"estimate: {format_set(verdict.estimate)}")
    return EXIT_NOT_OPAQUE


def cmd_build_aas(args: argparse.Namespace, settings: Settings) -> int:
    """Write the AAS document and print its size."""
    plant, sup = _models(args)
    aas = build_aas(plant, sup)
    _write(dump_graph(aas, "aas"), args.output)
    if args.dot is not None:
        args.dot.write_text(graph_dot(aas, "AAS"), encoding="utf-8")
    print(aas.stats(plant, sup), file=sys.stderr if args.output is None else sys.stdout)
    return EXIT_OK


def cmd_simplify(args: argparse.Namespace, settings: Settings) -> int:
    """Write the SAAS document and print its size next to the AAS's."""
    plant, sup = _models(args)
    aas = build_aas(plant, sup)
    saas = simplify(plant, sup, aas, _secret(plant, args.secret))
    _write(dump_graph(saas, "saas"), args.output)
    if args.dot is not None:
        args.dot.write_text(graph_dot(saas, "SAAS"), encoding="utf-8")
    out = sys.stderr if args.output is None else sys.stdout
    before, after = aas.stats(plant, sup), saas.stats()
    print(f"AAS: {before.env_states} environment states, {before.attack_states} attack states", file=out)
    print(f"SAAS: {after.env_states} environment states, {after.attack_states} attack states", file=out)
    return EXIT_OK


def cmd_synthesize(args: argparse.Namespace, settings: Settings) -> int:
    """Exit 0 and write a SAS when attackable, 2 otherwise."""
    plant, sup = _models(args)
    secret = _secret(plant, args.secret)
    saas = simplify(plant, sup, build_aas(plant, sup), secret)
    if not is_attackable(saas):
        print("not attackable")
        return EXIT_NOT_ATTACKABLE

    sas = extract_sas(saas)
    problems = check_sas(sas, saas)
    if problems:
        for problem in problems:
            logger.error("SAS check failed: %s", problem)
        return EXIT_ERROR

    _write(dump_graph(sas, "sas"), args.output)
    if args.dot is not None:
        args.dot.write_text(graph_dot(sas, "SAS"), encoding="utf-8")

    out = sys.stderr if args.output is None else sys.stdout
    witness = verify_is_detectable(plant, sup, induced_strategy(sas, plant), secret, len(saas.env_states))
    print("attackable", file=out)
    for attack, action in sas.choice.items():
        print(f"  {sas.node_id(attack)} {attack.sigma} -> {action}", file=out)
    if witness is not None:
        print(f"witness: {format_trace(witness)}", file=out)
        print(f"extended: {format_extended(obs_inverse_in(sas, witness))}", file=out)
    return EXIT_OK


def cmd_simulate(args: argparse.Namespace, settings: Settings) -> int:
    """Replay an actual observation through the strategy induced by a SAS."""
    plant, sup = _models(args)
    secret = _secret(plant, args.secret)
    sas = load_graph(args.sas)
    run = supervisor_view(plant, sup, induced_strategy(sas, plant), parse_trace(args.run), secret)

    for i, step in enumerate(run.steps, start=1):
        print(
            f"step {i}: actual {step.event} -> {step.action}"
            f" | supervisor {format_set(step.supervisor_estimate)}"
            f" | attacker current {format_set(step.attacker_current)}"
            f" initial {format_set(step.attacker_initial)}"
            f" | {'stealthy' if step.stealthy else 'revealed'}"
        )
    print(f"actual: {format_trace(run.actual)}")
    print(f"doctored: {format_trace(run.doctored)}")
    print(f"stealthy prefix: {format_trace(run.longest_stealthy_prefix)}")

    hit = next((i for i, step in enumerate(run.steps) if step.detected), None)
    stealthy_before = hit is not None and (hit == 0 or run.steps[hit - 1].stealthy)
    if hit is not None and stealthy_before:
        witness, prefix = format_trace(run.actual[: hit + 1]), format_trace(run.actual[:hit])
        print(f"detected: yes, after {witness} (stealthy along {prefix})")
        print(f"initial estimate: {format_set(run.steps[hit].attacker_initial)}")
    else:
        print("detected: no")
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace, settings: Settings) -> int:
    """Compare synthesis with brute-force strategy search."""
    plant, sup = _models(args)
    secret = _secret(plant, args.secret)
    saas = simplify(plant, sup, build_aas(plant, sup), secret)
    horizon = args.horizon
    if horizon is None:
        horizon = min(len(saas.env_states), settings.oracle_max_horizon)

    synthesized = is_attackable(saas)
    try:
        result = exists_attacker(plant, sup, secret, horizon, settings.oracle_max_nodes)
    except EnumerationLimitError as e:
        print(f"oracle: aborted ({e})")
        return EXIT_ERROR

    print(f"horizon: {horizon}")
    print(f"synthesis: {'attackable' if synthesized else 'not attackable'}")
    if result is None:
        print("oracle: not attackable")
    else:
        print(f"oracle: attackable, witness {format_trace(result.witness)} ({result.nodes_explored} nodes)")
    agree = synthesized == (result is not None)
    print(f"agreement: {'yes' if agree else 'no'}")
    return EXIT_OK if agree else EXIT_ERROR


def cmd_export_dot(args: argparse.Namespace, settings: Settings) -> int:
    """DOT for a model, a closed loop or an attack structure document."""
    text = args.document.read_text(encoding="utf-8")
    if json.loads(text).get("kind") in ("aas", "saas", "sas"):
        source = graph_dot(parse_graph(text, str(args.document)), args.document.stem)
    else:
        if args.supervisor is not None:
            # with a supervisor the document can only be the plant
            model = closed_loop(load_plant(args.document), load_supervisor(args.supervisor))
        else:
            model = load_model(args.document)
        source = automaton_dot(model, args.document.stem)
    _write(source, args.output)
    return EXIT_OK


# ============================================================================
# Argument Parsing
# ============================================================================


def _add_models(parser: argparse.ArgumentParser, secret: bool = True) -> None:
    parser.add_argument("--plant", "-p", type=Path, required=True, help="Plant document")
    parser.add_argument("--supervisor", "-s", type=Path, required=True, help="Supervisor document")
    if secret:
        parser.add_argument("--secret", help="Secret initial states (default: the plant's secret_initial)")


def _add_outputs(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--output", "-o", type=Path, help="Output document (default: stdout)")
    parser.add_argument("--dot", type=Path, help="Also write a DOT graph here")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="opacity-attack",
        description="Opacity verification and stealthy sensor-deception attack synthesis",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", help="Override OPACITY_ATTACK_LOG_LEVEL")
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("validate", help="Check plant and supervisor documents")
    p.add_argument("plant", type=Path, help="Plant document")
    p.add_argument("--supervisor", "-s", type=Path, help="Supervisor document")
    p.set_defaults(handler=cmd_validate)

    p = commands.add_parser("estimate", help="Current and initial state estimates of an observation")
    _add_models(p, secret=False)
    p.add_argument("--obs", required=True, help="Observation, e.g. 'b c' or 'b,c'")
    p.set_defaults(handler=cmd_estimate)

    p = commands.add_parser("check-opacity", help="Initial-state opacity of the closed loop")
    _add_models(p)
    p.set_defaults(handler=cmd_check_opacity)

    p = commands.add_parser("build-aas", help="Build the all attack structure")
    _add_models(p, secret=False)
    _add_outputs(p)
    p.set_defaults(handler=cmd_build_aas)

    p = commands.add_parser("simplify", help="Build the simplified all attack structure")
    _add_models(p)
    _add_outputs(p)
    p.set_defaults(handler=cmd_simplify)

    p = commands.add_parser("synthesize", help="Synthesize a single attack structure")
    _add_models(p)
    _add_outputs(p)
    p.set_defaults(handler=cmd_synthesize)

    p = commands.add_parser("simulate", help="Run the strategy induced by a SAS on an observation")
    _add_models(p)
    p.add_argument("--sas", type=Path, required=True, help="SAS document")
    p.add_argument("--run", required=True, help="Actual observation, e.g. 'b,c'")
    p.set_defaults(handler=cmd_simulate)

    p = commands.add_parser("oracle", help="Cross-check attackability by brute force")
    _add_models(p)
    p.add_argument("--horizon", type=int, help="Observation length bound (default: SAAS environment states)")
    p.set_defaults(handler=cmd_oracle)

    p = commands.add_parser("export-dot", help="DOT graph of a model or attack structure document")
    p.add_argument("document", type=Path, help="Model or AAS/SAAS/SAS document")
    p.add_argument("--supervisor", "-s", type=Path, help="Export the closed loop with this supervisor")
    p.add_argument("--output", "-o", type=Path, help="Output file (default: stdout)")
    p.set_defaults(handler=cmd_export_dot)

    return parser


def main(argv: list[str] | None = None) -> int:
    """Run the command line; returns the process exit code."""
    args = build_parser().parse_args(argv)
    settings = Settings()
    setup_logging(args.log_level or settings.log_level)

    handler: Callable[[argparse.Namespace, Settings], int] = args.handler
    try:
        return handler(args, settings)
    except (ModelValidationError, ValidationError, json.JSONDecodeError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
