"""Load and save plants, supervisors and attack structures as JSON documents."""

import logging
from pathlib import Path

from pydantic import BaseModel, ValidationError

from opacity_attack.attack.aas import AasGraph, AttackState, EnvState, Label, Node
from opacity_attack.attack.classify import LabelKind, StateLabel
from opacity_attack.attack.model import AttackAction
from opacity_attack.automata.automaton import Alphabet, Automaton, Plant
from opacity_attack.automata.supervisor import SupervisorAutomaton, validate_supervisor
from opacity_attack.core.errors import ModelValidationError
from opacity_attack.core.models import EdgeRecord, EventSpec, GraphDocument, ModelDocument, NodeRecord

logger = logging.getLogger(__name__)


def _parse(document_type: type[BaseModel], text: str, source: str) -> BaseModel:
    """Validate JSON text, turning pydantic errors into field-path diagnostics."""
    try:
        return document_type.model_validate_json(text)
    except ValidationError as e:
        diagnostics = []
        for error in e.errors():
            location = ".".join(str(part) for part in error["loc"]) or "document"
            diagnostics.append(f"{location}: {error['msg']}")
        raise ModelValidationError(f"Invalid document {source}", diagnostics) from e


def _read(path: Path | str) -> str:
    path = Path(path)
    logger.debug("Reading %s", path)
    return path.read_text(encoding="utf-8")


# ============================================================================
# Plants and Supervisors
# ============================================================================


def _alphabet(document: ModelDocument) -> Alphabet:
    return Alphabet(
        events=tuple(event.name for event in document.events),
        observable=frozenset(event.name for event in document.events if event.observable),
        controllable=frozenset(event.name for event in document.events if event.controllable),
        vulnerable=frozenset(event.name for event in document.events if event.vulnerable),
    )


def _transitions(document: ModelDocument) -> tuple:
    return tuple((t.source, t.event, t.target) for t in document.transitions)


def build_plant(document: ModelDocument) -> Plant:
    """Plant from a validated document; X_sec defaults to empty."""
    return Plant(
        states=tuple(document.states),
        alphabet=_alphabet(document),
        transitions=_transitions(document),
        initial=frozenset(document.initial),
        secret_initial=frozenset(document.secret_initial or ()),
    )


def build_supervisor(document: ModelDocument) -> SupervisorAutomaton:
    """Supervisor from a validated document; realization violations are logged, not raised."""
    if document.secret_initial is not None:
        raise ModelValidationError("Invalid supervisor", ["supervisor documents cannot declare secret_initial"])
    sup = SupervisorAutomaton(
        states=tuple(document.states),
        alphabet=_alphabet(document),
        transitions=_transitions(document),
        initial=frozenset(document.initial),
    )
    for violation in validate_supervisor(sup):
        logger.warning("%s", violation)
    return sup


def parse_plant(text: str, source: str = "<string>") -> Plant:
    return build_plant(_parse(ModelDocument, text, source))


def parse_supervisor(text: str, source: str = "<string>") -> SupervisorAutomaton:
    return build_supervisor(_parse(ModelDocument, text, source))


def load_plant(path: Path | str) -> Plant:
    """Load a plant document.

    Raises:
        ModelValidationError: Malformed JSON or violated model invariants
        OSError: File cannot be read
    """
    return parse_plant(_read(path), str(path))


def load_supervisor(path: Path | str) -> SupervisorAutomaton:
    """Load a supervisor document."""
    return parse_supervisor(_read(path), str(path))


def is_plant_document(document: ModelDocument) -> bool:
    """Plants declare secret_initial or have other than one initial state.

    Vulnerable flags do not discriminate: supervisors share the plant's alphabet.
    """
    return document.secret_initial is not None or len(document.initial) != 1


def load_model(path: Path | str) -> Plant | SupervisorAutomaton:
    """Load either kind of model; see is_plant_document."""
    document = _parse(ModelDocument, _read(path), str(path))
    if is_plant_document(document):
        return build_plant(document)
    return build_supervisor(document)


def model_document(automaton: Automaton) -> ModelDocument:
    """Document for a plant or supervisor with string state identifiers."""
    alphabet = automaton.alphabet
    secret = None
    if isinstance(automaton, Plant):
        secret = sorted(str(x) for x in automaton.secret_initial)
    return ModelDocument(
        states=[str(x) for x in automaton.states],
        initial=sorted(str(x) for x in automaton.initial),
        secret_initial=secret,
        events=[
            EventSpec(
                name=e,
                observable=e in alphabet.observable,
                controllable=e in alphabet.controllable,
                vulnerable=e in alphabet.vulnerable,
            )
            for e in alphabet.events
        ],
        transitions=[
            {"from": str(source), "event": event, "to": str(target)}
            for source, event, target in automaton.transitions
        ],
    )


def dump_model(automaton: Automaton) -> str:
    """Serialize a plant or supervisor to JSON text."""
    return model_document(automaton).model_dump_json(indent=2, by_alias=True, exclude_none=True) + "\n"


def save_model(automaton: Automaton, path: Path | str) -> None:
    Path(path).write_text(dump_model(automaton), encoding="utf-8")


# ============================================================================
# Attack Structures
# ============================================================================


def _node_record(graph: AasGraph, node: Node) -> NodeRecord:
    record = {
        "id": graph.node_id(node),
        "kind": "attack" if isinstance(node, AttackState) else "environment",
        "q": sorted(node.q),
        "qt": sorted(node.qt),
        "z": node.z,
        "attack_revealing": isinstance(node, EnvState) and node.revealing,
    }
    if isinstance(node, AttackState):
        record["sigma"] = node.sigma
    label = graph.labels.get(node) if isinstance(node, EnvState) else None
    if label is not None:
        record["label"] = str(label.kind)
    return NodeRecord(**record)


def graph_document(graph: AasGraph, kind: str) -> GraphDocument:
    """Document for an AAS, SAAS or SAS; node and edge order follow construction order."""
    return GraphDocument(
        kind=kind,
        initial=graph.node_id(graph.initial),
        nodes=[_node_record(graph, node) for node in graph.nodes],
        edges=[
            EdgeRecord(source=graph.node_id(node), label=str(label), target=graph.node_id(target))
            for node, out in graph.edges.items()
            for label, target in out
        ],
        choice={graph.node_id(attack): str(action) for attack, action in graph.choice.items()},
    )


def dump_graph(graph: AasGraph, kind: str) -> str:
    """Serialize an attack structure to JSON text."""
    return graph_document(graph, kind).model_dump_json(indent=2, by_alias=True, exclude_none=True) + "\n"


def save_graph(graph: AasGraph, kind: str, path: Path | str) -> None:
    Path(path).write_text(dump_graph(graph, kind), encoding="utf-8")


def build_graph(document: GraphDocument) -> AasGraph:
    """Attack structure from a validated document."""
    nodes: dict[str, Node] = {}
    labels: dict[EnvState, StateLabel] = {}
    for record in document.nodes:
        q = frozenset(record.q)
        qt = frozenset(tuple(pair) for pair in record.qt)
        if record.kind == "attack":
            nodes[record.id] = AttackState(q, qt, record.z, record.sigma)
            continue
        env = EnvState(q, qt, record.z)
        nodes[record.id] = env
        if record.label is not None:
            try:
                kind = LabelKind(record.label)
            except ValueError as e:
                raise ModelValidationError("Unknown state label", [f"{record.id}: {record.label!r}"]) from e
            labels[env] = StateLabel(kind, attack_revealing=record.attack_revealing)

    edges: dict[Node, list[tuple[Label, Node]]] = {node: [] for node in nodes.values()}
    for record in document.edges:
        source = nodes[record.source]
        label: Label = AttackAction.parse(record.label) if isinstance(source, AttackState) else record.label
        edges[source].append((label, nodes[record.target]))

    choice = {nodes[node_id]: AttackAction.parse(text) for node_id, text in document.choice.items()}
    return AasGraph(
        initial=nodes[document.initial],
        edges={node: tuple(out) for node, out in edges.items()},
        labels=labels,
        choice=choice,
    )


def parse_graph(text: str, source: str = "<string>") -> AasGraph:
    return build_graph(_parse(GraphDocument, text, source))


def load_graph(path: Path | str) -> AasGraph:
    """Load an AAS, SAAS or SAS document."""
    return parse_graph(_read(path), str(path))

