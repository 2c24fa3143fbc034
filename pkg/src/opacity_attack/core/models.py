"""Document models for plants, supervisors and attack structures."""

from collections import Counter
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from opacity_attack.automata.constants import RESERVED_IDENTIFIERS


def _duplicates(values: list[str]) -> list[str]:
    return sorted(value for value, count in Counter(values).items() if count > 1)


class EventSpec(BaseModel):
    """A declared event with its observability, controllability and vulnerability flags."""

    name: str = Field(..., min_length=1, description="Event identifier")
    observable: bool = Field(True, description="Seen by the supervisor's sensors")
    controllable: bool = Field(True, description="May be disabled by the supervisor")
    vulnerable: bool = Field(False, description="May be erased or replaced by the attacker")

    @field_validator("name")
    @classmethod
    def validate_name(cls, v: str) -> str:
        """Ensure event name is not blank."""
        if not v.strip():
            raise ValueError("Event name cannot be empty")
        return v

    @model_validator(mode="after")
    def check_vulnerable_observable(self) -> "EventSpec":
        """Only observable events can be tampered with."""
        if self.vulnerable and not self.observable:
            raise ValueError(f"event {self.name!r} is vulnerable but not observable")
        return self


class TransitionSpec(BaseModel):
    """A single transition (from, event, to)."""

    model_config = ConfigDict(populate_by_name=True)

    source: str = Field(..., alias="from", description="Source state")
    event: str = Field(..., description="Event identifier")
    target: str = Field(..., alias="to", description="Target state")


class ModelDocument(BaseModel):
    """Plant or supervisor automaton as stored on disk.

    Plants may declare secret_initial; supervisors must not.
    """

    states: list[str] = Field(..., min_length=1, description="State identifiers")
    initial: list[str] = Field(..., description="Initial states")
    secret_initial: list[str] | None = Field(None, description="Secret initial states (plants only)")
    events: list[EventSpec] = Field(..., description="Event declarations")
    transitions: list[TransitionSpec] = Field(default_factory=list, description="Transition relation")

    @model_validator(mode="after")
    def check_integrity(self) -> "ModelDocument":
        """Every referenced state and event must be declared exactly once."""
        problems: list[str] = []
        states = set(self.states)
        events = {event.name for event in self.events}

        for duplicate in _duplicates(self.states):
            problems.append(f"state {duplicate!r} declared more than once")
        for duplicate in _duplicates([event.name for event in self.events]):
            problems.append(f"event {duplicate!r} declared more than once")
        for name in sorted(states & RESERVED_IDENTIFIERS):
            problems.append(f"state identifier {name!r} is reserved")
        for x in self.initial:
            if x not in states:
                problems.append(f"initial state {x!r} is not declared")
        for x in self.secret_initial or []:
            if x not in self.initial:
                problems.append(f"secret state {x!r} is not initial")
        for i, t in enumerate(self.transitions):
            if t.source not in states:
                problems.append(f"transitions[{i}]: source {t.source!r} is not declared")
            if t.target not in states:
                problems.append(f"transitions[{i}]: target {t.target!r} is not declared")
            if t.event not in events:
                problems.append(f"transitions[{i}]: event {t.event!r} is not declared")

        if problems:
            raise ValueError("; ".join(problems))
        return self

    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "states": ["1", "2", "3"],
                "initial": ["1", "2"],
                "secret_initial": ["1"],
                "events": [
                    {"name": "a", "observable": False, "controllable": True, "vulnerable": False},
                    {"name": "b", "observable": True, "controllable": False, "vulnerable": True},
                ],
                "transitions": [{"from": "1", "event": "a", "to": "2"}, {"from": "1", "event": "b", "to": "3"}],
            }
        }
    )


# ============================================================================
# Attack Structure Documents
# ============================================================================


class NodeRecord(BaseModel):
    """Environment or attack state of an attack structure."""

    id: str = Field(..., min_length=1, description="Node identifier (e<n> or a<n>)")
    kind: Literal["environment", "attack"] = Field(..., description="Node kind")
    q: list[str] = Field(..., description="Supervisor-side estimate")
    qt: list[tuple[str, str]] = Field(..., description="Attacker-side (initial, current) pairs")
    z: str = Field(..., description="Supervisor state or z_att")
    sigma: str | None = Field(None, description="Pending observable event (attack states only)")
    label: str | None = Field(None, description="Classification (environment states of simplified graphs)")
    attack_revealing: bool = Field(False, description="Supervisor has realized the attack")

    @model_validator(mode="after")
    def check_sigma(self) -> "NodeRecord":
        """Attack states carry a pending event, environment states do not."""
        if (self.kind == "attack") != (self.sigma is not None):
            raise ValueError(f"node {self.id!r}: sigma must be set exactly on attack states")
        return self


class EdgeRecord(BaseModel):
    """Labeled transition; attack actions are written ^<event> or ^eps."""

    model_config = ConfigDict(populate_by_name=True)

    source: str = Field(..., alias="from", description="Source node id")
    label: str = Field(..., min_length=1, description="Observable event or hatted action")
    target: str = Field(..., alias="to", description="Target node id")


class GraphDocument(BaseModel):
    """AAS, SAAS or SAS as stored on disk."""

    kind: Literal["aas", "saas", "sas"] = Field(..., description="Structure kind")
    initial: str = Field(..., description="Initial environment state id")
    nodes: list[NodeRecord] = Field(..., min_length=1, description="Nodes in construction order")
    edges: list[EdgeRecord] = Field(default_factory=list, description="Transitions in node order")
    choice: dict[str, str] = Field(default_factory=dict, description="Chosen action per attack state (SAS only)")

    @model_validator(mode="after")
    def check_integrity(self) -> "GraphDocument":
        """Edges, initial state and choices must reference declared nodes."""
        problems: list[str] = []
        kinds = {node.id: node.kind for node in self.nodes}
        for duplicate in _duplicates([node.id for node in self.nodes]):
            problems.append(f"node {duplicate!r} declared more than once")
        if kinds.get(self.initial) != "environment":
            problems.append(f"initial node {self.initial!r} is not an environment state")
        for i, edge in enumerate(self.edges):
            for end in (edge.source, edge.target):
                if end not in kinds:
                    problems.append(f"edges[{i}]: node {end!r} is not declared")
        for node_id in self.choice:
            if kinds.get(node_id) != "attack":
                problems.append(f"choice for {node_id!r}, which is not an attack state")
        if self.choice and self.kind != "sas":
            problems.append("only single attack structures carry choices")
        if problems:
            raise ValueError("; ".join(problems))
        return self


SasDocument = GraphDocument
