"""Graphviz DOT export for automata and attack structures.

Environment states are drawn as boxes and attack states as circles.
Classified environment states are filled by label; attack-revealing states
get a red outline.
"""

from graphviz import Digraph

from opacity_attack.attack.aas import AasGraph, AttackState, EnvState
from opacity_attack.attack.classify import LabelKind
from opacity_attack.automata.automaton import Automaton, format_set, format_state

LABEL_COLORS = {
    LabelKind.POSITIVE_DETECTED: "palegreen",
    LabelKind.NEGATIVE_DETECTED: "lightgrey",
    LabelKind.UNDETECTABLE: "lightblue",
}
REVEALING_COLOR = "red"
CHOSEN_COLOR = "darkgreen"


def _start_arrow(dot: Digraph, target: str) -> None:
    dot.node("__start", label="", shape="none", width="0")
    dot.edge("__start", target)


def automaton_dot(automaton: Automaton, name: str = "G") -> str:
    """DOT source of a plant, supervisor or product; unobservable events are dashed."""
    dot = Digraph(name=name)
    dot.attr(rankdir="LR")
    dot.attr("node", shape="circle")

    ids = {x: f"s{i}" for i, x in enumerate(automaton.states)}
    for x, node_id in ids.items():
        shape = "doublecircle" if x in getattr(automaton, "secret_initial", ()) else "circle"
        dot.node(node_id, label=format_state(x), shape=shape)
    for x in sorted(automaton.initial):
        _start_arrow(dot, ids[x])
    for source, event, target in automaton.transitions:
        style = "solid" if event in automaton.alphabet.observable else "dashed"
        dot.edge(ids[source], ids[target], label=event, style=style)
    return dot.source


def _env_label(graph: AasGraph, env: EnvState) -> str:
    text = f"{graph.node_id(env)}\n{format_set(env.q)}\n{format_set(env.qt)}\n{env.z}"
    label = graph.labels.get(env)
    return f"{text}\n{label.kind}" if label is not None else text


def graph_dot(graph: AasGraph, name: str = "AAS") -> str:
    """DOT source of an AAS, SAAS or SAS; chosen SAS actions are drawn bold."""
    dot = Digraph(name=name)
    dot.attr(rankdir="TB")

    for node in graph.nodes:
        node_id = graph.node_id(node)
        if isinstance(node, AttackState):
            dot.node(node_id, label=f"{node_id}\n{node.sigma}", shape="circle")
            continue
        attrs = {"shape": "box"}
        label = graph.labels.get(node)
        if label is not None and label.kind in LABEL_COLORS:
            attrs.update(style="filled", fillcolor=LABEL_COLORS[label.kind])
        if node.revealing:
            attrs.update(color=REVEALING_COLOR, penwidth="2")
        dot.node(node_id, label=_env_label(graph, node), **attrs)

    _start_arrow(dot, graph.node_id(graph.initial))
    for node, out in graph.edges.items():
        for label, target in out:
            attrs = {}
            if isinstance(node, AttackState) and graph.choice.get(node) == label:
                attrs.update(color=CHOSEN_COLOR, penwidth="2")
            dot.edge(graph.node_id(node), graph.node_id(target), label=str(label), **attrs)
    return dot.source
