"""Model documents and graph export."""

from opacity_attack.documents.dot import automaton_dot, graph_dot
from opacity_attack.documents.loader import (
    dump_graph,
    dump_model,
    load_graph,
    load_model,
    load_plant,
    load_supervisor,
    parse_graph,
    parse_plant,
    parse_supervisor,
    save_graph,
    save_model,
)

__all__ = [
    "automaton_dot",
    "dump_graph",
    "dump_model",
    "graph_dot",
    "load_graph",
    "load_model",
    "load_plant",
    "load_supervisor",
    "parse_graph",
    "parse_plant",
    "parse_supervisor",
    "save_graph",
    "save_model",
]
