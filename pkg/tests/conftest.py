"""Shared test fixtures."""

import pytest

from opacity_attack.attack.aas import AasGraph, build_aas
from opacity_attack.attack.classify import simplify
from opacity_attack.automata.automaton import Plant
from opacity_attack.automata.supervisor import SupervisorAutomaton
from opacity_attack.documents.loader import load_plant, load_supervisor
from running_example import ALL_ENABLING, PLANT, SUPERVISOR


@pytest.fixture
def plant() -> Plant:
    """Six-state plant with X_0 = {1,2}, X_sec = {1} and Σ_v = {b}."""
    return load_plant(PLANT)


@pytest.fixture
def sup() -> SupervisorAutomaton:
    """Three-state supervisor under which the plant is opaque."""
    return load_supervisor(SUPERVISOR)


@pytest.fixture
def all_enabling() -> SupervisorAutomaton:
    """One-state supervisor enabling every event."""
    return load_supervisor(ALL_ENABLING)


@pytest.fixture
def aas(plant: Plant, sup: SupervisorAutomaton) -> AasGraph:
    return build_aas(plant, sup)


@pytest.fixture
def saas(plant: Plant, sup: SupervisorAutomaton, aas: AasGraph) -> AasGraph:
    return simplify(plant, sup, aas)
