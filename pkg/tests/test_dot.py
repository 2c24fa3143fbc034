"""Unit tests for DOT export."""

from opacity_attack.attack.synthesis import extract_sas
from opacity_attack.automata.supervisor import closed_loop
from opacity_attack.documents.dot import automaton_dot, graph_dot


class TestAutomatonDot:
    """Tests for automaton export."""

    def test_plant(self, plant):
        """Test secret states, unobservable edges and start arrows."""
        source = automaton_dot(plant, "G")

        assert source.startswith("digraph G {")
        assert source.count("shape=doublecircle") == 1
        assert source.count("style=dashed") == 2
        assert source.count("__start ->") == 2

    def test_closed_loop(self, plant, sup):
        """Test product states are printed as pairs."""
        source = automaton_dot(closed_loop(plant, sup), "SG")

        assert "(z0,1)" in source
        assert "doublecircle" not in source

    def test_deterministic(self, sup):
        """Test repeated exports are identical."""
        assert automaton_dot(sup, "H") == automaton_dot(sup, "H")


class TestGraphDot:
    """Tests for attack structure export."""

    def test_aas_shapes(self, aas):
        """Test environment states are boxes and attack states circles."""
        source = graph_dot(aas)

        assert source.count("shape=box") == len(aas.env_states)
        assert source.count("shape=circle") == len(aas.attack_states)
        assert "fillcolor" not in source

    def test_saas_labels(self, saas):
        """Test label colors and the revealing outline."""
        source = graph_dot(saas, "SAAS")

        assert source.count("fillcolor=palegreen") == 1
        assert source.count("fillcolor=lightblue") == 2
        assert "color=red" in source
        assert "undetectable" in source

    def test_sas_choices(self, saas):
        """Test chosen actions are highlighted."""
        sas = extract_sas(saas)
        source = graph_dot(sas, "SAS")

        assert source.count("color=darkgreen") == len(sas.choice)
