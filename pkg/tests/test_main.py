"""Tests for the command-line interface."""

import json

import pytest

from opacity_attack.documents.loader import load_graph
from opacity_attack.main import main
from running_example import ALL_ENABLING, PLANT, SUPERVISOR

MODELS = ["--plant", str(PLANT), "--supervisor", str(SUPERVISOR)]


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def protected_plant(tmp_path):
    """Running-example plant with no vulnerable events."""
    document = json.loads(PLANT.read_text())
    for event in document["events"]:
        event["vulnerable"] = False
    path = tmp_path / "g_protected.json"
    path.write_text(json.dumps(document))
    return path


@pytest.fixture
def sas_path(tmp_path, capsys):
    path = tmp_path / "sas.json"
    assert main(["synthesize", *MODELS, "-o", str(path)]) == 0
    capsys.readouterr()
    return path


class TestValidate:
    """Tests for the validate command."""

    def test_plant_only(self, capsys):
        """Test a valid plant."""
        code, out, _ = run(capsys, "validate", str(PLANT))
        assert code == 0
        assert out == "plant: 6 states, 10 transitions, ok\n"

    def test_with_supervisor(self, capsys):
        """Test a valid plant and supervisor."""
        code, out, _ = run(capsys, "validate", str(PLANT), "--supervisor", str(SUPERVISOR))
        assert code == 0
        assert "supervisor: 3 states, ok" in out

    def test_violations(self, capsys, tmp_path):
        """Test realization violations give exit 1."""
        document = json.loads(SUPERVISOR.read_text())
        document["transitions"] = [t for t in document["transitions"] if (t["from"], t["event"]) != ("z1", "b")]
        path = tmp_path / "h_bad.json"
        path.write_text(json.dumps(document))
        code, out, _ = run(capsys, "validate", str(PLANT), "--supervisor", str(path))
        assert code == 1
        assert "supervisor: state z1: uncontrollable event b is disabled" in out


class TestEstimate:
    """Tests for the estimate command."""

    def test_after_b(self, capsys):
        """Test estimates after observing b."""
        code, out, _ = run(capsys, "estimate", *MODELS, "--obs", "b")
        assert code == 0
        assert out == "observation: b\ncurrent: {3,4}\ninitial: {1,2}\n"

    def test_unobservable_event(self, capsys):
        """Test observations of unobservable events are rejected."""
        code, _, err = run(capsys, "estimate", *MODELS, "--obs", "a")
        assert code == 1
        assert err.startswith("error:")


class TestCheckOpacity:
    """Tests for the check-opacity command."""

    def test_opaque(self, capsys):
        """Test exit 0 under the running-example supervisor."""
        code, out, _ = run(capsys, "check-opacity", *MODELS)
        assert code == 0
        assert out == "opaque\n"

    def test_not_opaque(self, capsys):
        """Test exit 3 and the witness without supervision."""
        code, out, _ = run(capsys, "check-opacity", "--plant", str(PLANT), "--supervisor", str(ALL_ENABLING))
        assert code == 3
        assert out == "not opaque\nwitness: b c\nestimate: {1}\n"

    def test_secret_override(self, capsys):
        """Test --secret replaces the plant's secret."""
        code, out, _ = run(capsys, "check-opacity", *MODELS, "--secret", "1,2")
        assert code == 3
        assert "witness: ε" in out

    def test_missing_file(self, capsys, tmp_path):
        """Test unreadable documents give exit 1."""
        code, _, err = run(capsys, "check-opacity", "--plant", str(tmp_path / "none.json"), "--supervisor", "x")
        assert code == 1
        assert "error:" in err


class TestStructures:
    """Tests for build-aas and simplify."""

    def test_build_aas(self, capsys, tmp_path):
        """Test the AAS document and its statistics."""
        path = tmp_path / "aas.json"
        code, out, _ = run(capsys, "build-aas", *MODELS, "-o", str(path))
        assert code == 0
        assert json.loads(path.read_text())["kind"] == "aas"
        assert "worst-case bound: 4194304" in out

    def test_simplify(self, capsys, tmp_path):
        """Test the SAAS document, its DOT graph and the size comparison."""
        path, dot = tmp_path / "saas.json", tmp_path / "saas.dot"
        code, out, _ = run(capsys, "simplify", *MODELS, "-o", str(path), "--dot", str(dot))
        assert code == 0
        assert "SAAS: 7 environment states, 7 attack states" in out
        assert dot.read_text().startswith("digraph SAAS {")

    def test_stdout_document(self, capsys):
        """Test documents go to stdout when no output file is given."""
        code, out, err = run(capsys, "simplify", *MODELS)
        assert code == 0
        assert json.loads(out)["kind"] == "saas"
        assert "SAAS:" in err


class TestSynthesize:
    """Tests for the synthesize command."""

    def test_attackable(self, capsys, tmp_path):
        """Test the SAS erases b at the root and reveals the secret on b c."""
        path = tmp_path / "sas.json"
        code, out, _ = run(capsys, "synthesize", *MODELS, "-o", str(path))
        assert code == 0
        assert out.splitlines()[:2] == ["attackable", "  a0 b -> ^eps"]
        assert "witness: b c" in out
        assert "extended: b ^eps c ^c" in out
        assert len(load_graph(path).choice) == 6

    def test_not_attackable(self, capsys, protected_plant):
        """Test exit 2 when no event is vulnerable."""
        code, out, _ = run(capsys, "synthesize", "--plant", str(protected_plant), "--supervisor", str(SUPERVISOR))
        assert code == 2
        assert out == "not attackable\n"

    def test_deterministic(self, capsys):
        """Test two runs print byte-identical documents."""
        first = run(capsys, "synthesize", *MODELS)
        second = run(capsys, "synthesize", *MODELS)
        assert first[0] == 0
        assert first[1] == second[1]


class TestSimulate:
    """Tests for the simulate command."""

    def test_revealing_run(self, capsys, sas_path):
        """Test the attack stays stealthy and pins the secret on b c."""
        code, out, _ = run(capsys, "simulate", *MODELS, "--sas", str(sas_path), "--run", "b,c")
        assert code == 0
        assert "step 1: actual b -> ^eps" in out
        assert "doctored: c\n" in out
        assert "detected: yes, after b c (stealthy along b)" in out
        assert "initial estimate: {1}" in out

    def test_quiet_run(self, capsys, sas_path):
        """Test a run that never pins the secret."""
        code, out, _ = run(capsys, "simulate", *MODELS, "--sas", str(sas_path), "--run", "c,c")
        assert code == 0
        assert "doctored: c c" in out
        assert out.endswith("detected: no\n")


class TestOracle:
    """Tests for the oracle command."""

    def test_agreement(self, capsys):
        """Test synthesis and brute force agree on the running example."""
        code, out, _ = run(capsys, "oracle", *MODELS)
        assert code == 0
        assert "horizon: 7" in out
        assert "oracle: attackable, witness b c" in out
        assert out.endswith("agreement: yes\n")

    def test_not_attackable(self, capsys, protected_plant):
        """Test agreement when no attack exists."""
        code, out, _ = run(capsys, "oracle", "--plant", str(protected_plant), "--supervisor", str(SUPERVISOR))
        assert code == 0
        assert "oracle: not attackable" in out


class TestExportDot:
    """Tests for the export-dot command."""

    def test_plant(self, capsys):
        """Test exporting a plant document."""
        code, out, _ = run(capsys, "export-dot", str(PLANT))
        assert code == 0
        assert out.startswith("digraph plant {")

    def test_closed_loop(self, capsys):
        """Test exporting the closed loop."""
        code, out, _ = run(capsys, "export-dot", str(PLANT), "--supervisor", str(SUPERVISOR))
        assert code == 0
        assert "(z0,1)" in out

    def test_sas(self, capsys, sas_path):
        """Test exporting a SAS document."""
        code, out, _ = run(capsys, "export-dot", str(sas_path))
        assert code == 0
        assert "darkgreen" in out

    def test_plant_without_secret(self, capsys, tmp_path):
        """Test a plant that leaves out secret_initial exports alone and in the closed loop."""
        document = json.loads(PLANT.read_text())
        del document["secret_initial"]
        path = tmp_path / "g_public.json"
        path.write_text(json.dumps(document))

        code, out, _ = run(capsys, "export-dot", str(path))
        assert code == 0
        assert "doublecircle" not in out

        code, out, _ = run(capsys, "export-dot", str(path), "--supervisor", str(SUPERVISOR))
        assert code == 0
        assert "(z0,2)" in out

    def test_alphabet_mismatch(self, capsys, tmp_path):
        """Test a supervisor with different observability cannot be composed."""
        document = json.loads(SUPERVISOR.read_text())
        for event in document["events"]:
            if event["name"] == "c":
                event["observable"] = False
        path = tmp_path / "h_blind.json"
        path.write_text(json.dumps(document))
        code, _, err = run(capsys, "export-dot", str(PLANT), "--supervisor", str(path))
        assert code == 1
        assert "mismatch" in err


DETERMINISM_COMMANDS = {
    "estimate": ["estimate", *MODELS, "--obs", "b c"],
    "check-opacity": ["check-opacity", "--plant", str(PLANT), "--supervisor", str(ALL_ENABLING)],
    "build-aas": ["build-aas", *MODELS, "--dot", "{dot}"],
    "simplify": ["simplify", *MODELS, "--dot", "{dot}"],
    "synthesize": ["synthesize", *MODELS, "--dot", "{dot}"],
    "simulate": ["simulate", *MODELS, "--sas", "{sas}", "--run", "b,c"],
    "oracle": ["oracle", *MODELS],
    "export-dot": ["export-dot", str(PLANT), "--supervisor", str(SUPERVISOR)],
}


class TestDeterminism:
    """Tests for byte-identical output across runs."""

    @pytest.mark.parametrize("command", sorted(DETERMINISM_COMMANDS))
    def test_repeated_runs(self, capsys, tmp_path, sas_path, command):
        """Test two runs print the same stdout and write the same DOT file."""
        outputs = []
        for i in range(2):
            dot = tmp_path / f"run{i}.dot"
            argv = [arg.format(dot=dot, sas=sas_path) for arg in DETERMINISM_COMMANDS[command]]
            code, out, _ = run(capsys, *argv)
            assert code in (0, 3)
            outputs.append((out, dot.read_text() if dot.exists() else None))

        assert outputs[0] == outputs[1]
        assert outputs[0][0]
