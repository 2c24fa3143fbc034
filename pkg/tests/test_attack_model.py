"""Unit tests for the sensor-deception attacker model."""

import pytest

from opacity_attack.attack.model import (
    AttackAction,
    AttackedState,
    AttackStrategy,
    EraseFirstStrategy,
    PassThroughStrategy,
    action_space,
    attacked_step,
    bounded_attacked_language,
    initial_knowledge,
    is_stealthy,
    modify,
    supervisor_view,
)
from opacity_attack.automata.automaton import bounded_language
from opacity_attack.automata.constants import Z_ATT
from opacity_attack.automata.supervisor import closed_loop
from opacity_attack.core.errors import ContractViolationError, ModelValidationError

ERASE = AttackAction.erase()


class ReplaceWithC(AttackStrategy):
    """Inadmissible strategy: c is not vulnerable."""

    def choose(self, history, event):
        return AttackAction.forward("c")


class TestAttackAction:
    """Tests for hatted attacker actions."""

    def test_parse(self):
        """Test parsing of erase and forward labels."""
        assert AttackAction.parse("^eps") == ERASE
        assert AttackAction.parse("^b") == AttackAction.forward("b")

    @pytest.mark.parametrize("text", ["b", "^", ""])
    def test_parse_malformed(self, text):
        """Test labels without a hat are rejected."""
        with pytest.raises(ModelValidationError):
            AttackAction.parse(text)

    def test_str(self):
        """Test printed labels."""
        assert str(ERASE) == "^eps"
        assert str(AttackAction.forward("b")) == "^b"

    def test_emitted(self):
        """Test what the supervisor receives."""
        assert ERASE.emitted == ()
        assert AttackAction.forward("b").emitted == ("b",)

    def test_sort_key(self):
        """Test erase sorts before forwards."""
        actions = [AttackAction.forward("d"), ERASE, AttackAction.forward("b")]
        expected = [ERASE, AttackAction.forward("b"), AttackAction.forward("d")]
        assert sorted(actions, key=AttackAction.sort_key) == expected


class TestActionSpace:
    """Tests for V(σ)."""

    def test_vulnerable(self, plant):
        """Test a vulnerable event may be erased or forwarded."""
        assert action_space(plant.alphabet, "b") == (ERASE, AttackAction.forward("b"))

    def test_protected(self, plant):
        """Test a protected event is only forwarded."""
        assert action_space(plant.alphabet, "c") == (AttackAction.forward("c"),)

    def test_unobservable(self, plant):
        """Test the attacker never sees unobservable events."""
        with pytest.raises(ModelValidationError, match="observable"):
            action_space(plant.alphabet, "a")


class TestStrategies:
    """Tests for strategies and g_A."""

    def test_pass_through(self, plant):
        """Test the identity attacker leaves observations alone."""
        assert modify(PassThroughStrategy(plant.alphabet), ["b", "c", "d"]) == ("b", "c", "d")

    def test_erase_first(self, plant):
        """Test only the first b is erased."""
        assert modify(EraseFirstStrategy(plant.alphabet, "b"), ["b", "c", "b"]) == ("c", "b")

    def test_empty_observation(self, plant):
        """Test g_A(ε) = ε."""
        assert modify(EraseFirstStrategy(plant.alphabet, "b"), []) == ()

    def test_erase_first_requires_vulnerable(self, plant):
        """Test protected events cannot be erased."""
        with pytest.raises(ModelValidationError):
            EraseFirstStrategy(plant.alphabet, "c")

    def test_inadmissible_action(self, plant):
        """Test decide() rejects actions outside V(σ)."""
        with pytest.raises(ContractViolationError):
            modify(ReplaceWithC(plant.alphabet), ["b"])

    def test_unobservable_input(self, plant):
        """Test observations with unobservable events are rejected."""
        with pytest.raises(ModelValidationError):
            modify(PassThroughStrategy(plant.alphabet), ["a"])


class TestAttackedStep:
    """Tests for single moves of S_A/G."""

    def test_erase_keeps_supervisor(self, plant, sup):
        """Test an erased event does not move the supervisor."""
        strategy = EraseFirstStrategy(plant.alphabet, "b")
        state = attacked_step(plant, sup, strategy, AttackedState("1", "z0"), "b")
        assert state == AttackedState("3", "z0", ("b",), ())

    def test_forward_moves_supervisor(self, plant, sup):
        """Test a forwarded event drives ξ."""
        strategy = EraseFirstStrategy(plant.alphabet, "b")
        state = attacked_step(plant, sup, strategy, AttackedState("3", "z0", ("b",), ()), "c")
        assert state == AttackedState("6", "z2", ("b", "c"), ("c",))
        assert not state.detected

    def test_unobservable_step(self, plant, sup):
        """Test unobservable events bypass the attacker."""
        state = attacked_step(plant, sup, PassThroughStrategy(plant.alphabet), AttackedState("1", "z0"), "a")
        assert state == AttackedState("2", "z0")

    def test_infeasible_event(self, plant, sup):
        """Test events undefined in the plant are rejected."""
        with pytest.raises(ContractViolationError, match="not feasible"):
            attacked_step(plant, sup, PassThroughStrategy(plant.alphabet), AttackedState("1", "z0"), "d")

    def test_disabled_event(self, plant, sup):
        """Test events disabled by the supervisor are rejected."""
        with pytest.raises(ContractViolationError, match="disabled"):
            attacked_step(plant, sup, PassThroughStrategy(plant.alphabet), AttackedState("3", "z1"), "c")

    def test_detected_flag(self):
        """Test z_att marks detection."""
        assert AttackedState("1", Z_ATT).detected


class TestStealth:
    """Tests for stealthiness and the attacked language."""

    def test_erase_first_b_then_c_is_stealthy(self, plant, sup):
        """Test the supervisor can explain the doctored observation c."""
        assert is_stealthy(plant, sup, EraseFirstStrategy(plant.alphabet, "b"), ["b", "c"])

    def test_erase_first_b_then_d_is_detected(self, plant, sup):
        """Test the doctored observation d is impossible in S/G."""
        assert not is_stealthy(plant, sup, EraseFirstStrategy(plant.alphabet, "b"), ["b", "d"])

    def test_attacked_language(self, plant, sup):
        """Test erasing b lets the plant generate b c."""
        strategy = EraseFirstStrategy(plant.alphabet, "b")
        words = bounded_attacked_language(plant, sup, strategy, 2)
        assert ("b", "c") in words
        assert ("b", "d") in words
        from_two = bounded_attacked_language(plant, sup, strategy, 2, initial=["2"])
        assert ("b", "d") in from_two
        assert ("b", "c") not in from_two

    @pytest.mark.parametrize("horizon", range(6))
    def test_pass_through_language(self, plant, sup, horizon):
        """Test the identity attacker leaves L(S/G) unchanged."""
        loop = closed_loop(plant, sup)
        expected = set()
        for start in loop.initial:
            expected |= bounded_language(loop, start, horizon)
        assert bounded_attacked_language(plant, sup, PassThroughStrategy(plant.alphabet), horizon) == expected

    def test_negative_horizon(self, plant, sup):
        """Test horizons must be non-negative."""
        with pytest.raises(ModelValidationError):
            bounded_attacked_language(plant, sup, PassThroughStrategy(plant.alphabet), -1)


class TestSupervisorView:
    """Tests for replaying an attack from both sides."""

    def test_initial_knowledge(self, plant, sup):
        """Test the attacker's knowledge before any observation."""
        knowledge = initial_knowledge(plant, sup)
        assert knowledge.current == frozenset({"1", "2"})
        assert knowledge.initial == frozenset({"1", "2"})
        assert knowledge.z == "z0"
        assert knowledge.stealthy

    def test_revealing_run(self, plant, sup):
        """Test erasing b then passing c pins the secret stealthily."""
        run = supervisor_view(plant, sup, EraseFirstStrategy(plant.alphabet, "b"), ["b", "c"])
        assert run.doctored == ("c",)
        first, second = run.steps
        assert first.action == ERASE
        assert first.supervisor_estimate == frozenset({"1", "2"})
        assert first.attacker_current == frozenset({"3", "4"})
        assert not first.detected
        assert second.supervisor_estimate == frozenset({"3", "4", "5"})
        assert second.attacker_initial == frozenset({"1"})
        assert run.stealthy_prefix == (True, True)
        assert run.longest_stealthy_prefix == ("b", "c")
        assert run.detected

    def test_revealed_attack(self, plant, sup):
        """Test the doctored d sends the supervisor to z_att."""
        run = supervisor_view(plant, sup, EraseFirstStrategy(plant.alphabet, "b"), ["b", "d"])
        assert run.stealthy_prefix == (True, False)
        assert run.longest_stealthy_prefix == ("b",)
        assert run.steps[-1].supervisor_estimate == frozenset()
        assert not run.detected

    def test_empty_run(self, plant, sup):
        """Test an empty observation detects nothing."""
        run = supervisor_view(plant, sup, PassThroughStrategy(plant.alphabet), [])
        assert run.steps == ()
        assert not run.detected
