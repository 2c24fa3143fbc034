"""Sensor-deception attacks on opaque supervised systems."""

from opacity_attack.attack.aas import (
    AasGraph,
    AasStats,
    AttackState,
    EnvState,
    ExtendedString,
    build_aas,
    format_extended,
    obs,
    obs_inverse,
    parse_extended,
    run_extended,
    tam,
)
from opacity_attack.attack.classify import LabelKind, StateLabel, classify, label_all, simplify
from opacity_attack.attack.model import (
    AttackAction,
    AttackedState,
    AttackRun,
    AttackStrategy,
    EraseFirstStrategy,
    PassThroughStrategy,
    action_space,
    attacked_step,
    bounded_attacked_language,
    is_stealthy,
    modify,
    supervisor_view,
)
from opacity_attack.attack.oracle import (
    OracleResult,
    StrategyTable,
    brute_force_opacity,
    definitional_estimates,
    exists_attacker,
)
from opacity_attack.attack.synthesis import (
    InducedStrategy,
    Sas,
    check_sas,
    complete_sas,
    extract_sas,
    induced_strategy,
    is_attackable,
    obs_inverse_in,
    verify_is_detectable,
)

__all__ = [
    "AasGraph",
    "AasStats",
    "AttackAction",
    "AttackRun",
    "AttackState",
    "AttackStrategy",
    "AttackedState",
    "EnvState",
    "EraseFirstStrategy",
    "ExtendedString",
    "InducedStrategy",
    "LabelKind",
    "OracleResult",
    "PassThroughStrategy",
    "Sas",
    "StateLabel",
    "StrategyTable",
    "action_space",
    "attacked_step",
    "bounded_attacked_language",
    "brute_force_opacity",
    "build_aas",
    "check_sas",
    "classify",
    "complete_sas",
    "definitional_estimates",
    "exists_attacker",
    "extract_sas",
    "format_extended",
    "induced_strategy",
    "is_attackable",
    "is_stealthy",
    "label_all",
    "modify",
    "obs",
    "obs_inverse",
    "obs_inverse_in",
    "parse_extended",
    "run_extended",
    "simplify",
    "supervisor_view",
    "tam",
    "verify_is_detectable",
]
