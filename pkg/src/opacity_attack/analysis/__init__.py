"""Privacy analysis of supervised systems."""

from opacity_attack.analysis.opacity import ObserverState, OpacityVerdict, build_observer, check_initial_state_opacity

__all__ = ["ObserverState", "OpacityVerdict", "build_observer", "check_initial_state_opacity"]
