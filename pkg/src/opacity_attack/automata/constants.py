"""Reserved identifiers and constants for the attack-synthesis toolkit."""

from typing import Final

# ============================================================================
# Reserved Identifiers
# ============================================================================

Z_ATT: Final = "z_att"  # supervisor has realized the presence of the attacker
EPSILON: Final = None  # empty observation for observable reach

# Hatted attacker actions as printed in extended strings and documents
HAT: Final = "^"
ERASE_LABEL: Final = "^eps"

RESERVED_IDENTIFIERS: Final = frozenset({Z_ATT})

# ============================================================================
# Defaults
# ============================================================================

DEFAULT_HORIZON: Final = 6  # smallest horizon exercising every branch of the running example
AUGMENTED_CACHE_SIZE: Final = 64  # plants whose augmented automaton is kept

# ============================================================================
# Command-Line Exit Codes
# ============================================================================

EXIT_OK: Final = 0
EXIT_ERROR: Final = 1
EXIT_NOT_ATTACKABLE: Final = 2
EXIT_NOT_OPAQUE: Final = 3
