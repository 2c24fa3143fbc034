"""Core application functionality."""

from opacity_attack.core.config import Settings, setup_logging
from opacity_attack.core.errors import ContractViolationError, EnumerationLimitError, ModelValidationError

__all__ = [
    "ContractViolationError",
    "EnumerationLimitError",
    "ModelValidationError",
    "Settings",
    "setup_logging",
]
