"""Opacity Attack - initial-state opacity and sensor-deception attack synthesis."""

from importlib.metadata import version

__version__ = version("opacity-attack")
