"""Contextuality workbench: Hardy-like paradox and extended KCBS inequality for N-vertex graphs."""

__version__ = "0.1.0"
