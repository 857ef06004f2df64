"""Exact A-hat genus, alpha invariant and PSC verdicts for twisted Milnor hypersurfaces."""
from .invariants import TwistSpec, report

__all__ = ["TwistSpec", "report"]
__version__ = "0.1.0"
