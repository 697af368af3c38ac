"""Standard isotrivial fibrations: surfaces (C1 x C2)/G, their invariants and fibres.

Groups are finite groups given by Cayley tables, curves by generating vectors,
and the surface by a pair of generating vectors for the same group.
"""

from .analysis import Analysis, InvariantViolation, analyze, to_report
from .groups import FiniteGroup, GroupError, build_group
from .vectors import BranchingData, GeneratingVector, validate

__version__ = "0.1.0"

__all__ = ["Analysis", "BranchingData", "FiniteGroup", "GeneratingVector", "GroupError",
           "InvariantViolation", "analyze", "build_group", "to_report", "validate"]
