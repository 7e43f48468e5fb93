"""
Exception hierarchy for degree sequences, trees, constructions and the oracle.
"""

from typing import Optional


class SomborError(Exception):
    """Base class for every error raised by the package."""


# Degree sequences

class SequenceError(SomborError, ValueError):
    """Invalid degree sequence or internal degree sequence."""


class SequenceParseError(SequenceError):
    pass


class EmptySequence(SequenceError):
    pass


class NonPositiveEntry(SequenceError):
    pass


class NotRealizable(SequenceError):
    pass


class InvalidInternalEntry(SequenceError):
    pass


class InfeasibleInternal(SequenceError):
    pass


# Trees

class TreeError(SomborError, ValueError):
    """Invalid tree, Prüfer code or edge-list text."""


class NotATree(TreeError):
    pass


class LabelOutOfRange(TreeError):
    pass


class EdgeListParseError(TreeError):
    pass


# Edge switches

class SwitchError(SomborError, ValueError):
    """Edge switch that cannot be applied."""


class EdgesShareVertex(SwitchError):
    pass


class EdgeNotPresent(SwitchError):
    pass


class NotATreeAfterSwitch(SwitchError):
    pass


# Edge functions

class EdgeFunctionError(SomborError, ValueError):
    pass


class AsymmetricFunction(EdgeFunctionError):
    pass


class UnknownEdgeFunction(EdgeFunctionError):
    pass


class DuplicateEdgeFunction(EdgeFunctionError):
    pass


# Limits and oracle consistency

class CapExceeded(SomborError):
    """A combinatorial search would exceed its configured cap."""

    def __init__(self, count: int, cap: int, what: str = "labeled trees"):
        self.count = count
        self.cap = cap
        self.what = what
        super().__init__(f"{count} {what} exceeds cap {cap}")


class AlternatingGreedyCapExceeded(CapExceeded):
    def __init__(self, count: int, cap: int, what: Optional[str] = None):
        super().__init__(count, cap, what or "alternating greedy trees")


class OracleError(SomborError):
    """Internal consistency check of the exhaustive oracle failed."""
