"""
Degree sequences of trees and their internal-degree subsequences.
Parses the text format used on the command line and validates realizability.
"""

import re
from dataclasses import dataclass
from typing import Iterable, Tuple

from .errors import (
    EmptySequence,
    InfeasibleInternal,
    InvalidInternalEntry,
    NonPositiveEntry,
    NotRealizable,
    SequenceParseError,
)

_SEPARATORS = re.compile(r"[\s,]+")


@dataclass(frozen=True)
class DegreeSequence:
    """Non-increasing degree sequence realizable by a tree."""
    degrees: Tuple[int, ...]

    def __post_init__(self):
        degrees = tuple(sorted((int(d) for d in self.degrees), reverse=True))
        object.__setattr__(self, "degrees", degrees)

        if not degrees:
            raise EmptySequence("degree sequence is empty")
        if degrees == (0,):
            return
        if degrees[-1] < 1:
            raise NonPositiveEntry(f"entry {degrees[-1]} is not positive")

        n = len(degrees)
        if sum(degrees) != 2 * (n - 1):
            raise NotRealizable(
                f"sum {sum(degrees)} != 2*(n-1) = {2 * (n - 1)} for n = {n}"
            )

    @property
    def n(self) -> int:
        return len(self.degrees)

    def __iter__(self):
        return iter(self.degrees)

    def __len__(self) -> int:
        return len(self.degrees)

    def __str__(self) -> str:
        return serialize(self.degrees)


@dataclass(frozen=True)
class InternalDegreeSequence:
    """Degrees d_1 >= ... >= d_m of the internal vertices, all at least 2."""
    internal: Tuple[int, ...] = ()

    def __post_init__(self):
        internal = tuple(sorted((int(d) for d in self.internal), reverse=True))
        object.__setattr__(self, "internal", internal)

        for d in internal:
            if d < 2:
                raise InvalidInternalEntry(f"internal degree {d} is below 2")

    @property
    def m(self) -> int:
        return len(self.internal)

    def __iter__(self):
        return iter(self.internal)

    def __len__(self) -> int:
        return len(self.internal)

    def __getitem__(self, index):
        return self.internal[index]

    def __str__(self) -> str:
        return serialize(self.internal)


def _tokens(text: str) -> Tuple[int, ...]:
    stripped = text.strip().strip("[]()").strip()
    if not stripped:
        return ()

    values = []
    for token in _SEPARATORS.split(stripped):
        if not token:
            continue
        try:
            values.append(int(token))
        except ValueError:
            raise SequenceParseError(f"not an integer: {token!r}") from None
    return tuple(values)


def parse_degree_sequence(text: str) -> DegreeSequence:
    """
    Parse integers separated by whitespace or commas, optionally in brackets.

    Raises:
        EmptySequence, NonPositiveEntry, NotRealizable, SequenceParseError
    """
    return DegreeSequence(_tokens(text))


def parse_internal_sequence(text: str) -> InternalDegreeSequence:
    """Parse an internal-degree sequence; the empty text is the empty sequence."""
    return InternalDegreeSequence(_tokens(text))


def serialize(values: Iterable[int]) -> str:
    """Canonical text: space separated, no brackets."""
    return " ".join(str(v) for v in values)


def internal_degrees(sequence: DegreeSequence) -> InternalDegreeSequence:
    return InternalDegreeSequence(tuple(d for d in sequence.degrees if d > 1))


def leaf_count(internal: InternalDegreeSequence) -> int:
    """Number of leaves forced by the handshake identity."""
    if not internal.internal:
        return 2
    return sum(internal.internal) - 2 * internal.m + 2


def complete_internal(internal: InternalDegreeSequence) -> DegreeSequence:
    """Append the forced number of leaves to an internal sequence."""
    leaves = leaf_count(internal)
    if leaves < 0:
        raise InfeasibleInternal(f"internal sequence {internal} needs {leaves} leaves")
    return DegreeSequence(internal.internal + (1,) * leaves)
