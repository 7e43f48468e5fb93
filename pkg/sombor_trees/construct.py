"""
Greedy and alternating greedy trees for an internal degree sequence.

The greedy tree is built level by level, always handing the largest remaining
internal degree to the next child. Alternating greedy trees come from a
recursive decomposition: either one root carries every internal vertex as a
child (rule a1), or a small subtree T is split off (rule a2) and its root is
identified with a leaf of the recursively built remainder S (rule a3). The
leaf must have a neighbour of smallest degree among the leaves of S; different
admissible leaves can give non-isomorphic trees.
"""

import logging
import os
from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from dotenv import load_dotenv

from .degseq import InternalDegreeSequence
from .errors import AlternatingGreedyCapExceeded
from .tree import CanonicalForm, Edge, Tree, canonical_form, canonical_relabel

load_dotenv()

logger = logging.getLogger(__name__)

ALT_GREEDY_CAP = int(os.getenv("SOMBOR_ALT_GREEDY_CAP", "10000"))

SINGLE_EDGE = Tree(2, ((0, 1),))


@dataclass(frozen=True)
class JoinRecord:
    """One (a3) identification of the root of T with a leaf of S."""
    host: Tree
    leaf: int
    neighbor_degree: int
    candidates: Tuple[int, ...]


@dataclass(frozen=True)
class TraceStep:
    rule: str
    sequence: Tuple[int, ...]
    subtree: Tree
    root: int
    remaining: Tuple[int, ...]
    join: Optional[JoinRecord] = None


@dataclass(frozen=True)
class ConstructionTrace:
    """Steps of the decomposition, outermost call first."""
    steps: Tuple[TraceStep, ...] = ()

    def __iter__(self):
        return iter(self.steps)

    def __len__(self) -> int:
        return len(self.steps)

    def __getitem__(self, index) -> TraceStep:
        return self.steps[index]


# Greedy tree

def greedy_tree(internal: InternalDegreeSequence) -> Tree:
    """
    Root gets d_1; every processed vertex, in BFS order, hands its children
    the largest internal degrees still available, then leaves fill the rest.
    """
    degrees = internal.internal
    if not degrees:
        return SINGLE_EDGE

    edges: List[Edge] = []
    available = deque(degrees[1:])
    queue = deque([(0, degrees[0])])
    count = 1

    while queue:
        vertex, label = queue.popleft()
        children = label if vertex == 0 else label - 1
        for _ in range(children):
            child = count
            count += 1
            edges.append((vertex, child))
            if available:
                queue.append((child, available.popleft()))

    logger.debug("greedy tree for %s has %d vertices", internal, count)
    return Tree(count, tuple(sorted(edges)))


# Alternating greedy trees

class _Builder:
    """Accumulates edges while vertices are appended one at a time."""

    def __init__(self, n: int = 0, edges: Sequence[Edge] = ()):
        self.n = n
        self.edges: List[Edge] = list(edges)

    def vertex(self) -> int:
        self.n += 1
        return self.n - 1

    def attach(self, parent: int, degree: int) -> int:
        """Add a child of `parent` that will end with `degree` (its leaves included)."""
        child = self.vertex()
        self.edges.append((parent, child))
        for _ in range(degree - 1):
            self.edges.append((child, self.vertex()))
        return child

    def tree(self) -> Tree:
        return Tree(self.n, tuple(sorted((min(e), max(e)) for e in self.edges)))


def _rule_a1(sequence: Tuple[int, ...]) -> Tree:
    """Root of degree d_m with children d_1..d_{m-1} and d_m - m + 1 leaves."""
    builder = _Builder()
    root = builder.vertex()
    for degree in sequence[:-1]:
        builder.attach(root, degree)
    for _ in range(sequence[-1] - len(sequence) + 1):
        builder.attach(root, 1)
    return builder.tree()


def _rule_a2(head: Tuple[int, ...]) -> Tree:
    """Root with children of degrees d_1..d_{d_m - 1}."""
    builder = _Builder()
    root = builder.vertex()
    for degree in head:
        builder.attach(root, degree)
    return builder.tree()


def _identify(host: Tree, leaf: int, head: Tuple[int, ...]) -> Tree:
    """Hang the children of T's root from `leaf`; the leaf takes the root's place."""
    builder = _Builder(host.n, host.edges)
    for degree in head:
        builder.attach(leaf, degree)
    return builder.tree()


def leaf_neighbor_degrees(tree: Tree) -> Dict[int, int]:
    """Map each leaf to the degree of its only neighbour."""
    return {v: tree.degree(tree.adjacency[v][0]) for v in tree.leaves()}


def _alternating(sequence: Tuple[int, ...], branch: bool, cap: int) -> List[Tuple[Tree, Tuple[TraceStep, ...]]]:
    m = len(sequence)
    d_m = sequence[-1]

    if m - 1 <= d_m:
        subtree = _rule_a1(sequence)
        step = TraceStep("a1", sequence, subtree, 0, ())
        logger.debug("a1 on %s", sequence)
        return [(canonical_relabel(subtree), (step,))]

    head = sequence[:d_m - 1]
    remaining = sequence[d_m - 1:m - 1]
    subtree = _rule_a2(head)
    logger.debug("a2 on %s splits off %s, recursing on %s", sequence, head, remaining)

    results: Dict[CanonicalForm, Tuple[Tree, Tuple[TraceStep, ...]]] = {}
    for host, below in _alternating(remaining, branch, cap):
        neighbor = leaf_neighbor_degrees(host)
        smallest = min(neighbor.values())
        candidates = tuple(sorted(v for v, d in neighbor.items() if d == smallest))

        for leaf in candidates if branch else candidates[:1]:
            merged = canonical_relabel(_identify(host, leaf, head))
            form = canonical_form(merged)
            if form in results:
                continue

            join = JoinRecord(host, leaf, neighbor[leaf], candidates)
            step = TraceStep("a2", sequence, subtree, 0, remaining, join)
            results[form] = (merged, (step,) + below)
            if len(results) > cap:
                raise AlternatingGreedyCapExceeded(len(results), cap)

    return list(results.values())


def alternating_greedy_all(internal: InternalDegreeSequence,
                           cap: Optional[int] = None) -> List[Tuple[Tree, ConstructionTrace]]:
    """
    Every alternating greedy tree, one per isomorphism class, each with the
    trace of the choices that produced it. Trees are canonically labeled.

    Raises:
        AlternatingGreedyCapExceeded: more than `cap` distinct trees at some level
    """
    if not internal.internal:
        return [(SINGLE_EDGE, ConstructionTrace())]

    limit = ALT_GREEDY_CAP if cap is None else cap
    found = _alternating(internal.internal, branch=True, cap=limit)
    logger.info("%d alternating greedy trees for %s", len(found), internal)
    return [(tree, ConstructionTrace(steps)) for tree, steps in found]


def alternating_greedy_one(internal: InternalDegreeSequence) -> Tuple[Tree, ConstructionTrace]:
    """
    One alternating greedy tree: at every (a3) join the admissible leaf with the
    smallest label in the canonical labeling of S is taken.
    """
    if not internal.internal:
        return SINGLE_EDGE, ConstructionTrace()

    (tree, steps), = _alternating(internal.internal, branch=False, cap=ALT_GREEDY_CAP)
    return tree, ConstructionTrace(steps)


def check_trace(trace: ConstructionTrace) -> None:
    """Assert the invariants a trace must satisfy; raises AssertionError with the step index."""
    for index, step in enumerate(trace):
        if step.join is None:
            continue
        neighbor = leaf_neighbor_degrees(step.join.host)
        assert step.join.leaf in neighbor, f"step {index}: chosen vertex is not a leaf of S"
        assert step.join.neighbor_degree == neighbor[step.join.leaf], f"step {index}: recorded degree is stale"
        assert step.join.neighbor_degree == min(neighbor.values()), (
            f"step {index}: leaf neighbour degree {step.join.neighbor_degree} is not minimal"
        )

    lengths = [len(step.remaining) for step in trace]
    for index in range(1, len(lengths)):
        assert lengths[index] < lengths[index - 1], f"step {index}: remaining sequence did not shrink"
