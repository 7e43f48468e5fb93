"""
Exhaustive ground truth for small degree sequences.

Every labeled tree with a given degree sequence is generated from the distinct
permutations of its Prüfer multiset (vertex i repeated d_i - 1 times), in
lexicographic order. The permutation space is cut into contiguous chunks by
first symbol; chunk results merge in order, so reports do not depend on how
many workers ran them.
"""

import logging
import math
import os
import pickle
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import networkx as nx
from dotenv import load_dotenv
from more_itertools import distinct_permutations

from .construct import alternating_greedy_all, greedy_tree
from .degseq import DegreeSequence, internal_degrees
from .errors import CapExceeded, EdgeNotPresent, EdgesShareVertex, NotATreeAfterSwitch, OracleError
from .indices import TOLERANCE, EdgeFunction, greedy_orientation, rf_index
from .models import AltGreedyValue, ExtremalForm, ExtremalReport, SweepSummary
from .tree import Edge, Tree, canonical_form, prufer_decode

load_dotenv()

logger = logging.getLogger(__name__)

ENUMERATION_CAP = int(os.getenv("SOMBOR_ENUMERATION_CAP", "100000000"))

_orientation = lru_cache(maxsize=None)(greedy_orientation)


# Enumeration

def expected_labeled_count(sequence: DegreeSequence) -> int:
    """(n-2)! / prod (d_i - 1)! labeled trees with vertex i of degree d_i."""
    if sequence.n <= 2:
        return 1
    count = math.factorial(sequence.n - 2)
    for d in sequence.degrees:
        count //= math.factorial(d - 1)
    return count


def prufer_content(sequence: DegreeSequence) -> Tuple[int, ...]:
    if sequence.n <= 2:
        return ()
    return tuple(v for v, d in enumerate(sequence.degrees) for _ in range(d - 1))


def _check_cap(sequence: DegreeSequence, cap: Optional[int]) -> int:
    count = expected_labeled_count(sequence)
    limit = ENUMERATION_CAP if cap is None else cap
    if count > limit:
        raise CapExceeded(count, limit)
    return count


def _chunk_heads(content: Tuple[int, ...]) -> List[Optional[int]]:
    return sorted(set(content)) if content else [None]


def _enumerate_chunk(sequence: DegreeSequence, head: Optional[int]) -> Iterator[Tree]:
    if sequence.n == 1:
        yield Tree.single_vertex()
        return

    content = list(prufer_content(sequence))
    if head is None:
        yield prufer_decode((), sequence.n)
        return

    content.remove(head)
    for rest in distinct_permutations(content):
        yield prufer_decode((head,) + tuple(rest), sequence.n)


def enumerate_trees(sequence: DegreeSequence, cap: Optional[int] = None) -> Iterator[Tree]:
    """
    Yield every labeled tree whose vertex i has degree sequence.degrees[i],
    each exactly once, in lexicographic order of Prüfer codes.

    Raises:
        CapExceeded: the multinomial count is above the cap
    """
    count = _check_cap(sequence, cap)
    logger.info("enumerating %d labeled trees for %s", count, sequence)
    for head in _chunk_heads(prufer_content(sequence)):
        yield from _enumerate_chunk(sequence, head)


# Extremal reports

@dataclass
class _Partial:
    """Per-chunk result: one entry per canonical form, first representative kept."""
    forms: Dict[bytes, Tuple[float, Tuple[Edge, ...]]] = field(default_factory=dict)
    count: int = 0

    def merge(self, other: "_Partial") -> "_Partial":
        for form, entry in other.forms.items():
            self.forms.setdefault(form, entry)
        self.count += other.count
        return self


def _scan_chunk(sequence: DegreeSequence, head: Optional[int], f: EdgeFunction) -> _Partial:
    partial = _Partial()
    for tree in _enumerate_chunk(sequence, head):
        partial.count += 1
        form = canonical_form(tree)
        if form not in partial.forms:
            partial.forms[form] = (rf_index(tree, f), tree.edges)
    logger.debug("chunk %s of %s: %d trees, %d forms", head, sequence, partial.count, len(partial.forms))
    return partial


def _picklable(f: EdgeFunction) -> bool:
    try:
        pickle.dumps(f)
        return True
    except (pickle.PicklingError, AttributeError, TypeError):
        return False


def _usable_jobs(jobs: int, f: EdgeFunction) -> int:
    if jobs > 1 and not _picklable(f):
        logger.warning("edge function %s cannot be sent to workers; running serially", f.name)
        return 1
    return jobs


def _constructions(sequence: DegreeSequence) -> Tuple[Tree, List[Tree]]:
    if sequence.n == 1:
        single = Tree.single_vertex()
        return single, [single]
    internal = internal_degrees(sequence)
    return greedy_tree(internal), [tree for tree, _ in alternating_greedy_all(internal)]


def _form_text(form: bytes) -> str:
    return form.decode("ascii")


def extremal_report(sequence: DegreeSequence, f: EdgeFunction, cap: Optional[int] = None,
                    jobs: int = 1) -> ExtremalReport:
    """
    Exact min and max of R_f over every tree with the degree sequence, and
    whether the greedy and alternating greedy trees attain them.

    Raises:
        CapExceeded: enumeration larger than the cap
        OracleError: the enumeration count disagrees with the multinomial
    """
    expected = _check_cap(sequence, cap)
    heads = _chunk_heads(prufer_content(sequence))
    workers = min(_usable_jobs(jobs, f), len(heads))

    merged = _Partial()
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            partials = pool.map(_scan_chunk, [sequence] * len(heads), heads, [f] * len(heads))
            for partial in partials:
                merged.merge(partial)
    else:
        for head in heads:
            merged.merge(_scan_chunk(sequence, head, f))

    if merged.count != expected:
        raise OracleError(f"{sequence}: enumerated {merged.count} labeled trees, expected {expected}")

    values = [value for value, _ in merged.forms.values()]
    low, high = min(values), max(values)
    argmin = sorted(form for form, (value, _) in merged.forms.items() if value <= low + TOLERANCE)
    argmax = sorted(form for form, (value, _) in merged.forms.items() if value >= high - TOLERANCE)

    greedy, alternating = _constructions(sequence)
    greedy_form = canonical_form(greedy)
    alt_values = []
    for tree in alternating:
        form = canonical_form(tree)
        alt_values.append(AltGreedyValue(
            form=_form_text(form),
            value=rf_index(tree, f),
            attains_min=form in argmin,
            attains_max=form in argmax,
        ))

    def extremal(forms):
        return [ExtremalForm(form=_form_text(form), value=merged.forms[form][0],
                             edges=list(merged.forms[form][1])) for form in forms]

    return ExtremalReport(
        sequence=list(sequence.degrees),
        index_name=f.name,
        min_value=low,
        max_value=high,
        argmin_forms=extremal(argmin),
        argmax_forms=extremal(argmax),
        labeled_count=merged.count,
        expected_labeled_count=expected,
        unlabeled_count=len(merged.forms),
        greedy_form=_form_text(greedy_form),
        greedy_value=rf_index(greedy, f),
        greedy_attains_min=greedy_form in argmin,
        greedy_attains_max=greedy_form in argmax,
        alt_greedy_attains_min=any(item.attains_min for item in alt_values),
        alt_greedy_attains_max=any(item.attains_max for item in alt_values),
        alt_greedy_values=alt_values,
        orientation=_orientation(f),
        tolerance=TOLERANCE,
    )


# Sweep

def _partitions(total: int, largest: int) -> Iterator[Tuple[int, ...]]:
    if total == 0:
        yield ()
        return
    for part in range(min(total, largest), 0, -1):
        for rest in _partitions(total - part, part):
            yield (part,) + rest


def tree_degree_sequences(n: int) -> Iterator[DegreeSequence]:
    """Every degree sequence of a tree on n vertices: ones plus 1 + a partition of n - 2."""
    if n == 1:
        yield DegreeSequence((0,))
        return
    for parts in _partitions(n - 2, n - 2):
        yield DegreeSequence(tuple(1 + p for p in parts) + (1,) * (n - len(parts)))


def _sweep_one(sequence: DegreeSequence, f: EdgeFunction, cap: Optional[int]) -> ExtremalReport:
    return extremal_report(sequence, f, cap=cap)


def sweep_verify(n_max: int, f: EdgeFunction, cap: Optional[int] = None, jobs: int = 1) -> List[ExtremalReport]:
    """Extremal reports for every tree degree sequence with 2 <= n <= n_max."""
    if n_max < 2:
        raise ValueError(f"n_max must be at least 2, got {n_max}")

    sequences = [s for n in range(2, n_max + 1) for s in tree_degree_sequences(n)]
    logger.info("sweeping %d degree sequences up to n = %d for %s", len(sequences), n_max, f.name)

    workers = _usable_jobs(jobs, f)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_sweep_one, sequences, [f] * len(sequences), [cap] * len(sequences)))
    return [_sweep_one(s, f, cap) for s in sequences]


def summarize(reports: Sequence[ExtremalReport], n_max: int, index_name: str) -> SweepSummary:
    greedy_failures = []
    alt_failures = []
    nonuniform = []
    for report in reports:
        if report.orientation == "min":
            greedy_ok, alt_ok = report.greedy_attains_min, report.alt_greedy_attains_max
        elif report.orientation == "max":
            greedy_ok, alt_ok = report.greedy_attains_max, report.alt_greedy_attains_min
        else:
            greedy_ok = alt_ok = True
        if not greedy_ok:
            greedy_failures.append(report.sequence)
        if not alt_ok:
            alt_failures.append(report.sequence)
        if not report.alt_greedy_uniform:
            nonuniform.append(report.sequence)

    return SweepSummary(
        n_max=n_max,
        index_name=index_name,
        sequences=len(reports),
        greedy_failures=greedy_failures,
        alt_greedy_failures=alt_failures,
        alt_greedy_nonuniform=nonuniform,
    )


# Edge switches

class SwitchPattern(str, Enum):
    AC_BD = "ac_bd"
    AD_BC = "ad_bc"


@dataclass(frozen=True)
class Switch:
    first: Edge
    second: Edge
    pattern: SwitchPattern
    before: float
    after: float

    @property
    def delta(self) -> float:
        return self.after - self.before


@dataclass(frozen=True)
class LocalCheck:
    is_local_optimum: bool
    improving: Optional[Switch] = None

    def __bool__(self) -> bool:
        return self.is_local_optimum


def edge_switch(tree: Tree, first: Edge, second: Edge, pattern: SwitchPattern) -> Tree:
    """
    Delete edges ab and cd, add ac and bd (AC_BD) or ad and bc (AD_BC).
    Degrees are preserved; the result is returned only if it is still a tree.
    """
    a, b = first
    c, d = second
    if {a, b} & {c, d}:
        raise EdgesShareVertex(f"edges {first} and {second} share a vertex")

    present = set(tree.edges)
    for u, v in (first, second):
        if (min(u, v), max(u, v)) not in present:
            raise EdgeNotPresent(f"edge ({u}, {v}) is not in the tree")

    added = [(a, c), (b, d)] if pattern is SwitchPattern.AC_BD else [(a, d), (b, c)]
    graph = tree.to_networkx()
    graph.remove_edges_from([first, second])
    graph.add_edges_from(added)
    if graph.number_of_edges() != tree.n - 1 or not nx.is_tree(graph):
        raise NotATreeAfterSwitch(f"switching {first}, {second} by {pattern.value} breaks the tree")

    return Tree(tree.n, tuple(sorted((min(u, v), max(u, v)) for u, v in graph.edges())))


def local_min_check(tree: Tree, f: EdgeFunction, maximize: bool = False) -> LocalCheck:
    """
    Look for one tree-preserving edge switch that lowers R_f by more than the
    tolerance (raises it, with `maximize`). The first one found is returned.
    """
    before = rf_index(tree, f)
    edges = tree.edges
    for i, first in enumerate(edges):
        for second in edges[i + 1:]:
            if set(first) & set(second):
                continue
            for pattern in SwitchPattern:
                try:
                    switched = edge_switch(tree, first, second, pattern)
                except NotATreeAfterSwitch:
                    continue
                after = rf_index(switched, f)
                gain = after - before if maximize else before - after
                if gain > TOLERANCE:
                    return LocalCheck(False, Switch(first, second, pattern, before, after))
    return LocalCheck(True)
