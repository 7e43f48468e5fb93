"""
Labeled trees on vertices 0..n-1.

Covers degree bookkeeping, the Prüfer codec, centroid-rooted AHU canonical
forms for deduplicating unlabeled trees, and the edge-list / DOT text formats.
"""

import logging
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Dict, Iterable, List, NewType, Sequence, Tuple, Union

import networkx as nx

from .degseq import DegreeSequence
from .errors import EdgeListParseError, LabelOutOfRange, NotATree, TreeError

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]
CanonicalForm = NewType("CanonicalForm", bytes)


def _normalize(edges: Iterable[Sequence[int]]) -> Tuple[Edge, ...]:
    return tuple(sorted((min(u, v), max(u, v)) for u, v in edges))


@dataclass(frozen=True)
class Tree:
    """
    Undirected tree as a vertex count and a sorted edge tuple.

    The constructor trusts its input; use `Tree.from_edges` for anything that
    did not come out of this package.
    """
    n: int
    edges: Tuple[Edge, ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Tree":
        """Build a tree, checking labels, loops, duplicates and connectivity."""
        if n < 1:
            raise NotATree(f"a tree needs at least one vertex, got n = {n}")

        edge_list = [tuple(e) for e in edges]
        for edge in edge_list:
            if len(edge) != 2:
                raise NotATree(f"edge {edge} does not have two endpoints")
            for label in edge:
                if not 0 <= label < n:
                    raise LabelOutOfRange(f"label {label} outside 0..{n - 1}")
            if edge[0] == edge[1]:
                raise NotATree(f"self-loop at {edge[0]}")

        normalized = _normalize(edge_list)
        if len(set(normalized)) != len(normalized):
            raise NotATree("duplicate edge")

        graph = nx.Graph()
        graph.add_nodes_from(range(n))
        graph.add_edges_from(normalized)
        if not nx.is_tree(graph):
            raise NotATree(f"{len(normalized)} edges on {n} vertices do not form a tree")

        return cls(n, normalized)

    @classmethod
    def single_vertex(cls) -> "Tree":
        return cls(1, ())

    @cached_property
    def adjacency(self) -> Tuple[Tuple[int, ...], ...]:
        neighbors: List[List[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            neighbors[u].append(v)
            neighbors[v].append(u)
        return tuple(tuple(sorted(adj)) for adj in neighbors)

    @cached_property
    def degree_list(self) -> Tuple[int, ...]:
        """Degree of each vertex, indexed by label."""
        return tuple(len(adj) for adj in self.adjacency)

    def degree(self, vertex: int) -> int:
        return self.degree_list[vertex]

    def leaves(self) -> List[int]:
        return [v for v, d in enumerate(self.degree_list) if d == 1]

    def relabel(self, mapping: Union[Sequence[int], Dict[int, int]]) -> "Tree":
        """Apply a permutation of 0..n-1 given as a list or dict old -> new."""
        return Tree(self.n, _normalize((mapping[u], mapping[v]) for u, v in self.edges))

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.edges)
        return graph


def degrees(tree: Tree) -> DegreeSequence:
    if tree.n == 1:
        return DegreeSequence((0,))
    return DegreeSequence(tree.degree_list)


# Prüfer codec

def prufer_decode(code: Sequence[int], n: int) -> Tree:
    """
    Decode a Prüfer sequence over labels 0..n-1 into its labeled tree.

    Vertex i of the result has degree (multiplicity of i in code) + 1.
    """
    if n < 2:
        raise TreeError(f"Prüfer codes describe trees with n >= 2, got n = {n}")
    if len(code) != n - 2:
        raise TreeError(f"Prüfer code of length {len(code)} does not fit n = {n}")
    for label in code:
        if not 0 <= label < n:
            raise LabelOutOfRange(f"label {label} outside 0..{n - 1}")

    if n == 2:
        return Tree(2, ((0, 1),))
    graph = nx.from_prufer_sequence(list(code))
    return Tree(n, _normalize(graph.edges()))


def prufer_encode(tree: Tree) -> Tuple[int, ...]:
    if tree.n < 2:
        raise TreeError("Prüfer codes describe trees with n >= 2")
    if tree.n == 2:
        return ()
    return tuple(nx.to_prufer_sequence(tree.to_networkx()))


# Canonical forms

def _bfs_order(tree: Tree, root: int) -> Tuple[List[int], List[int]]:
    parent = [-1] * tree.n
    order = [root]
    seen = [False] * tree.n
    seen[root] = True
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in tree.adjacency[u]:
            if not seen[w]:
                seen[w] = True
                parent[w] = u
                order.append(w)
                queue.append(w)
    return order, parent


def centroids(tree: Tree) -> List[int]:
    """The one or two vertices whose removal leaves the smallest largest component."""
    if tree.n == 1:
        return [0]

    order, parent = _bfs_order(tree, 0)
    size = [1] * tree.n
    heaviest = [0] * tree.n
    for v in reversed(order):
        p = parent[v]
        if p >= 0:
            size[p] += size[v]
            heaviest[p] = max(heaviest[p], size[v])

    worst = [max(heaviest[v], tree.n - size[v]) for v in range(tree.n)]
    best = min(worst)
    return [v for v in range(tree.n) if worst[v] == best]


def _rooted_codes(tree: Tree, root: int) -> Dict[int, bytes]:
    order, parent = _bfs_order(tree, root)
    children: Dict[int, List[bytes]] = {v: [] for v in order}
    codes: Dict[int, bytes] = {}
    for v in reversed(order):
        codes[v] = b"(" + b"".join(sorted(children[v])) + b")"
        if parent[v] >= 0:
            children[parent[v]].append(codes[v])
    return codes


def _canonical_root(tree: Tree) -> Tuple[int, Dict[int, bytes]]:
    rooted = [(c, _rooted_codes(tree, c)) for c in centroids(tree)]
    return min(rooted, key=lambda item: item[1][item[0]])


def canonical_form(tree: Tree) -> CanonicalForm:
    """AHU code rooted at the centroid; the smaller code when there are two."""
    root, codes = _canonical_root(tree)
    return CanonicalForm(codes[root])


def canonical_relabel(tree: Tree) -> Tree:
    """
    Relabel in BFS order from the canonical root, children sorted by code.
    Isomorphic trees come out as equal labeled trees.
    """
    root, codes = _canonical_root(tree)
    labels = {root: 0}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        pending = [w for w in tree.adjacency[u] if w not in labels]
        for w in sorted(pending, key=codes.__getitem__):
            labels[w] = len(labels)
            queue.append(w)
    return tree.relabel(labels)


# Text formats

def to_edge_list(tree: Tree) -> str:
    lines = [f"{u} {v}" for u, v in tree.edges]
    if tree.n == 1:
        lines.insert(0, "n=1")
    return "\n".join(lines)


def to_dot(tree: Tree, name: str = "tree") -> str:
    lines = [f"graph {name} {{"]
    for v, d in enumerate(tree.degree_list):
        lines.append(f'    {v} [label="{v} (deg {d})"];')
    for u, v in tree.edges:
        lines.append(f"    {u} -- {v};")
    lines.append("}")
    return "\n".join(lines)


def parse_edge_list(text: str) -> Tree:
    """
    Parse "u v" lines with an optional leading "n=<count>" line.
    Blank lines and lines starting with '#' are skipped.
    """
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("n="):
            try:
                n = int(line[2:])
            except ValueError:
                raise EdgeListParseError(f"line {lineno}: bad vertex count {line!r}") from None
            continue

        parts = line.split()
        if len(parts) != 2:
            raise EdgeListParseError(f"line {lineno}: expected 'u v', got {line!r}")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise EdgeListParseError(f"line {lineno}: labels must be integers") from None

    if n is None:
        if not edges:
            raise EdgeListParseError("no edges and no vertex count")
        n = max(max(e) for e in edges) + 1
    return Tree.from_edges(n, edges)


def read_edge_list(path: Union[str, Path]) -> Tree:
    logger.debug("reading edge list from %s", path)
    return parse_edge_list(Path(path).read_text())


def path_tree(n: int) -> Tree:
    return Tree(n, tuple((i, i + 1) for i in range(n - 1)))


def star_tree(n: int) -> Tree:
    return Tree(n, tuple((0, i) for i in range(1, n)))
