"""
Bond-incident-degree indices R_f(T) = sum over edges of f(d_u, d_v).

Holds the catalog of symmetric edge functions (Sombor and friends), the index
evaluation, and the grid checker for the exchange condition

    f(x, a) + f(y, b) >= f(y, a) + f(x, b)    for all x >= y, a >= b.
"""

import logging
import math
import os
from dataclasses import dataclass
from typing import Callable, Dict, Optional, Tuple

import numpy as np
from dotenv import load_dotenv

from .errors import AsymmetricFunction, DuplicateEdgeFunction, UnknownEdgeFunction
from .models import ConditionReport
from .tree import Tree

load_dotenv()

logger = logging.getLogger(__name__)

TOLERANCE = float(os.getenv("SOMBOR_TOLERANCE", "1e-9"))
SYMMETRY_GRID = 20
ORIENTATION_GRID = 20


@dataclass(frozen=True)
class EdgeFunction:
    """A named symmetric function of the two endpoint degrees of an edge."""
    name: str
    func: Callable[[int, int], float]

    def __call__(self, x: int, a: int) -> float:
        return self.func(x, a)


# Built-in edge functions. Module-level so they pickle into worker processes.

def sombor_edge(x: int, a: int) -> float:
    return math.sqrt(x * x + a * a)


def minus_sombor_edge(x: int, a: int) -> float:
    return -math.sqrt(x * x + a * a)


def product_edge(x: int, a: int) -> float:
    return float(x * a)


def sum_edge(x: int, a: int) -> float:
    return float(x + a)


@dataclass(frozen=True)
class _Negation:
    inner: Callable[[int, int], float]

    def __call__(self, x: int, a: int) -> float:
        return -self.inner(x, a)


@dataclass(frozen=True)
class _AffineCombination:
    terms: Tuple[Tuple[float, Callable[[int, int], float]], ...]

    def __call__(self, x: int, a: int) -> float:
        return math.fsum(c * f(x, a) for c, f in self.terms)


_REGISTRY: Dict[str, EdgeFunction] = {}


def check_symmetry(func: Callable[[int, int], float], grid_max: int = SYMMETRY_GRID) -> Optional[Tuple[int, int]]:
    """Return the first pair (x, a) with f(x, a) != f(a, x), or None."""
    for x in range(1, grid_max + 1):
        for a in range(x + 1, grid_max + 1):
            if not math.isclose(func(x, a), func(a, x), rel_tol=0.0, abs_tol=TOLERANCE):
                return x, a
    return None


def register_edge_function(name: str, func: Callable[[int, int], float]) -> EdgeFunction:
    """
    Add a function to the catalog after a symmetry smoke test on 1..20.

    Registering the same callable under its existing name returns the catalog
    entry; a different callable under a taken name is rejected.
    """
    existing = _REGISTRY.get(name)
    if existing is not None:
        if existing.func == func:
            return existing
        raise DuplicateEdgeFunction(f"edge function {name!r} is already registered")

    pair = check_symmetry(func)
    if pair is not None:
        raise AsymmetricFunction(f"{name}: f{pair} != f{pair[::-1]}")

    edge_function = EdgeFunction(name, func)
    _REGISTRY[name] = edge_function
    logger.debug("registered edge function %s", name)
    return edge_function


def get_edge_function(name: str) -> EdgeFunction:
    try:
        return _REGISTRY[name]
    except KeyError:
        raise UnknownEdgeFunction(
            f"unknown edge function {name!r}; known: {', '.join(sorted(_REGISTRY))}"
        ) from None


def edge_function_names() -> Tuple[str, ...]:
    return tuple(sorted(_REGISTRY))


def negate(f: EdgeFunction, name: Optional[str] = None) -> EdgeFunction:
    return register_edge_function(name or f"minus_{f.name}", _Negation(f.func))


def affine(c1: float, f1: EdgeFunction, c2: float, f2: EdgeFunction,
           name: Optional[str] = None) -> EdgeFunction:
    """Register c1*f1 + c2*f2."""
    label = name or f"{c1:g}*{f1.name}+{c2:g}*{f2.name}"
    return register_edge_function(label, _AffineCombination(((c1, f1.func), (c2, f2.func))))


SOMBOR = register_edge_function("sombor", sombor_edge)
MINUS_SOMBOR = register_edge_function("minus_sombor", minus_sombor_edge)
PRODUCT = register_edge_function("product", product_edge)
SUM = register_edge_function("sum", sum_edge)


# Index evaluation

def rf_index(tree: Tree, f: EdgeFunction) -> float:
    degree = tree.degree_list
    return math.fsum(f(degree[u], degree[v]) for u, v in tree.edges)


def sombor_index(tree: Tree) -> float:
    return rf_index(tree, SOMBOR)


# Exchange condition

def _grid_table(f: EdgeFunction, grid_max: int) -> np.ndarray:
    """table[x, a] = f(x, a) for 1 <= x, a <= grid_max; row and column 0 unused."""
    table = np.zeros((grid_max + 1, grid_max + 1))
    for x in range(1, grid_max + 1):
        for a in range(1, grid_max + 1):
            table[x, a] = f(x, a)
    return table


def exchange_margin(f: EdgeFunction, x: int, y: int, a: int, b: int) -> float:
    """f(x,a) + f(y,b) - f(y,a) - f(x,b)."""
    return f(x, a) + f(y, b) - f(y, a) - f(x, b)


def check_exchange_condition(f: EdgeFunction, grid_max: int) -> ConditionReport:
    """
    Check the exchange condition on 1 <= y <= x <= grid_max, 1 <= b <= a <= grid_max.

    Strictness is checked wherever x > y and a > b. Witnesses are the
    lexicographically smallest violating (x, y, a, b).
    """
    if grid_max < 2:
        raise ValueError(f"grid_max must be at least 2, got {grid_max}")

    table = _grid_table(f, grid_max)
    size = grid_max + 1
    a_idx, b_idx = np.indices((size, size))
    in_range = (b_idx >= 1) & (a_idx >= b_idx)
    strict_range = (b_idx >= 1) & (a_idx > b_idx)

    witness = None
    strict_witness = None
    for x in range(1, size):
        for y in range(1, x + 1):
            row = table[x] - table[y]
            # margin[a, b] = f(x,a) - f(y,a) - f(x,b) + f(y,b)
            margin = row[:, None] - row[None, :]

            if witness is None:
                bad = np.argwhere(in_range & (margin < -TOLERANCE))
                if len(bad):
                    a, b = (int(v) for v in bad[0])
                    witness = (x, y, a, b)

            if strict_witness is None and x > y:
                bad = np.argwhere(strict_range & (margin <= TOLERANCE))
                if len(bad):
                    a, b = (int(v) for v in bad[0])
                    strict_witness = (x, y, a, b)

        if witness is not None and strict_witness is not None:
            break

    report = ConditionReport(
        function=f.name,
        holds=witness is None,
        strict_holds=strict_witness is None,
        witness=witness,
        witness_margin=exchange_margin(f, *witness) if witness else None,
        strict_witness=strict_witness,
        grid_max=grid_max,
    )
    logger.info("exchange condition for %s on grid %d: holds=%s strict=%s",
                f.name, grid_max, report.holds, report.strict_holds)
    return report


def sombor_condition_closed_form(x: int, y: int, a: int, b: int) -> bool:
    """Exact form of the condition for minus Sombor: (a^2 - b^2)(x^2 - y^2) >= 0."""
    return (a * a - b * b) * (x * x - y * y) >= 0


def closed_form_disagreements(grid_max: int, limit: int = 10):
    """
    Quadruples with x >= y, a >= b where the floating check on minus Sombor and
    the closed form disagree. Returns (number checked, first `limit` disagreements).
    """
    values = np.arange(grid_max + 1, dtype=np.int64)
    squares = values * values
    table = _grid_table(MINUS_SOMBOR, grid_max)
    size = grid_max + 1
    a_idx, b_idx = np.indices((size, size))
    in_range = (b_idx >= 1) & (a_idx >= b_idx)

    checked = 0
    found = []
    for x in range(1, size):
        for y in range(1, x + 1):
            row = table[x] - table[y]
            floating = (row[:, None] - row[None, :]) >= -TOLERANCE
            exact = (squares[:, None] - squares[None, :]) * (squares[x] - squares[y]) >= 0
            checked += int(in_range.sum())
            for a, b in np.argwhere(in_range & (floating != exact)):
                if len(found) < limit:
                    found.append((x, y, int(a), int(b)))
    return checked, found


def greedy_orientation(f: EdgeFunction, grid_max: int = ORIENTATION_GRID) -> Optional[str]:
    """
    Which extreme the greedy tree is expected to attain for R_f.

    "max" when f satisfies the exchange condition, "min" when -f does,
    None when neither holds on the grid.
    """
    if check_exchange_condition(f, grid_max).holds:
        return "max"
    flipped = EdgeFunction(f"-{f.name}", _Negation(f.func))
    if check_exchange_condition(flipped, grid_max).holds:
        return "min"
    return None
