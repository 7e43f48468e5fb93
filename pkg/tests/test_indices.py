"""
Edge functions, index evaluation and the exchange-condition checker.
"""

import math
import random

import pytest

from sombor_trees.construct import greedy_tree
from sombor_trees.degseq import InternalDegreeSequence
from sombor_trees.errors import AsymmetricFunction, DuplicateEdgeFunction, UnknownEdgeFunction
from sombor_trees.indices import (
    MINUS_SOMBOR,
    PRODUCT,
    SOMBOR,
    SUM,
    EdgeFunction,
    affine,
    check_exchange_condition,
    closed_form_disagreements,
    edge_function_names,
    exchange_margin,
    get_edge_function,
    greedy_orientation,
    negate,
    register_edge_function,
    rf_index,
    sombor_condition_closed_form,
    sombor_edge,
    sombor_index,
)
from sombor_trees.tree import Tree, path_tree, prufer_decode, star_tree


def product_mod_three(x: int, a: int) -> float:
    return float((x * a) % 3)


def test_sombor_edge():
    assert sombor_edge(1, 1) == pytest.approx(math.sqrt(2), abs=1e-12)
    assert sombor_edge(3, 4) == 5.0
    assert sombor_edge(2, 1) == pytest.approx(2.236067977, abs=1e-9)


def test_known_index_values():
    assert sombor_index(path_tree(2)) == pytest.approx(math.sqrt(2), abs=1e-12)
    assert sombor_index(path_tree(3)) == pytest.approx(2 * math.sqrt(5), abs=1e-12)
    assert sombor_index(Tree.single_vertex()) == 0.0
    assert sombor_index(star_tree(5)) == pytest.approx(4 * math.sqrt(17), abs=1e-12)

    greedy = greedy_tree(InternalDegreeSequence((3, 2, 2)))
    expected = 2 * math.sqrt(13) + math.sqrt(10) + 2 * math.sqrt(5)
    assert sombor_index(greedy) == pytest.approx(expected, abs=1e-9)


def test_minus_sombor_is_exact_negation():
    rng = random.Random(17)
    for _ in range(200):
        n = rng.randint(2, 14)
        tree = prufer_decode([rng.randrange(n) for _ in range(n - 2)], n)
        assert rf_index(tree, MINUS_SOMBOR) == -rf_index(tree, SOMBOR)


def test_index_is_relabeling_invariant():
    rng = random.Random(23)
    for _ in range(100):
        n = rng.randint(2, 14)
        tree = prufer_decode([rng.randrange(n) for _ in range(n - 2)], n)
        perm = list(range(n))
        rng.shuffle(perm)
        for f in (SOMBOR, PRODUCT, SUM):
            assert rf_index(tree.relabel(perm), f) == rf_index(tree, f)


def test_catalog():
    names = edge_function_names()
    for name in ("sombor", "minus_sombor", "product", "sum"):
        assert name in names
    assert get_edge_function("sombor") is SOMBOR

    with pytest.raises(UnknownEdgeFunction):
        get_edge_function("harmonic")


def test_registered_functions_are_symmetric():
    for name in edge_function_names():
        f = get_edge_function(name)
        for x in range(1, 21):
            for a in range(1, 21):
                assert f(x, a) == pytest.approx(f(a, x), abs=1e-12)


def test_asymmetric_function_rejected():
    with pytest.raises(AsymmetricFunction):
        register_edge_function("skewed", lambda x, a: x - 2 * a)
    assert "skewed" not in edge_function_names()


def test_negate_and_affine():
    minus_product = negate(PRODUCT)
    assert minus_product.name == "minus_product"
    assert minus_product(3, 4) == -12.0

    mixed = affine(2.0, SOMBOR, 1.0, PRODUCT, name="two_sombor_plus_product")
    assert mixed(3, 4) == pytest.approx(22.0)
    assert get_edge_function("two_sombor_plus_product") is mixed


def test_taken_names_are_rejected():
    with pytest.raises(DuplicateEdgeFunction):
        affine(1.0, PRODUCT, 1.0, SUM, name="sombor")
    assert get_edge_function("sombor") is SOMBOR

    with pytest.raises(DuplicateEdgeFunction):
        register_edge_function("product", sombor_edge)
    assert get_edge_function("product") is PRODUCT

    # same callable again is a no-op
    assert negate(SOMBOR, name="sombor_negated") is negate(SOMBOR, name="sombor_negated")
    assert register_edge_function("sum", SUM.func) is SUM


def test_condition_minus_sombor():
    report = check_exchange_condition(MINUS_SOMBOR, 50)
    assert report.holds
    assert report.strict_holds
    assert report.witness is None
    assert report.strict_witness is None
    assert report.grid_max == 50


def test_condition_sombor_fails():
    report = check_exchange_condition(SOMBOR, 10)
    assert not report.holds
    assert report.witness == (2, 1, 2, 1)
    assert report.witness_margin < 0


def test_condition_product():
    report = check_exchange_condition(PRODUCT, 10)
    assert report.holds
    assert report.strict_holds


def test_condition_negated_product_witness():
    f = negate(PRODUCT, name="negated_product")
    report = check_exchange_condition(f, 10)
    assert not report.holds
    assert report.witness == (2, 1, 2, 1)
    assert report.witness_margin == pytest.approx(exchange_margin(f, 2, 1, 2, 1))
    assert report.witness_margin == pytest.approx(-1.0)


def test_condition_sum_holds_without_strictness():
    report = check_exchange_condition(SUM, 10)
    assert report.holds
    assert not report.strict_holds
    assert report.strict_witness == (2, 1, 2, 1)


def test_condition_rejects_small_grid():
    with pytest.raises(ValueError):
        check_exchange_condition(SOMBOR, 1)


@pytest.mark.parametrize("quadruple, expected", [
    ((3, 2, 5, 4), True),
    ((2, 2, 7, 1), True),
    ((3, 2, 1, 4), False),
    ((1, 2, 4, 3), False),
])
def test_closed_form(quadruple, expected):
    assert sombor_condition_closed_form(*quadruple) is expected


def test_closed_form_agrees_with_grid():
    checked, found = closed_form_disagreements(50)
    assert checked == (50 * 51 // 2) ** 2
    assert found == []


def test_orientation():
    assert greedy_orientation(SOMBOR) == "min"
    assert greedy_orientation(MINUS_SOMBOR) == "max"
    assert greedy_orientation(PRODUCT) == "max"

    f = EdgeFunction("product_mod_three", product_mod_three)
    assert greedy_orientation(f) is None
