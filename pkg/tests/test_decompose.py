from collections import Counter

import pytest
from hypothesis import given

from branched_crystals.core import PAREN, PLAIN, M, Msigma, Node, Pair, T, V, crystal, tensor
from branched_crystals.decompose import (
    WeightWindow, WindowExhausted, character_violations, compare, decompose, default_margin,
    enumerate_elements, head_of,
)

from conftest import labels


def b(label, j):
    return Node(label, PLAIN, j)


def test_window_margin_floor():
    with pytest.raises(ValueError):
        WeightWindow.for_expr(tensor(V(1), V(1)), -20, margin=5)
    w = WeightWindow.for_expr(tensor(V(1), V(1)), -20)
    assert w.safe_weight == -20 + default_margin(tensor(V(1), V(1))) == -6
    with pytest.raises(ValueError):
        WeightWindow(-10, -12)


def test_enumeration_counts():
    assert len(enumerate_elements(V(2), -10)) == 3
    assert len(enumerate_elements(M(0), -6)) == 4
    assert set(enumerate_elements(T(1), -5)) == {
        Node(T(1), PAREN, j) for j in range(4)
    } | {b(T(1), 0), b(T(1), 1)}


def test_heads():
    assert head_of(T(2), b(T(2), 3)) == b(T(2), 0)
    assert head_of(V(3), b(V(3), 2)) == b(V(3), 0)
    assert head_of(tensor(V(1), V(1)), Pair(b(V(1), 1), b(V(1), 1))) == Pair(b(V(1), 0), b(V(1), 0))


def test_examples():
    assert decompose(tensor(V(1), V(1)), WeightWindow(-10, -6)).components == Counter({V(2): 1, V(0): 1})
    d = decompose(tensor(M(0), V(1)), WeightWindow(-20, -8))
    assert d.components == Counter({M(1): 1, M(-1): 1})
    d = decompose(tensor(M(2), M(0)), WeightWindow(-30, -20))
    want = Counter({M(2): 1, T(0): 1})
    want.update({M(k): 1 for k in range(-4, -21, -2)})
    assert d.components == want
    assert decompose(tensor(T(1), V(2)), WeightWindow(-30, -16)).components == Counter({T(3): 1, T(1): 1, M(-1): 2})


def test_branch_components_carry_their_branch_point():
    d = decompose(tensor(M(1), Msigma(2)), WeightWindow(-30, -16))
    for r in d.reports:
        if r.label.kind in ("T", "Msigma"):
            assert r.branch is not None
            assert crystal(d.expr).wt(r.branch) == -r.label.param - 2
            assert crystal(d.expr).wt(r.head) == r.label.param
        else:
            assert r.branch is None


def test_window_exhaustion():
    with pytest.raises(WindowExhausted):
        decompose(tensor(V(30), V(1)), WeightWindow(-20, -8))


def test_compare():
    assert compare(Counter({V(2): 1}), Counter({V(2): 1}), -10) == {"missing": {}, "extra": {}}
    assert compare(Counter({V(2): 1}), Counter({V(2): 1, V(0): 1}), -10) == {"missing": {V(0): 1}, "extra": {}}


@given(labels(hi=3, negative_lo=-3), labels(hi=3, negative_lo=-3))
def test_partition_and_conservation(a, c):
    expr = tensor(a, c)
    d = decompose(expr, WeightWindow(-24, -12))
    assert character_violations(d) == []
    assert sum(r.elements_seen for r in d.reports) == len(enumerate_elements(expr, -24))


@given(labels(hi=3, negative_lo=-3), labels(hi=3, negative_lo=-3))
def test_window_monotone(a, c):
    small = decompose(tensor(a, c), WeightWindow(-20, -10)).components
    big = decompose(tensor(a, c), WeightWindow(-30, -18)).components
    assert +Counter({k: v for k, v in big.items() if k.param >= -10}) == small
