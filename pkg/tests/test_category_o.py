from collections import Counter

from hypothesis import given

from branched_crystals.category_o import (
    ModuleSum, case_2c_multiplicities, character, crystal_of, evaluate, expr_character, module_tensor,
)
from branched_crystals.core import M, Msigma, T, V, tensor
from branched_crystals.decompose import WeightWindow, compare, decompose
from branched_crystals.syntax import parse_module
from branched_crystals.tables import dual_label

from conftest import labels

SAFE = -20


def test_characters():
    assert character(T(0), -2) == 2
    assert character(V(3), 5) == 0
    assert character(ModuleSum.of(M(2), T(0)), -2) == 3


def test_examples():
    assert module_tensor(V(1), V(1)).materialize(SAFE) == Counter({V(2): 1, V(0): 1})
    want = Counter({M(2): 1, T(0): 1})
    want.update({M(2 - 2 * p): 1 for p in range(3, 12)})
    assert module_tensor(M(2), M(0)).materialize(SAFE) == want
    assert module_tensor(V(2), T(1)).materialize(SAFE) == Counter({T(3): 1, T(1): 1, M(-1): 2})


def test_crystal_of_is_label_preserving():
    assert crystal_of(ModuleSum.of(V(2), T(0))).materialize(SAFE) == Counter({V(2): 1, T(0): 1})
    assert crystal_of(ModuleSum.of(M(1))).materialize(SAFE) == Counter({M(1): 1})
    got = crystal_of(module_tensor(M(0), V(1))).materialize(-8)
    assert got == Counter({M(1): 1, M(-1): 1})
    assert compare(decompose(tensor(M(0), V(1)), WeightWindow(-20, -8)), got) == {"missing": {}, "extra": {}}


@given(labels(hi=5, negative_lo=-5), labels(hi=5, negative_lo=-5))
def test_character_multiplicativity(a, b):
    m = module_tensor(a, b)
    for w in range(a.param + b.param, SAFE - 1, -1):
        conv = sum(a.char(u) * b.char(w - u) for u in range(w - b.param, a.param + 1))
        assert character(m, w) == conv


@given(labels(hi=5, negative_lo=-5), labels(hi=5, negative_lo=-5))
def test_commutative_and_dual(a, b):
    assert module_tensor(a, b).materialize(SAFE) == module_tensor(b, a).materialize(SAFE)
    dualized = Counter({dual_label(k): v for k, v in module_tensor(a, b).materialize(SAFE).items()})
    assert module_tensor(dual_label(b), dual_label(a)).materialize(SAFE) == dualized


@given(labels(hi=4, negative_lo=-4), labels(hi=4, negative_lo=-4))
def test_case_2c_formula(a, b):
    m = module_tensor(a, b)
    got = m.materialize(-16)
    if any(l.kind in ("V", "Msigma") or (l.kind == "M" and l.param >= 0) for l in got):
        return
    assert +case_2c_multiplicities(lambda w: character(m, w), -16) == got


def test_expressions():
    assert expr_character(parse_module("M(2) (+) T(0)"), -2) == 3
    assert evaluate(parse_module("dual(M(2) (x) V(1))"), -6) == Counter({Msigma(3): 1, Msigma(1): 1})
    node = parse_module("(V(1) (x) M(-3)) (x) T(2)")
    ev = evaluate(node, -20)
    for w in range(2, -21, -1):
        assert sum(k.char(w) * v for k, v in ev.items()) == expr_character(node, w)


def test_nested_expression_matches_engine():
    node = parse_module("(V(1) (x) T(0)) (x) M(1)")
    dec = decompose(tensor(V(1), T(0), M(1)), WeightWindow(-30, -14))
    assert compare(dec, evaluate(node, -14)) == {"missing": {}, "extra": {}}
