import pytest
from hypothesis import given, strategies as st

from branched_crystals.core import PAREN, PLAIN, Atom, M, Msigma, Node, Pair, T, Tensor, V, crystal, tensor
from branched_crystals.syntax import ModDual, ModSum, ModTensor, ParseError, parse_crystal, parse_element, parse_label, parse_module

from conftest import labels


def test_labels():
    assert parse_label("Msigma(4)") == Msigma(4)
    assert parse_label("T(-1)") == M(-1)
    assert parse_label(" M( -3 ) ") == M(-3)


def test_crystal_nesting():
    assert parse_crystal("V(1) (x) V(1) (x) V(1)") == tensor(V(1), V(1), V(1))
    assert parse_crystal("V(1) (x) (V(1) (x) V(1))") == Tensor(Atom(V(1)), tensor(V(1), V(1)))


def test_elements():
    assert parse_element("V(3):b2") == Node(V(3), PLAIN, 2)
    assert parse_element("T(2):b(1)") == Node(T(2), PAREN, 1)
    x = parse_element("(V(1):b0 (x) V(1):b1) (x) Msigma(4):b0")
    assert x == Pair(Pair(Node(V(1), PLAIN, 0), Node(V(1), PLAIN, 1)), Node(Msigma(4), PLAIN, 0))


def test_modules():
    assert parse_module("M(2) (x) V(3)") == ModTensor(M(2), V(3))
    assert parse_module("dual(M(2))") == ModDual(M(2))
    assert parse_module("T(1) (+) V(0) (x) V(1)") == ModSum((T(1), ModTensor(V(0), V(1))))


@pytest.mark.parametrize("text", ["V(-1)", "V(1) (x)", "X(1)", "V(2) extra", "", "V(1) (x) (V(1)"])
def test_crystal_errors(text):
    with pytest.raises(ParseError):
        parse_crystal(text)


@pytest.mark.parametrize("text", ["V(1):b5", "M(0):b(0)", "V(1):c0", "V(1):b"])
def test_element_errors(text):
    with pytest.raises(ParseError):
        parse_element(text)


@given(labels(hi=3, negative_lo=-3), labels(hi=3, negative_lo=-3), labels(hi=3, negative_lo=-3))
def test_round_trip(a, b, c):
    for expr in (tensor(a, b, c), Tensor(Atom(a), tensor(b, c))):
        assert parse_crystal(str(expr)) == expr
        for x in list(crystal(expr).elements(-6))[:20]:
            assert parse_element(str(x)) == x
