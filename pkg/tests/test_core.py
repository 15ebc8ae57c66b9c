import pytest
from hypothesis import given, strategies as st

from branched_crystals.core import (
    PAREN, PLAIN, Atom, CrystalLabel, M, Msigma, Node, Pair, ShapeError, T, V,
    above_branch_point, crystal, e_step, epsilon, f_step, is_branch_point, max_weight, phi, psi, tensor, weight,
)

from conftest import labels


def b(label, j):
    return Node(label, PLAIN, j)


def bp(label, j):
    return Node(label, PAREN, j)


class TestLabels:
    def test_t_minus_one_is_m_minus_one(self):
        assert T(-1) == M(-1)
        assert T(-1).kind == "M"
        assert str(T(-1)) == "M(-1)"

    @pytest.mark.parametrize("kind,param", [("V", -1), ("T", -2), ("Msigma", -1), ("X", 0)])
    def test_invalid(self, kind, param):
        with pytest.raises(ValueError):
            CrystalLabel(kind, param)

    def test_m_accepts_any_integer(self):
        assert M(-7).param == -7

    def test_ordering(self):
        assert sorted([V(0), M(2), T(2), M(-3)]) == [M(2), T(2), V(0), M(-3)]

    @pytest.mark.parametrize("label,w,dim", [
        (V(3), 3, 1), (V(3), -3, 1), (V(3), -5, 0), (V(3), 5, 0), (V(3), 2, 0),
        (M(1), -41, 1), (Msigma(2), -8, 1), (T(0), -2, 2), (T(2), 0, 1), (T(2), -4, 2),
    ])
    def test_char(self, label, w, dim):
        assert label.char(w) == dim


class TestNodes:
    @pytest.mark.parametrize("label,chain,j", [
        (V(2), PLAIN, 3), (V(2), PAREN, 0), (M(0), PAREN, 0), (Msigma(1), PAREN, 2), (T(0), PLAIN, -1),
    ])
    def test_outside_carrier(self, label, chain, j):
        with pytest.raises(ShapeError):
            Node(label, chain, j)

    def test_text(self):
        assert str(b(V(3), 2)) == "V(3):b2"
        assert str(bp(T(2), 1)) == "T(2):b(1)"
        assert str(Pair(Pair(b(V(1), 0), b(V(1), 1)), b(V(1), 0))) == "(V(1):b0 (x) V(1):b1) (x) V(1):b0"


class TestAtomMaps:
    def test_weights(self):
        assert weight(V(3), b(V(3), 1)) == 1
        assert weight(T(2), b(T(2), 0)) == -4
        assert weight(M(0), b(M(0), 0)) == 0

    def test_steps(self):
        assert e_step(T(2), b(T(2), 0)) == bp(T(2), 2)
        assert e_step(V(3), b(V(3), 0)) is None
        assert f_step(Msigma(2), bp(Msigma(2), 2)) is None
        assert e_step(M(4), b(M(4), 0)) is None
        assert f_step(T(2), bp(T(2), 2)) == bp(T(2), 3)

    def test_statistics(self):
        assert epsilon(T(5), b(T(5), 2)) == 2
        assert epsilon(V(4), b(V(4), 0)) == 0
        assert phi(T(3), b(T(3), 1)) == -6
        assert phi(V(2), b(V(2), 2)) == 0
        assert phi(M(-1), b(M(-1), 0)) == -1
        assert psi(V(1), b(V(1), 1)) == 1
        assert psi(V(0), b(V(0), 0)) == 0
        assert psi(M(-3), b(M(-3), 0)) == 2

    def test_branch_points(self):
        assert is_branch_point(T(2), b(T(2), 0))
        assert not is_branch_point(V(3), b(V(3), 1))
        assert is_branch_point(Msigma(1), b(Msigma(1), 0))
        assert not is_branch_point(T(2), b(T(2), 1))

    def test_above_branch_point(self):
        assert above_branch_point(T(2), bp(T(2), 1))
        assert not above_branch_point(T(2), bp(T(2), 3))
        assert not above_branch_point(V(4), b(V(4), 2))
        assert above_branch_point(T(2), b(T(2), 0))
        assert not above_branch_point(T(2), b(T(2), 1))

    def test_shape_mismatch(self):
        with pytest.raises(ShapeError):
            weight(V(2), b(V(3), 0))
        with pytest.raises(ShapeError):
            weight(tensor(V(1), V(1)), b(V(1), 0))


@given(labels(hi=6, negative_lo=-6), st.integers(0, 12))
def test_closed_form_eps_matches_minimization(label, j):
    c = crystal(label)
    for x in c.elements(label.param - 2 * j):
        assert c.eps(x) == c.eps_by_minimization(x)
        assert c.phi(x) == c.wt(x) + c.eps(x)


@given(labels(hi=6, negative_lo=-6))
def test_branch_point_facts(label):
    c = crystal(label)
    for x in c.elements(-30):
        if not c.is_branch_point(x):
            continue
        w = c.wt(x)
        assert w <= -2
        for l in range(1, -w):
            assert not c.is_branch_point(c.e_pow(x, l))
        assert c.e_pow(x, -w) is None
        assert c.f_pow(x, 10) is not None


@given(labels(hi=6, negative_lo=-6))
def test_one_head_and_at_most_one_branch_point(label):
    c = crystal(label)
    elems = list(c.elements(-30))
    assert sum(c.e(x) is None for x in elems) == 1
    assert sum(c.is_branch_point(x) for x in elems) <= 1


def test_max_weight_additive():
    assert max_weight(tensor(V(2), M(-3), T(1))) == 0


def test_crystal_memoized():
    assert crystal(tensor(V(1), V(1))) is crystal(tensor(V(1), V(1)))
