"""Tensor product rule for branched crystals.

``f`` picks exactly one of F1, F1', F2. ``e`` tests E1, E1', E2, E2' in that order
and falls back to zero. :func:`e_conditions` reports every e-condition that holds so
that overlaps between the clauses can be observed rather than hidden by the order.
"""
from __future__ import annotations

import enum
import threading
from typing import Optional

from .core import (
    Crystal,
    Element,
    IterationCapExceeded,
    Pair,
    Tensor,
    as_expr,
    check_shape,
    crystal,
)


class Rule(str, enum.Enum):
    F1 = "F1"
    F1p = "F1p"
    F2 = "F2"
    E1 = "E1"
    E1p = "E1p"
    E2 = "E2"
    E2p = "E2p"
    Zero = "Zero"


E_ORDER = (Rule.E1, Rule.E1p, Rule.E2, Rule.E2p)


def f_conditions(L: Crystal, R: Crystal, b, bp) -> dict:
    phib = L.phi(b)
    psibp = R.psi(bp)
    fbp_nonzero = R.f(bp) is not None
    return {
        Rule.F1: phib < 0 or psibp < phib,
        Rule.F1p: fbp_nonzero and psibp >= phib >= 0,
        Rule.F2: (not fbp_nonzero) and psibp >= phib >= 0,
    }


def e_conditions(L: Crystal, R: Crystal, b, bp) -> dict:
    wtb, epsb = L.wt(b), L.eps(b)
    phib = wtb + epsb
    wtbp, epsbp = R.wt(bp), R.eps(bp)
    phibp = wtbp + epsbp
    psibp = max(epsbp, epsbp - phibp - 1)

    e1 = wtb < phib < -1 or psibp <= phib
    e1p = psibp > phib >= 0

    e2 = False
    if phib == -1 and 0 <= phibp <= epsb - 1 and R.f_pow(bp, phibp + 1) is None:
        e2 = True
    elif 0 <= phibp <= -wtb - 2 and L.is_branch_point(b) and not R.is_above_branch_point(bp):
        e2 = True

    in_range = -wtb - 1 <= phibp <= -wtb - 2 + epsbp
    e2p = in_range and (
        (phib == -1 and L.e(b) is not None) or (phib < 0 and epsb == 0)
    )
    return {Rule.E1: e1, Rule.E1p: e1p, Rule.E2: e2, Rule.E2p: e2p}


def select_f_rule(L: Crystal, R: Crystal, b, bp) -> Rule:
    conds = f_conditions(L, R, b, bp)
    held = [k for k, v in conds.items() if v]
    assert len(held) == 1, f"f-conditions do not partition at {b} (x) {bp}: {held}"
    return held[0]


def select_e_rule(L: Crystal, R: Crystal, b, bp) -> Rule:
    conds = e_conditions(L, R, b, bp)
    for rule in E_ORDER:
        if conds[rule]:
            return rule
    return Rule.Zero


def _pair(left, right) -> Optional[Pair]:
    if left is None or right is None:
        return None
    return Pair(left, right)


def apply_f(L: Crystal, R: Crystal, b, bp, rule: Rule) -> Optional[Pair]:
    if rule is Rule.F1:
        return _pair(L.f(b), bp)
    if rule is Rule.F1p:
        return _pair(b, R.f(bp))
    n = L.phi(b)
    return _pair(L.f_pow(b, n + 1), R.e_pow(bp, n))


def apply_e(L: Crystal, R: Crystal, b, bp, rule: Rule) -> Optional[Pair]:
    if rule is Rule.E1:
        return _pair(L.e(b), bp)
    if rule is Rule.E1p:
        return _pair(b, R.e(bp))
    if rule is Rule.E2:
        n = R.phi(bp)
        return _pair(L.e_pow(b, n + 1), R.f_pow(bp, n))
    if rule is Rule.E2p:
        total = -L.wt(b) - R.wt(bp)
        return _pair(L.f_pow(b, total - 2), R.e_pow(bp, total - 1))
    return None


class TensorCrystal(Crystal):
    """``L (x) R`` with memoized structure maps."""

    def __init__(self, left: Crystal, right: Crystal):
        self.L = left
        self.R = right
        self.expr = Tensor(left.expr, right.expr)
        self._max_weight = left.max_weight + right.max_weight
        self._e: dict = {}
        self._f: dict = {}
        self._eps: dict = {}
        self._above: dict = {}
        self._spaces: dict = {}
        self._lock = threading.Lock()

    @property
    def max_weight(self) -> int:
        return self._max_weight

    def wt(self, x: Pair) -> int:
        return self.L.wt(x.left) + self.R.wt(x.right)

    def e(self, x: Pair):
        try:
            return self._e[x]
        except KeyError:
            pass
        y = apply_e(self.L, self.R, x.left, x.right, select_e_rule(self.L, self.R, x.left, x.right))
        self._e[x] = y
        return y

    def f(self, x: Pair):
        try:
            return self._f[x]
        except KeyError:
            pass
        y = apply_f(self.L, self.R, x.left, x.right, select_f_rule(self.L, self.R, x.left, x.right))
        self._f[x] = y
        return y

    def eps(self, x: Pair) -> int:
        # Same minimization, memoized: eps(x) = eps(e x) + 1 while f e x == x.
        cache = self._eps
        if x in cache:
            return cache[x]
        walk = []
        cap = (self._max_weight - self.wt(x)) // 2 + 2
        cur, base = x, None
        while base is None:
            if len(walk) > cap:
                raise IterationCapExceeded(f"epsilon of {x} did not settle within {cap} raising steps")
            walk.append(cur)
            up = self.e(cur)
            if up is None or self.f(up) != cur:
                base = 0
            elif up in cache:
                base = cache[up] + 1
            else:
                cur = up
        for depth, y in enumerate(reversed(walk)):
            cache[y] = base + depth
        return cache[x]

    def is_above_branch_point(self, x: Pair) -> bool:
        try:
            return self._above[x]
        except KeyError:
            pass
        v = Crystal.is_above_branch_point(self, x)
        self._above[x] = v
        return v

    def weight_space(self, w: int) -> list:
        try:
            return self._spaces[w]
        except KeyError:
            pass
        out = []
        top_l, top_r = self.L.max_weight, self.R.max_weight
        # left weight ranges over [w - top_r, top_l] in steps of two
        wl = top_l
        while wl >= w - top_r:
            wr = w - wl
            if (top_r - wr) % 2 == 0:
                rights = self.R.weight_space(wr)
                if rights:
                    out.extend(Pair(a, b) for a in self.L.weight_space(wl) for b in rights)
            wl -= 2
        with self._lock:
            out = self._spaces.setdefault(w, out)
        return out


def _factors(exprL, exprR, b, bp):
    exprL, exprR = as_expr(exprL), as_expr(exprR)
    check_shape(exprL, b)
    check_shape(exprR, bp)
    return crystal(exprL), crystal(exprR)


def f_rule(exprL, exprR, b: Element, bp: Element) -> Rule:
    return select_f_rule(*_factors(exprL, exprR, b, bp), b, bp)


def e_rule(exprL, exprR, b: Element, bp: Element) -> Rule:
    return select_e_rule(*_factors(exprL, exprR, b, bp), b, bp)


def tensor_f(exprL, exprR, b: Element, bp: Element) -> Optional[Pair]:
    L, R = _factors(exprL, exprR, b, bp)
    return apply_f(L, R, b, bp, select_f_rule(L, R, b, bp))


def tensor_e(exprL, exprR, b: Element, bp: Element) -> Optional[Pair]:
    L, R = _factors(exprL, exprR, b, bp)
    return apply_e(L, R, b, bp, select_e_rule(L, R, b, bp))


def rule_report(exprL, exprR, b: Element, bp: Element) -> dict:
    """Truth value of every condition plus the chosen rules, for debugging output."""
    L, R = _factors(exprL, exprR, b, bp)
    fc = f_conditions(L, R, b, bp)
    ec = e_conditions(L, R, b, bp)
    return {
        "conditions": {k.value: v for k, v in {**fc, **ec}.items()},
        "f_rule": select_f_rule(L, R, b, bp).value,
        "e_rule": select_e_rule(L, R, b, bp).value,
        "f": apply_f(L, R, b, bp, select_f_rule(L, R, b, bp)),
        "e": apply_e(L, R, b, bp, select_e_rule(L, R, b, bp)),
        "e_overlap": [k.value for k in E_ORDER if ec[k]],
    }


def held_e_conditions(L: Crystal, R: Crystal, b, bp) -> tuple:
    """Every e-condition that holds, in evaluation order. More than one entry is an overlap."""
    conds = e_conditions(L, R, b, bp)
    return tuple(rule for rule in E_ORDER if conds[rule])


def branch_point_criterion(L: Crystal, R: Crystal, b, bp) -> bool:
    """Four-condition test for ``b (x) b'`` being a branch point; meaningful when e of the pair is nonzero."""
    conds = e_conditions(L, R, b, bp)
    phib = L.phi(b)
    return (
        (R.is_branch_point(bp) and conds[Rule.E1p])
        or (L.is_branch_point(b) and conds[Rule.E2])
        or conds[Rule.E2p]
        or (phib == -R.wt(bp) - 2 >= 0 and R.phi(bp) < -1)
    )


def zero_raise_criterion(L: Crystal, R: Crystal, b, bp) -> bool:
    """Closed test for ``e(b (x) b') == 0``.

    Either the raised factor is a non-branch element with zero epsilon under the clause
    that raises it, or no e-condition holds at all.
    """
    conds = e_conditions(L, R, b, bp)
    raised_dead = (
        (L.eps(b) == 0 and not L.is_branch_point(b) and conds[Rule.E1])
        or (R.eps(bp) == 0 and not R.is_branch_point(bp) and conds[Rule.E1p])
    )
    return raised_dead or not any(conds.values())


def no_condition_holds(L: Crystal, R: Crystal, b, bp) -> bool:
    return not any(e_conditions(L, R, b, bp).values())
