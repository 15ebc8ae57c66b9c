"""Objects of category O as sums of indecomposable module labels.

A :class:`ModuleSum` is a list of :class:`Term` generators ``kind(base - 2p)`` over a
range of ``p``, so infinite families such as ``M(-4) + M(-6) + ...`` stay symbolic
until they are materialized against a lower weight bound.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

from .core import CrystalLabel
from .tables import dual_label


@dataclass(frozen=True)
class Term:
    """``mult`` copies of ``kind(base - 2p)`` for every ``p`` in ``[lo, hi]`` (``hi=None``: unbounded)."""

    kind: str
    base: int
    lo: int
    hi: Optional[int]
    mult: int = 1

    def labels(self, min_param: int):
        hi = (self.base - min_param) // 2
        if self.hi is not None:
            hi = min(hi, self.hi)
        for p in range(max(self.lo, 0), hi + 1):
            yield CrystalLabel(self.kind, self.base - 2 * p)

    def char(self, w: int) -> int:
        # labels with top weight below w contribute nothing
        return self.mult * sum(lab.char(w) for lab in self.labels(w))

    @property
    def top(self) -> Optional[int]:
        lo = max(self.lo, 0)
        if self.hi is not None and self.hi < lo:
            return None
        return self.base - 2 * lo

    def dual(self) -> list:
        if self.kind == "M":
            # M(k) is self-dual only for k < 0
            split = self.base // 2  # largest p with base - 2p >= 0
            out = []
            if self.base >= 0 and max(self.lo, 0) <= split:
                hi = split if self.hi is None else min(split, self.hi)
                if hi >= max(self.lo, 0):
                    out.append(Term("Msigma", self.base, self.lo, hi, self.mult))
            lo = max(self.lo, split + 1) if self.base >= 0 else self.lo
            if self.hi is None or self.hi >= max(lo, 0):
                out.append(Term("M", self.base, lo, self.hi, self.mult))
            return out
        if self.kind == "Msigma":
            return [Term("M", self.base, self.lo, self.hi, self.mult)]
        return [self]


def single(label: CrystalLabel, mult: int = 1) -> Term:
    return Term(label.kind, label.param, 0, 0, mult)


@dataclass
class ModuleSum:
    terms: list = field(default_factory=list)

    @classmethod
    def of(cls, *labels) -> "ModuleSum":
        return cls([single(lab) for lab in labels])

    def __add__(self, other: "ModuleSum") -> "ModuleSum":
        return ModuleSum(self.terms + other.terms)

    def materialize(self, min_param: int) -> Counter:
        """Label multiset restricted to labels with parameter (head weight) >= ``min_param``."""
        out = Counter()
        for t in self.terms:
            for lab in t.labels(min_param):
                out[lab] += t.mult
        return +out

    def dual(self) -> "ModuleSum":
        return ModuleSum([d for t in self.terms for d in t.dual()])

    @property
    def top_weight(self) -> Optional[int]:
        tops = [t.top for t in self.terms if t.top is not None]
        return max(tops) if tops else None

    def is_finite(self) -> bool:
        return all(t.hi is not None for t in self.terms)


def character(m, w: int) -> int:
    """Dimension of weight space ``w`` of a module sum (or a single label)."""
    if isinstance(m, CrystalLabel):
        return m.char(w)
    return sum(t.char(w) for t in m.terms)


def _T(base, lo, hi, mult=1):
    return Term("T", base, lo, hi, mult)


def _M(base, lo, hi, mult=1):
    return Term("M", base, lo, hi, mult)


def _listed(a: CrystalLabel, b: CrystalLabel) -> Optional[ModuleSum]:
    """Explicit decompositions for the directly listed ordered pairs; None for the rest."""
    r, s = a.param, b.param
    n = r + s
    ka, kb = a.kind, b.kind
    if ka == "V" and kb == "V":
        return ModuleSum([Term("V", n, 0, min(r, s))])
    if ka == "M" and kb == "M" and r >= 0 and s >= 0:
        return ModuleSum([
            _M(n, 0, min(r, s)),
            _T(n, min(r, s) + 1, (n + 1) // 2),
            _M(n, max(r, s) + 1, None),
        ])
    if ka == "V" and kb == "M" and s >= 0:
        terms = [_M(n, 0, min(r, s))]
        if r > s:
            terms.append(_T(n, s + 1, (n + 1) // 2))
        return ModuleSum(terms)
    if ka == "V" and kb == "M":  # s < 0
        return ModuleSum([_T(n, 0, (n + 1) // 2), _M(n, n + 2, r)])
    if ka == "M" and kb == "M":  # r < 0 or s < 0
        return ModuleSum([_T(n, 0, (n + 1) // 2), _M(n, n + 2, None)])
    if ka == "V" and kb == "T":
        return ModuleSum([_T(n, 0, min(r, s)), _T(n, s + 1, (n + 1) // 2, 2)])
    if ka == "M" and kb == "Msigma":
        return ModuleSum([_T(n, 0, (n + 1) // 2), _M(n, n + 2, None)])
    if ka == "T" and kb == "M":
        terms = [_T(n, 0, min(2 * r, n + 1) // 2), _T(n, r + 1, (n + 1) // 2, 2)]
        if s >= 0:
            terms += [_M(n, max(r, s) + 1, n + 1), _M(n, n + 2, None, 2)]
        else:
            terms += [_M(n, n + 2, r), _M(n, r + 1, None, 2)]
        return ModuleSum(terms)
    if ka == "T" and kb == "T":
        return _listed(a, CrystalLabel("M", s)) + _listed(a, CrystalLabel("M", -s - 2))
    return None


def module_tensor(a: CrystalLabel, b: CrystalLabel) -> ModuleSum:
    """Decomposition of ``a (x) b`` into indecomposables.

    Pairs without an explicit formula use commutativity or ``(X (x) Y)^dual = Y^dual (x) X^dual``.
    """
    for x, y in ((a, b), (b, a)):
        m = _listed(x, y)
        if m is not None:
            return m
    da, db = dual_label(a), dual_label(b)
    for x, y in ((db, da), (da, db)):
        m = _listed(x, y)
        if m is not None:
            return m.dual()
    raise AssertionError(f"no decomposition rule for {a} (x) {b}")


def crystal_of(m: ModuleSum) -> ModuleSum:
    """The crystal attached to a module: the same label multiset, read as crystal labels."""
    return ModuleSum(list(m.terms))


def case_2c_multiplicities(dim, min_weight: int) -> Counter:
    """Multiplicities recovered from a weight-dimension function alone.

    Valid when f acts freely on the module and its dual (no ``M(k)``, ``k >= 0``, and
    no ``V``/``Msigma`` summands). ``dim(w)`` gives weight-space dimensions. Returns
    labels with parameter >= ``min_weight``; ``T(-1)`` appears as ``M(-1)``.
    """
    n_T = {}

    def nT(p):
        if p not in n_T:
            n_T[p] = dim(p) - dim(p + 2)
        return n_T[p]

    n_M = {}

    def nM(k):
        # n(M(-l-2)) for l >= 0; M(-1) is T(-1)
        if k == -1:
            return nT(-1)
        if k not in n_M:
            ell = -k - 2
            total = dim(-ell - 2)
            total -= sum(nM(-ell + 2 * p) for p in range(0, (ell - 1) // 2 + 1))
            total -= 2 * sum(nT(ell - 2 * p) for p in range(0, ell // 2 + 1))
            total -= sum(nT(ell + 2 * p) for p in range(1, _t_support(dim, ell)))
            n_M[k] = total
        return n_M[k]

    out = Counter()
    top = _top(dim)
    for p in range(top, -2, -1):
        if p >= min_weight and nT(p):
            out[CrystalLabel("T", p)] += nT(p)
    for k in range(-2, min_weight - 1, -1):
        v = nM(k)
        if v:
            out[CrystalLabel("M", k)] += v
    return out


_SEARCH = 200


def _top(dim) -> int:
    for w in range(_SEARCH, -_SEARCH, -1):
        if dim(w):
            return w
    raise ValueError("character has no support in the search range")


def _t_support(dim, ell) -> int:
    # n(T(ell + 2p)) vanishes once ell + 2p exceeds the top weight
    return max(1, (_top(dim) - ell) // 2 + 2)


def expr_top(node) -> int:
    """Highest weight of a parsed module expression."""
    from .syntax import ModDual, ModSum, ModTensor

    if isinstance(node, CrystalLabel):
        return node.param
    if isinstance(node, ModSum):
        return max(expr_top(t) for t in node.terms)
    if isinstance(node, ModTensor):
        return expr_top(node.left) + expr_top(node.right)
    if isinstance(node, ModDual):
        return expr_top(node.inner)
    raise TypeError(f"not a module expression: {node!r}")


def evaluate(node, min_param: int) -> Counter:
    """Indecomposable summands of a parsed module expression with parameter >= ``min_param``.

    Exact: a summand ``X`` of one factor only feeds summands of ``X (x) Y`` with parameter at
    most ``param(X) + top(Y)``, so factors are expanded only as deep as that bound requires.
    """
    from .syntax import ModDual, ModSum, ModTensor

    if isinstance(node, CrystalLabel):
        return Counter({node: 1}) if node.param >= min_param else Counter()
    if isinstance(node, ModSum):
        out = Counter()
        for t in node.terms:
            out.update(evaluate(t, min_param))
        return out
    if isinstance(node, ModDual):
        return Counter({dual_label(k): v for k, v in evaluate(node.inner, min_param).items()})
    if isinstance(node, ModTensor):
        left = evaluate(node.left, min_param - expr_top(node.right))
        right = evaluate(node.right, min_param - expr_top(node.left))
        out = Counter()
        for a, m in left.items():
            for b, n in right.items():
                for lab, k in module_tensor(a, b).materialize(min_param).items():
                    out[lab] += m * n * k
        return out
    raise TypeError(f"not a module expression: {node!r}")


def expr_character(node, w: int) -> int:
    """Weight-space dimension of a parsed module expression, by convolution over tensors."""
    from .syntax import ModDual, ModSum, ModTensor

    if isinstance(node, CrystalLabel):
        return node.char(w)
    if isinstance(node, ModSum):
        return sum(expr_character(t, w) for t in node.terms)
    if isinstance(node, ModDual):
        return expr_character(node.inner, w)
    if isinstance(node, ModTensor):
        top_l, top_r = expr_top(node.left), expr_top(node.right)
        return sum(expr_character(node.left, u) * expr_character(node.right, w - u)
                   for u in range(w - top_r, top_l + 1))
    raise TypeError(f"not a module expression: {node!r}")
