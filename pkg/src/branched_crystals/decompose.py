"""Window-truncated enumeration and decomposition into indecomposable components."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .core import (
    Crystal,
    CrystalError,
    CrystalLabel,
    Element,
    as_expr,
    check_shape,
    crystal,
    element_sort_key,
    factor_count,
)


class WindowExhausted(CrystalError):
    """Classifying a reported component needs elements below the window's minimum weight."""


def default_margin(expr) -> int:
    return 10 + 2 * factor_count(as_expr(expr))


@dataclass(frozen=True)
class WeightWindow:
    """Enumerate down to ``min_weight``; report components whose head weight is at least ``safe_weight``."""

    min_weight: int
    safe_weight: int

    def __post_init__(self):
        if self.safe_weight < self.min_weight:
            raise ValueError("safe_weight must not lie below min_weight")

    @classmethod
    def for_expr(cls, expr, min_weight: int, margin: Optional[int] = None) -> "WeightWindow":
        if margin is None:
            margin = default_margin(expr)
        n = factor_count(as_expr(expr))
        if margin < 2 * n + 2:
            raise ValueError(f"margin {margin} is below the minimum {2 * n + 2} for {n} factors")
        return cls(min_weight, min_weight + margin)


@dataclass(frozen=True)
class ComponentReport:
    label: CrystalLabel
    head: Element
    branch: Optional[Element]
    elements_seen: int

    @property
    def head_weight(self) -> int:
        return self.label.param


@dataclass
class Decomposition:
    expr: object
    window: WeightWindow
    reports: list = field(default_factory=list)

    @property
    def components(self) -> Counter:
        return Counter(r.label for r in self.reports if r.head_weight >= self.window.safe_weight)

    def character(self, w: int) -> int:
        return sum(mult * label.char(w) for label, mult in self.components.items())


def enumerate_elements(expr, window) -> list:
    """Carrier elements with weight at least the window minimum, by weight then element order."""
    min_weight = window.min_weight if isinstance(window, WeightWindow) else int(window)
    c = crystal(expr)
    return list(c.elements(min_weight))


def head_of(expr, x: Element) -> Element:
    """``e^eps(x) x``: either a branch point or the element of the component with zero e-image."""
    expr = as_expr(expr)
    check_shape(expr, x)
    c = crystal(expr)
    return c.e_pow(x, c.eps(x))


def _merging_branch_point(c: Crystal, top: Element) -> Optional[Element]:
    """The branch point ``a`` with ``e^(wt(top)+1) a == top``, if the component has one."""
    w = c.wt(top)
    if w < 0:
        return None
    for a in c.weight_space(-w - 2):
        if c.is_branch_point(a) and c.e_pow(a, w + 1) == top:
            return a
    return None


def _classify_top(c: Crystal, top: Element, window: WeightWindow) -> CrystalLabel:
    w = c.wt(top)
    if w < 0:
        return CrystalLabel("M", w)
    if -w - 2 < window.min_weight:
        raise WindowExhausted(
            f"cannot tell V({w}) from M({w}) at {top}: the f-string must be followed to weight "
            f"{-w - 2}, below the window minimum {window.min_weight}"
        )
    x = top
    for step in range(1, w + 2):
        x = c.f(x)
        if x is None:
            if step != w + 1:
                raise CrystalError(f"f-string from {top} ends after {step} steps, expected {w + 1}")
            return CrystalLabel("V", w)
    return CrystalLabel("M", w)


def _classify_branch(c: Crystal, a: Element) -> CrystalLabel:
    r = -c.wt(a) - 2
    kind = "Msigma" if c.f(c.e(a)) is None else "T"
    return CrystalLabel(kind, r)


def decompose(expr, window: WeightWindow) -> Decomposition:
    """Group enumerated elements by head and classify every group.

    Tops with zero e-image whose string continues into a branch point are folded into
    that branch point's component. Reports with head weight below ``safe_weight`` are
    kept but left out of :attr:`Decomposition.components`.
    """
    expr = as_expr(expr)
    c = crystal(expr)
    groups: dict = {}
    for x in c.elements(window.min_weight):
        h = c.e_pow(x, c.eps(x))
        groups.setdefault(h, []).append(x)

    reports = []
    absorbed = set()
    for h in list(groups):
        if not c.is_branch_point(h):
            continue
        top = c.e_pow(h, -c.wt(h) - 1)
        absorbed.add(top)
        seen = len(groups[h]) + len(groups.get(top, ()))
        reports.append(ComponentReport(_classify_branch(c, h), top, h, seen))

    for h, members in groups.items():
        if c.is_branch_point(h) or h in absorbed:
            continue
        if c.e(h) is not None:
            raise CrystalError(f"head {h} is neither a branch point nor has zero e-image")
        a = _merging_branch_point(c, h)
        if a is not None:
            # branch point lies below the window; the component is still classified exactly
            reports.append(ComponentReport(_classify_branch(c, a), h, a, len(members)))
            continue
        try:
            label = _classify_top(c, h, window)
        except WindowExhausted:
            if c.wt(h) >= window.safe_weight:
                raise
            label = CrystalLabel("M", c.wt(h))  # unreported, provisional
        reports.append(ComponentReport(label, h, None, len(members)))

    reports.sort(key=lambda rep: (-c.wt(rep.head), element_sort_key(rep.head)))
    return Decomposition(expr, window, reports)


def compare(dec, oracle, safe_weight: Optional[int] = None) -> dict:
    """Multiset difference above the safe weight. Empty ``missing`` and ``extra`` means agreement.

    Either argument may be a :class:`Decomposition` or a label multiset.
    """
    if safe_weight is None:
        for d in (dec, oracle):
            if isinstance(d, Decomposition):
                safe_weight = d.window.safe_weight
                break
    got = truncate(_multiset(dec), safe_weight)
    want = truncate(_multiset(oracle), safe_weight)
    return {"missing": dict(want - got), "extra": dict(got - want)}


def _multiset(d) -> Counter:
    if isinstance(d, Decomposition):
        return d.components
    return Counter(d)


def truncate(ms, safe_weight: Optional[int]) -> Counter:
    if safe_weight is None:
        return Counter(ms)
    return Counter({lab: n for lab, n in Counter(ms).items() if lab.param >= safe_weight and n})


def product_character(exprs_or_labels: Iterable, w: int) -> int:
    """Weight multiplicity of a tensor product of canonical labels (convolution of characters)."""
    labels = list(exprs_or_labels)
    return _convolve(tuple(labels), w)


def _convolve(labels: tuple, w: int) -> int:
    if not labels:
        return 0
    head, rest = labels[0], labels[1:]
    if not rest:
        return head.char(w)
    rest_top = sum(l.param for l in rest)
    total = 0
    u = head.param
    while w - u <= rest_top:
        n = head.char(u)
        if n:
            total += n * _convolve(rest, w - u)
        u -= 2
    return total


def leaf_labels(expr) -> list:
    expr = as_expr(expr)
    if hasattr(expr, "label"):
        return [expr.label]
    return leaf_labels(expr.left) + leaf_labels(expr.right)


def character_violations(dec: Decomposition) -> list:
    """Weights at or above the safe weight where component characters and enumeration disagree."""
    c = crystal(dec.expr)
    counts = Counter(c.wt(x) for x in c.elements(dec.window.safe_weight))
    labels = leaf_labels(dec.expr)
    bad = []
    top = c.max_weight
    for w in range(top, dec.window.safe_weight - 1, -1):
        conv = product_character(labels, w)
        comp = dec.character(w)
        if not (counts.get(w, 0) == comp == conv):
            bad.append({"weight": w, "enumerated": counts.get(w, 0), "components": comp, "convolution": conv})
    return bad
