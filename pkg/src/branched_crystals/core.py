"""Elements, labels and the four canonical families of indecomposable branched crystals.

Every crystal here is built from a :class:`CrystalExpr`, a binary tree whose leaves
are :class:`CrystalLabel` values. Elements mirror that tree: a :class:`Node` for a
leaf and a :class:`Pair` for a tensor. The zero symbol is ``None``.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from functools import total_ordering
from typing import Iterator, Optional, Union

KINDS = ("V", "M", "T", "Msigma")
_KIND_RANK = {k: i for i, k in enumerate(KINDS)}

PLAIN = "plain"
PAREN = "paren"
_CHAIN_RANK = {PAREN: 0, PLAIN: 1}


class CrystalError(Exception):
    """Base class for errors raised by the crystal machinery."""


class ShapeError(CrystalError, ValueError):
    """An element does not belong to the carrier of the expression it was used with."""


class IterationCapExceeded(CrystalError):
    """A raising-operator walk did not terminate within the weight-derived cap."""


@total_ordering
@dataclass(frozen=True, eq=True)
class CrystalLabel:
    """Name of an indecomposable crystal: ``V(r)``, ``M(s)``, ``T(r)`` or ``Msigma(r)``.

    ``T(-1)`` is stored as ``M(-1)`` so that equality is canonical.
    """

    kind: str
    param: int

    def __post_init__(self):
        if self.kind not in _KIND_RANK:
            raise ValueError(f"unknown crystal kind {self.kind!r}")
        if not isinstance(self.param, int) or isinstance(self.param, bool):
            raise TypeError("label parameter must be an int")
        if self.kind == "T" and self.param == -1:
            object.__setattr__(self, "kind", "M")
        lower = {"V": 0, "M": None, "T": -1, "Msigma": 0}[self.kind]
        if lower is not None and self.param < lower:
            raise ValueError(f"{self.kind}({self.param}) is not a valid label")

    def __str__(self):
        return f"{self.kind}({self.param})"

    def __repr__(self):
        return str(self)

    def __lt__(self, other):
        if not isinstance(other, CrystalLabel):
            return NotImplemented
        return self.sort_key() < other.sort_key()

    def sort_key(self):
        return (-self.param, _KIND_RANK[self.kind])

    @property
    def top_weight(self) -> int:
        return self.param

    @property
    def is_finite(self) -> bool:
        return self.kind == "V"

    def char(self, w: int) -> int:
        """Dimension of weight space ``w`` of the matching module (equivalently, crystal)."""
        r = self.param
        if w > r or (r - w) % 2:
            return 0
        if self.kind == "V":
            return 1 if w >= -r else 0
        if self.kind in ("M", "Msigma"):
            return 1
        # T(r): one on r, r-2, ..., -r and two strictly below -r.
        return 2 if w < -r else 1


def V(r: int) -> CrystalLabel:
    return CrystalLabel("V", r)


def M(s: int) -> CrystalLabel:
    return CrystalLabel("M", s)


def T(r: int) -> CrystalLabel:
    return CrystalLabel("T", r)


def Msigma(r: int) -> CrystalLabel:
    return CrystalLabel("Msigma", r)


@dataclass(frozen=True)
class Node:
    """A canonical element ``b_j`` (plain chain) or ``b_(j)`` (paren chain) of one family."""

    label: CrystalLabel
    chain: str
    index: int
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        kind, r, j = self.label.kind, self.label.param, self.index
        if self.chain not in _CHAIN_RANK:
            raise ValueError(f"unknown chain {self.chain!r}")
        ok = j >= 0
        if kind == "V":
            ok = ok and self.chain == PLAIN and j <= r
        elif kind == "M":
            ok = ok and self.chain == PLAIN
        elif kind == "Msigma" and self.chain == PAREN:
            ok = ok and j <= r
        if not ok:
            raise ShapeError(f"{_node_text(self)} is not an element of {self.label}")
        object.__setattr__(self, "_hash", hash((self.label, self.chain, j)))

    def __hash__(self):
        return self._hash

    def __str__(self):
        return _node_text(self)


def _node_text(node: Node) -> str:
    if node.chain == PAREN:
        return f"{node.label}:b({node.index})"
    return f"{node.label}:b{node.index}"


@dataclass(frozen=True)
class Pair:
    left: "Element"
    right: "Element"

    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((self.left, self.right)))

    def __hash__(self):
        return self._hash

    def __str__(self):
        return f"{_wrap(self.left)} (x) {_wrap(self.right)}"


Element = Union[Node, Pair]


def _wrap(x) -> str:
    return f"({x})" if isinstance(x, (Pair, Tensor)) else str(x)


@dataclass(frozen=True)
class Atom:
    label: CrystalLabel

    def __str__(self):
        return str(self.label)


@dataclass(frozen=True)
class Tensor:
    left: "CrystalExpr"
    right: "CrystalExpr"

    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((self.left, self.right)))

    def __hash__(self):
        return self._hash

    def __str__(self):
        return f"{_wrap(self.left)} (x) {_wrap(self.right)}"


CrystalExpr = Union[Atom, Tensor]


def as_expr(obj) -> CrystalExpr:
    """Accept a label where an expression is expected."""
    if isinstance(obj, CrystalLabel):
        return Atom(obj)
    if isinstance(obj, (Atom, Tensor)):
        return obj
    raise TypeError(f"not a crystal expression: {obj!r}")


def tensor(*factors) -> CrystalExpr:
    """Left-nested tensor product of the given labels or expressions."""
    exprs = [as_expr(f) for f in factors]
    if not exprs:
        raise ValueError("tensor() needs at least one factor")
    out = exprs[0]
    for e in exprs[1:]:
        out = Tensor(out, e)
    return out


def factor_count(expr: CrystalExpr) -> int:
    if isinstance(expr, Atom):
        return 1
    return factor_count(expr.left) + factor_count(expr.right)


def max_weight(expr: CrystalExpr) -> int:
    """Largest weight occurring in the carrier (additive over tensors)."""
    if isinstance(expr, Atom):
        return expr.label.top_weight
    return max_weight(expr.left) + max_weight(expr.right)


def element_sort_key(x: Element):
    """Total order on elements: label, chain, index, then lexicographic over pairs."""
    if isinstance(x, Node):
        return (0, x.label.sort_key(), _CHAIN_RANK[x.chain], x.index)
    return (1, element_sort_key(x.left), element_sort_key(x.right))


def check_shape(expr: CrystalExpr, x) -> None:
    if isinstance(expr, Atom):
        if not isinstance(x, Node) or x.label != expr.label:
            raise ShapeError(f"{x} is not an element of {expr}")
        return
    if not isinstance(x, Pair):
        raise ShapeError(f"{x} is not an element of {expr}")
    check_shape(expr.left, x.left)
    check_shape(expr.right, x.right)


class Crystal:
    """Structure maps of one crystal expression.

    Subclasses provide the raw maps; callers normally go through the module-level
    functions (:func:`weight`, :func:`e_step`, ...) which validate element shape first.
    """

    expr: CrystalExpr

    def wt(self, x: Element) -> int:
        raise NotImplementedError

    def e(self, x: Element) -> Optional[Element]:
        raise NotImplementedError

    def f(self, x: Element) -> Optional[Element]:
        raise NotImplementedError

    def eps(self, x: Element) -> int:
        raise NotImplementedError

    def weight_space(self, w: int) -> list:
        """All carrier elements of weight exactly ``w`` (finite for every family)."""
        raise NotImplementedError

    @property
    def max_weight(self) -> int:
        return max_weight(self.expr)

    def phi(self, x: Element) -> int:
        return self.wt(x) + self.eps(x)

    def psi(self, x: Element) -> int:
        e = self.eps(x)
        return max(e, e - self.phi(x) - 1)

    def e_pow(self, x: Optional[Element], k: int) -> Optional[Element]:
        for _ in range(k):
            if x is None:
                return None
            x = self.e(x)
        return x

    def f_pow(self, x: Optional[Element], k: int) -> Optional[Element]:
        for _ in range(k):
            if x is None:
                return None
            x = self.f(x)
        return x

    def is_branch_point(self, x: Element) -> bool:
        y = self.e(x)
        return y is not None and self.f(y) != x

    def eps_by_minimization(self, x: Element) -> int:
        """``min{s >= 0 : f e^(s+1) x != e^s x}`` with the weight-derived iteration cap."""
        cap = (self.max_weight - self.wt(x)) // 2 + 2
        cur = x
        for s in range(cap + 1):
            up = self.e(cur)
            down = self.f(up) if up is not None else None
            if down != cur:
                return s
            cur = up
        raise IterationCapExceeded(f"epsilon of {x} did not settle within {cap} raising steps")

    def top_of(self, x: Element) -> Element:
        """Last nonzero element of the raising walk starting at ``x``."""
        cap = (self.max_weight - self.wt(x)) // 2 + 2
        for _ in range(cap + 1):
            y = self.e(x)
            if y is None:
                return x
            x = y
        raise IterationCapExceeded("raising walk exceeded the weight cap")

    def is_above_branch_point(self, x: Element) -> bool:
        """True iff ``x = e^l a`` for some branch point ``a`` and ``l >= 0``."""
        top_weight = self.wt(self.top_of(x))
        branch_weight = -top_weight - 2
        gap = self.wt(x) - branch_weight
        if gap < 0 or gap % 2:
            return False
        for a in self.weight_space(branch_weight):
            if self.is_branch_point(a) and self.e_pow(a, gap // 2) == x:
                return True
        return False

    def elements(self, min_weight: int) -> Iterator[Element]:
        """All carrier elements of weight at least ``min_weight``, by weight descending."""
        top = self.max_weight
        for w in range(top, min_weight - 1, -1):
            if (top - w) % 2 == 0:
                yield from self.weight_space(w)


class AtomCrystal(Crystal):
    """Closed-form maps of one canonical family."""

    def __init__(self, label: CrystalLabel):
        self.label = label
        self.expr = Atom(label)
        self._kind = label.kind
        self._r = label.param

    def _node(self, chain, j):
        return Node(self.label, chain, j)

    def _exists(self, chain, j) -> bool:
        if j < 0:
            return False
        kind = self._kind
        if kind == "V":
            return chain == PLAIN and j <= self._r
        if kind == "M":
            return chain == PLAIN
        if kind == "Msigma" and chain == PAREN:
            return j <= self._r
        return True

    def wt(self, x: Node) -> int:
        r = self._r
        if x.chain == PAREN or self._kind in ("V", "M"):
            return r - 2 * x.index
        return -r - 2 - 2 * x.index

    def eps(self, x: Node) -> int:
        return x.index

    def phi(self, x: Node) -> int:
        r = self._r
        if x.chain == PAREN or self._kind in ("V", "M"):
            return r - x.index
        return -r - 2 - x.index

    def e(self, x: Node) -> Optional[Node]:
        if x.chain == PLAIN and x.index == 0 and self._kind in ("T", "Msigma"):
            return self._node(PAREN, self._r)
        j = x.index - 1
        return self._node(x.chain, j) if self._exists(x.chain, j) else None

    def f(self, x: Node) -> Optional[Node]:
        j = x.index + 1
        return self._node(x.chain, j) if self._exists(x.chain, j) else None

    def is_branch_point(self, x: Node) -> bool:
        return self._kind in ("T", "Msigma") and x.chain == PLAIN and x.index == 0

    def is_above_branch_point(self, x: Node) -> bool:
        if self._kind not in ("T", "Msigma"):
            return False
        if x.chain == PLAIN:
            return x.index == 0
        return x.index <= self._r

    def weight_space(self, w: int) -> list:
        r, kind = self._r, self._kind
        out = []
        if (r - w) % 2:
            return out
        j = (r - w) // 2
        main = PAREN if kind in ("T", "Msigma") else PLAIN
        if self._exists(main, j):
            out.append(self._node(main, j))
        if kind in ("T", "Msigma"):
            j = (-r - 2 - w) // 2
            if j >= 0:
                out.append(self._node(PLAIN, j))
        return out


_cache_lock = threading.Lock()
_crystals: dict = {}


def crystal(expr) -> Crystal:
    """The (shared, memoized) crystal object for an expression."""
    expr = as_expr(expr)
    c = _crystals.get(expr)
    if c is None:
        if isinstance(expr, Atom):
            c = AtomCrystal(expr.label)
        else:
            from .tensor import TensorCrystal

            c = TensorCrystal(crystal(expr.left), crystal(expr.right))
        with _cache_lock:
            c = _crystals.setdefault(expr, c)
    return c


def clear_cache() -> None:
    """Drop every memoized crystal; long sweeps call this between independent products."""
    with _cache_lock:
        _crystals.clear()


def _checked(expr, x) -> Crystal:
    expr = as_expr(expr)
    check_shape(expr, x)
    return crystal(expr)


def weight(expr, x: Element) -> int:
    return _checked(expr, x).wt(x)


def e_step(expr, x: Element) -> Optional[Element]:
    return _checked(expr, x).e(x)


def f_step(expr, x: Element) -> Optional[Element]:
    return _checked(expr, x).f(x)


def epsilon(expr, x: Element) -> int:
    """epsilon of ``x``; for atoms the closed form, which must agree with the minimization."""
    c = _checked(expr, x)
    value = c.eps(x)
    if isinstance(c, AtomCrystal):
        assert value == c.eps_by_minimization(x), f"closed-form epsilon disagrees at {x}"
    return value


def phi(expr, x: Element) -> int:
    c = _checked(expr, x)
    return c.wt(x) + c.eps(x)


def psi(expr, x: Element) -> int:
    return _checked(expr, x).psi(x)


def is_branch_point(expr, x: Element) -> bool:
    return _checked(expr, x).is_branch_point(x)


def above_branch_point(expr, x: Element) -> bool:
    return _checked(expr, x).is_above_branch_point(x)
