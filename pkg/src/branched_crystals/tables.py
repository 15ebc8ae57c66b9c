"""Closed-form decompositions of ``B (x) B'`` for two indecomposable crystals.

Each of the sixteen ordered kind pairs has a table of lines. A line names a component
family ``kind(r + s - 2p)`` over an arithmetic range of ``p >= 0`` (possibly infinite),
an optional guard on ``r, s``, and how many distinct cyclic subcrystals it lists for
each ``p``. Lines for ``M(-1)`` instead carry the index expressions of the elements
generating the component; a term counts only when its index is a nonnegative integer.

Tables are stored exactly as printed, including suspected misprints. Disagreements
with the generic engine are found by :func:`sweep_errata`, not corrected here.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .core import CrystalLabel, KINDS


def _up(n: int) -> int:
    """ceil(n / 2)"""
    return -((-n) // 2)


def _down(n: int) -> int:
    """floor(n / 2)"""
    return n // 2


@dataclass(frozen=True)
class CaseLine:
    kind: str
    p_range: Callable  # (r, s) -> (lo, hi); hi None means unbounded
    guard: Optional[Callable] = None
    terms: int = 1
    indices: tuple = ()  # M(-1) lines only: (r, s) -> Fraction, one per term
    text: str = ""

    def applies(self, r: int, s: int) -> bool:
        return self.guard is None or self.guard(r, s)

    def expand(self, r: int, s: int, safe_weight: int) -> list:
        """``(label-or-None, p, count)`` for every contribution with head weight >= safe_weight.

        ``None`` marks a parameter that is not a valid label (e.g. ``T(-3)``).
        """
        if not self.applies(r, s):
            return []
        if self.indices:
            count = sum(1 for idx in self.indices if _is_index(idx(r, s)))
            return [(CrystalLabel("M", -1), None, count)] if count and -1 >= safe_weight else []
        lo, hi = self.p_range(r, s)
        lo = max(lo, 0)
        # head weight r + s - 2p >= safe_weight
        cap = _down(r + s - safe_weight)
        hi = cap if hi is None else min(hi, cap)
        out = []
        for p in range(lo, hi + 1):
            out.append((_label(self.kind, r + s - 2 * p), p, self.terms))
        return out


def _is_index(x: Fraction) -> bool:
    return x.denominator == 1 and x >= 0


def _label(kind: str, param: int) -> Optional[CrystalLabel]:
    try:
        return CrystalLabel(kind, param)
    except ValueError:
        return None


def _h(expr: Callable) -> Callable:
    """Wrap an index expression given as numerator over 2."""
    return lambda r, s: Fraction(expr(r, s), 2)


@dataclass(frozen=True)
class CaseRule:
    case_id: int
    left: str
    right: str
    left_is_r: bool  # whether the left factor's parameter is called r in the printed table
    lines: tuple

    def params(self, left: CrystalLabel, right: CrystalLabel) -> tuple:
        if self.left_is_r:
            return left.param, right.param
        return right.param, left.param


def L(kind, p_range, guard=None, terms=1, text=""):
    return CaseLine(kind, p_range, guard, terms, (), text)


def MINUS_ONE(*indices, guard=None, text=""):
    return CaseLine("M", lambda r, s: (0, -1), guard, len(indices), tuple(_h(i) for i in indices), text)


INF = None

CASES = {
    1: CaseRule(1, "M", "V", False, (
        L("T", lambda r, s: (s + 1, _down(r + s + 1)), lambda r, s: s >= 0, text="T(r+s-2p), 2s+2<=2p<=r+s+1, if s>=0"),
        L("T", lambda r, s: (0, _down(r + s + 1)), lambda r, s: s < 0, text="T(r+s-2p), 0<=2p<=r+s+1, if s<0"),
        L("M", lambda r, s: (0, min(r, s)), text="M(r+s-2p), 0<=p<=min{r,s}"),
        L("M", lambda r, s: (r + s + 2, r), text="M(r+s-2p), r+s+2<=p<=r"),
    )),
    2: CaseRule(2, "T", "V", False, (
        L("T", lambda r, s: (s + 1, _down(r + s + 1)), text="T(r+s-2p), 2s+2<=2p<=r+s+1"),
        L("T", lambda r, s: (0, _down(r + s + 1)), lambda r, s: s < r, text="T(r+s-2p), 0<=2p<=r+s+1, if s<r"),
        L("T", lambda r, s: (0, r), lambda r, s: s >= r, text="T(r+s-2p), 0<=p<=r, if s>=r"),
    )),
    3: CaseRule(3, "Msigma", "V", False, (
        L("T", lambda r, s: (s + 1, _down(r + s + 1)), text="T(r+s-2p), 2s+2<=2p<=r+s+1"),
        L("Msigma", lambda r, s: (0, min(r, s)), text="Msigma(r+s-2p), 0<=p<=min{r,s}"),
    )),
    4: CaseRule(4, "V", "Msigma", True, (
        L("T", lambda r, s: (s + 1, _down(r + s)), text="T(r+s-2p), 2s+2<=2p<=r+s"),
        L("Msigma", lambda r, s: (0, min(r, s)), text="Msigma(r+s-2p), 0<=p<=min{r,s}"),
        MINUS_ONE(lambda r, s: r - s - 1, text="M(-1) at b'_{(r-s-1)/2}"),
    )),
    # printed with the factor names swapped: B' = B(M(r)), B = B(M(s))
    5: CaseRule(5, "M", "M", False, (
        L("T", lambda r, s: (s + 1, _down(r + s)), text="T(r+s-2p), 2s+2<=2p<=r+s"),
        L("T", lambda r, s: (r + 1, _down(r + s + 1)), lambda r, s: r >= 0, text="T(r+s-2p), 2r+2<=2p<=r+s+1, if r>=0"),
        L("T", lambda r, s: (0, _down(r + s + 1)), lambda r, s: r < 0, text="T(r+s-2p), 0<=2p<=r+s+1, if r<0"),
        L("M", lambda r, s: (0, min(r, s)), text="M(r+s-2p), 0<=p<=min{r,s}"),
        L("M", lambda r, s: (r + s + 2, INF), lambda r, s: r < 0, text="M(r+s-2p), p>=r+s+2, if r<0"),
        L("M", lambda r, s: (max(r, s) + 1, INF), lambda r, s: r >= 0, text="M(r+s-2p), p>=max{r,s}+1, if r>=0"),
        L("M", lambda r, s: (r + s + 2, r), lambda r, s: s < 0, text="M(r+s-2p), r+s+2<=p<=r, if s<0"),
        MINUS_ONE(lambda r, s: r + s + 1, guard=lambda r, s: r >= s, text="M(-1) at b'_{(r+s+1)/2}, if r>=s"),
    )),
    6: CaseRule(6, "M", "Msigma", True, (
        L("T", lambda r, s: (0, s), text="T(r+s-2p), 0<=p<=s"),
        L("T", lambda r, s: (s + 1, _down(r + s)), text="T(r+s-2p), 2s+2<=2p<=r+s"),
        L("T", lambda r, s: (r + 1, _down(r + s + 1)), lambda r, s: r >= 0, text="T(r+s-2p), 2r+2<=2p<=r+s+1, if r>=0"),
        L("T", lambda r, s: (0, _down(r + s + 1)), lambda r, s: r < 0, text="T(r+s-2p), 0<=2p<=r+s+1, if r<0"),
        L("M", lambda r, s: (r + s + 2, INF), lambda r, s: r >= 0, text="M(r+s-2p), p>=r+s+2, if r>=0"),
        L("M", lambda r, s: (r + s + 2, s), lambda r, s: r < 0, text="M(r+s-2p), r+s+2<=p<=s, if r<0"),
        L("M", lambda r, s: (s + 1, INF), lambda r, s: r < 0, text="M(r+s-2p), p>=s+1, if r<0"),
        MINUS_ONE(lambda r, s: r - s - 1, guard=lambda r, s: r >= 0, text="M(-1) at b'_{(r-s-1)/2}, if r>=0"),
    )),
    7: CaseRule(7, "Msigma", "M", False, (
        L("T", lambda r, s: (0, _down(r + s + 1)), lambda r, s: s < r, text="T(r+s-2p), 0<=2p<=r+s+1, if s<r"),
        L("T", lambda r, s: (0, r), lambda r, s: s >= r, text="T(r+s-2p), 0<=p<=r, if s>=r"),
        L("T", lambda r, s: (r + 1, _down(r + s)), text="T(r+s-2p), 2r+2<=2p<=r+s"),
        L("M", lambda r, s: (r + s + 2, INF), lambda r, s: r >= 0, text="M(r+s-2p), p>=r+s+2, if r>=0"),
        L("M", lambda r, s: (s + 1, INF), lambda r, s: r < 0, text="M(r+s-2p), p>=s+1, if r<0"),
        L("M", lambda r, s: (r + s + 2, s), text="M(r+s-2p), s+r+2<=p<=s"),
        MINUS_ONE(lambda r, s: r + s + 1, guard=lambda r, s: s >= r, text="M(-1) at b'_{(r+s+1)/2}, if s>=r"),
    )),
    8: CaseRule(8, "Msigma", "Msigma", True, (
        L("T", lambda r, s: (s + 1, _down(r + s)), text="T(r+s-2p), 2s+2<=2p<=r+s"),
        L("T", lambda r, s: (r + 1, _down(r + s + 1)), text="T(r+s-2p), 2r+2<=2p<=r+s+1"),
        L("Msigma", lambda r, s: (0, min(r, s)), text="Msigma(r+s-2p), 0<=p<=min{r,s}"),
        L("M", lambda r, s: (max(r, s) + 1, r + s + 1), text="M(r+s-2p), max{r,s}+1<=p<=r+s+1"),
        L("M", lambda r, s: (r + s + 2, INF), text="M(r+s-2p), p>=r+s+2"),
        MINUS_ONE(lambda r, s: r - s - 1, text="M(-1) at b'_{(r-s-1)/2}"),
    )),
    9: CaseRule(9, "M", "T", False, (
        L("T", lambda r, s: (0, min(r, s)), text="T(r+s-2p), 0<=p<=min{r,s}"),
        L("T", lambda r, s: (r + 1, _down(r + s)), terms=2, text="T(r+s-2p) twice, 2r+2<=2p<=r+s"),
        L("T", lambda r, s: (s + 1, _down(r + s + 1)), text="T(r+s-2p), 2s+2<=2p<=r+s+1"),
        L("T", lambda r, s: (0, _down(r + s + 1)), lambda r, s: s < 0, text="T(r+s-2p), 0<=2p<=r+s+1, if s<0"),
        L("M", lambda r, s: (r + s + 2, INF), lambda r, s: s >= 0, text="M(r+s-2p), p>=r+s+2, if s>=0"),
        L("M", lambda r, s: (max(r, s) + 1, INF), lambda r, s: s >= 0, text="M(r+s-2p), p>=max{r,s}+1, if s>=0"),
        L("M", lambda r, s: (r + s + 2, INF), lambda r, s: s < 0, text="M(r+s-2p), p>=r+s+2, if s<0"),
        L("M", lambda r, s: (s + 1, INF), lambda r, s: s < 0, text="M(r+s-2p), p>=s+1, if s<0"),
        MINUS_ONE(lambda r, s: s - r - 1, lambda r, s: r + s + 1, guard=lambda r, s: s >= r,
                  text="M(-1) at b'_{(s-r-1)/2} and b'_((r+s+1)/2), if s>=r"),
    )),
    10: CaseRule(10, "T", "M", True, (
        L("T", lambda r, s: (0, _down(r + s + 1)), lambda r, s: s > r, text="T(r+s-2p), 0<=2p<=r+s+1, if s>r"),
        L("T", lambda r, s: (0, s), lambda r, s: s <= r, text="T(r+s-2p), 0<=p<=s, if s<=r"),
        L("T", lambda r, s: (r + 1, _down(r + s + 1)), text="T(r+s-2p), 2r+2<=2p<=r+s+1"),
        L("T", lambda r, s: (s + 1, _down(r + s)), text="T(r+s-2p), 2s+2<=2p<=r+s"),
        L("M", lambda r, s: (r + s + 2, INF), lambda r, s: s >= 0, text="M(r+s-2p), p>=r+s+2, if s>=0"),
        L("M", lambda r, s: (r + 1, INF), lambda r, s: s < 0, text="M(r+s-2p), p>=r+1, if s<0"),
        L("M", lambda r, s: (max(r, s) + 1, INF), text="M(r+s-2p), p>=max{r,s}+1"),
        L("M", lambda r, s: (r + s + 2, r), text="M(r+s-2p), s+r+2<=p<=r"),
        MINUS_ONE(lambda r, s: r + s + 1, guard=lambda r, s: s <= r, text="M(-1) at b'_{(r+s+1)/2}, if s<=r"),
    )),
    11: CaseRule(11, "T", "T", True, (
        L("T", lambda r, s: (s + 1, _down(r + s)), terms=2, text="T(r+s-2p) twice, 2s+2<=2p<=r+s"),
        L("T", lambda r, s: (0, s), text="T(r+s-2p), 0<=p<=s"),
        L("T", lambda r, s: (r + 1, _down(r + s + 1)), terms=2, text="T(r+s-2p) twice, 2r+2<=2p<=r+s+1"),
        L("M", lambda r, s: (s + 1, INF), terms=2, text="M(r+s-2p) twice, p>=s+1"),
        L("M", lambda r, s: (r + 1, INF), terms=2, text="M(r+s-2p) twice, p>=r+1"),
        MINUS_ONE(lambda r, s: r + s + 1, lambda r, s: r - s - 1, guard=lambda r, s: r >= s,
                  text="M(-1) at b'_((r+s+1)/2) and b'_{(r-s-1)/2}, if r>=s"),
    )),
    12: CaseRule(12, "T", "Msigma", True, (
        L("T", lambda r, s: (s + 1, _down(r + s)), text="T(r+s-2p), 2s+2<=2p<=r+s"),
        L("T", lambda r, s: (0, max(r, s)), text="T(r+s-2p), 0<=p<=max{r,s}"),
        L("T", lambda r, s: (r + 1, _down(r + s + 1)), terms=2, text="T(r+s-2p) twice, 2r+2<=2p<=r+s+1"),
        L("M", lambda r, s: (r + 1, INF), lambda r, s: r >= s, text="M(r+s-2p), p>=r+1, if r>=s"),
        L("M", lambda r, s: (s + 1, r + s + 1), lambda r, s: s > r, text="M(r+s-2p), s+1<=p<=r+s+1, if s>r"),
        L("M", lambda r, s: (r + s + 2, INF), terms=2, text="M(r+s-2p) twice, p>=r+s+2"),
        MINUS_ONE(lambda r, s: r - s - 1, guard=lambda r, s: r >= s, text="M(-1) at b'_{(r-s-1)/2}, if r>=s"),
    )),
    13: CaseRule(13, "Msigma", "T", False, (
        L("T", lambda r, s: (r + 1, _down(r + s)), terms=2, text="T(r+s-2p) twice, 2r+2<=2p<=r+s"),
        L("T", lambda r, s: (0, r), text="T(r+s-2p), 0<=p<=r"),
        L("T", lambda r, s: (s + 1, _down(r + s + 1)), text="T(r+s-2p), 2s+2<=2p<=r+s+1"),
        L("M", lambda r, s: (r + 1, INF), text="M(r+s-2p), p>=r+1"),
        L("M", lambda r, s: (s + 1, INF), text="M(r+s-2p), p>=s+1"),
        MINUS_ONE(lambda r, s: r + s + 1, guard=lambda r, s: r <= s, text="M(-1) at b'_((r+s+1)/2), if r<=s"),
    )),
    14: CaseRule(14, "V", "V", True, (
        L("V", lambda r, s: (0, min(r, s)), text="V(r+s-2p), 0<=p<=min{r,s}"),
    )),
    15: CaseRule(15, "V", "M", True, (
        L("T", lambda r, s: (s + 1, _down(r + s)), text="T(r+s-2p), 2s+2<=2p<=r+s"),
        L("M", lambda r, s: (0, min(r, s)), text="M(r+s-2p), 0<=p<=min{r,s}"),
        L("M", lambda r, s: (r + s + 2, r), text="M(r+s-2p), r+s+2<=p<=r"),
        MINUS_ONE(lambda r, s: r + s + 1, guard=lambda r, s: r >= s, text="M(-1) at b'_{(r+s+1)/2}, if r>=s"),
    )),
    16: CaseRule(16, "V", "T", True, (
        L("T", lambda r, s: (s + 1, _down(r + s)), terms=2, text="T(r+s-2p) twice, 2s+2<=2p<=r+s"),
        L("T", lambda r, s: (0, min(r, s)), text="T(r+s-2p), 0<=p<=min{r,s}"),
        MINUS_ONE(lambda r, s: r + s + 1, lambda r, s: r - s - 1, guard=lambda r, s: r >= s,
                  text="M(-1) at b'_((r+s+1)/2) and b'_{(r-s-1)/2}, if r>=s"),
    )),
}

CASE_FOR_KINDS = {(rule.left, rule.right): cid for cid, rule in CASES.items()}
assert len(CASE_FOR_KINDS) == 16


def case_for(left: CrystalLabel, right: CrystalLabel) -> CaseRule:
    return CASES[CASE_FOR_KINDS[(left.kind, right.kind)]]


def expand_lines(left: CrystalLabel, right: CrystalLabel, safe_weight: int) -> list:
    """``(line_index, label-or-None, p, count)`` for every table contribution."""
    rule = case_for(left, right)
    r, s = rule.params(left, right)
    out = []
    for i, line in enumerate(rule.lines):
        for label, p, count in line.expand(r, s, safe_weight):
            out.append((i, label, p, count))
    return out


def oracle_decompose(left: CrystalLabel, right: CrystalLabel, window) -> Counter:
    """Label multiset of ``B(left) (x) B(right)`` read off the printed table, truncated at the safe weight.

    Contributions that are not valid labels are dropped here; :func:`expand_lines` exposes them.
    """
    safe = getattr(window, "safe_weight", window)
    out = Counter()
    for _, label, _, count in expand_lines(left, right, safe):
        if label is not None:
            out[label] += count
    return out


def dual_label(x: CrystalLabel) -> CrystalLabel:
    """Label of the restricted dual: ``M(s) <-> Msigma(s)`` for ``s >= 0``; everything else is self-dual."""
    if x.kind == "M" and x.param >= 0:
        return CrystalLabel("Msigma", x.param)
    if x.kind == "Msigma":
        return CrystalLabel("M", x.param)
    return x


def sweep_labels(lo: int, hi: int, negative_lo: Optional[int] = None) -> list:
    """Canonical labels with parameters in ``[lo, hi]``; M also gets ``[negative_lo, -1]``."""
    out = []
    for kind in KINDS:
        for p in range(lo, hi + 1):
            lab = _label(kind, p)
            if lab is not None:
                out.append(lab)
        if kind == "M" and negative_lo is not None:
            out.extend(CrystalLabel("M", p) for p in range(negative_lo, min(lo, 0)))
    return out


def _param_text(kind: str, param: int) -> str:
    return f"{kind}({param})"


def sweep_pairs(lo: int = 0, hi: int = 5, negative_lo: int = -5) -> list:
    """Ordered label pairs per case: parameters in ``[lo, hi]``, M factors also in ``[negative_lo, -1]``."""
    def params(kind):
        ps = list(range(lo, hi + 1))
        if kind == "M":
            ps = list(range(negative_lo, min(lo, 0))) + ps
        return ps

    out = []
    for cid, rule in CASES.items():
        for a in params(rule.left):
            for b in params(rule.right):
                left, right = _label(rule.left, a), _label(rule.right, b)
                if left is not None and right is not None and (left.kind, right.kind) == (rule.left, rule.right):
                    out.append((cid, left, right))
    return out


def errata_for_pair(left: CrystalLabel, right: CrystalLabel, window) -> list:
    """Disagreements between the printed table and the engine for one pair, one entry per label.

    Table contributions that are not valid labels are reported with ``engineResult`` 0.
    """
    from .core import Atom, Tensor
    from .decompose import character_violations, decompose

    rule = case_for(left, right)
    r, s = rule.params(left, right)
    safe = window.safe_weight
    lines = expand_lines(left, right, safe)
    dec = decompose(Tensor(Atom(left), Atom(right)), window)
    engine = dec.components
    char_ok = not character_violations(dec)

    table = Counter()
    sources: dict = {}
    invalid: dict = {}
    for i, label, p, count in lines:
        if label is None:
            line = rule.lines[i]
            key = _param_text(line.kind, r + s - 2 * p)
            invalid.setdefault(key, [0, set()])
            invalid[key][0] += count
            invalid[key][1].add(i)
            continue
        table[label] += count
        sources.setdefault(label, set()).add(i)

    params = {"r": r, "s": s, "left": str(left), "right": str(right)}
    entries = []
    for label in sorted(set(table) | set(engine), key=lambda x: x.sort_key()):
        if table[label] != engine[label]:
            entries.append({
                "caseId": rule.case_id,
                "lineIndex": sorted(sources.get(label, ())),
                "params": params,
                "label": str(label),
                "tableResult": table[label],
                "engineResult": engine[label],
                "engineCharacterOK": char_ok,
            })
    for key, (count, idx) in sorted(invalid.items()):
        entries.append({
            "caseId": rule.case_id,
            "lineIndex": sorted(idx),
            "params": params,
            "label": key,
            "tableResult": count,
            "engineResult": 0,
            "engineCharacterOK": char_ok,
        })
    return entries


def sweep_errata(window, pairs=None) -> list:
    """Errata entries over a sweep, in case then parameter order."""
    if pairs is None:
        pairs = sweep_pairs()
    out = []
    for _, left, right in pairs:
        out.extend(errata_for_pair(left, right, window))
    return out


def summarize_errata(entries: list) -> dict:
    """Per case: the table lines implicated and how many entries mention each."""
    out: dict = {}
    for e in entries:
        case = out.setdefault(e["caseId"], {"entries": 0, "lines": Counter()})
        case["entries"] += 1
        for i in e["lineIndex"] or [-1]:
            case["lines"][i] += 1
    return out


def write_errata(entries: list, path) -> None:
    import json

    with open(path, "w", encoding="utf-8") as fh:
        json.dump(entries, fh, indent=2, sort_keys=True)
        fh.write("\n")
