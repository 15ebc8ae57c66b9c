"""Verification sweeps shared by the command line and the test suite.

Every suite returns a :class:`SuiteResult`; ``failures`` is a list of JSON-ready dicts
and an empty list means the suite passed.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field

from .axioms import check_axioms
from .category_o import module_tensor
from .core import Atom, CrystalLabel, KINDS, Tensor, clear_cache, crystal
from .decompose import WeightWindow, character_violations, compare, decompose
from .tables import sweep_errata, sweep_pairs
from .tensor import branch_point_criterion, held_e_conditions, zero_raise_criterion


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def as_dict(self) -> dict:
        return {"suite": self.name, "passed": self.passed, "checked": self.checked,
                "failures": self.failures, "stats": self.stats}


def labels_in(lo: int, hi: int, negative_lo: int | None = None) -> list:
    """Canonical labels with parameter in ``[lo, hi]``; M additionally over ``[negative_lo, -1]``."""
    out = []
    for kind in KINDS:
        params = list(range(lo, hi + 1))
        if kind == "M" and negative_lo is not None:
            params = sorted(set(params) | set(range(negative_lo, 0)))
        for p in params:
            try:
                lab = CrystalLabel(kind, p)
            except ValueError:
                continue
            if lab.kind == kind and lab not in out:
                out.append(lab)
    return out


def _pair_expr(a, b):
    return Tensor(Atom(a), Atom(b))


def _char_failures(dec, tag) -> list:
    return [{"check": "character", "expr": str(dec.expr), **v, **tag} for v in character_violations(dec)]


def axioms_suite(singles, pairs, triples, min_weight: int = -30) -> SuiteResult:
    res = SuiteResult("axioms")
    exprs = [Atom(a) for a in singles]
    exprs += [_pair_expr(a, b) for a, b in pairs]
    exprs += list(triples)
    for e in exprs:
        res.checked += 1
        for v in check_axioms(e, min_weight):
            res.failures.append({"expr": str(e), "axiom": v.axiom, "element": str(v.element), "detail": v.detail})
    return res


def cases_suite(window: WeightWindow, pairs=None) -> tuple:
    """Errata sweep. Fails on any disagreement in the prior-work cases 14-16, or on any
    entry where the engine itself breaks character conservation."""
    pairs = sweep_pairs() if pairs is None else pairs
    entries = sweep_errata(window, pairs)
    res = SuiteResult("cases", checked=len(pairs))
    for e in entries:
        if e["caseId"] in (14, 15, 16) or not e["engineCharacterOK"]:
            res.failures.append(e)
    res.stats["errata"] = len(entries)
    res.stats["errata_cases"] = sorted({e["caseId"] for e in entries})
    return res, entries


def comm_suite(pairs, window: WeightWindow) -> SuiteResult:
    res = SuiteResult("comm")
    for a, b in pairs:
        res.checked += 1
        d1 = decompose(_pair_expr(a, b), window)
        d2 = decompose(_pair_expr(b, a), window)
        diff = compare(d1, d2)
        if diff["missing"] or diff["extra"]:
            res.failures.append({"left": str(a), "right": str(b), "ab_only": _fmt(diff["extra"]),
                                 "ba_only": _fmt(diff["missing"])})
        res.failures += _char_failures(d1, {}) + _char_failures(d2, {})
    return res


def assoc_suite(triples, window: WeightWindow, clear_every: int = 64) -> SuiteResult:
    res = SuiteResult("assoc")
    for i, (a, b, c) in enumerate(triples):
        if clear_every and i % clear_every == 0:
            clear_cache()
        res.checked += 1
        left = Tensor(_pair_expr(a, b), Atom(c))
        right = Tensor(Atom(a), _pair_expr(b, c))
        d1, d2 = decompose(left, window), decompose(right, window)
        diff = compare(d1, d2)
        if diff["missing"] or diff["extra"]:
            res.failures.append({"triple": [str(a), str(b), str(c)], "left_only": _fmt(diff["extra"]),
                                 "right_only": _fmt(diff["missing"])})
        res.failures += _char_failures(d1, {}) + _char_failures(d2, {})
    return res


def thm36_suite(pairs, window: WeightWindow) -> SuiteResult:
    """Module-side decomposition against the crystal engine."""
    res = SuiteResult("thm36")
    for a, b in pairs:
        res.checked += 1
        dec = decompose(_pair_expr(a, b), window)
        mod = module_tensor(a, b).materialize(window.safe_weight)
        diff = compare(dec, mod)
        if diff["missing"] or diff["extra"]:
            res.failures.append({"left": str(a), "right": str(b), "module_only": _fmt(diff["missing"]),
                                 "crystal_only": _fmt(diff["extra"])})
        res.failures += _char_failures(dec, {})
    return res


def predicates_suite(pairs, min_weight: int) -> SuiteResult:
    """Closed characterizations of tensor branch points and of zero raising, element by element."""
    res = SuiteResult("predicates")
    overlaps = Counter()
    branch = Counter()
    zero = Counter()
    corollary = Counter()
    for a, b in pairs:
        c = crystal(_pair_expr(a, b))
        L, R = c.L, c.R
        for x in c.elements(min_weight):
            res.checked += 1
            u, v = x.left, x.right
            held = held_e_conditions(L, R, u, v)
            if len(held) > 1:
                overlaps["+".join(h.value for h in held)] += 1
            raised = c.e(x)
            if raised is not None:
                want = c.is_branch_point(x)
                got = branch_point_criterion(L, R, u, v)
                branch[str(want == got)] += 1
                if want != got:
                    res.failures.append({"check": "branch-point", "element": str(x), "generic": want, "criterion": got})
            got = zero_raise_criterion(L, R, u, v)
            zero[str(got == (raised is None))] += 1
            if got != (raised is None):
                res.failures.append({"check": "zero-raise", "element": str(x), "generic": raised is None, "criterion": got})
            if not held:
                ok = L.eps(u) == 0 or L.phi(u) == -1
                corollary[str(ok)] += 1
                if not ok:
                    res.failures.append({"check": "no-condition", "element": str(x)})
    res.stats = {"e_overlaps": dict(overlaps), "branch_agree": dict(branch), "zero_agree": dict(zero),
                 "no_condition_ok": dict(corollary)}
    return res


def ordered_pairs(pairs_with_case) -> list:
    return [(a, b) for _, a, b in pairs_with_case]


def all_triples(labels) -> list:
    return list(itertools.product(labels, repeat=3))


def _fmt(counter) -> dict:
    return {str(k): v for k, v in sorted(counter.items(), key=lambda kv: kv[0].sort_key())}
