"""Exhaustive check of the branched-crystal axioms over a finite weight window."""
from __future__ import annotations

from dataclasses import dataclass

from .core import AtomCrystal, Crystal, CrystalError, crystal


@dataclass(frozen=True)
class Violation:
    axiom: str
    element: object
    detail: str

    def __str__(self):
        return f"({self.axiom}) at {self.element}: {self.detail}"


def check_axioms(expr_or_crystal, window) -> list:
    """Every violated axiom instance among elements of weight >= the window minimum.

    ``window`` is a :class:`~branched_crystals.decompose.WeightWindow` or a bare minimum
    weight. Violations are returned, never raised. Axiom (iii) is checked with exactly its
    stated quantification: only pairs that are both branch points.
    """
    c = expr_or_crystal if isinstance(expr_or_crystal, Crystal) else crystal(expr_or_crystal)
    min_weight = getattr(window, "min_weight", window)
    out = []
    merge_targets = {}
    for x in c.elements(min_weight):
        w = c.wt(x)
        try:
            eps = c.eps(x)
            eps_min = c.eps_by_minimization(x)
        except CrystalError as err:
            out.append(Violation("iv", x, str(err)))
            continue
        up, down = c.e(x), c.f(x)

        if up is not None and c.wt(up) != w + 2:
            out.append(Violation("i", x, f"wt(e x) = {c.wt(up)}, expected {w + 2}"))
        if down is not None and c.wt(down) != w - 2:
            out.append(Violation("i", x, f"wt(f x) = {c.wt(down)}, expected {w - 2}"))

        if down is not None and c.e(down) != x:
            out.append(Violation("ii", x, f"e f x = {c.e(down)}"))

        if eps < 0 or eps != eps_min:
            out.append(Violation("iv", x, f"epsilon = {eps}, minimization gives {eps_min}"))

        if c.phi(x) != w + eps:
            out.append(Violation("v", x, f"phi = {c.phi(x)} but wt + eps = {w + eps}"))

        if up is not None and c.f(up) != x:
            other = merge_targets.setdefault(up, x)
            if other != x:
                out.append(Violation("iii", x, f"e x = e y = {up} for branch points {x}, {other}"))
            phi_up = c.phi(up)
            if phi_up != 0:
                out.append(Violation("v", x, f"branch point with phi(e x) = {phi_up}"))

        # length of the f-string, when it ends inside the window
        y, steps = x, 0
        while y is not None and c.wt(y) >= min_weight:
            y = c.f(y)
            steps += 1
        if y is None and steps != c.phi(x) + 1:
            out.append(Violation("v", x, f"f-string ends after {steps} steps, phi + 1 = {c.phi(x) + 1}"))

        if isinstance(c, AtomCrystal) and c.eps(x) != Crystal.eps_by_minimization(c, x):
            out.append(Violation("iv", x, "closed-form epsilon differs from the minimization"))
    return out
