"""Text, JSON and DOT renderings of decompositions and crystal graphs.

JSON layout of a decomposition::

    {"expr": "V(1) (x) V(1)",
     "window": {"min": -40, "safe": -26},
     "components": [{"label": "V(2)", "multiplicity": 1}, ...],
     "reports": [{"label": "V(2)", "head": "V(1):b0 (x) V(1):b0", "branch": null}, ...]}

Components are sorted by decreasing parameter; reports follow decomposition order.
Rendering a parsed document again gives byte-identical text.
"""
from __future__ import annotations

import json
from collections import Counter

from .core import Atom, crystal, element_sort_key
from .decompose import ComponentReport, Decomposition, WeightWindow
from .syntax import parse_crystal, parse_element, parse_label


def _components(counter: Counter) -> list:
    return [{"label": str(lab), "multiplicity": n}
            for lab, n in sorted(counter.items(), key=lambda kv: kv[0].sort_key()) if n]


def decomposition_to_dict(dec: Decomposition) -> dict:
    w = dec.window
    return {
        "expr": str(dec.expr),
        "window": {"min": w.min_weight, "safe": w.safe_weight},
        "components": _components(dec.components),
        "reports": [
            {"label": str(r.label), "head": str(r.head), "branch": None if r.branch is None else str(r.branch)}
            for r in dec.reports if r.head_weight >= w.safe_weight
        ],
    }


def dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def render_json(dec: Decomposition) -> str:
    return dumps(decomposition_to_dict(dec))


def decomposition_from_json(text: str) -> Decomposition:
    doc = json.loads(text)
    expr = parse_crystal(doc["expr"])
    window = WeightWindow(doc["window"]["min"], doc["window"]["safe"])
    reports = []
    for r in doc["reports"]:
        branch = None if r["branch"] is None else parse_element(r["branch"])
        reports.append(ComponentReport(parse_label(r["label"]), parse_element(r["head"]), branch, 0))
    return Decomposition(expr, window, reports)


def render_table(dec: Decomposition) -> str:
    w = dec.window
    lines = [f"expr    {dec.expr}", f"window  min {w.min_weight}, safe {w.safe_weight}", ""]
    lines.append(_table(["component", "mult"], [[c["label"], str(c["multiplicity"])]
                                                  for c in _components(dec.components)]))
    return "\n".join(lines) + "\n"


def render_multiset(title: str, counter: Counter, fmt: str, extra: dict | None = None) -> str:
    if fmt == "json":
        return dumps({**(extra or {}), "components": _components(counter)})
    head = [title] + [f"{k}  {v}" for k, v in (extra or {}).items()] + [""]
    rows = [[c["label"], str(c["multiplicity"])] for c in _components(counter)]
    return "\n".join(head) + "\n" + _table(["component", "mult"], rows) + "\n"


def _table(header, rows) -> str:
    widths = [max(len(str(x)) for x in col) for col in zip(header, *rows)] if rows else [len(h) for h in header]
    fmt = "  ".join(f"{{:<{n}}}" for n in widths)
    out = [fmt.format(*header), fmt.format(*("-" * n for n in widths))]
    out += [fmt.format(*row) for row in rows]
    return "\n".join(line.rstrip() for line in out)


def render_rows(header, rows) -> str:
    return _table(header, rows) + "\n"


def render_dot(expr, min_weight: int) -> str:
    """f-edges solid; each branch point is boxed with a dashed e-edge to where it merges."""
    expr = expr if not hasattr(expr, "kind") else Atom(expr)
    c = crystal(expr)
    elems = sorted(c.elements(min_weight), key=lambda x: (-c.wt(x), element_sort_key(x)))
    ids = {x: f"n{i}" for i, x in enumerate(elems)}
    out = ["digraph crystal {", f'  label="{expr}";', "  rankdir=TB;"]
    for x in elems:
        shape = "box" if c.is_branch_point(x) else "ellipse"
        out.append(f'  {ids[x]} [label="{x}\\nwt {c.wt(x)}", shape={shape}];')
    for x in elems:
        y = c.f(x)
        if y is not None and y in ids:
            out.append(f"  {ids[x]} -> {ids[y]};")
    for x in elems:
        if c.is_branch_point(x):
            y = c.e(x)
            if y in ids:
                out.append(f'  {ids[x]} -> {ids[y]} [style=dashed, label="e"];')
    out.append("}")
    return "\n".join(out) + "\n"
