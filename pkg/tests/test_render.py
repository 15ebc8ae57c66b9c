import json

from hypothesis import given

from branched_crystals.core import T, V, tensor
from branched_crystals.decompose import WeightWindow, decompose
from branched_crystals.render import decomposition_from_json, render_dot, render_json, render_table

from conftest import labels


def test_json_schema():
    doc = json.loads(render_json(decompose(tensor(V(1), V(1)), WeightWindow(-10, -6))))
    assert set(doc) == {"expr", "window", "components", "reports"}
    assert doc["window"] == {"min": -10, "safe": -6}
    assert doc["components"] == [{"label": "V(2)", "multiplicity": 1}, {"label": "V(0)", "multiplicity": 1}]
    assert set(doc["reports"][0]) == {"label", "head", "branch"}


@given(labels(hi=3, negative_lo=-3), labels(hi=3, negative_lo=-3))
def test_json_round_trip(a, b):
    text = render_json(decompose(tensor(a, b), WeightWindow(-20, -10)))
    assert render_json(decomposition_from_json(text)) == text


def test_table():
    text = render_table(decompose(tensor(V(1), V(1)), WeightWindow(-10, -6)))
    assert "V(2)" in text and "V(0)" in text
    assert all(line == line.rstrip() for line in text.splitlines())


def _edges(dot):
    solid = [l for l in dot.splitlines() if "->" in l and "dashed" not in l]
    dashed = [l for l in dot.splitlines() if "dashed" in l]
    return solid, dashed


def test_dot_shapes():
    solid, dashed = _edges(render_dot(V(2), -40))
    assert len(solid) == 2 and not dashed

    dot = render_dot(T(1), -10)
    solid, dashed = _edges(dot)
    assert len(dashed) == 1
    assert dot.count("shape=box") == 1
    # two chains: paren b(0)..b(5) and plain b0..b3
    assert len(solid) == 5 + 3

    solid, dashed = _edges(render_dot(tensor(V(1), V(1)), -40))
    assert len(solid) == 2 and not dashed  # paths of 3 and 1 nodes
