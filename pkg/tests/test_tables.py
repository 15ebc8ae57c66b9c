import json
from collections import Counter

from hypothesis import given

from branched_crystals.core import M, Msigma, T, V
from branched_crystals.decompose import WeightWindow, compare, decompose
from branched_crystals.core import tensor
from branched_crystals.tables import (
    CASE_FOR_KINDS, CASES, case_for, dual_label, errata_for_pair, expand_lines, oracle_decompose, sweep_pairs,
    write_errata,
)

from conftest import labels

W = WeightWindow(-40, -28)
PRIOR_WORK = (14, 15, 16)


def test_every_kind_pair_has_a_case():
    assert len(CASE_FOR_KINDS) == 16
    assert case_for(V(1), V(1)).case_id == 14
    assert case_for(M(0), V(1)).case_id == 1
    assert case_for(M(2), M(0)).case_id == 5


def test_examples():
    assert oracle_decompose(V(1), V(1), W) == Counter({V(2): 1, V(0): 1})
    assert oracle_decompose(V(2), M(1), W) == Counter({M(3): 1, M(1): 1, M(-1): 1})
    lines = expand_lines(V(2), M(1), W.safe_weight)
    assert {i for i, *_ in lines} == {1, 3}


def test_duality_labels():
    assert dual_label(T(3)) == T(3)
    assert dual_label(M(-2)) == M(-2)
    assert dual_label(Msigma(1)) == M(1)
    assert dual_label(M(1)) == Msigma(1)


def test_prior_work_cases_agree_exactly():
    for cid, a, b in sweep_pairs():
        if cid in PRIOR_WORK:
            assert not errata_for_pair(a, b, W), (a, b)


def test_agreeing_cases():
    for cid, a, b in sweep_pairs(0, 3, -3):
        if cid in (1, 2, 3, 4, 5, 7, 8, 10):
            assert compare(decompose(tensor(a, b), W), oracle_decompose(a, b, W)) == {"missing": {}, "extra": {}}


def test_errata_entry_shape(tmp_path):
    entries = errata_for_pair(M(-2), Msigma(1), W)
    assert [(e["label"], e["lineIndex"], e["tableResult"], e["engineResult"]) for e in entries] == [
        ("M(-1)", [0, 3], 2, 1),
        ("T(-3)", [0], 1, 0),  # the printed range reaches a parameter that is not a label
    ]
    e = entries[0]
    assert set(e) == {"caseId", "lineIndex", "params", "label", "tableResult", "engineResult", "engineCharacterOK"}
    assert e["caseId"] == 6 and e["engineCharacterOK"]
    assert e["params"] == {"r": -2, "s": 1, "left": "M(-2)", "right": "Msigma(1)"}
    path = tmp_path / "errata.json"
    write_errata(entries, path)
    assert json.loads(path.read_text()) == entries


@given(labels(hi=4, negative_lo=-4), labels(hi=4, negative_lo=-4))
def test_engine_is_commutative_where_the_table_is_trusted(a, b):
    if case_for(a, b).case_id in PRIOR_WORK and case_for(b, a).case_id in PRIOR_WORK:
        assert oracle_decompose(a, b, W) == oracle_decompose(b, a, W)


def test_case_12_overcounts_with_max():
    # only the p <= max{r,s} line overcounts here; reading it as min{r,s} would match
    (e,) = errata_for_pair(T(1), Msigma(2), W)
    assert (e["label"], e["lineIndex"], e["tableResult"], e["engineResult"]) == ("M(-1)", [1, 2], 3, 2)


def test_case_count():
    assert sorted(CASES) == list(range(1, 17))
