import pytest

from selmer2 import verdict as V
from selmer2.curve_model import NO_RWP, ONE_RWP
from selmer2.errors import MissingRank


def test_crude_bounds():
    assert V.crude_bound(10, ONE_RWP, 3) == 10
    assert V.crude_bound(22, NO_RWP, 3) == 19
    assert V.crude_bound(3, NO_RWP, 3) == 0


def test_refined_bounds():
    assert V.refined_bound(5, ONE_RWP, 2) == 3
    assert V.refined_bound(13, NO_RWP, 3) == 9
    assert V.refined_bound(2, ONE_RWP, 2) == 0


def test_verdict_examples():
    # 216663: g=2, r=2, ker=5, one RWP: threshold 8-2=6, FINITE
    assert V.finiteness_verdict(5, 2, 2, ONE_RWP, "refined") == V.FINITE
    assert V.refined_threshold(ONE_RWP, 2, 2) == 6
    # 10651: g=2, r=2, ker=7, no RWP: threshold 9-2=7, 7 not < 7
    assert V.finiteness_verdict(7, 2, 2, NO_RWP, "refined") == V.INCONCLUSIVE
    assert V.refined_threshold(NO_RWP, 2, 2) == 7
    # genus-3 no-RWP: ker 13 < 18-4
    assert V.finiteness_verdict(13, 3, 4, NO_RWP, "refined") == V.FINITE
    # crude path: 10 < 14-3
    assert V.finiteness_verdict(10, 3, 3, ONE_RWP, "crude") == V.FINITE
    assert V.finiteness_verdict(19, 3, 4, NO_RWP, "crude") == V.INCONCLUSIVE


def test_missing_rank():
    with pytest.raises(MissingRank):
        V.finiteness_verdict(5, 2, None, ONE_RWP, "refined")


def test_conditional_bk_dim():
    assert V.conditional_bk_dim(3, 1) == 5
    assert V.conditional_bk_dim(2, 1) == 2
    assert V.conditional_bk_dim(2, 2) == 1


def test_threshold_identities():
    for g in range(2, 11):
        for r in (0, 1, 2, 5):
            assert V.refined_threshold(ONE_RWP, g, r) == V.crude_threshold(g, r) + 2
            assert V.refined_threshold(NO_RWP, g, r) == V.crude_threshold(g, r) + g + 1


def test_verdict_monotone_in_rank():
    for g in (2, 3):
        for ker in range(0, 16):
            for case in (ONE_RWP, NO_RWP):
                verdicts = [V.finiteness_verdict(ker, g, r, case, "refined")
                            for r in range(6, -1, -1)]
                # once FINITE at rank r, FINITE at every smaller rank
                seen_finite = False
                for vd in verdicts:
                    if seen_finite:
                        assert vd == V.FINITE
                    seen_finite = seen_finite or vd == V.FINITE


def test_report_fields():
    rep = V.build_report("x", 2, ONE_RWP, 6, 5, 2, 2, ns_rank=1)
    assert rep.refined_bound == 3 and rep.crude_bound == 6
    assert rep.refined_bound <= rep.crude_bound
    assert rep.verdict == V.FINITE
    assert rep.expected_gap_note == 1
    assert rep.conditional_bk_dim == 2
    row = rep.to_tsv_row()
    assert row.split("\t")[0] == "x"
    crude_only = V.build_report("y", 3, ONE_RWP, 10, None, 3, 3)
    assert crude_only.verdict == V.FINITE and crude_only.refined_bound is None
