import pytest

from tvrt.census import bundled_link, census, expected_h1
from tvrt.verification import BUNDLED, ManifoldPair, PairMismatch, bundled_pairs, verify_pair, verify_suite


def test_bundled_pairs_are_consistent():
    for pair in bundled_pairs():
        pair.check()
    assert len(bundled_pairs()) == len(BUNDLED) == 6


def test_mismatched_pair_rejected():
    pair = ManifoldPair("bad", census()["L2_1"], bundled_link("L3_1"), expected_h1("L2_1"))
    with pytest.raises(PairMismatch):
        verify_pair(pair, 3)


def test_suite_level_4():
    reports = verify_suite([4])
    assert [r.name for r in reports] == list(BUNDLED)
    for rep in reports:
        assert rep.passed, rep.line()
        assert rep.line().startswith("PASS")
        assert rep.numeric_residual < 1e-9


def test_parallel_suite_matches():
    a = verify_suite([3], workers=2)
    b = verify_suite([3])
    assert [r.tv_value for r in a] == [r.tv_value for r in b]


def test_rp3_vanishes_at_odd_levels():
    rep = verify_pair(bundled_pairs(["RP3"])[0], 5)
    assert rep.tv_value.is_zero() and rep.passed


def test_report_json():
    rep = verify_pair(bundled_pairs(["L3_1"])[0], 5, method="brute")
    data = rep.to_json()
    assert data["status"] == "PASS"
    assert data["tv_value"] == data["rt_modsq"]
