import pytest

from tvrt.census import census
from tvrt.errors import ResourceLimitError
from tvrt.modular import modular_data
from tvrt.turaev_viro import connected_sum_check, tv_state_sum


@pytest.mark.parametrize("name", ["S3_1tet", "S3_2tet", "L2_1", "L3_1", "S2xS1"])
@pytest.mark.parametrize("r", [3, 4, 5])
def test_brute_equals_pruned(name, r):
    tri = census()[name]
    a = tv_state_sum(tri, r, "brute")
    b = tv_state_sum(tri, r, "pruned")
    assert a.value == b.value
    assert a.colorings_admissible == b.colorings_admissible


def test_known_values():
    assert tv_state_sum(census()["S3_2tet"], 3).value == modular_data(3).global_dim.inverse()
    assert tv_state_sum(census()["S2xS1"], 5).value == 1


def test_result_fields():
    res = tv_state_sum(census()["S3_2tet"], 3, "brute")
    assert res.colorings_total == 2**6
    assert res.edges == 6
    assert res.numeric == pytest.approx(0.5)
    data = res.to_json()
    assert data["exact"] == "1/2"
    assert data["method"] == "brute"


def test_threads_agree():
    tri = census()["L4_1"]
    assert tv_state_sum(tri, 5, threads=2).value == tv_state_sum(tri, 5).value


def test_ceilings():
    with pytest.raises(ResourceLimitError) as exc:
        tv_state_sum(census()["L5_1"], 6, "brute", ceiling=1000)
    assert exc.value.ceiling == 1000
    with pytest.raises(ResourceLimitError):
        tv_state_sum(census()["L5_1"], 6, "pruned", ceiling=10)


def test_bad_arguments():
    with pytest.raises(ValueError):
        tv_state_sum(census()["S3_2tet"], 3, "fast")
    with pytest.raises(ValueError):
        tv_state_sum(census()["S3_2tet"], 3, threads=0)


def test_connected_sum_check_l2_l3():
    from tvrt.triangulation import connected_sum

    t2, t3 = census()["L2_1"], census()["L3_1"]
    rep = connected_sum_check(t2, t3, connected_sum(t2, t3), 4)
    assert rep.equal
