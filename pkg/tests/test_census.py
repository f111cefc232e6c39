import pytest

from tvrt.census import (
    EXPECTED_H1,
    LINK_NAMES,
    build_census,
    build_links,
    bundled_link,
    census,
    expected_h1,
    resolve_link,
    resolve_triangulation,
)
from tvrt.links import linking_data


def test_files_match_constructions():
    built = build_census()
    assert set(built) == set(census())
    for name, tri in built.items():
        assert census()[name] == tri, name
    for name, link in build_links().items():
        assert bundled_link(name) == link, name


@pytest.mark.parametrize("name", sorted(EXPECTED_H1))
def test_homology_matches_label(name):
    assert census()[name].homology_h1() == expected_h1(name)


def test_tet_counts():
    counts = {name: tri.tet_count for name, tri in census().items()}
    assert counts["S3_1tet"] == 1
    assert counts["S3_2tet"] == 2
    assert counts["S2xS1"] == 2
    for p in (2, 3, 4, 5):
        assert counts[f"L{p}_1"] == p


def test_link_homology():
    assert linking_data(bundled_link("S2xS1")).h1() == expected_h1("S2xS1")
    assert linking_data(bundled_link("L2_1#L2_1")).h1() == expected_h1("L2_1#L2_1")
    assert set(LINK_NAMES) == set(build_links())


def test_resolution(tmp_path):
    assert resolve_triangulation("S3_2tet.tri") == census()["S3_2tet"]
    path = tmp_path / "x.tri"
    path.write_text(census()["L3_1"].dumps())
    assert resolve_triangulation(str(path)) == census()["L3_1"]
    with pytest.raises(FileNotFoundError):
        resolve_triangulation(str(tmp_path / "missing.tri"))
    assert resolve_link("hopf") == bundled_link("hopf")
    with pytest.raises(FileNotFoundError):
        resolve_link(str(tmp_path / "missing.lnk"))
