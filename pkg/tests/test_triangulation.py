import json
import random

import pytest

from tvrt.census import census, double_tetrahedron
from tvrt.smith import AbelianGroup, smith_invariants
from tvrt.triangulation import (
    MoveRejected,
    Triangulation,
    TriangulationError,
    applicable_moves,
    connected_sum,
    pachner_move,
    parse_triangulation,
    random_moves,
    simplify,
)


def _row(*entries):
    return [None if e is None else {"tet": e[0], "face": e[1], "perm": list(e[2])} for e in entries]


def _doc(rows, **extra):
    d = {"format": "tri-v1", "tetrahedra": len(rows), "gluings": rows}
    d.update(extra)
    return json.dumps(d)


def test_smith_invariants():
    assert smith_invariants([[2, 0], [0, 3]]) == [1, 6]
    assert smith_invariants([[2, 4], [6, 8]]) == [2, 4]
    assert AbelianGroup.cokernel([[2, 0], [0, 2]]) == AbelianGroup.parse("Z/2 + Z/2")
    assert AbelianGroup.cokernel([[0]]) == AbelianGroup.parse("Z")
    assert AbelianGroup.parse("0").is_trivial()
    assert AbelianGroup.parse("Z/6").order() == 6


@pytest.mark.parametrize("name", sorted(census()))
def test_census_validates_and_round_trips(name):
    tri = census()[name]
    assert tri.euler_characteristic() == 0
    assert tri.is_oriented()
    again = parse_triangulation(tri.dumps())
    assert again == tri


def test_double_tetrahedron_counts():
    tri = double_tetrahedron()
    assert tri.tet_count == 2
    assert len(tri.edges) == 6 and len(tri.vertices) == 4
    assert tri.homology_h1().is_trivial()


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("not json", "malformed JSON"),
        ("[1, 2]", "JSON object"),
        (json.dumps({"format": "other", "tetrahedra": 0, "gluings": []}), "unsupported format"),
        (json.dumps({"format": "tri-v1", "tetrahedra": 2, "gluings": [[None] * 4]}), "gluing rows"),
        (json.dumps({"format": "tri-v1", "tetrahedra": 1, "gluings": [[None] * 3]}), "4 face entries"),
        (json.dumps({"format": "tri-v1", "tetrahedra": 1, "gluings": [[{"tet": 0}] * 4]}), "malformed gluing"),
    ],
)
def test_parse_errors(text, fragment):
    with pytest.raises(TriangulationError, match=fragment):
        parse_triangulation(text)


def test_validation_errors():
    ident = (0, 1, 2, 3)
    # unglued face
    with pytest.raises(TriangulationError, match="unglued"):
        parse_triangulation(_doc([_row(None, None, None, None)]))
    # target out of range
    with pytest.raises(TriangulationError, match="does not exist"):
        parse_triangulation(_doc([_row((3, 0, ident), (0, 0, ident), (0, 3, ident), (0, 2, ident))]))
    # not a permutation
    with pytest.raises(TriangulationError, match="not a permutation"):
        parse_triangulation(_doc([_row((0, 1, (1, 1, 2, 3)),) + [None] * 3]))
    # self-glued face
    with pytest.raises(TriangulationError, match="itself"):
        parse_triangulation(_doc([_row((0, 0, ident), (0, 1, ident), (0, 2, ident), (0, 3, ident))]))
    # one-way gluing
    rows = [_row(*[(1, i, ident) for i in range(4)]), _row((0, 0, ident), (0, 1, ident), (0, 2, ident), (0, 3, (0, 1, 3, 2)))]
    with pytest.raises(TriangulationError):
        parse_triangulation(_doc(rows))


def test_non_orientable_rejected():
    # two tetrahedra glued by an odd permutation on every face give a non-orientable space
    swap = (1, 0, 2, 3)
    rows = [
        [(1, 1, swap), (1, 0, swap), (1, 2, (0, 1, 3, 2)), (1, 3, (0, 1, 3, 2))],
        [(0, 1, swap), (0, 0, swap), (0, 2, (0, 1, 3, 2)), (0, 3, (0, 1, 3, 2))],
    ]
    with pytest.raises(TriangulationError):
        Triangulation.from_table(rows)


def test_moves_preserve_homology_and_euler():
    rng = random.Random(3)
    for name, tri in census().items():
        moved, history = random_moves(tri, 6, rng)
        assert len(history) >= 1
        assert moved.homology_h1() == tri.homology_h1()
        assert moved.euler_characteristic() == 0
        moved.validate()


def test_move_inverses():
    tri = census()["L3_1"]
    up = pachner_move(tri, "1-4", 0)
    assert up.tet_count == tri.tet_count + 3
    down = pachner_move(up, "4-1", len(up.vertices) - 1)
    assert down.tet_count == tri.tet_count
    assert down.homology_h1() == tri.homology_h1()


def test_rejected_move():
    tri = census()["S3_1tet"]
    assert all(k != "4-1" for k, _ in applicable_moves(tri))
    with pytest.raises(MoveRejected):
        pachner_move(tri, "4-1", 0)
    with pytest.raises((MoveRejected, ValueError)):
        pachner_move(tri, "5-0", 0)


def test_connected_sum_homology():
    t = connected_sum(census()["L2_1"], census()["L3_1"])
    assert t.homology_h1() == AbelianGroup.parse("Z/6")
    s = simplify(t, attempts=50, seed=1)
    assert s.tet_count <= t.tet_count
    assert s.homology_h1() == t.homology_h1()


def test_reversed_orientation():
    tri = census()["L4_1"]
    rev = tri.reversed()
    assert rev.is_oriented()
    assert rev.homology_h1() == tri.homology_h1()
