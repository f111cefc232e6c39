import json
import random

import numpy as np
import pytest

from tvrt.census import HOPF_PD, bundled_link, links
from tvrt.links import BraidClosure, FramedLink, LinkError, linking_data, parse_link, signature
from tvrt.smith import AbelianGroup


def test_hopf_structure():
    link = FramedLink(HOPF_PD, (0, 0))
    assert link.component_count == 2
    assert [link.crossing_sign(n) for n in range(2)] == [1, 1]
    assert linking_data(link).linking_matrix == ((0, 1), (1, 0))
    assert linking_data(link).signature == 0
    assert linking_data(link).h1().is_trivial()


def test_trefoil_writhe():
    k = bundled_link("trefoil_0")
    assert k.component_count == 1
    assert k.writhe(0) == 3


@pytest.mark.parametrize("p", [2, 3, 4, 5])
def test_lens_space_homology(p):
    ld = linking_data(bundled_link(f"L{p}_1"))
    assert ld.h1() == AbelianGroup.parse(f"Z/{p}")
    assert ld.signature == 1


def test_chain_presentation():
    ld = linking_data(bundled_link("L4_1_chain"))
    assert ld.linking_matrix == ((5, 1), (1, 1))
    assert ld.signature == 2
    assert ld.h1() == AbelianGroup.parse("Z/4")


def test_signature_against_numpy():
    rng = random.Random(11)
    for _ in range(100):
        n = rng.randint(1, 5)
        m = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                m[i][j] = m[j][i] = rng.randint(-3, 3)
        ev = np.linalg.eigvalsh(np.array(m, dtype=float))
        want = int((ev > 1e-9).sum() - (ev < -1e-9).sum())
        assert signature(m) == want


@pytest.mark.parametrize("name", sorted(links()))
def test_bundled_round_trip(name):
    link = bundled_link(name)
    assert parse_link(link.dumps()) == link


@pytest.mark.parametrize(
    "doc, fragment",
    [
        ("{", "malformed JSON"),
        (json.dumps({"format": "lnk-v0"}), "unsupported format"),
        (json.dumps({"format": "lnk-v1", "pd": [], "framings": "x", "components": 0}), "framings"),
        (json.dumps({"format": "lnk-v1", "pd": [], "framings": [1], "components": 2}), "components"),
        (json.dumps({"format": "lnk-v1", "pd": [[1, 2, 3, 4]], "framings": [0], "components": 1}), None),
        (json.dumps({"format": "lnk-v1", "pd": [], "framings": [0], "components": 1}), "framings given"),
        (
            json.dumps({"format": "lnk-v1", "pd": [], "framings": [0], "components": 1, "unknotted_components": [3]}),
            "out of range",
        ),
    ],
)
def test_parse_errors(doc, fragment):
    with pytest.raises(LinkError, match=fragment):
        parse_link(doc)


def test_braid_closures():
    # sigma_1^3 on two strands: the trefoil
    b = BraidClosure(2, (1, 1, 1))
    assert b.link.component_count == 1
    assert b.link.writhe(0) == 3
    # sigma_1^2: Hopf link, linking number 1
    h = BraidClosure(2, (1, 1))
    assert linking_data(h.link).linking_matrix[0][1] == 1
    # an untouched strand is a split unknot
    u = BraidClosure(3, (1, -1))
    assert u.link.component_count == 3
    assert len(u.link.unknotted) == 1


def test_disjoint_union_unknot():
    link = bundled_link("hopf").disjoint_union_unknot(-1)
    ld = linking_data(link)
    assert ld.linking_matrix[2] == (0, 0, -1)
    assert ld.signature == -1
