"""Bundled census: small closed oriented triangulations and surgery links.

Triangulations ship as ``.tri`` files under ``tvrt/data/census`` and surgery
presentations as ``.lnk`` files under ``tvrt/data/links``.  Both are
regenerated by :func:`write_census` from the constructions below; the test
suite checks that files and constructions agree and that H1 matches the
advertised manifold.
"""

from __future__ import annotations

from functools import lru_cache
from importlib import resources
from pathlib import Path

from .links import FramedLink, load_link, parse_link
from .smith import AbelianGroup
from .triangulation import Triangulation, connected_sum, load_triangulation, parse_triangulation, simplify

# name -> advertised first homology
EXPECTED_H1 = {
    "S3_2tet": "0",
    "S3_1tet": "0",
    "L2_1": "Z/2",
    "L3_1": "Z/3",
    "L4_1": "Z/4",
    "L5_1": "Z/5",
    "S2xS1": "Z",
    "L2_1#L2_1": "Z/2 + Z/2",
}

DESCRIPTION = {
    "S3_2tet": "3-sphere, two tetrahedra glued along their boundaries by the identity",
    "S3_1tet": "3-sphere, one tetrahedron with two folded face pairs",
    "L2_1": "lens space L(2,1) = RP3, bipyramid with 2 tetrahedra",
    "L3_1": "lens space L(3,1), bipyramid with 3 tetrahedra",
    "L4_1": "lens space L(4,1), bipyramid with 4 tetrahedra",
    "L5_1": "lens space L(5,1), bipyramid with 5 tetrahedra",
    "S2xS1": "S2 x S1, two tetrahedra (minimal)",
    "L2_1#L2_1": "RP3 # RP3, connected sum of two copies of L2_1, then simplified by Pachner moves",
}

_S3_1TET = [[(0, 1, (1, 0, 2, 3)), (0, 0, (1, 0, 2, 3)), (0, 3, (0, 1, 3, 2)), (0, 2, (0, 1, 3, 2))]]

# found by exhaustive search over oriented two-tetrahedron gluings with H1 = Z
_S2xS1 = [
    [(0, 1, (1, 2, 3, 0)), (0, 0, (3, 0, 1, 2)), (1, 0, (3, 2, 0, 1)), (1, 1, (3, 2, 0, 1))],
    [(0, 2, (2, 3, 1, 0)), (0, 3, (2, 3, 1, 0)), (1, 3, (2, 0, 3, 1)), (1, 2, (1, 3, 0, 2))],
]


def double_tetrahedron() -> Triangulation:
    table = [[(1, i, (0, 1, 2, 3)) for i in range(4)], [(0, i, (0, 1, 2, 3)) for i in range(4)]]
    return Triangulation.from_table(table).oriented()


def bipyramid_lens(p: int, q: int = 1) -> Triangulation:
    """L(p,q) from a p-gon bipyramid whose top and bottom halves are glued with a 2 pi q/p twist.

    Tetrahedron k has vertices (north, south, x_k, x_{k+1}).  Faces through
    the axis are glued round the bipyramid; the top face of tetrahedron k
    meets the bottom face of tetrahedron k + q.
    """
    if p < 2:
        raise ValueError("need p >= 2")
    table = [[None] * 4 for _ in range(p)]
    for k in range(p):
        table[k][2] = ((k + 1) % p, 3, (0, 1, 3, 2))
        table[(k + 1) % p][3] = (k, 2, (0, 1, 3, 2))
        table[k][1] = ((k + q) % p, 0, (1, 0, 2, 3))
        table[(k + q) % p][0] = (k, 1, (1, 0, 2, 3))
    return Triangulation.from_table(table).oriented()


def build_census() -> dict[str, Triangulation]:
    out = {
        "S3_2tet": double_tetrahedron(),
        "S3_1tet": Triangulation.from_table(_S3_1TET).oriented(),
    }
    for p in (2, 3, 4, 5):
        out[f"L{p}_1"] = bipyramid_lens(p)
    out["S2xS1"] = Triangulation.from_table(_S2xS1).oriented()
    # the raw cut-and-reglue sum has 10 tetrahedra; a seeded Pachner walk brings it down
    out["L2_1#L2_1"] = simplify(connected_sum(out["L2_1"], out["L2_1"]))
    return out


def _filename(name: str) -> str:
    return name.replace("#", "_sum_") + ".tri"


# positive Hopf link: linking number +1
HOPF_PD = ((1, 3, 2, 4), (3, 1, 4, 2))


def unknot(framing: int) -> FramedLink:
    return FramedLink((), (framing,), (0,))


def build_links() -> dict[str, FramedLink]:
    out = {
        "S3": FramedLink((), ()),
        "S2xS1": unknot(0),
        "unknot_+1": unknot(1),
        "unknot_-1": unknot(-1),
        "hopf": FramedLink(HOPF_PD, (0, 0)),
        # blowing down the +1 meridian leaves the unknot with framing 4
        "L4_1_chain": FramedLink(HOPF_PD, (5, 1)),
        "L2_1#L2_1": FramedLink((), (2, 2), (0, 1)),
        "trefoil_0": FramedLink(((1, 5, 2, 4), (3, 1, 4, 6), (5, 3, 6, 2)), (0,)),
    }
    for p in (2, 3, 4, 5):
        out[f"L{p}_1"] = unknot(p)
    return out


LINK_NAMES = (
    "S3", "S2xS1", "unknot_+1", "unknot_-1", "hopf", "L4_1_chain", "L2_1#L2_1", "trefoil_0",
    "L2_1", "L3_1", "L4_1", "L5_1",
)


def write_census(directory=None, link_directory=None) -> None:
    here = Path(__file__).parent / "data"
    directory = Path(directory) if directory else here / "census"
    link_directory = Path(link_directory) if link_directory else here / "links"
    directory.mkdir(parents=True, exist_ok=True)
    link_directory.mkdir(parents=True, exist_ok=True)
    for name, tri in build_census().items():
        (directory / _filename(name)).write_text(tri.dumps() + "\n", encoding="utf-8")
    for name, link in build_links().items():
        (link_directory / _link_filename(name)).write_text(link.dumps() + "\n", encoding="utf-8")


def _link_filename(name: str) -> str:
    return name.replace("#", "_sum_").replace("+", "p").replace("-", "m") + ".lnk"


def link_path(name: str):
    if name not in LINK_NAMES:
        raise KeyError(f"unknown bundled link {name!r}; known: {', '.join(LINK_NAMES)}")
    return resources.files("tvrt") / "data" / "links" / _link_filename(name)


@lru_cache(maxsize=None)
def bundled_link(name: str) -> FramedLink:
    return parse_link(link_path(name).read_bytes())


def links() -> dict[str, FramedLink]:
    return {name: bundled_link(name) for name in LINK_NAMES}


def resolve_link(source: str) -> FramedLink:
    """A bundled link name or a path to a .lnk file."""
    if source in LINK_NAMES:
        return bundled_link(source)
    return load_link(source)


def census_path(name: str):
    if name not in EXPECTED_H1:
        raise KeyError(f"unknown census entry {name!r}; known: {', '.join(EXPECTED_H1)}")
    return resources.files("tvrt") / "data" / "census" / _filename(name)


@lru_cache(maxsize=None)
def _load(name: str) -> Triangulation:
    return parse_triangulation(census_path(name).read_bytes())


def census() -> dict[str, Triangulation]:
    """All bundled triangulations, keyed by name."""
    return {name: _load(name) for name in EXPECTED_H1}


def expected_h1(name: str) -> AbelianGroup:
    return AbelianGroup.parse(EXPECTED_H1[name])


def resolve_triangulation(source: str) -> Triangulation:
    """A census name or a path to a .tri file."""
    if source in EXPECTED_H1:
        return _load(source)
    stem = Path(source).name
    if stem.endswith(".tri") and stem[:-4] in EXPECTED_H1 and not Path(source).exists():
        return _load(stem[:-4])
    return load_triangulation(source)


if __name__ == "__main__":
    write_census()
