import pytest

from tvrt.census import bundled_link, unknot
from tvrt.cyclotomic import CycNumber
from tvrt.errors import ResourceLimitError
from tvrt.links import BraidClosure, FramedLink
from tvrt.modular import modular_data
from tvrt.reshetikhin_turaev import colored_link_value
from tvrt.skein import _tl_mul, jones_wenzl, loop_value, tl_generator, tl_identity


@pytest.mark.parametrize("r", [4, 5, 6])
def test_jones_wenzl_properties(r):
    md = modular_data(r)
    d = loop_value(md)
    for n in range(1, r - 1):
        p = dict(jones_wenzl(n, r))
        assert p[tl_identity(n)] == CycNumber.one(md.order)
        # idempotent
        assert {k: v for k, v in _tl_mul(p, p, n, d).items() if not v.is_zero()} == {
            k: v for k, v in p.items() if not v.is_zero()
        }
        # killed by every cup-cap
        for i in range(n - 1):
            e = {tl_generator(n, i): CycNumber.one(md.order)}
            assert all(v.is_zero() for v in _tl_mul(e, p, n, d).values())


@pytest.mark.parametrize("r", [5, 7])
def test_trefoil_matches_jones_polynomial(r):
    # right-handed trefoil: V(t) = t + t^3 - t^4 with t = A^-4
    md = modular_data(r)
    t = md.A(-4)
    v = t + t**3 - t**4
    assert colored_link_value(bundled_link("trefoil_0"), [1], md) == md.qdims[1] * v


def test_mirror_gives_conjugate():
    md = modular_data(5)
    k = bundled_link("trefoil_0")
    mirror = FramedLink(tuple((i, l, kk, j) for i, j, kk, l in k.pd), (0,))
    assert mirror.writhe(0) == -3
    for c in (1, 2):
        v = colored_link_value(k, [c], md)
        assert colored_link_value(mirror, [c], md) == v.conjugate()
        assert v != v.conjugate()


def test_framing_change_is_a_twist():
    md = modular_data(6)
    k = bundled_link("trefoil_0")
    for c in range(md.r - 1):
        assert colored_link_value(k.with_framings((2,)), [c], md) == md.twists[c] ** 2 * colored_link_value(k, [c], md)


def test_kink_removal():
    # sigma_1 on two strands closes to an unknot with one positive kink
    md = modular_data(5)
    b = BraidClosure(2, (1,))
    for c in range(md.r - 1):
        assert colored_link_value(b.link.with_framings((0,)), [c], md) == md.qdims[c]


def test_zero_colour_is_invisible():
    md = modular_data(5)
    assert colored_link_value(bundled_link("hopf"), [0, 2], md) == md.qdims[2]


def test_crossing_limit():
    with pytest.raises(ResourceLimitError):
        colored_link_value(bundled_link("trefoil_0"), [3], modular_data(5), max_crossings=5)


def test_bad_colour():
    with pytest.raises(ValueError):
        colored_link_value(unknot(0), [4], modular_data(5))
