"""Cross-engine check: the Turaev-Viro invariant equals |tau|^2 on closed manifolds."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .census import bundled_link, census, expected_h1
from .cyclotomic import CycNumber
from .links import FramedLink, linking_data
from .modular import modular_data
from .reshetikhin_turaev import modulus_squared, rt_invariant
from .smith import AbelianGroup
from .triangulation import Triangulation
from .turaev_viro import DEFAULT_CEILING, tv_state_sum


class PairMismatch(ValueError):
    """Triangulation and surgery link cannot describe the same manifold."""


@dataclass(frozen=True, eq=False)
class ManifoldPair:
    name: str
    triangulation: Triangulation
    surgery: FramedLink
    expected_h1: AbelianGroup

    def check(self) -> None:
        h_tri = self.triangulation.homology_h1()
        h_link = linking_data(self.surgery).h1()
        if h_tri != self.expected_h1:
            raise PairMismatch(f"{self.name}: triangulation has H1 = {h_tri}, expected {self.expected_h1}")
        if h_link != self.expected_h1:
            raise PairMismatch(f"{self.name}: surgery link has H1 = {h_link}, expected {self.expected_h1}")


# name -> (census triangulation, bundled link)
BUNDLED = {
    "S3": ("S3_2tet", "S3"),
    "RP3": ("L2_1", "L2_1"),
    "L3_1": ("L3_1", "L3_1"),
    "L4_1": ("L4_1", "L4_1"),
    "L5_1": ("L5_1", "L5_1"),
    "S2xS1": ("S2xS1", "S2xS1"),
}


def bundled_pairs(names=None) -> list[ManifoldPair]:
    tris = census()
    out = []
    for name in names or BUNDLED:
        tri_name, link_name = BUNDLED[name]
        out.append(ManifoldPair(name, tris[tri_name], bundled_link(link_name), expected_h1(tri_name)))
    return out


@dataclass
class VerificationReport:
    name: str
    level: int
    tv_value: CycNumber
    rt_modsq: CycNumber
    equal: bool
    numeric_residual: float
    timings: dict = field(default_factory=dict)
    tv_positive_real: bool = True

    @property
    def passed(self) -> bool:
        return self.equal and self.tv_positive_real

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (
            f"{status} {self.name} r={self.level} Z_TV={self.tv_value} |tau|^2={self.rt_modsq} "
            f"(~{self.tv_value.to_complex().real:.12g})"
        )

    def to_json(self) -> dict:
        z = self.tv_value.to_complex()
        return {
            "name": self.name,
            "level": self.level,
            "tv_value": str(self.tv_value),
            "rt_modsq": str(self.rt_modsq),
            "numeric": round(z.real, 12) + 0.0,
            "equal": self.equal,
            "tv_positive_real": self.tv_positive_real,
            "numeric_residual": self.numeric_residual,
            "status": "PASS" if self.passed else "FAIL",
        }


def verify_pair(
    pair: ManifoldPair, r: int, *, method: str = "pruned", threads: int = 1, ceiling: int = DEFAULT_CEILING
) -> VerificationReport:
    pair.check()
    md = modular_data(r)
    t0 = time.perf_counter()
    tv = tv_state_sum(pair.triangulation, md, method, ceiling=ceiling, threads=threads).value
    t1 = time.perf_counter()
    tau = rt_invariant(pair.surgery, md, threads=threads)
    rt = modulus_squared(tau)
    t2 = time.perf_counter()
    z = tv.to_complex()
    positive = tv == tv.conjugate() and z.real > 0
    return VerificationReport(
        name=pair.name,
        level=r,
        tv_value=tv,
        rt_modsq=rt,
        equal=(tv - rt).is_zero(),
        numeric_residual=abs(z - rt.to_complex()),
        timings={"tv": t1 - t0, "rt": t2 - t1},
        tv_positive_real=positive or tv.is_zero(),
    )


def _verify_job(args):
    pair_name, r, kw = args
    return verify_pair(bundled_pairs([pair_name])[0], r, **kw)


def verify_suite(levels, pairs=None, *, workers: int = 1, **kw) -> list[VerificationReport]:
    """verify_pair over every (pair, level); bundled pairs by default."""
    levels = list(levels)
    if pairs is None and workers > 1:
        jobs = [(name, r, kw) for r in levels for name in BUNDLED]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_verify_job, jobs))
    pairs = bundled_pairs() if pairs is None else pairs
    return [verify_pair(p, r, **kw) for r in levels for p in pairs]
