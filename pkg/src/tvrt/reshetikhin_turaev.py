"""Reshetikhin-Turaev invariants of 3-manifolds presented by framed surgery links.

    tau(M) = w^(-N-1) * kappa^(-sigma) * sum_c prod_i qdim(c_i) <L(c)>

where w is the positive square root of the global dimension, kappa = D_L / w
is the anomaly phase, N the number of components, sigma the signature of
the linking matrix and <L(c)> the framed coloured link value.  Neither w nor
kappa lies in the cyclotomic field in general, so both are carried as
integer exponents next to an exact field element.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

from .cyclotomic import CycNumber
from .links import FramedLink, linking_data
from .modular import ModularData, modular_data
from .skein import DEFAULT_MAX_CROSSINGS, DEFAULT_MAX_STATES, bracket


def _check_colours(link: FramedLink, colours, md: ModularData):
    if len(colours) != link.component_count:
        raise ValueError(f"need {link.component_count} colours, got {len(colours)}")
    for c in colours:
        if not 0 <= c <= md.r - 2:
            raise ValueError(f"colour {c} outside 0..{md.r - 2}")


def colored_link_value(
    link: FramedLink,
    colours,
    md: ModularData | int,
    *,
    max_crossings: int = DEFAULT_MAX_CROSSINGS,
    max_states: int = DEFAULT_MAX_STATES,
) -> CycNumber:
    """Framed value of the link with component i coloured colours[i].

    The blackboard cable is evaluated and then corrected by
    twist(c_i)^(framing_i - writhe_i) so that the result depends only on the
    framed link.  A crossing-free component contributes its loop value.
    """
    if isinstance(md, int):
        md = modular_data(md)
    colours = tuple(colours)
    _check_colours(link, colours, md)
    val = _cached_bracket(link.pd, link.unknotted, colours, md.r, max_crossings, max_states)
    for i, c in enumerate(colours):
        if c == 0:
            continue
        if i in link.unknotted:
            val = val * md.qdims[c]
        shift = link.framings[i] - link.writhe(i)
        if shift:
            val = val * md.twists[c] ** shift
    return val


@lru_cache(maxsize=4096)
def _cached_bracket(pd, unknotted, colours, r, max_crossings, max_states):
    # the bracket ignores framings, so blow-ups and reframings reuse it
    link = FramedLink(pd, (0,) * len(colours), unknotted)
    return bracket(link, colours, modular_data(r), max_crossings=max_crossings, max_states=max_states)


@dataclass(frozen=True)
class InvariantValue:
    """reduced * w^omega_power * kappa^anomaly_power at level r."""

    level: int
    reduced: CycNumber
    omega_power: int
    anomaly_power: int

    @property
    def md(self) -> ModularData:
        return modular_data(self.level)

    @property
    def numeric(self) -> complex:
        md = self.md
        w = math.sqrt(md.global_dim.to_complex().real)
        kappa = md.delta_L.to_complex() / w
        return self.reduced.to_complex() * w**self.omega_power * kappa**self.anomaly_power

    def canonical(self) -> tuple[CycNumber, int]:
        """(x, e) with value = x * w^e and e in {0, 1}; kappa and w^2 are absorbed into x."""
        md = self.md
        x = self.reduced
        if self.anomaly_power:
            x = x * md.delta_L**self.anomaly_power
        e = self.omega_power - self.anomaly_power
        m, e = divmod(e, 2)
        if m:
            x = x * md.global_dim**m
        return x, e

    def __eq__(self, other) -> bool:
        if not isinstance(other, InvariantValue):
            return NotImplemented
        return self.level == other.level and self.canonical() == other.canonical()

    def __hash__(self) -> int:
        return hash((self.level, self.canonical()))

    def conjugate(self) -> "InvariantValue":
        """Complex conjugate; the value of the orientation-reversed manifold."""
        return InvariantValue(self.level, self.reduced.conjugate(), self.omega_power, -self.anomaly_power)

    def to_json(self) -> dict:
        z = self.numeric
        x, e = self.canonical()
        return {
            "level": self.level,
            "reduced": str(self.reduced),
            "omega_power": self.omega_power,
            "anomaly_power": self.anomaly_power,
            "canonical": {"value": str(x), "omega_power": e},
            "numeric": [round(z.real, 12) + 0.0, round(z.imag, 12) + 0.0],
            "modulus_squared": str(modulus_squared(self)),
        }


def modulus_squared(v: InvariantValue) -> CycNumber:
    """v * conj(v) as an exact field element (|w|^2 = global dimension, |kappa| = 1)."""
    md = v.md
    out = v.reduced * v.reduced.conjugate()
    if v.omega_power:
        out = out * md.global_dim**v.omega_power
    return out


def _partial_sum(args):
    link, r, colourings, limits = args
    md = modular_data(r)
    acc = md.zero()
    for cols in colourings:
        w = md.one()
        for c in cols:
            w = w * md.qdims[c]
        acc = acc + w * colored_link_value(link, cols, md, **limits)
    return acc


def _split_unknot_factor(link: FramedLink, md: ModularData):
    """Separate crossing-free components: each contributes sum_c qdim(c)^2 twist(c)^f."""
    factor = md.one()
    for i in link.unknotted:
        f = link.framings[i]
        factor = factor * sum((md.qdims[c] ** 2 * md.twists[c] ** f for c in md.colours), md.zero())
    keep = [i for i in range(link.component_count) if i not in link.unknotted]
    core = FramedLink(link.pd, tuple(link.framings[i] for i in keep), ())
    return core, factor


def rt_invariant(
    link: FramedLink,
    md: ModularData | int,
    *,
    threads: int = 1,
    max_crossings: int = DEFAULT_MAX_CROSSINGS,
    max_states: int = DEFAULT_MAX_STATES,
) -> InvariantValue:
    if isinstance(md, int):
        md = modular_data(md)
    N = link.component_count
    sigma = linking_data(link).signature
    limits = {"max_crossings": max_crossings, "max_states": max_states}
    core, factor = _split_unknot_factor(link, md)
    colourings = list(itertools.product(md.colours, repeat=core.component_count))
    if threads > 1 and len(colourings) > 1:
        chunks = [colourings[i::threads] for i in range(threads)]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(_partial_sum, [(core, md.r, ch, limits) for ch in chunks]))
        total = md.zero()
        for p in parts:
            total = total + p
    else:
        total = _partial_sum((core, md.r, colourings, limits))
    return InvariantValue(md.r, total * factor, -N - 1, -sigma)
