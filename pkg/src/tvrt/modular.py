"""SU_q(2) fusion and recoupling data at a root of unity.

Conventions (Kauffman-Lins):

    A = exp(i pi / 2r)       (the generator of Q(zeta_4r))
    q = A^2,  [n] = (q^n - q^-n) / (q - q^-1)
    colours I = {0, ..., r-2}
    loop value       Delta_c = (-1)^c [c+1]          (= omega_c^2)
    twist            theta_c = (-1)^c A^(c(c+2))
    global dimension omega^2 = sum_c Delta_c^2

The recoupling weight attached to a coloured tetrahedron is the Kauffman-Lins
tetrahedral net evaluation.  The symmetric (unitary) 6j-symbol equals

    Tet / sqrt(theta_1 theta_2 theta_3 theta_4)

over the four face triples, and those square roots generally leave
Q(zeta_4r).  Every face of a closed triangulation borders exactly two
tetrahedra, so the state sum only ever needs the product of the two square
roots, i.e. one factor 1/theta per face.  ``six_j`` therefore returns the
tetrahedral evaluation and the face weights are exposed separately.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

import numpy as np

from .cyclotomic import CycNumber


def _check_level(r: int) -> None:
    if not isinstance(r, int) or r < 3:
        raise ValueError(f"level r must be an integer >= 3, got {r!r}")


def quantum_integer(n: int, r: int) -> CycNumber:
    """[n] at q = exp(i pi / r), as an exact element of Q(zeta_4r)."""
    _check_level(r)
    N = 4 * r
    if n == 0:
        return CycNumber.zero(N)
    if n < 0:
        return -quantum_integer(-n, r)
    # [n] = q^(n-1) + q^(n-3) + ... + q^-(n-1),  q = z^2
    coeffs = [0] * N
    for k in range(n):
        coeffs[(2 * (n - 1 - 2 * k)) % N] += 1
    return CycNumber.from_coeffs(N, coeffs)


def admissible(a: int, b: int, c: int, r: int) -> bool:
    """True iff (a, b, c) can meet at a trivalent vertex at level r."""
    return (
        (a + b + c) % 2 == 0
        and abs(a - b) <= c <= a + b
        and a + b + c <= 2 * (r - 2)
        and min(a, b, c) >= 0
    )


# Tetrahedron edges in vertex order, and where each lands in a six_j call.
# six_j(a, b, e, c, d, f) has face triples (a,b,e), (c,d,e), (a,d,f), (b,c,f);
# e and f are opposite edges.
EDGE_SLOTS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
# for tet vertices 0..3:  e=01, a=02, b=12, c=13, d=03, f=23
SIXJ_FROM_SLOTS = (1, 3, 0, 4, 2, 5)  # indices into EDGE_SLOTS order -> (a,b,e,c,d,f)


def sixj_args(edge_colours) -> tuple[int, int, int, int, int, int]:
    """Reorder colours given in EDGE_SLOTS order into six_j argument order."""
    return tuple(edge_colours[k] for k in SIXJ_FROM_SLOTS)


def tetrahedral_symmetries() -> list[tuple[int, ...]]:
    """The 24 permutations of six_j arguments induced by relabelling tet vertices."""
    slot_index = {frozenset(e): k for k, e in enumerate(EDGE_SLOTS)}
    perms = []
    for p in itertools.permutations(range(4)):
        # colour on slot k after relabelling comes from slot moved onto it
        src = []
        for u, v in EDGE_SLOTS:
            src.append(slot_index[frozenset((p[u], p[v]))])
        # express as a permutation of six_j argument positions
        inv = {s: k for k, s in enumerate(SIXJ_FROM_SLOTS)}
        perms.append(tuple(inv[src[SIXJ_FROM_SLOTS[k]]] for k in range(6)))
    return perms


@dataclass(frozen=True)
class Level:
    r: int

    def __post_init__(self):
        _check_level(self.r)

    @property
    def order(self) -> int:
        return 4 * self.r

    @property
    def colours(self) -> range:
        return range(self.r - 1)


@dataclass(frozen=True, eq=False)
class ModularData:
    """Immutable per-level data; build with :func:`modular_data`."""

    level: Level
    qints: tuple
    qdims: tuple
    twists: tuple
    global_dim: CycNumber
    delta_L: CycNumber
    delta_R: CycNumber
    fusion: np.ndarray
    _fact: tuple = field(repr=False)
    _inv_fact: tuple = field(repr=False)
    _theta: dict = field(repr=False)
    _inv_theta: dict = field(repr=False)
    sixj_table: dict = field(repr=False)

    @property
    def r(self) -> int:
        return self.level.r

    @property
    def order(self) -> int:
        return self.level.order

    @property
    def colours(self) -> range:
        return self.level.colours

    def zero(self) -> CycNumber:
        return CycNumber.zero(self.order)

    def one(self) -> CycNumber:
        return CycNumber.one(self.order)

    def A(self, power: int = 1) -> CycNumber:
        return CycNumber.zeta(self.order, power)

    def admissible(self, a: int, b: int, c: int) -> bool:
        return admissible(a, b, c, self.r)

    def qdim(self, c: int) -> CycNumber:
        return self.qdims[c]

    def twist(self, c: int) -> CycNumber:
        return self.twists[c]

    def theta(self, a: int, b: int, c: int) -> CycNumber:
        return self._theta.get((a, b, c), self.zero())

    def inv_theta(self, a: int, b: int, c: int) -> CycNumber:
        return self._inv_theta[(a, b, c)]

    def six_j(self, a: int, b: int, e: int, c: int, d: int, f: int) -> CycNumber:
        return self.sixj_table.get((a, b, e, c, d, f), self.zero())

    def fusion_matrix(self, a: int) -> np.ndarray:
        return self.fusion[a].copy()

    def admissible_triples(self) -> Iterator[tuple[int, int, int]]:
        n = self.r - 1
        for a, b, c in itertools.product(range(n), repeat=3):
            if self.admissible(a, b, c):
                yield a, b, c


def _quantum_factorials(qints):
    order = qints[0].level
    fact = [CycNumber.one(order)]
    for n in range(1, len(qints)):
        fact.append(fact[-1] * qints[n])
    return fact


def _theta_value(a, b, c, fact, one):
    m = (a + b - c) // 2
    n = (b + c - a) // 2
    p = (a + c - b) // 2
    s = m + n + p
    val = fact[s + 1] * fact[m] * fact[n] * fact[p]
    den = fact[m + n] * fact[n + p] * fact[m + p]
    val = val / den
    return -val if s % 2 else val


def tet_evaluation(A_, B, E, C, D, F, fact, inv_fact):
    """Kauffman-Lins Tet[A B E; C D F]; vertex triples (A,D,E),(B,C,E),(A,B,F),(C,D,F)."""
    a = ((A_ + D + E) // 2, (B + C + E) // 2, (A_ + B + F) // 2, (C + D + F) // 2)
    b = ((B + D + E + F) // 2, (A_ + C + E + F) // 2, (A_ + B + C + D) // 2)
    lo, hi = max(a), min(b)
    pre = fact[0]
    for j in b:
        for i in a:
            pre = pre * fact[j - i]
    for x in (A_, B, C, D, E, F):
        pre = pre * inv_fact[x]
    total = None
    for s in range(lo, hi + 1):
        term = fact[s + 1]
        for i in a:
            term = term * inv_fact[s - i]
        for j in b:
            term = term * inv_fact[j - s]
        if s % 2:
            term = -term
        total = term if total is None else total + term
    return pre * total


@lru_cache(maxsize=None)
def scalar_data(r: int) -> tuple:
    """(qdims, twists, global_dim, delta_L, delta_R) without the 6j table."""
    level = Level(r)
    N = level.order
    qints = tuple(quantum_integer(k, r) for k in range(r + 1))
    qdims = tuple(-qints[c + 1] if c % 2 else qints[c + 1] for c in range(r - 1))
    twists = tuple(
        (-CycNumber.zeta(N, c * (c + 2))) if c % 2 else CycNumber.zeta(N, c * (c + 2))
        for c in range(r - 1)
    )
    global_dim = sum((d * d for d in qdims), CycNumber.zero(N))
    delta_L = sum((t * d * d for t, d in zip(twists, qdims)), CycNumber.zero(N))
    delta_R = sum((t.conjugate() * d * d for t, d in zip(twists, qdims)), CycNumber.zero(N))
    return qdims, twists, global_dim, delta_L, delta_R


@lru_cache(maxsize=None)
def modular_data(r: int) -> ModularData:
    """Build (and cache) all level-r data, including the full 6j table."""
    level = Level(r)
    N = level.order
    n = r - 1
    # [k]! vanishes for k >= r; only [0]!..[r-1]! are ever inverted
    qints = tuple(quantum_integer(k, r) for k in range(3 * r))
    fact = _quantum_factorials(qints)
    inv_fact = [x.inverse() for x in fact[:r]]
    one = CycNumber.one(N)
    qdims, twists, global_dim, delta_L, delta_R = scalar_data(r)

    fusion = np.zeros((n, n, n), dtype=np.int64)
    theta = {}
    for a, b, c in itertools.product(range(n), repeat=3):
        if admissible(a, b, c, r):
            fusion[a, b, c] = 1
            key = tuple(sorted((a, b, c)))
            if key not in theta:
                theta[key] = _theta_value(*key, fact, one)
            theta[(a, b, c)] = theta[key]
    inv_theta = {k: v.inverse() for k, v in theta.items() if k == tuple(sorted(k))}
    for a, b, c in list(theta):
        inv_theta[(a, b, c)] = inv_theta[tuple(sorted((a, b, c)))]

    # eager table; every admissible 6-tuple is evaluated independently
    table = {}
    triples = [t for t in itertools.product(range(n), repeat=3) if admissible(*t, r)]
    pairs_with = {}
    for x, y, z in triples:
        pairs_with.setdefault(z, []).append((x, y))
    for a, b, e in triples:
        for c, d in pairs_with[e]:
            if not fusion[a, d].any():
                continue
            for f in range(n):
                if fusion[a, d, f] and fusion[b, c, f]:
                    table[(a, b, e, c, d, f)] = tet_evaluation(a, d, e, c, b, f, fact, inv_fact)

    return ModularData(
        level=level,
        qints=qints[:r],
        qdims=qdims,
        twists=twists,
        global_dim=global_dim,
        delta_L=delta_L,
        delta_R=delta_R,
        fusion=fusion,
        _fact=tuple(fact),
        _inv_fact=tuple(inv_fact),
        _theta=theta,
        _inv_theta=inv_theta,
        sixj_table=table,
    )


def qdim(c: int, r: int) -> CycNumber:
    return scalar_data(r)[0][c]


def twist(c: int, r: int) -> CycNumber:
    return scalar_data(r)[1][c]


def six_j(a, b, e, c, d, f, r: int) -> CycNumber:
    return modular_data(r).six_j(a, b, e, c, d, f)


def anomaly_constants(r: int) -> tuple[CycNumber, CycNumber]:
    return scalar_data(r)[3:]


def fusion_matrix(a: int, r: int) -> np.ndarray:
    return modular_data(r).fusion_matrix(a)


def handlebody_dim(g: int, r: int) -> int:
    """tr((sum_a N_a^2)^(g-1)): the unsquared genus-g Verlinde count."""
    if g < 1:
        raise ValueError(f"genus must be >= 1, got {g}")
    fus = modular_data(r).fusion
    nbar = sum(fus[a] @ fus[a] for a in range(fus.shape[0]))
    # object dtype keeps the trace exact for large g
    power = np.linalg.matrix_power(nbar.astype(object), g - 1)
    return int(np.trace(power))


def verlinde_dim(g: int, r: int) -> int:
    """dim V of the closed genus-g surface: the square of :func:`handlebody_dim`."""
    return handlebody_dim(g, r) ** 2


def omega_squared_numeric(r: int) -> float:
    import math

    return r / (2 * math.sin(math.pi / r) ** 2)


def to_json(md: ModularData) -> dict:
    cols = list(md.colours)
    return {
        "level": md.r,
        "order": md.order,
        "colours": cols,
        "qdims": {str(c): _num(md.qdims[c]) for c in cols},
        "twists": {str(c): _num(md.twists[c]) for c in cols},
        "global_dim": _num(md.global_dim),
        "delta_L": _num(md.delta_L),
        "delta_R": _num(md.delta_R),
        "fusion": {str(a): md.fusion[a].tolist() for a in cols},
        "sixj_count": len(md.sixj_table),
    }


def _num(x: CycNumber) -> dict:
    z = x.to_complex()
    d = x.to_json()
    d["numeric"] = [round(z.real, 12) + 0.0, round(z.imag, 12) + 0.0]
    return d
