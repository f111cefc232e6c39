"""Algebraic and topological self-checks shared by the CLI and the test suite.

Each check returns a :class:`CheckResult`; ``passed`` means every residual
was exactly zero in the cyclotomic field.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field

from .census import bundled_link, census
from .links import BraidClosure
from .modular import modular_data, tetrahedral_symmetries
from .reshetikhin_turaev import colored_link_value, modulus_squared, rt_invariant
from .triangulation import EDGE_SLOTS, random_moves
from .turaev_viro import tetra_weight, tv_state_sum


@dataclass
class CheckResult:
    name: str
    level: int
    passed: bool
    cases: int
    failures: list = field(default_factory=list)
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name} r={self.level} cases={self.cases} ({self.seconds:.2f}s)"

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "level": self.level,
            "status": "PASS" if self.passed else "FAIL",
            "cases": self.cases,
            "failures": [str(f) for f in self.failures[:10]],
            "seconds": round(self.seconds, 3),
        }


def _result(name, r, cases, failures, t0):
    return CheckResult(name, r, not failures, cases, failures, time.perf_counter() - t0)


def check_symmetry(r: int) -> CheckResult:
    """Every admissible 6-tuple under all 24 tetrahedral relabellings."""
    t0 = time.perf_counter()
    md = modular_data(r)
    syms = tetrahedral_symmetries()
    failures = []
    cases = 0
    for args, val in md.sixj_table.items():
        for p in syms:
            cases += 1
            other = tuple(args[p[k]] for k in range(6))
            if md.six_j(*other) != val:
                failures.append((args, p))
    return _result("tetrahedral-symmetry", r, cases, failures, t0)


def _tet(md, col, i, j, k, l):
    """Weight of the tetrahedron on vertices (i,j,k,l) of a labelled complex."""
    verts = (i, j, k, l)
    return tetra_weight([col[frozenset((verts[a], verts[b]))] for a, b in EDGE_SLOTS], md)


def _face(md, col, i, j, k):
    return md.inv_theta(col[frozenset((i, j))], col[frozenset((i, k))], col[frozenset((j, k))])


def _admissible_face(md, col, i, j, k):
    return md.admissible(col[frozenset((i, j))], col[frozenset((i, k))], col[frozenset((j, k))])


def _be_residual(md, col):
    """2-3 move on vertices 1..5: tets 1234, 1235 versus 1245, 2345, 1345 around edge 45."""
    lhs = _tet(md, col, 1, 2, 3, 4) * _tet(md, col, 1, 2, 3, 5) * _face(md, col, 1, 2, 3)
    rhs = md.zero()
    for x in md.colours:
        col[frozenset((4, 5))] = x
        if not all(_admissible_face(md, col, *f) for f in ((1, 4, 5), (2, 4, 5), (3, 4, 5))):
            continue
        term = md.qdims[x] * _tet(md, col, 1, 2, 4, 5) * _tet(md, col, 2, 3, 4, 5) * _tet(md, col, 1, 3, 4, 5)
        for f in ((1, 4, 5), (2, 4, 5), (3, 4, 5)):
            term = term * _face(md, col, *f)
        rhs = rhs + term
    return lhs - rhs


def _be_configurations(md):
    """All colourings of the nine outer edges with every outer triangle admissible."""
    cols = list(md.colours)
    order = [frozenset(e) for e in ((1, 2), (1, 3), (2, 3), (1, 4), (2, 4), (3, 4), (1, 5), (2, 5), (3, 5))]
    outer = [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4), (1, 2, 5), (1, 3, 5), (2, 3, 5)]
    # a triangle can be checked once its last edge (in `order`) is coloured
    ready = {}
    for f in outer:
        last = max(order.index(frozenset(p)) for p in itertools.combinations(f, 2))
        ready.setdefault(last, []).append(f)

    def rec(k, col):
        if k == len(order):
            yield dict(col)
            return
        for c in cols:
            col[order[k]] = c
            if all(_admissible_face(md, col, *f) for f in ready.get(k, ())):
                yield from rec(k + 1, col)
        col.pop(order[k], None)

    yield from rec(0, {})


def check_biedenharn_elliott(r: int, samples: int | None = None, seed: int = 0) -> CheckResult:
    """Pentagon identity; exhaustive unless ``samples`` is given."""
    t0 = time.perf_counter()
    md = modular_data(r)
    configs = _be_configurations(md)
    if samples is not None:
        configs = list(configs)
        random.Random(seed).shuffle(configs)
        configs = configs[:samples]
    failures = []
    cases = 0
    for col in configs:
        cases += 1
        if not _be_residual(md, col).is_zero():
            failures.append(sorted((tuple(sorted(e)), c) for e, c in col.items()))
    return _result("biedenharn-elliott", r, cases, failures, t0)


def check_orthogonality(r: int) -> CheckResult:
    """sum_f qdim(f) T(a,b,e,c,d,f) T(a,b,e',c,d,f) / (theta(a,d,f) theta(b,c,f))
    equals delta(e,e') theta(a,b,e) theta(c,d,e) / qdim(e)."""
    t0 = time.perf_counter()
    md = modular_data(r)
    cols = list(md.colours)
    failures = []
    cases = 0
    for a, b, c, d in itertools.product(cols, repeat=4):
        es = [e for e in cols if md.admissible(a, b, e) and md.admissible(c, d, e)]
        fs = [f for f in cols if md.admissible(a, d, f) and md.admissible(b, c, f)]
        for e, e2 in itertools.product(es, repeat=2):
            cases += 1
            total = md.zero()
            for f in fs:
                total = total + md.qdims[f] * md.six_j(a, b, e, c, d, f) * md.six_j(a, b, e2, c, d, f) * (
                    md.inv_theta(a, d, f) * md.inv_theta(b, c, f)
                )
            want = md.theta(a, b, e) * md.theta(c, d, e) / md.qdims[e] if e == e2 else md.zero()
            if total != want:
                failures.append((a, b, e, e2, c, d))
    return _result("orthogonality", r, cases, failures, t0)


def check_pachner(r: int, sequences: int = 20, length: int = 6, seed: int = 0, names=None) -> CheckResult:
    """State sum unchanged along random Pachner walks from every census entry."""
    t0 = time.perf_counter()
    md = modular_data(r)
    rng = random.Random(seed)
    failures = []
    cases = 0
    for name, tri in census().items():
        if names is not None and name not in names:
            continue
        z = tv_state_sum(tri, md).value
        for _ in range(sequences):
            moved, history = random_moves(tri, length, rng)
            cases += 1
            if tv_state_sum(moved, md).value != z:
                failures.append((name, history))
    return _result("pachner-invariance", r, cases, failures, t0)


def check_kirby(r: int) -> CheckResult:
    """Blow-ups leave tau unchanged; both L(4,1) presentations agree."""
    t0 = time.perf_counter()
    md = modular_data(r)
    failures = []
    cases = 0
    for name in ("S3", "S2xS1", "L2_1", "L3_1", "hopf", "L4_1_chain"):
        link = bundled_link(name)
        base = rt_invariant(link, md)
        for eps in (1, -1):
            cases += 1
            if rt_invariant(link.disjoint_union_unknot(eps), md) != base:
                failures.append((name, eps))
    cases += 1
    a, b = rt_invariant(bundled_link("L4_1"), md), rt_invariant(bundled_link("L4_1_chain"), md)
    if modulus_squared(a) != modulus_squared(b):
        failures.append(("L4_1 presentations", "modulus_squared"))
    return _result("kirby", r, cases, failures, t0)


def reidemeister_pair(rng: random.Random, strands: int = 3) -> tuple[str, BraidClosure, BraidClosure]:
    """A random braid closure and a Reidemeister II or III rewrite of it."""
    m = strands
    while True:
        word = [rng.choice([1, -1]) * rng.randint(1, m - 1) for _ in range(rng.randint(2, 4))]
        kind = rng.choice(["II", "III"])
        if kind == "III":
            i = rng.randint(1, m - 2)
            s = rng.choice([1, -1])
            cut = rng.randint(0, len(word))
            before = word[:cut] + [s * i, s * (i + 1), s * i] + word[cut:]
            after = word[:cut] + [s * (i + 1), s * i, s * (i + 1)] + word[cut:]
        else:
            i = rng.randint(1, m - 1)
            s = rng.choice([1, -1])
            cut = rng.randint(0, len(word))
            before = word
            after = word[:cut] + [s * i, -s * i] + word[cut:]
        b1, b2 = BraidClosure(m, tuple(before)), BraidClosure(m, tuple(after))
        if not b1.link.unknotted:
            return kind, b1, b2


def check_reidemeister(r: int, cases: int = 50, seed: int = 0, max_colour: int = 2) -> CheckResult:
    """Coloured values agree across generated Reidemeister II/III rewrites."""
    t0 = time.perf_counter()
    md = modular_data(r)
    rng = random.Random(seed)
    top = min(max_colour, r - 2)
    failures = []
    for _ in range(cases):
        kind, b1, b2 = reidemeister_pair(rng)
        # colour by strand position so both diagrams colour the same components
        by_pos = {}
        for p in range(b1.strands):
            by_pos.setdefault(b1.component_at(p), rng.randint(1, top))
        c1 = [by_pos[i] for i in range(b1.link.component_count)]
        c2 = [0] * b2.link.component_count
        for p in range(b2.strands):
            c2[b2.component_at(p)] = by_pos[b1.component_at(p)]
        if colored_link_value(b1.link, c1, md) != colored_link_value(b2.link, c2, md):
            failures.append((kind, b1.word, b2.word, c1))
    return _result("reidemeister-II-III", r, cases, failures, t0)


def run_selftest(max_level: int = 6, pachner_levels=(3, 4, 5)) -> list[CheckResult]:
    out = []
    for r in range(3, max_level + 1):
        out.append(check_symmetry(r))
        out.append(check_orthogonality(r))
        out.append(check_biedenharn_elliott(r))
    for r in pachner_levels:
        if r <= max_level:
            out.append(check_pachner(r, sequences=5))
    for r in range(3, min(max_level, 6) + 1):
        out.append(check_reidemeister(r, cases=10, seed=r))
        out.append(check_kirby(r))
    return out
