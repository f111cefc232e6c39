"""Closed oriented 3-manifold triangulations as tetrahedron face-gluing tables.

Face i of a tetrahedron is the face opposite vertex i.  A gluing of face i of
tetrahedron t is ``Gluing(tet, face, perm)`` where ``perm[v]`` is the vertex
of the target tetrahedron that vertex v of t is identified with; necessarily
``perm[i] == face``.  Self-gluings and multiple gluings between the same pair
of tetrahedra are allowed, as in standard census triangulations.

A triangulation is *oriented* when every gluing permutation is odd, i.e. all
tetrahedra carry the orientation induced by their vertex order.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Optional, Sequence

from .smith import AbelianGroup, smith_invariants

FORMAT = "tri-v1"

EDGE_SLOTS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
EDGE_INDEX = {e: k for k, e in enumerate(EDGE_SLOTS)}
EDGE_INDEX.update({(b, a): k for (a, b), k in list(EDGE_INDEX.items())})


class TriangulationError(ValueError):
    """Structurally invalid gluing table."""


class MoveRejected(ValueError):
    """A Pachner move was requested at a location where it does not apply."""


Perm = tuple  # length-4 tuple, a permutation of 0..3


def perm_inverse(p: Sequence[int]) -> Perm:
    inv = [0] * 4
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def perm_compose(p: Sequence[int], q: Sequence[int]) -> Perm:
    """(p o q)[i] = p[q[i]]."""
    return tuple(p[q[i]] for i in range(4))


def perm_sign(p: Sequence[int]) -> int:
    sign = 1
    for i in range(4):
        for j in range(i + 1, 4):
            if p[i] > p[j]:
                sign = -sign
    return sign


class Gluing(NamedTuple):
    tet: int
    face: int
    perm: Perm


@dataclass(frozen=True)
class EdgeClass:
    incidences: tuple[tuple[int, int], ...]  # (tet, edge slot index)

    @property
    def degree(self) -> int:
        return len(self.incidences)


@dataclass(frozen=True)
class VertexClass:
    incidences: tuple[tuple[int, int], ...]  # (tet, vertex)

    @property
    def degree(self) -> int:
        return len(self.incidences)


class _UnionFind:
    """Union-find with a Z/2 parity relative to the root."""

    def __init__(self, items):
        self.parent = {x: x for x in items}
        self.parity = {x: 0 for x in items}

    def find(self, x):
        path = []
        while self.parent[x] != x:
            path.append(x)
            x = self.parent[x]
        root = x
        acc = 0
        for y in reversed(path):
            acc ^= self.parity[y]
            self.parity[y] = acc
            self.parent[y] = root
        return root

    def union(self, x, y, rel: int = 0) -> bool:
        """Merge with parity(x) ^ parity(y) == rel; False on a parity clash."""
        rx, ry = self.find(x), self.find(y)
        px, py = self.parity[x], self.parity[y]
        if rx == ry:
            return (px ^ py) == rel
        self.parent[ry] = rx
        self.parity[ry] = px ^ py ^ rel
        return True

    def classes(self, order):
        out: dict = {}
        for x in order:
            out.setdefault(self.find(x), []).append(x)
        return list(out.values())


@dataclass(frozen=True, eq=False)
class Triangulation:
    gluings: tuple[tuple[Optional[Gluing], ...], ...]

    # --- construction -----------------------------------------------------

    @classmethod
    def from_table(cls, table, *, closed: bool = True, check: bool = True) -> "Triangulation":
        rows = []
        for t, row in enumerate(table):
            if len(row) != 4:
                raise TriangulationError(f"tetrahedron {t}: expected 4 faces, got {len(row)}")
            out = []
            for i, g in enumerate(row):
                if g is None:
                    out.append(None)
                else:
                    tet, face, perm = g
                    out.append(Gluing(int(tet), int(face), tuple(int(x) for x in perm)))
            rows.append(tuple(out))
        tri = cls(tuple(rows))
        if check:
            tri.validate(closed=closed)
        return tri

    @property
    def tet_count(self) -> int:
        return len(self.gluings)

    def __eq__(self, other) -> bool:
        return isinstance(other, Triangulation) and self.gluings == other.gluings

    def __hash__(self) -> int:
        return hash(self.gluings)

    def __repr__(self) -> str:
        return f"Triangulation(tets={self.tet_count})"

    # --- validation -------------------------------------------------------

    def validate(self, *, closed: bool = True) -> None:
        n = self.tet_count
        if n < 1:
            raise TriangulationError("triangulation has no tetrahedra")
        for t, row in enumerate(self.gluings):
            for i, g in enumerate(row):
                where = f"tetrahedron {t} face {i}"
                if g is None:
                    if closed:
                        raise TriangulationError(f"{where}: unglued face in a closed triangulation")
                    continue
                if not 0 <= g.tet < n:
                    raise TriangulationError(f"{where}: target tetrahedron {g.tet} does not exist")
                if not 0 <= g.face < 4:
                    raise TriangulationError(f"{where}: target face {g.face} out of range")
                if sorted(g.perm) != [0, 1, 2, 3]:
                    raise TriangulationError(f"{where}: {list(g.perm)} is not a permutation of 0..3")
                if g.perm[i] != g.face:
                    raise TriangulationError(f"{where}: permutation sends vertex {i} to {g.perm[i]}, not face {g.face}")
                if (g.tet, g.face) == (t, i):
                    raise TriangulationError(f"{where}: face glued to itself")
                back = self.gluings[g.tet][g.face]
                if back is None or back.tet != t or back.face != i or back.perm != perm_inverse(g.perm):
                    raise TriangulationError(f"{where}: gluing is not involutive")
        if not self.is_connected():
            raise TriangulationError("triangulation is not connected")
        if closed:
            if self._edge_parity_clash:
                raise TriangulationError("an edge is identified with itself in reverse")
            if self.orientation() is None:
                raise TriangulationError("triangulation is not orientable")
            for v, chi in enumerate(self.vertex_link_euler()):
                if chi != 2:
                    raise TriangulationError(f"vertex class {v}: link has Euler characteristic {chi}, not a sphere")

    def is_connected(self) -> bool:
        seen, stack = {0}, [0]
        while stack:
            for g in self.gluings[stack.pop()]:
                if g is not None and g.tet not in seen:
                    seen.add(g.tet)
                    stack.append(g.tet)
        return len(seen) == self.tet_count

    # --- skeleton ---------------------------------------------------------

    def _glued_faces(self):
        for t, row in enumerate(self.gluings):
            for i, g in enumerate(row):
                if g is not None:
                    yield t, i, g

    @cached_property
    def _edge_uf(self) -> _UnionFind:
        uf = _UnionFind([(t, k) for t in range(self.tet_count) for k in range(6)])
        clash = False
        for t, i, g in self._glued_faces():
            for k, (a, b) in enumerate(EDGE_SLOTS):
                if i in (a, b):
                    continue
                pa, pb = g.perm[a], g.perm[b]
                rel = 0 if pa < pb else 1
                if not uf.union((t, k), (g.tet, EDGE_INDEX[(pa, pb)]), rel):
                    clash = True
        uf.clash = clash
        return uf

    @property
    def _edge_parity_clash(self) -> bool:
        return self._edge_uf.clash

    @cached_property
    def _vertex_uf(self) -> _UnionFind:
        uf = _UnionFind([(t, v) for t in range(self.tet_count) for v in range(4)])
        for t, i, g in self._glued_faces():
            for v in range(4):
                if v != i:
                    uf.union((t, v), (g.tet, g.perm[v]))
        return uf

    @cached_property
    def edges(self) -> tuple[EdgeClass, ...]:
        order = [(t, k) for t in range(self.tet_count) for k in range(6)]
        return tuple(EdgeClass(tuple(c)) for c in self._edge_uf.classes(order))

    @cached_property
    def vertices(self) -> tuple[VertexClass, ...]:
        order = [(t, v) for t in range(self.tet_count) for v in range(4)]
        return tuple(VertexClass(tuple(c)) for c in self._vertex_uf.classes(order))

    @cached_property
    def edge_of(self) -> dict:
        """(tet, edge slot) -> edge class index."""
        return {inc: e for e, ec in enumerate(self.edges) for inc in ec.incidences}

    @cached_property
    def edge_sign(self) -> dict:
        """(tet, edge slot) -> +1/-1 orientation relative to its class representative."""
        uf = self._edge_uf
        out = {}
        for ec in self.edges:
            rep = ec.incidences[0]
            uf.find(rep)
            base = uf.parity[rep]
            for inc in ec.incidences:
                uf.find(inc)
                out[inc] = -1 if uf.parity[inc] ^ base else 1
        return out

    @cached_property
    def vertex_of(self) -> dict:
        return {inc: v for v, vc in enumerate(self.vertices) for inc in vc.incidences}

    @cached_property
    def faces(self) -> tuple[tuple[int, int], ...]:
        """One representative (tet, face) per triangle."""
        seen, reps = set(), []
        for t in range(self.tet_count):
            for i in range(4):
                if (t, i) in seen:
                    continue
                seen.add((t, i))
                g = self.gluings[t][i]
                if g is not None:
                    seen.add((g.tet, g.face))
                reps.append((t, i))
        return tuple(reps)

    def skeleton(self) -> tuple[tuple[EdgeClass, ...], tuple[VertexClass, ...]]:
        return self.edges, self.vertices

    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.edges) + len(self.faces) - self.tet_count

    def tet_edges(self, t: int) -> tuple[int, ...]:
        """Edge class of each slot of tetrahedron t, in EDGE_SLOTS order."""
        return tuple(self.edge_of[(t, k)] for k in range(6))

    def face_edges(self, t: int, i: int) -> tuple[int, int, int]:
        a, b, c = (v for v in range(4) if v != i)
        return (self.edge_of[(t, EDGE_INDEX[(a, b)])], self.edge_of[(t, EDGE_INDEX[(a, c)])],
                self.edge_of[(t, EDGE_INDEX[(b, c)])])

    # --- orientation ------------------------------------------------------

    def orientation(self) -> Optional[tuple[int, ...]]:
        """Signs making every gluing orientation-reversing, or None if non-orientable."""
        n = self.tet_count
        sign = [0] * n
        for start in range(n):
            if sign[start]:
                continue
            sign[start] = 1
            stack = [start]
            while stack:
                t = stack.pop()
                for g in self.gluings[t]:
                    if g is None:
                        continue
                    want = -sign[t] * perm_sign(g.perm)
                    if sign[g.tet] == 0:
                        sign[g.tet] = want
                        stack.append(g.tet)
                    elif sign[g.tet] != want:
                        return None
        return tuple(sign)

    def is_oriented(self) -> bool:
        return all(perm_sign(g.perm) == -1 for _, _, g in self._glued_faces())

    def relabel(self, t: int, sigma: Sequence[int]) -> "Triangulation":
        """Renumber the vertices of tetrahedron t: old vertex v becomes sigma[v]."""
        sigma = tuple(sigma)
        sinv = perm_inverse(sigma)
        rows = [list(row) for row in self.gluings]
        new_row = [None] * 4
        for i, g in enumerate(self.gluings[t]):
            if g is None:
                continue
            perm = perm_compose(g.perm, sinv)
            tet, face = g.tet, g.face
            if tet == t:
                perm = perm_compose(sigma, perm)
                face = sigma[face]
            new_row[sigma[i]] = Gluing(tet, face, perm)
        for u, row in enumerate(self.gluings):
            if u == t:
                continue
            for i, g in enumerate(row):
                if g is not None and g.tet == t:
                    rows[u][i] = Gluing(t, sigma[g.face], perm_compose(sigma, g.perm))
        rows[t] = new_row
        return Triangulation(tuple(tuple(r) for r in rows))

    def oriented(self) -> "Triangulation":
        """Equivalent triangulation whose gluing permutations are all odd."""
        signs = self.orientation()
        if signs is None:
            raise TriangulationError("triangulation is not orientable")
        tri = self
        for t, s in enumerate(signs):
            if s < 0:
                tri = tri.relabel(t, (1, 0, 2, 3))
        return tri

    def reversed(self) -> "Triangulation":
        """The same complex with every tetrahedron's orientation flipped."""
        tri = self
        for t in range(self.tet_count):
            tri = tri.relabel(t, (1, 0, 2, 3))
        return tri

    # --- vertex links -----------------------------------------------------

    def vertex_link_euler(self) -> list[int]:
        """Euler characteristic of the link of each vertex class."""
        corners = [(t, v, w) for t in range(self.tet_count) for v in range(4) for w in range(4) if v != w]
        uf = _UnionFind(corners)
        for t, i, g in self._glued_faces():
            for v in range(4):
                for w in range(4):
                    if v != w and i not in (v, w):
                        uf.union((t, v, w), (g.tet, g.perm[v], g.perm[w]))
        out = []
        for vc in self.vertices:
            tris = len(vc.incidences)
            link_vertices = {uf.find((t, v, w)) for t, v in vc.incidences for w in range(4) if w != v}
            out.append(len(link_vertices) - 3 * tris // 2 + tris)
        return out

    # --- homology ---------------------------------------------------------

    def boundary_matrices(self) -> tuple[list[list[int]], list[list[int]]]:
        """Cellular boundary maps d1 (V x E) and d2 (E x F) with integer entries."""
        nv, ne, nf = len(self.vertices), len(self.edges), len(self.faces)
        d1 = [[0] * ne for _ in range(nv)]
        for e, ec in enumerate(self.edges):
            t, k = ec.incidences[0]
            a, b = EDGE_SLOTS[k]
            sgn = self.edge_sign[(t, k)]
            d1[self.vertex_of[(t, b)]][e] += sgn
            d1[self.vertex_of[(t, a)]][e] -= sgn
        d2 = [[0] * nf for _ in range(ne)]
        for f, (t, i) in enumerate(self.faces):
            v0, v1, v2 = (v for v in range(4) if v != i)
            for (a, b), s in (((v1, v2), 1), ((v0, v2), -1), ((v0, v1), 1)):
                slot = (t, EDGE_INDEX[(a, b)])
                d2[self.edge_of[slot]][f] += s * self.edge_sign[slot]
        return d1, d2

    def homology_h1(self) -> AbelianGroup:
        d1, d2 = self.boundary_matrices()
        ne = len(self.edges)
        rank1 = len(smith_invariants(d1))
        inv2 = smith_invariants(d2)
        return AbelianGroup(ne - rank1 - len(inv2), tuple(d for d in inv2 if d > 1))

    # --- serialization ----------------------------------------------------

    def to_json(self) -> dict:
        return {
            "format": FORMAT,
            "tetrahedra": self.tet_count,
            "gluings": [
                [None if g is None else {"tet": g.tet, "face": g.face, "perm": list(g.perm)} for g in row]
                for row in self.gluings
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1)


def parse_triangulation(text, *, closed: bool = True) -> Triangulation:
    """Parse the JSON ``tri-v1`` format (bytes or str) into a validated Triangulation."""
    if isinstance(text, (bytes, bytearray)):
        text = text.decode("utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TriangulationError(f"malformed JSON: {exc}") from None
    if not isinstance(data, dict):
        raise TriangulationError("top level must be a JSON object")
    if data.get("format") != FORMAT:
        raise TriangulationError(f"unsupported format {data.get('format')!r}, expected {FORMAT!r}")
    glu = data.get("gluings")
    if not isinstance(glu, list):
        raise TriangulationError("missing 'gluings' list")
    if data.get("tetrahedra") != len(glu):
        raise TriangulationError(f"'tetrahedra' is {data.get('tetrahedra')} but {len(glu)} gluing rows given")
    table = []
    for t, row in enumerate(glu):
        if not isinstance(row, list) or len(row) != 4:
            raise TriangulationError(f"tetrahedron {t}: expected a list of 4 face entries")
        out = []
        for i, g in enumerate(row):
            if g is None:
                out.append(None)
                continue
            try:
                out.append((int(g["tet"]), int(g["face"]), [int(x) for x in g["perm"]]))
            except (KeyError, TypeError, ValueError):
                raise TriangulationError(f"tetrahedron {t} face {i}: malformed gluing entry {g!r}") from None
            if len(out[-1][2]) != 4:
                raise TriangulationError(f"tetrahedron {t} face {i}: perm must have 4 entries")
        table.append(out)
    return Triangulation.from_table(table, closed=closed)


def load_triangulation(path) -> Triangulation:
    with open(path, "rb") as fh:
        return parse_triangulation(fh.read())


# --- Pachner moves -----------------------------------------------------------


def _retriangulate(tri: Triangulation, old: Sequence[int], old_labels, new_labels) -> Triangulation:
    """Replace the tetrahedra ``old`` (vertex labels ``old_labels``) by ``new_labels``.

    Faces of the new tetrahedra that are not shared among them are matched to
    the faces of the old patch carrying the same label set, and inherit those
    faces' outside gluings.
    """
    old_set = set(old)
    if len(old_set) != len(old):
        raise MoveRejected("patch tetrahedra are not distinct")
    for labs in list(old_labels) + list(new_labels):
        if len(set(labs)) != 4:
            raise MoveRejected("patch has a degenerate tetrahedron")
    keep = [t for t in range(tri.tet_count) if t not in old_set]
    index = {t: k for k, t in enumerate(keep)}
    base = len(keep)
    pos = {t: k for k, t in enumerate(old)}

    def face_map(label_rows):
        out: dict = {}
        for k, labs in enumerate(label_rows):
            for f in range(4):
                out.setdefault(frozenset(labs[j] for j in range(4) if j != f), []).append((k, f))
        return out

    old_faces = face_map(old_labels)
    new_faces = face_map(new_labels)

    rows: list[list] = [[None] * 4 for _ in range(base + len(new_labels))]
    for t in keep:
        for i, g in enumerate(tri.gluings[t]):
            if g is not None and g.tet not in old_set:
                rows[index[t]][i] = Gluing(index[g.tet], g.face, g.perm)

    for m, labs in enumerate(new_labels):
        X = base + m
        for f in range(4):
            key = frozenset(labs[j] for j in range(4) if j != f)
            entries = new_faces[key]
            if len(entries) == 2:
                (m2, f2), = [e for e in entries if e != (m, f)]
                perm = tuple(f2 if j == f else new_labels[m2].index(labs[j]) for j in range(4))
                rows[X][f] = Gluing(base + m2, f2, perm)
                continue
            if len(entries) != 1 or len(old_faces.get(key, ())) != 1:
                raise MoveRejected("patch boundary does not match")
            (k, fa), = old_faces[key]
            A = old[k]
            to_A = tuple(fa if j == f else old_labels[k].index(labs[j]) for j in range(4))
            g = tri.gluings[A][fa]
            to_B = perm_compose(g.perm, to_A)
            if g.tet not in old_set:
                rows[X][f] = Gluing(index[g.tet], g.face, to_B)
                rows[index[g.tet]][g.face] = Gluing(X, f, perm_inverse(to_B))
            else:
                kB = pos[g.tet]
                blabs = old_labels[kB]
                key2 = frozenset(blabs[j] for j in range(4) if j != g.face)
                targets = new_faces.get(key2, [])
                if len(targets) != 1:
                    raise MoveRejected("patch boundary does not match")
                (m2, f2), = targets
                perm = tuple(f2 if j == f else new_labels[m2].index(blabs[to_B[j]]) for j in range(4))
                rows[X][f] = Gluing(base + m2, f2, perm)

    out = Triangulation(tuple(tuple(r) for r in rows))
    try:
        out.validate()
    except TriangulationError as exc:
        raise MoveRejected(f"move produces an invalid triangulation: {exc}") from None
    return out.oriented() if tri.is_oriented() else out


def _check_patch(tri, old, old_labels, internal) -> None:
    """Gluings across internal faces must agree with the labelling."""
    pos = {t: k for k, t in enumerate(old)}
    for k, t in enumerate(old):
        labs = old_labels[k]
        for f in range(4):
            key = frozenset(labs[j] for j in range(4) if j != f)
            if not internal(key):
                continue
            g = tri.gluings[t][f]
            if g.tet not in pos:
                raise MoveRejected("neighbourhood is not of the required form")
            blabs = old_labels[pos[g.tet]]
            for j in range(4):
                if j != f and blabs[g.perm[j]] != labs[j]:
                    raise MoveRejected("neighbourhood is not of the required form")


def _move_2_3(tri: Triangulation, t: int, i: int) -> Triangulation:
    g = tri.gluings[t][i]
    if g.tet == t:
        raise MoveRejected(f"face {i} of tetrahedron {t} joins a tetrahedron to itself")
    A_labels = (0, 1, 2, 3)
    B_labels = [None] * 4
    for k in range(4):
        B_labels[g.perm[k]] = "N" if k == i else k
    face = [k for k in range(4) if k != i]
    new = []
    for z in face:
        x, y = (v for v in face if v != z)
        new.append((x, y, i, "N"))
    return _retriangulate(tri, [t, g.tet], [A_labels, tuple(B_labels)], new)


def _move_3_2(tri: Triangulation, e: int) -> Triangulation:
    ec = tri.edges[e]
    if ec.degree != 3:
        raise MoveRejected(f"edge {e} has degree {ec.degree}, not 3")
    tets = [t for t, _ in ec.incidences]
    if len(set(tets)) != 3:
        raise MoveRejected(f"edge {e} meets a tetrahedron more than once")
    t0, k0 = ec.incidences[0]
    u, v = EDGE_SLOTS[k0]
    w1, w2 = (x for x in range(4) if x not in (u, v))
    labels = {t0: {u: "E1", v: "E2", w1: "x", w2: "y"}}
    order = [t0]
    # walk around the edge: cross the face opposite the older side vertex
    cur, opp, fresh = t0, w1, iter(("z",))
    for _ in range(2):
        g = tri.gluings[cur][opp]
        if g.tet in labels:
            raise MoveRejected(f"edge {e} is not surrounded by three distinct tetrahedra")
        lab = {g.perm[x]: labels[cur][x] for x in range(4) if x != opp}
        lab[g.face] = next(fresh, None) or "x"
        labels[g.tet] = lab
        order.append(g.tet)
        # next face: the one containing the edge but not the vertex we just came across
        came = labels[cur][[x for x in range(4) if x != opp and labels[cur][x] not in ("E1", "E2")][0]]
        opp = [x for x, L in lab.items() if L == came][0]
        cur = g.tet
    old_labels = [tuple(labels[t][x] for x in range(4)) for t in order]
    _check_patch(tri, order, old_labels, lambda key: {"E1", "E2"} <= key)
    new = [("x", "y", "z", "E1"), ("x", "y", "z", "E2")]
    return _retriangulate(tri, order, old_labels, new)


def _move_1_4(tri: Triangulation, t: int) -> Triangulation:
    labs = (0, 1, 2, 3)
    new = [tuple("N" if j == k else j for j in range(4)) for k in range(4)]
    return _retriangulate(tri, [t], [labs], new)


def _move_4_1(tri: Triangulation, v: int) -> Triangulation:
    vc = tri.vertices[v]
    if vc.degree != 4:
        raise MoveRejected(f"vertex {v} meets {vc.degree} tetrahedra, not 4")
    tets = [t for t, _ in vc.incidences]
    if len(set(tets)) != 4:
        raise MoveRejected(f"vertex {v} meets a tetrahedron more than once")
    t0, c0 = vc.incidences[0]
    others = [x for x in range(4) if x != c0]
    labels = {t0: {c0: "N", others[0]: "a", others[1]: "b", others[2]: "c"}}
    order = [t0]
    for x in others:
        g = tri.gluings[t0][x]
        if g.tet in labels:
            raise MoveRejected(f"vertex {v} is not a 1-4 configuration")
        lab = {g.perm[y]: labels[t0][y] for y in range(4) if y != x}
        lab[g.face] = "d"
        labels[g.tet] = lab
        order.append(g.tet)
    old_labels = [tuple(labels[t][x] for x in range(4)) for t in order]
    _check_patch(tri, order, old_labels, lambda key: "N" in key)
    return _retriangulate(tri, order, old_labels, [("a", "b", "c", "d")])


MOVES = ("2-3", "3-2", "1-4", "4-1")


def pachner_move(tri: Triangulation, kind: str, location) -> Triangulation:
    """Apply a Pachner move and return the new (validated) triangulation.

    location: ``(tet, face)`` for 2-3, an edge class index for 3-2, a
    tetrahedron index for 1-4 and a vertex class index for 4-1.
    """
    try:
        if kind == "2-3":
            t, i = location
            if not (0 <= t < tri.tet_count and 0 <= i < 4):
                raise MoveRejected(f"no face {location!r}")
            return _move_2_3(tri, t, i)
        if kind == "3-2":
            if not 0 <= location < len(tri.edges):
                raise MoveRejected(f"no edge {location!r}")
            return _move_3_2(tri, location)
        if kind == "1-4":
            if not 0 <= location < tri.tet_count:
                raise MoveRejected(f"no tetrahedron {location!r}")
            return _move_1_4(tri, location)
        if kind == "4-1":
            if not 0 <= location < len(tri.vertices):
                raise MoveRejected(f"no vertex {location!r}")
            return _move_4_1(tri, location)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, MoveRejected):
            raise
        raise MoveRejected(f"bad location {location!r} for a {kind} move") from None
    raise MoveRejected(f"unknown move {kind!r}")


def created_edge(tri_after_2_3: Triangulation) -> int:
    """Edge class created by the most recent 2-3 move (new tetrahedra come last)."""
    return tri_after_2_3.edge_of[(tri_after_2_3.tet_count - 1, EDGE_INDEX[(2, 3)])]


def applicable_moves(tri: Triangulation) -> list[tuple[str, object]]:
    out = []
    for t in range(tri.tet_count):
        for i in range(4):
            if tri.gluings[t][i].tet != t:
                out.append(("2-3", (t, i)))
    for e, ec in enumerate(tri.edges):
        if ec.degree == 3 and len({t for t, _ in ec.incidences}) == 3:
            out.append(("3-2", e))
    out.extend(("1-4", t) for t in range(tri.tet_count))
    for v, vc in enumerate(tri.vertices):
        if vc.degree == 4 and len({t for t, _ in vc.incidences}) == 4:
            out.append(("4-1", v))
    return out


def random_moves(tri: Triangulation, length: int, rng, *, max_tets: int | None = None):
    """Apply up to ``length`` random applicable moves; returns (result, history)."""
    history = []
    for _ in range(length):
        options = applicable_moves(tri)
        if max_tets is not None:
            options = [m for m in options if not (m[0] in ("2-3", "1-4") and tri.tet_count >= max_tets)]
        rng.shuffle(options)
        # choose the move kind first so 2-3 faces do not crowd out the rest
        kinds = sorted({k for k, _ in options}, key=MOVES.index)
        if not kinds:
            break
        kind = rng.choice(kinds)
        for k, loc in options:
            if k != kind:
                continue
            try:
                tri = pachner_move(tri, k, loc)
            except MoveRejected:
                continue
            history.append((k, loc))
            break
    return tri, history


# --- connected sum -------------------------------------------------------------


def _embedded_face(tri: Triangulation):
    for t, i in tri.faces:
        verts = {tri.vertex_of[(t, v)] for v in range(4) if v != i}
        if len(verts) == 3:
            return t, i
    return None


def connected_sum(t1: Triangulation, t2: Triangulation) -> Triangulation:
    """Triangulate M1 # M2 by cutting each along an embedded triangle and cross-gluing.

    A 1-4 move is applied first wherever no triangle has three distinct
    vertices.
    """
    def prepare(tri):
        for _ in range(3):
            loc = _embedded_face(tri)
            if loc is not None:
                return tri, loc
            tri = _move_1_4(tri, tri.tet_count - 1)
        raise TriangulationError("could not find an embedded triangle")

    t1, (a1, f1) = prepare(t1)
    t2, (a2, f2) = prepare(t2)
    n1 = t1.tet_count
    g1 = t1.gluings[a1][f1]
    g2 = t2.gluings[a2][f2]
    b1, b2 = (g1.tet, g1.face, g1.perm), (g2.tet + n1, g2.face, g2.perm)
    face1 = [v for v in range(4) if v != f1]
    face2 = [v for v in range(4) if v != f2]
    for shuffle in itertools.permutations(face2):
        psi = {f1: f2}
        psi.update(dict(zip(face1, shuffle)))
        psi_t = tuple(psi[k] for k in range(4))
        rows = [list(r) for r in t1.gluings] + [
            [Gluing(g.tet + n1, g.face, g.perm) for g in r] for r in t2.gluings
        ]
        # a1.f1 -> b2 via p2 o psi ; a2.f2 -> b1 via p1 o psi^-1
        p12 = perm_compose(b2[2], psi_t)
        p21 = perm_compose(b1[2], perm_inverse(psi_t))
        rows[a1][f1] = Gluing(b2[0], b2[1], p12)
        rows[b2[0]][b2[1]] = Gluing(a1, f1, perm_inverse(p12))
        rows[a2 + n1][f2] = Gluing(b1[0], b1[1], p21)
        rows[b1[0]][b1[1]] = Gluing(a2 + n1, f2, perm_inverse(p21))
        cand = Triangulation(tuple(tuple(r) for r in rows))
        try:
            cand.validate()
        except TriangulationError:
            continue
        return cand.oriented()
    raise TriangulationError("no orientable cross-gluing found")


def _reduce_greedily(tri: Triangulation) -> Triangulation:
    changed = True
    while changed:
        changed = False
        for kind, loc in applicable_moves(tri):
            if kind in ("3-2", "4-1"):
                try:
                    tri = pachner_move(tri, kind, loc)
                except MoveRejected:
                    continue
                changed = True
                break
    return tri


def simplify(tri: Triangulation, attempts: int = 300, seed: int = 0) -> Triangulation:
    """Random-walk simplification: short 2-3 bursts followed by greedy 3-2/4-1 reduction.

    Keeps the smallest triangulation seen (fewest tetrahedra, then fewest
    edges).  Deterministic for a fixed seed.
    """
    import random

    rng = random.Random(seed)
    best = _reduce_greedily(tri)
    for _ in range(attempts):
        cand = best
        for _ in range(rng.randint(1, 3)):
            opts = [m for m in applicable_moves(cand) if m[0] == "2-3"]
            kind, loc = rng.choice(opts)
            try:
                cand = pachner_move(cand, kind, loc)
            except MoveRejected:
                pass
        cand = _reduce_greedily(cand)
        if (cand.tet_count, len(cand.edges)) < (best.tet_count, len(best.edges)):
            best = cand
    return best
