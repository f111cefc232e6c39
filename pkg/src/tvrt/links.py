"""Framed link diagrams given as planar-diagram (PD) codes.

Each crossing lists four arc labels counterclockwise starting from the
incoming under-strand: ``[i, j, k, l]`` with the under-strand running i -> k.
The crossing is positive when the over-strand runs l -> j.

Components are numbered as follows: indices listed in
``unknotted_components`` are crossing-free round circles, and the remaining
indices, in increasing order, go to the components traced from the PD code
ordered by their smallest arc label.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .smith import AbelianGroup

FORMAT = "lnk-v1"


class LinkError(ValueError):
    """Malformed or inconsistent link description."""


@dataclass(frozen=True)
class LinkingData:
    linking_matrix: tuple[tuple[int, ...], ...]
    signature: int

    def h1(self) -> AbelianGroup:
        """First homology of the surgered manifold: the cokernel of the linking matrix."""
        return AbelianGroup.cokernel(self.linking_matrix, rows=len(self.linking_matrix))


class PDDiagram:
    """Oriented planar diagram: arc ends, orientations and traced components."""

    def __init__(self, pd):
        self.pd = tuple(tuple(x) for x in pd)
        ends: dict = {}
        for n, x in enumerate(self.pd):
            if len(x) != 4:
                raise LinkError(f"crossing {n}: expected 4 arc labels, got {len(x)}")
            for s, a in enumerate(x):
                if not isinstance(a, int) or isinstance(a, bool):
                    raise LinkError(f"crossing {n}: arc label {a!r} is not an integer")
                ends.setdefault(a, []).append((n, s))
        for a, where in ends.items():
            if len(where) != 2:
                raise LinkError(f"arc {a} appears {len(where)} time(s), expected exactly 2")
        self.ends = ends
        self.orientation = self._orient()
        self.traced = self._trace()

    def other_end(self, a, end):
        e1, e2 = self.ends[a]
        return e2 if e1 == end else e1

    def _orient(self) -> dict:
        """arc -> (tail end, head end); an end is a (crossing, slot) pair."""
        orient: dict = {}

        def put(a, tail, head):
            if orient.get(a, (tail, head)) != (tail, head):
                raise LinkError(f"arc {a}: inconsistent orientation")
            orient[a] = (tail, head)

        for a, (e1, e2) in self.ends.items():
            for e in (e1, e2):
                if e[1] == 0:
                    put(a, self.other_end(a, e), e)
                elif e[1] == 2:
                    put(a, e, self.other_end(a, e))
        while len(orient) < len(self.ends):
            changed = True
            while changed:
                changed = False
                for n, x in enumerate(self.pd):
                    for s, t in ((1, 3), (3, 1)):
                        a, b = x[s], x[t]
                        if a not in orient or b in orient:
                            continue
                        if orient[a][1] == (n, s):  # a enters here, so b leaves
                            put(b, (n, t), self.other_end(b, (n, t)))
                        else:
                            put(b, self.other_end(b, (n, t)), (n, t))
                        changed = True
            free = sorted(a for a in self.ends if a not in orient)
            if free:
                e1, e2 = self.ends[free[0]]
                put(free[0], e1, e2)
        for n, x in enumerate(self.pd):
            if (orient[x[1]][1] == (n, 1)) == (orient[x[3]][1] == (n, 3)):
                raise LinkError(f"crossing {n}: over-strand orientation is inconsistent")
        return orient

    def next_arc(self, a: int) -> int:
        """Arc that continues a past its head crossing."""
        n, s = self.orientation[a][1]
        return self.pd[n][(s + 2) % 4]

    def _trace(self) -> list[list[int]]:
        seen: set = set()
        comps = []
        for a in sorted(self.ends):
            if a in seen:
                continue
            comp = []
            b = a
            while b not in seen:
                seen.add(b)
                comp.append(b)
                b = self.next_arc(b)
            if b != a:
                raise LinkError(f"arc {a}: strand does not close up")
            comps.append(comp)
        return comps

    def crossing_sign(self, n: int) -> int:
        return 1 if self.orientation[self.pd[n][3]][1] == (n, 3) else -1


@dataclass(frozen=True, eq=False)
class FramedLink:
    pd: tuple[tuple[int, int, int, int], ...]
    framings: tuple[int, ...]
    unknotted: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "pd", tuple(tuple(x) for x in self.pd))
        object.__setattr__(self, "framings", tuple(self.framings))
        object.__setattr__(self, "unknotted", tuple(self.unknotted))
        diagram = PDDiagram(self.pd)
        object.__setattr__(self, "diagram", diagram)
        if len(set(self.unknotted)) != len(self.unknotted):
            raise LinkError("repeated index in unknotted_components")
        for u in self.unknotted:
            if not 0 <= u < self.component_count:
                raise LinkError(f"unknotted component index {u} out of range")
        if len(diagram.traced) + len(self.unknotted) != self.component_count:
            raise LinkError(
                f"{len(self.framings)} framings given but the diagram has {len(diagram.traced)} traced "
                f"and {len(self.unknotted)} unknotted components"
            )

    def __eq__(self, other) -> bool:
        if not isinstance(other, FramedLink):
            return NotImplemented
        return (self.pd, self.framings, self.unknotted) == (other.pd, other.framings, other.unknotted)

    def __hash__(self) -> int:
        return hash((self.pd, self.framings, self.unknotted))

    # --- structure --------------------------------------------------------

    @property
    def component_count(self) -> int:
        return len(self.framings)

    def arc_tail(self, a):
        return self.diagram.orientation[a][0]

    def arc_head(self, a):
        return self.diagram.orientation[a][1]

    def crossing_sign(self, n: int) -> int:
        return self.diagram.crossing_sign(n)

    @cached_property
    def components(self) -> list[list[int]]:
        """Arcs of each component in order of travel (empty for unknotted components)."""
        out: list = [None] * self.component_count
        for u in self.unknotted:
            out[u] = []
        rest = [i for i in range(self.component_count) if i not in self.unknotted]
        for i, comp in zip(rest, self.diagram.traced):
            out[i] = comp
        return out

    @cached_property
    def component_of_arc(self) -> dict:
        return {a: i for i, comp in enumerate(self.components) for a in comp}

    def crossing_components(self, n: int) -> tuple[int, int]:
        """(under component, over component) at crossing n."""
        x = self.pd[n]
        return self.component_of_arc[x[0]], self.component_of_arc[x[1]]

    def writhe(self, i: int) -> int:
        """Self-writhe of component i (blackboard framing of its diagram)."""
        total = 0
        for n in range(len(self.pd)):
            u, o = self.crossing_components(n)
            if u == o == i:
                total += self.crossing_sign(n)
        return total

    # --- I/O -------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "format": FORMAT,
            "components": self.component_count,
            "pd": [list(x) for x in self.pd],
            "framings": list(self.framings),
            "unknotted_components": list(self.unknotted),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    def with_framings(self, framings) -> "FramedLink":
        return FramedLink(self.pd, tuple(framings), self.unknotted)

    def disjoint_union_unknot(self, framing: int) -> "FramedLink":
        """Append a split, crossing-free unknot with the given framing."""
        k = self.component_count
        return FramedLink(self.pd, self.framings + (framing,), self.unknotted + (k,))


def parse_link(text) -> FramedLink:
    """Parse the JSON ``lnk-v1`` format (bytes or str)."""
    if isinstance(text, (bytes, bytearray)):
        text = text.decode("utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise LinkError(f"malformed JSON: {exc}") from None
    if not isinstance(data, dict):
        raise LinkError("top level must be a JSON object")
    if data.get("format") != FORMAT:
        raise LinkError(f"unsupported format {data.get('format')!r}, expected {FORMAT!r}")
    pd = data.get("pd", [])
    framings = data.get("framings")
    k = data.get("components")
    if not isinstance(pd, list) or not all(isinstance(x, list) for x in pd):
        raise LinkError("'pd' must be a list of 4-element lists")
    if not isinstance(framings, list) or not all(isinstance(f, int) for f in framings):
        raise LinkError("'framings' must be a list of integers")
    if k != len(framings):
        raise LinkError(f"'components' is {k} but {len(framings)} framings given")
    unk = data.get("unknotted_components", [])
    if not isinstance(unk, list) or not all(isinstance(u, int) for u in unk):
        raise LinkError("'unknotted_components' must be a list of integers")
    return FramedLink(tuple(tuple(x) for x in pd), tuple(framings), tuple(unk))


def load_link(path) -> FramedLink:
    with open(path, "rb") as fh:
        return parse_link(fh.read())


# --- linking form ------------------------------------------------------------------


def signature(matrix) -> int:
    """Signature of a symmetric rational matrix by congruence diagonalization."""
    a = [[Fraction(x) for x in row] for row in matrix]
    n = len(a)
    pos = neg = 0
    k = 0
    while k < n:
        if a[k][k] == 0:
            j = next((j for j in range(k + 1, n) if a[j][j] != 0), None)
            if j is not None:
                a[k], a[j] = a[j], a[k]
                for row in a:
                    row[k], row[j] = row[j], row[k]
            else:
                j = next((j for j in range(k + 1, n) if a[k][j] != 0), None)
                if j is None:
                    k += 1  # zero row: contributes a null direction
                    continue
                # add row/column j to k; new pivot is 2 a[k][j] != 0
                for m in range(n):
                    a[k][m] += a[j][m]
                for m in range(n):
                    a[m][k] += a[m][j]
        p = a[k][k]
        if p > 0:
            pos += 1
        else:
            neg += 1
        # Schur complement on the trailing block
        for i in range(k + 1, n):
            if a[i][k]:
                q = a[i][k] / p
                for m in range(k + 1, n):
                    a[i][m] -= q * a[k][m]
        for i in range(k + 1, n):
            a[i][k] = a[k][i] = Fraction(0)
        k += 1
    return pos - neg


def linking_data(link: FramedLink) -> LinkingData:
    n = link.component_count
    twice = [[0] * n for _ in range(n)]
    for c in range(len(link.pd)):
        u, o = link.crossing_components(c)
        if u != o:
            s = link.crossing_sign(c)
            twice[u][o] += s
            twice[o][u] += s
    mat = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == j:
                row.append(link.framings[i])
            else:
                if twice[i][j] % 2:
                    raise LinkError(f"components {i}, {j}: odd number of inter-component crossings")
                row.append(twice[i][j] // 2)
        mat.append(tuple(row))
    return LinkingData(tuple(mat), signature(mat))


# --- generated diagrams -------------------------------------------------------------


@dataclass
class BraidClosure:
    """Closure of a braid word; generators are +-i for sigma_i^{+-1}, 1 <= i < strands."""

    strands: int
    word: tuple
    link: FramedLink = field(init=False)
    bottom_arcs: tuple = field(init=False)  # arc at each bottom position; -1-k for unknot k

    def __post_init__(self):
        self.link, self.bottom_arcs = _braid_closure(self.strands, self.word)

    def component_at(self, position: int) -> int:
        a = self.bottom_arcs[position]
        return -1 - a if a < 0 else self.link.component_of_arc[a]


def _braid_closure(m: int, word):
    label = iter(range(1, 10**9))
    bottom = [next(label) for _ in range(m)]
    cur = list(bottom)
    crossings = []
    touched = set()
    for g in word:
        i = abs(g) - 1
        if not 0 <= i < m - 1:
            raise LinkError(f"generator {g} out of range for {m} strands")
        touched.update((i, i + 1))
        a, b = next(label), next(label)
        old_i, old_j = cur[i], cur[i + 1]
        if g > 0:
            crossings.append([old_j, b, a, old_i])
        else:
            crossings.append([old_i, old_j, b, a])
        cur[i], cur[i + 1] = a, b
    # close up: the top arc at each position is the bottom arc
    alias = {cur[p]: bottom[p] for p in range(m) if cur[p] != bottom[p]}
    pd = [[alias.get(a, a) for a in x] for x in crossings]
    untouched = [p for p in range(m) if p not in touched]
    for p in untouched:
        bottom[p] = None
    used = sorted({a for x in pd for a in x})
    rename = {a: n + 1 for n, a in enumerate(used)}
    pd = tuple(tuple(rename[a] for a in x) for x in pd)
    traced = len(PDDiagram(pd).traced)
    unk = tuple(range(traced, traced + len(untouched)))
    link = FramedLink(pd, (0,) * (traced + len(untouched)), unk)
    arcs = []
    u = iter(unk)
    for p in range(m):
        arcs.append(rename[bottom[p]] if bottom[p] is not None else -1 - next(u))
    return link, tuple(arcs)
