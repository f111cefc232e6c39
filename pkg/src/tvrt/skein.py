"""Kauffman bracket evaluation of cabled diagrams with Jones-Wenzl projectors.

The bracket uses loop value d = -A^2 - A^-2.  At a crossing with slots
(i, j, k, l) listed counterclockwise from an under-strand end, the
A-smoothing joins (i, j) and (k, l) and the B-smoothing joins (i, l) and
(j, k); with this choice a positive curl multiplies by -A^3.

A diagram to be evaluated is a planar network of *vertices*, each with a
list of wire labels (one per endpoint) and a local expansion
``[(coeff, pairing), ...]`` where ``pairing`` matches its endpoints.  The
contraction adds vertices one at a time, carrying a dictionary from the
induced pairing of open wires to its coefficient and counting closed loops
as they appear.
"""

from __future__ import annotations

from functools import lru_cache

from .cyclotomic import CycNumber
from .errors import ResourceLimitError
from .modular import ModularData, modular_data

DEFAULT_MAX_CROSSINGS = 2000
DEFAULT_MAX_STATES = 2_000_000


def loop_value(md: ModularData) -> CycNumber:
    return -(md.A(2) + md.A(-2))


# --- Temperley-Lieb diagrams -------------------------------------------------------
#
# A TL diagram on n strands is a perfect matching on points 0..n-1 (bottom,
# left to right) and n..2n-1 (top, left to right), stored as a tuple
# ``m`` with m[p] the partner of p.


def tl_identity(n: int) -> tuple:
    return tuple(list(range(n, 2 * n)) + list(range(n)))


def tl_generator(n: int, i: int) -> tuple:
    """e_i (0-based): caps strands i, i+1 at the top and bottom."""
    m = list(tl_identity(n))
    m[i], m[i + 1] = i + 1, i
    m[n + i], m[n + i + 1] = n + i + 1, n + i
    return tuple(m)


def tl_compose(x: tuple, y: tuple, n: int) -> tuple[tuple, int]:
    """Stack x on top of y; returns (diagram, number of closed loops).

    The top row of y is glued to the bottom row of x.
    """
    seen = [False] * n  # middle points

    def travel(upper: bool, p: int) -> int:
        while True:
            if upper:
                q = x[p]
                if q >= n:
                    return q
                seen[q] = True
                upper, p = False, q + n
            else:
                q = y[p]
                if q < n:
                    return q
                seen[q - n] = True
                upper, p = True, q - n

    out = [None] * (2 * n)
    for p in range(2 * n):
        if out[p] is None:
            e = travel(p >= n, p)
            out[p], out[e] = e, p
    loops = 0
    for m in range(n):
        if seen[m]:
            continue
        loops += 1
        cur = m
        while not seen[cur]:
            seen[cur] = True
            q = x[cur]  # stays in the middle row
            seen[q] = True
            cur = y[q + n] - n
    return tuple(out), loops


def _tl_mul(u: dict, v: dict, n: int, d: CycNumber) -> dict:
    out: dict = {}
    for x, a in u.items():
        for y, b in v.items():
            z, loops = tl_compose(x, y, n)
            c = a * b * d**loops if loops else a * b
            out[z] = out[z] + c if z in out else c
    return {k: c for k, c in out.items() if not c.is_zero()}


@lru_cache(maxsize=None)
def jones_wenzl(n: int, r: int) -> tuple[tuple[tuple, CycNumber], ...]:
    """Expansion of the n-strand projector in the TL diagram basis (Wenzl recursion)."""
    md = modular_data(r)
    if n >= r:
        raise ValueError(f"projector p_{n} does not exist at level {r}")
    one = md.one()
    if n == 0:
        return (((), one),)
    d = loop_value(md)
    delta = [md.qdims[k] if k < len(md.qdims) else None for k in range(n)]
    proj = {tl_identity(1): one}
    for m in range(1, n):
        # p_{m+1} = p_m x 1 - (D_{m-1}/D_m) (p_m x 1) e_m (p_m x 1)
        ext = {_extend(x, m): c for x, c in proj.items()}
        e = {tl_generator(m + 1, m - 1): one}
        mid = _tl_mul(_tl_mul(ext, e, m + 1, d), ext, m + 1, d)
        coef = delta[m - 1] / delta[m]
        new = dict(ext)
        for x, c in mid.items():
            v = new.get(x, md.zero()) - coef * c
            if v.is_zero():
                new.pop(x, None)
            else:
                new[x] = v
        proj = new
    return tuple(sorted(proj.items()))


def _extend(x: tuple, m: int) -> tuple:
    """x (on m strands) tensored with one straight strand on the right."""
    out = [0] * (2 * m + 2)
    for p, q in enumerate(x):
        out[_shift(p, m)] = _shift(q, m)
    out[m] = 2 * m + 1
    out[2 * m + 1] = m
    return tuple(out)


def _shift(p: int, m: int) -> int:
    return p if p < m else p + 1


# --- network contraction --------------------------------------------------------------


class Vertex:
    __slots__ = ("wires", "terms")

    def __init__(self, wires, terms):
        self.wires = tuple(wires)
        self.terms = terms  # list of (coeff or None for 1, zeta power, pairing as tuple)


def crossing_vertex(wires) -> Vertex:
    """Elementary crossing: A-smoothing with weight A, B-smoothing with weight A^-1."""
    return Vertex(wires, [(None, 1, (1, 0, 3, 2)), (None, -1, (3, 2, 1, 0))])


def projector_vertex(bottom, top, n: int, r: int) -> Vertex:
    terms = [(c, 0, pairing) for pairing, c in jones_wenzl(n, r)]
    return Vertex(list(bottom) + list(top), terms)


def _order(vertices) -> list[int]:
    """Greedy order: next vertex shares the most wires with what is already placed."""
    remaining = set(range(len(vertices)))
    open_wires: set = set()
    order = []
    while remaining:
        best = None
        for v in remaining:
            w = vertices[v].wires
            shared = sum(1 for x in w if x in open_wires)
            key = (-shared, len(w) - 2 * shared, v)
            if best is None or key < best:
                best = key
        v = best[2]
        remaining.discard(v)
        order.append(v)
        for x in vertices[v].wires:
            if x in open_wires:
                open_wires.discard(x)
            else:
                open_wires.add(x)
    return order


def contract(vertices, md: ModularData, *, max_states: int = DEFAULT_MAX_STATES) -> CycNumber:
    """Bracket of a closed network; every wire must appear at exactly two endpoints."""
    count: dict = {}
    for v in vertices:
        for x in v.wires:
            count[x] = count.get(x, 0) + 1
    bad = [x for x, c in count.items() if c != 2]
    if bad:
        raise ValueError(f"wire {bad[0]!r} has {count[bad[0]]} endpoint(s)")
    d = loop_value(md)
    dpow = [md.one()]
    states: dict = {(): md.one()}
    for vi in _order(vertices):
        v = vertices[vi]
        wires = v.wires
        nxt: dict = {}
        for key, coef in states.items():
            partner = {}
            for a, b in key:
                partner[a] = b
                partner[b] = a
            for tc, zp, pairing in v.terms:
                new_pairs, loops = _merge(partner, wires, pairing)
                c = coef if tc is None else coef * tc
                if zp:
                    c = c.mul_zeta(zp)
                if loops:
                    while len(dpow) <= loops:
                        dpow.append(dpow[-1] * d)
                    c = c * dpow[loops]
                if new_pairs in nxt:
                    nxt[new_pairs] = nxt[new_pairs] + c
                else:
                    nxt[new_pairs] = c
        states = {k: c for k, c in nxt.items() if not c.is_zero()}
        if len(states) > max_states:
            raise ResourceLimitError(
                f"skein contraction needs more than {max_states} intermediate states", len(states), max_states
            )
        if not states:
            return md.zero()
    return states.get((), md.zero())


def _merge(partner: dict, wires, pairing) -> tuple[tuple, int]:
    """Join the open-wire pairing with one local term; returns (new pairing, loops closed)."""
    k = len(wires)
    # slot graph: slot s is joined to pairing[s]; slot s also continues along its wire
    # either into an existing open end (then through `partner`) or into another slot.
    slot_of = {}
    for s, w in enumerate(wires):
        slot_of.setdefault(w, []).append(s)
    visited = [False] * k
    pairs = []
    loops = 0

    def walk_from_wire(w, came_from_slot):
        # walking along wire w away from the slot; returns ("open", w') or ("slot", s)
        slots = slot_of[w]
        if len(slots) == 2:
            s = slots[0] if slots[1] == came_from_slot else slots[1]
            return "slot", s
        if w in partner:
            # w is an open wire of the current state: jump to the other end of its path
            w2 = partner[w]
            if w2 in slot_of:
                return "slot", slot_of[w2][0]
            return "open", w2
        return "open", w

    # paths starting at open ends that leave the region: start from slots whose wire stays open
    for s in range(k):
        if visited[s]:
            continue
        kind, end = walk_from_wire(wires[s], s)
        if kind != "open":
            continue
        # walk the other way through the local pairing
        cur = s
        while True:
            visited[cur] = True
            t = pairing[cur]
            visited[t] = True
            kind2, nxt = walk_from_wire(wires[t], t)
            if kind2 == "open":
                pairs.append((end, nxt) if end < nxt else (nxt, end))
                break
            cur = nxt
    # remaining slots lie on closed loops
    for s in range(k):
        if visited[s]:
            continue
        loops += 1
        cur = s
        while not visited[cur]:
            visited[cur] = True
            t = pairing[cur]
            visited[t] = True
            _, cur = walk_from_wire(wires[t], t)
    # untouched open pairs of the state survive
    touched = set(wires)
    for a, b in _pairs_of(partner):
        if a in touched or b in touched:
            continue
        pairs.append((a, b) if a < b else (b, a))
    pairs.sort()
    return tuple(pairs), loops


def _pairs_of(partner: dict):
    for a, b in partner.items():
        if a < b:
            yield a, b


# --- cabling ---------------------------------------------------------------------------


class _Aliases:
    def __init__(self):
        self.parent: dict = {}

    def find(self, x):
        root = x
        while self.parent.get(root, root) != root:
            root = self.parent[root]
        while x != root:
            self.parent[x], x = root, self.parent.get(x, x)
        return root

    def join(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def cabled_network(link, colours, r: int, *, max_crossings: int = DEFAULT_MAX_CROSSINGS) -> list[Vertex]:
    """Blackboard cable of ``link`` with component i replaced by colours[i] parallel strands.

    Each crossing becomes a grid of elementary crossings and one projector is
    inserted on the first arc of every coloured component.  Parallel copies
    are numbered from the left of the direction of travel.
    """
    elementary = 0
    for n, x in enumerate(link.pd):
        cu, co = link.crossing_components(n)
        elementary += colours[cu] * colours[co]
    if elementary > max_crossings:
        raise ResourceLimitError(
            f"cabled diagram has {elementary} crossings, above the limit {max_crossings}", elementary, max_crossings
        )
    alias = _Aliases()
    vertices = []

    def end_type(n, s):
        return "h" if link.arc_head(link.pd[n][s]) == (n, s) else "t"

    for n, x in enumerate(link.pd):
        cu, co = link.crossing_components(n)
        nu, no = colours[cu], colours[co]
        positive = link.crossing_sign(n) > 0

        def bnd(slot, copy):
            return ("a", x[slot], copy, end_type(n, slot))

        def row_copy(y):
            return no - 1 - y if positive else y

        def V(col, y):
            if y == 0:
                return bnd(0, col)
            if y == no:
                return bnd(2, col)
            return ("v", n, col, y)

        def H(col, y):
            if col == 0:
                return bnd(3, row_copy(y))
            if col == nu:
                return bnd(1, row_copy(y))
            return ("h", n, col, y)

        if nu == 0:
            for y in range(no):
                alias.join(bnd(3, row_copy(y)), bnd(1, row_copy(y)))
            continue
        if no == 0:
            for col in range(nu):
                alias.join(bnd(0, col), bnd(2, col))
            continue
        for col in range(nu):
            for y in range(no):
                vertices.append(crossing_vertex([V(col, y), H(col + 1, y), V(col, y + 1), H(col, y)]))

    for i, comp in enumerate(link.components):
        c = colours[i]
        if not comp or c == 0:
            continue
        for a in comp[1:]:
            for q in range(c):
                alias.join(("a", a, q, "t"), ("a", a, q, "h"))
        a = comp[0]
        vertices.append(
            projector_vertex([("a", a, q, "t") for q in range(c)], [("a", a, q, "h") for q in range(c)], c, r)
        )

    ids: dict = {}
    out = []
    for v in vertices:
        wires = []
        for w in v.wires:
            root = alias.find(w)
            wires.append(ids.setdefault(root, len(ids)))
        out.append(Vertex(wires, v.terms))
    return out


def bracket(link, colours, md: ModularData, **limits) -> CycNumber:
    """Kauffman bracket of the coloured cable (blackboard framing, crossing-free components omitted)."""
    max_states = limits.pop("max_states", DEFAULT_MAX_STATES)
    net = cabled_network(link, colours, md.r, **limits)
    return contract(net, md, max_states=max_states)
