"""Integer Smith normal form, just enough to read off finitely generated abelian groups."""

from __future__ import annotations

from dataclasses import dataclass


def smith_invariants(matrix) -> list[int]:
    """Nonzero diagonal entries d_1 | d_2 | ... of the Smith normal form."""
    a = [list(map(int, row)) for row in matrix]
    if not a or not a[0]:
        return []
    m, n = len(a), len(a[0])
    diag = []
    top = 0
    while top < min(m, n):
        # pivot: smallest nonzero entry in the remaining block
        piv = None
        for i in range(top, m):
            for j in range(top, n):
                if a[i][j] and (piv is None or abs(a[i][j]) < abs(a[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        i, j = piv
        a[top], a[i] = a[i], a[top]
        for row in a:
            row[top], row[j] = row[j], row[top]
        while True:
            p = a[top][top]
            dirty = False
            for i in range(top + 1, m):
                if a[i][top]:
                    q = a[i][top] // p
                    if q:
                        ai, at = a[i], a[top]
                        for k in range(top, n):
                            ai[k] -= q * at[k]
                    if a[i][top]:
                        dirty = True
            for j in range(top + 1, n):
                if a[top][j]:
                    q = a[top][j] // p
                    if q:
                        for row in a[top:]:
                            row[j] -= q * row[top]
                    if a[top][j]:
                        dirty = True
            if not dirty:
                # pivot must divide the rest of the block
                bad = None
                for i in range(top + 1, m):
                    for j in range(top + 1, n):
                        if a[i][j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                at, ab = a[top], a[bad]
                for k in range(top, n):
                    at[k] += ab[k]
                continue
            # move the smallest entry of the pivot row/column into the corner
            best = (abs(p), top, top)
            for i in range(top + 1, m):
                if a[i][top] and abs(a[i][top]) < best[0]:
                    best = (abs(a[i][top]), i, top)
            for j in range(top + 1, n):
                if a[top][j] and abs(a[top][j]) < best[0]:
                    best = (abs(a[top][j]), top, j)
            _, i, j = best
            a[top], a[i] = a[i], a[top]
            for row in a:
                row[top], row[j] = row[j], row[top]
        diag.append(abs(a[top][top]))
        top += 1
    return diag


@dataclass(frozen=True)
class AbelianGroup:
    """Z^rank + Z/t_1 + ... + Z/t_k with 1 < t_1 | t_2 | ..."""

    rank: int
    torsion: tuple[int, ...] = ()

    @classmethod
    def cokernel(cls, matrix, rows: int | None = None) -> "AbelianGroup":
        """Cokernel of an integer matrix acting on column vectors (Z^cols -> Z^rows)."""
        if rows is None:
            rows = len(matrix)
        inv = smith_invariants(matrix) if rows else []
        return cls(rows - len(inv), tuple(d for d in inv if d > 1))

    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    def order(self) -> int | None:
        if self.rank:
            return None
        out = 1
        for t in self.torsion:
            out *= t
        return out

    def __str__(self) -> str:
        parts = ["Z"] * self.rank + [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"

    @classmethod
    def parse(cls, text: str) -> "AbelianGroup":
        text = text.replace(" ", "")
        if text in ("0", ""):
            return cls(0)
        rank, tors = 0, []
        for part in text.split("+"):
            if part == "Z":
                rank += 1
            elif part.startswith("Z/"):
                tors.append(int(part[2:]))
            else:
                raise ValueError(f"cannot parse group {text!r}")
        # normalise to invariant factors
        mat = [[t if i == j else 0 for j in range(len(tors))] for i, t in enumerate(tors)]
        inv = [d for d in smith_invariants(mat) if d > 1] if tors else []
        return cls(rank, tuple(inv))
