"""Combinatorial triangulations of a convex polygon.

Vertices are the integers ``0..n-1`` in counterclockwise hull order.  A
triangulation is stored as its set of diagonals; hull edges are implicit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple


class TriangulationError(ValueError):
    """Raised for malformed triangulations or impossible flips."""


class Diagonal(NamedTuple):
    a: int
    b: int

    @classmethod
    def of(cls, u: int, v: int) -> "Diagonal":
        return cls(u, v) if u < v else cls(v, u)

    def crosses(self, other: "Diagonal") -> bool:
        a, b = self
        c, d = other
        if a > c:
            a, b, c, d = c, d, a, b
        return a < c < b < d


class Flip(NamedTuple):
    removed: Diagonal
    inserted: Diagonal

    def reversed(self) -> "Flip":
        return Flip(self.inserted, self.removed)


class ValidityReport(NamedTuple):
    ok: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def is_hull_edge(n: int, u: int, v: int) -> bool:
    return (u - v) % n in (1, n - 1)


def validate_diagonals(n: int, diagonals: Iterable[tuple[int, int]]) -> ValidityReport:
    """Check every triangulation invariant; report the first violation."""
    if n < 3:
        return ValidityReport(False, f"polygon size {n} < 3")
    diags = []
    for pair in diagonals:
        u, v = pair
        if not (0 <= u < n and 0 <= v < n):
            return ValidityReport(False, f"vertex out of range in ({u},{v})")
        a, b = min(u, v), max(u, v)
        if b - a < 2 or (a, b) == (0, n - 1):
            return ValidityReport(False, f"({a},{b}) is a hull edge or a loop, not a diagonal")
        diags.append(Diagonal(a, b))
    if len(set(diags)) != len(diags):
        return ValidityReport(False, "repeated diagonal")
    if len(diags) != n - 3:
        return ValidityReport(False, f"wrong diagonal count: {len(diags)} != {n - 3}")
    ordered = sorted(diags)
    for i, d in enumerate(ordered):
        for e in ordered[i + 1:]:
            if e.a >= d.b:
                break
            if d.crosses(e):
                return ValidityReport(False, f"crossing pair ({d.a},{d.b}) and ({e.a},{e.b})")
    # n-3 pairwise non-crossing diagonals of a convex n-gon always form a
    # maximal set, hence induce n-2 triangles with a tree as dual graph.
    return ValidityReport(True)


@dataclass(frozen=True)
class Triangulation:
    """An immutable triangulation of the convex ``n``-gon."""

    n: int
    diagonals: frozenset[Diagonal]
    _degrees: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        deg = [2] * self.n
        for a, b in self.diagonals:
            deg[a] += 1
            deg[b] += 1
        object.__setattr__(self, "_degrees", tuple(deg))

    @classmethod
    def from_diagonals(cls, n: int, diagonals: Iterable[tuple[int, int]], check: bool = True) -> "Triangulation":
        diagonals = list(diagonals)
        if check:
            report = validate_diagonals(n, diagonals)
            if not report:
                raise TriangulationError(report.reason)
        return cls(n, frozenset(Diagonal.of(u, v) for u, v in diagonals))

    def __hash__(self) -> int:
        return hash((self.n, self.diagonals))

    @property
    def degrees(self) -> tuple[int, ...]:
        return self._degrees

    def degree(self, v: int) -> int:
        return self._degrees[v]

    @property
    def max_degree(self) -> int:
        return max(self._degrees)

    def sorted_diagonals(self) -> list[Diagonal]:
        return sorted(self.diagonals)

    def has_edge(self, u: int, v: int) -> bool:
        return is_hull_edge(self.n, u, v) or Diagonal.of(u, v) in self.diagonals

    def neighbors(self) -> list[list[int]]:
        """Neighbor lists (hull edges included), each sorted ascending."""
        nb: list[list[int]] = [[(v - 1) % self.n, (v + 1) % self.n] for v in range(self.n)]
        if self.n == 3:
            nb = [[(v + 1) % 3, (v + 2) % 3] for v in range(3)]
        for a, b in self.diagonals:
            nb[a].append(b)
            nb[b].append(a)
        return [sorted(set(x)) for x in nb]

    def triangles(self) -> list[tuple[int, int, int]]:
        """All ``n - 2`` triangles as sorted vertex triples, sorted."""
        n = self.n
        tris = set()
        for v, nbrs in enumerate(self.neighbors()):
            # neighbors in ccw order starting just after v
            ring = sorted(nbrs, key=lambda u: (u - v) % n)
            for x, y in zip(ring, ring[1:]):
                tris.add(tuple(sorted((v, x, y))))
        return sorted(tris)

    def quadrilateral(self, d: tuple[int, int]) -> tuple[int, int]:
        """Opposite vertices ``(p, q)`` of the two triangles sharing ``d``."""
        a, b = Diagonal.of(*d)
        if Diagonal(a, b) not in self.diagonals:
            raise TriangulationError(f"({a},{b}) is not a diagonal of T")
        nb = self.neighbors()
        common = set(nb[a]) & set(nb[b])
        inside = [c for c in common if a < c < b]
        outside = [c for c in common if c < a or c > b]
        if len(inside) != 1 or len(outside) != 1:
            raise TriangulationError(f"({a},{b}) does not bound exactly two triangles")
        return inside[0], outside[0]

    def flip(self, d: tuple[int, int]) -> tuple["Triangulation", Flip]:
        """Flip diagonal ``d``; return the new triangulation and the move."""
        removed = Diagonal.of(*d)
        p, q = self.quadrilateral(removed)
        inserted = Diagonal.of(p, q)
        diags = set(self.diagonals)
        diags.remove(removed)
        diags.add(inserted)
        return Triangulation(self.n, frozenset(diags)), Flip(removed, inserted)

    def legal_flips(self, k: int) -> list[Diagonal]:
        """Diagonals whose flip keeps every degree at most ``k``."""
        out = []
        for d in sorted(self.diagonals):
            p, q = self.quadrilateral(d)
            if self._degrees[p] < k and self._degrees[q] < k:
                out.append(d)
        return out

    def canonical_code(self) -> str:
        return f"{self.n}:" + ",".join(f"{a}-{b}" for a, b in sorted(self.diagonals))

    def __str__(self) -> str:
        return self.canonical_code()


def validate(t: Triangulation) -> ValidityReport:
    return validate_diagonals(t.n, t.diagonals)


def degree(t: Triangulation, v: int) -> int:
    return t.degree(v)


def flip(t: Triangulation, d: tuple[int, int]) -> tuple[Triangulation, Flip]:
    return t.flip(d)


def legal_flips(t: Triangulation, k: int) -> list[Diagonal]:
    return t.legal_flips(k)


def canonical_code(t: Triangulation) -> str:
    return t.canonical_code()


def parse_code(code: str) -> Triangulation:
    """Inverse of :func:`canonical_code`."""
    head, _, body = code.partition(":")
    n = int(head)
    pairs = []
    if body:
        for item in body.split(","):
            a, b = item.split("-")
            pairs.append((int(a), int(b)))
    return Triangulation.from_diagonals(n, pairs)


def zigzag_diagonals(n: int, tip: int, inverted: bool = False) -> list[Diagonal]:
    """Diagonals of the zigzag triangulation with an ear tip at ``tip``.

    The canonical parity puts the hull edge ``(tip+1, tip+2)`` into the
    triangle next to the ear; ``inverted`` gives the mirror image.
    """
    out = []
    # walk chords (lo, hi) outward from the ear, offsets relative to tip
    lo, hi = -1, 1
    move_lo = inverted
    while hi - lo < n - 1:
        out.append(Diagonal.of((tip + lo) % n, (tip + hi) % n))
        if move_lo:
            lo -= 1
        else:
            hi += 1
        move_lo = not move_lo
    return out


def zigzag_triangulation(n: int, tip: int, inverted: bool = False) -> Triangulation:
    if n < 3:
        raise TriangulationError(f"polygon size {n} < 3")
    return Triangulation(n, frozenset(zigzag_diagonals(n, tip % n, inverted)))


def fan_triangulation(n: int, apex: int) -> Triangulation:
    if n < 3:
        raise TriangulationError(f"polygon size {n} < 3")
    apex %= n
    return Triangulation(n, frozenset(Diagonal.of(apex, (apex + i) % n) for i in range(2, n - 1)))


def triangle_count(n: int) -> int:
    return n - 2


@dataclass(frozen=True)
class DualTree:
    """Triangles as nodes, joined when they share a diagonal."""

    triangles: tuple[tuple[int, int, int], ...]
    edges: tuple[tuple[int, int], ...]

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in self.triangles]
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        return adj

    def leaves(self) -> list[int]:
        return [i for i, nb in enumerate(self.adjacency()) if len(nb) <= 1]


def dual_tree(t: Triangulation) -> DualTree:
    tris = tuple(t.triangles())
    owner: dict[Diagonal, list[int]] = {}
    for i, (a, b, c) in enumerate(tris):
        for e in (Diagonal(a, b), Diagonal(b, c), Diagonal(a, c)):
            if e in t.diagonals:
                owner.setdefault(e, []).append(i)
    edges = tuple(sorted(tuple(v) for v in owner.values()))
    return DualTree(tris, edges)
