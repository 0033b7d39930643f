"""Mutable working copy of a triangulation used by the flip algorithms.

Regions are addressed by a directed edge ``(a, b)``: the sub-polygon
``a, a+1, ..., b`` (indices mod n) closed by the edge ``(a, b)``.
"""

from __future__ import annotations

from typing import Callable

from degflip.core import Diagonal, Flip, Triangulation, TriangulationError


class DegreeBoundError(RuntimeError):
    """A flip would push a vertex above the degree bound."""

    def __init__(self, vertex: int, k: int, flip: tuple[int, int]):
        super().__init__(f"flipping {flip} raises vertex {vertex} above degree {k}")
        self.vertex = vertex
        self.k = k


class Work:
    def __init__(self, t: Triangulation, k: int):
        self.n = n = t.n
        self.k = k
        self.nb: list[set[int]] = [{(v - 1) % n, (v + 1) % n} for v in range(n)]
        for a, b in t.diagonals:
            self.nb[a].add(b)
            self.nb[b].add(a)
        self.flips: list[Flip] = []
        self.max_degree = t.max_degree
        # called with (work, flip) after each flip; used for instrumentation
        self.observers: list[Callable[["Work", Flip], None]] = []

    def copy(self) -> "Work":
        """Independent copy sharing no state; observers are not copied."""
        other = Work.__new__(Work)
        other.n, other.k = self.n, self.k
        other.nb = [set(s) for s in self.nb]
        other.flips = list(self.flips)
        other.max_degree = self.max_degree
        other.observers = []
        return other

    def deg(self, v: int) -> int:
        return len(self.nb[v % self.n])

    def has_edge(self, u: int, v: int) -> bool:
        return v % self.n in self.nb[u % self.n]

    def snapshot(self) -> Triangulation:
        n = self.n
        diags = frozenset(
            Diagonal(a, b) for a in range(n) for b in self.nb[a] if b > a and (b - a) not in (1, n - 1)
        )
        return Triangulation(n, diags)

    def arc_len(self, a: int, b: int) -> int:
        return (b - a) % self.n

    def apex(self, a: int, b: int) -> int:
        """Third vertex of the triangle on edge ``(a, b)`` inside region ``(a, b)``."""
        n = self.n
        a %= n
        b %= n
        span = (b - a) % n
        small, other = (self.nb[a], self.nb[b]) if len(self.nb[a]) <= len(self.nb[b]) else (self.nb[b], self.nb[a])
        for c in small:
            if c in other and 0 < (c - a) % n < span:
                return c
        raise TriangulationError(f"no triangle on ({a},{b}) inside its region")

    def flip(self, a: int, b: int) -> Flip:
        """Flip the diagonal ``(a, b)`` and record the move."""
        n = self.n
        a %= n
        b %= n
        if b not in self.nb[a] or (a - b) % n in (1, n - 1):
            raise TriangulationError(f"({a},{b}) is not a diagonal")
        p = self.apex(a, b)
        q = self.apex(b, a)
        self.replace(a, b, p, q)
        f = Flip(Diagonal.of(a, b), Diagonal.of(p, q))
        self.flips.append(f)
        for obs in self.observers:
            obs(self, f)
        return f

    def replace(self, a: int, b: int, p: int, q: int) -> None:
        """Swap diagonal ``(a, b)`` for ``(p, q)`` given the two apexes; not recorded."""
        nb = self.nb
        for v in (p, q):
            if len(nb[v]) + 1 > self.k:
                raise DegreeBoundError(v, self.k, (a, b))
        nb[a].discard(b)
        nb[b].discard(a)
        nb[p].add(q)
        nb[q].add(p)
        self.max_degree = max(self.max_degree, len(nb[p]), len(nb[q]))

    # -- zigzag regions -------------------------------------------------

    def region_moves(self, a: int, b: int) -> list[str] | None:
        """Walk region ``(a, b)`` from its base as a dual path.

        Returns the side advanced by each path triangle ('a' when the apex is
        next to ``a``, 'b' when next to ``b``), or None if the region holds an
        inner triangle.  An ear ends the walk; an empty region gives [].
        """
        moves: list[str] = []
        x, y = a % self.n, b % self.n
        while self.arc_len(x, y) > 2:
            c = self.apex(x, y)
            if c == (x + 1) % self.n:
                moves.append("a")
                x = c
            elif c == (y - 1) % self.n:
                moves.append("b")
                y = c
            else:
                return None
        return moves

    def is_zigzag_region(self, a: int, b: int) -> bool:
        moves = self.region_moves(a, b)
        return moves is not None and all(m != m2 for m, m2 in zip(moves, moves[1:]))

    def region_chords(self, a: int, b: int) -> list[tuple[int, int]]:
        """Chords of a path region after its base, walking toward the ear."""
        out = []
        x, y = a % self.n, b % self.n
        while self.arc_len(x, y) > 2:
            c = self.apex(x, y)
            if c == (x + 1) % self.n:
                x = c
            elif c == (y - 1) % self.n:
                y = c
            else:
                raise TriangulationError(f"region ({a},{b}) is not a path region")
            out.append((x, y))
        return out

    def first_move(self, a: int, b: int) -> str | None:
        """Side advanced by the first path triangle of region ``(a, b)``."""
        if self.arc_len(a, b) <= 2:
            return None
        c = self.apex(a, b)
        if c == (a + 1) % self.n:
            return "a"
        if c == (b - 1) % self.n:
            return "b"
        return "inner"

    def invert_region(self, a: int, b: int) -> int:
        """Invert the zigzag filling region ``(a, b)``; return flip count."""
        if not self.is_zigzag_region(a, b):
            raise TriangulationError(f"region ({a},{b}) is not a zigzag")
        chords = self.region_chords(a, b)
        for x, y in chords[0::2]:
            self.flip(x, y)
        return len(chords[0::2])

    def straighten(self, a: int, b: int) -> int:
        """Turn the path region ``(a, b)`` into a zigzag; return flip count.

        Works from the ear toward the base; whenever two consecutive path
        triangles advance the same side, the zigzag below them is inverted.
        Each inversion moves a chord off the shared handle, so no degree
        outside the region grows.
        """
        chords = [(a % self.n, b % self.n)] + self.region_chords(a, b)
        flips = 0
        # chords[i] -> chords[i + 1] is the step taken by path triangle i
        for i in range(len(chords) - 3, -1, -1):
            x, y = chords[i]
            u, v = chords[i + 1]
            step = "a" if u != x else "b"
            if self.first_move(u, v) == step:
                flips += self.invert_region(u, v)
        return flips
