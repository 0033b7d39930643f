"""Ears, fans, zigzags, leaf paths and merge triangles of a triangulation.

The public functions take a :class:`Triangulation`.  The pipeline works on a
mutable :class:`Work`, so every analysis is written against ``Work`` first
and wrapped afterwards.

A leaf path is addressed by its region ``(a, b)``: the chain ``a..b`` closed
by the diagonal ``(a, b)`` that attaches the path to an inner triangle.
"""

from __future__ import annotations

from dataclasses import dataclass

from degflip.core import Diagonal, DualTree, Triangulation, dual_tree, is_hull_edge
from degflip.engine import Work


class PreconditionError(ValueError):
    """An operation was called on an input outside its contract."""


# -- Work level -----------------------------------------------------------

def ear_tips(w: Work) -> list[int]:
    if w.n == 3:
        return [0]
    return [v for v in range(w.n) if w.deg(v) == 2]


def leaf_regions(w: Work) -> list[tuple[int, int, int]]:
    """Leaf paths as ``(ear tip, a, b)``; region ``(a, b)`` holds the path.

    The walk from each ear stops at the first inner triangle, which lies on
    the far side of ``(a, b)``.  If the dual tree is a path there is no inner
    triangle; then the single entry of the first ear covers everything but
    the other ear's tip.
    """
    n = w.n
    out = []
    for u in ear_tips(w):
        if n == 3:
            return []
        a, b = (u - 1) % n, (u + 1) % n
        while w.arc_len(b, a) > 2:
            c = w.apex(b, a)
            if c == (b + 1) % n:
                b = c
            elif c == (a - 1) % n:
                a = c
            else:
                break
        if w.arc_len(b, a) == 2:
            return [(u, a, b)]
        out.append((u, a, b))
    return out


def inner_triangles(w: Work) -> list[tuple[int, int, int]]:
    """Inner triangles as ccw vertex triples, each starting at its least vertex."""
    n = w.n
    found = set()
    for v in range(n):
        ring = sorted(w.nb[v], key=lambda x: (x - v) % n)
        for x, y in zip(ring, ring[1:]):
            if not (is_hull_edge(n, v, x) or is_hull_edge(n, x, y) or is_hull_edge(n, y, v)):
                m = min(v, x, y)
                tri = (v, x, y)
                i = tri.index(m)
                found.add(tri[i:] + tri[:i])
    return sorted(found)


def merge_candidates(w: Work) -> list[tuple[int, int, int]]:
    """Merge triangles as ``(p, t, q)`` in ccw order, sorted by tip ``t``.

    Regions ``(p, t)`` and ``(t, q)`` both hold leaf paths; ``(p, q)`` is
    the base edge.  A triangle with three leaf paths yields three entries.
    """
    leaf = {(a, b) for _, a, b in leaf_regions(w)}
    out = []
    for x, y, z in inner_triangles(w):
        for p, t, q in ((x, y, z), (y, z, x), (z, x, y)):
            if (p, t) in leaf and (t, q) in leaf:
                out.append((p, t, q))
    out.sort(key=lambda c: (c[1], c[0]))
    return out


def chords_inside(w: Work, v: int, a: int, b: int) -> int:
    """Number of diagonals from ``v``, an endpoint of region (a, b), into it."""
    span = w.arc_len(a, b)
    if v % w.n == a % w.n:
        lo, hi = 2, span - 1
    else:
        lo, hi = 1, span - 2
    return sum(1 for x in w.nb[v % w.n] if lo <= w.arc_len(a, x) <= hi)


def prepared_degrees(w: Work, p: int, t: int, q: int) -> tuple[int, int, int]:
    """Degrees of ``p``, ``t`` and ``q`` once both leaf paths are straightened
    and tip-normalized: every chord of ``p`` inside ``(p, t)`` and of ``q``
    inside ``(t, q)`` has moved to the tip side."""
    dp = w.deg(p) - chords_inside(w, p, p, t)
    dq = w.deg(q) - chords_inside(w, q, t, q)
    dt = 4 + (w.arc_len(p, t) > 2) + (w.arc_len(t, q) > 2)
    return dp, dt, dq


def fan_runs(w: Work) -> list[tuple[int, list[int]]]:
    """Maximal fans as ``(handle, spokes)`` with spokes ``x0..xr`` in ccw order.

    The fan triangles are ``(h, x_i, x_i+1)`` with hull edge ``(x_i, x_i+1)``.
    """
    n = w.n
    out = []
    for h in range(n):
        ring = sorted(w.nb[h], key=lambda x: (x - h) % n)
        run: list[int] = []
        for x, y in zip(ring, ring[1:]):
            path_tri = y == (x + 1) % n and x != (h + 1) % n and y != (h - 1) % n
            if path_tri:
                if not run:
                    run = [x]
                run.append(y)
            else:
                if len(run) >= 3:
                    out.append((h, run))
                run = []
        if len(run) >= 3:
            out.append((h, run))
    return out


def fan_adjacent_inner(w: Work, h: int, spokes: list[int]) -> bool:
    """Whether a dual neighbor of the fan at either end is an inner triangle."""
    n = w.n
    x0, xr = spokes[0], spokes[-1]
    for s, c in ((x0, w.apex(h, x0)), (xr, w.apex(xr, h))):
        if not (is_hull_edge(n, h, c) or is_hull_edge(n, s, c)):
            return True
    return False


def is_strict_zigzag(moves: list[str]) -> bool:
    return all(m != m2 for m, m2 in zip(moves, moves[1:]))


def fringe_violation(w: Work) -> tuple | None:
    """First reason ``w`` is not a fringe triangulation, or None.

    Returns ``("fan", handle, spokes)`` or ``("leaf", a, b)``.  Leaf paths
    with at most two path triangles pass as degenerate zigzags.
    """
    for h, spokes in fan_runs(w):
        if len(spokes) > 4 or not fan_adjacent_inner(w, h, spokes):
            return ("fan", h, spokes)
    for _, a, b in leaf_regions(w):
        moves = w.region_moves(a, b)
        if moves is None or (len(moves) > 2 and not is_strict_zigzag(moves)):
            return ("leaf", a, b)
    return None


# -- public, Triangulation level ----------------------------------------------

EAR, PATH, INNER = "ear", "path", "inner"


@dataclass(frozen=True)
class TriangleClass:
    kind: str
    tip: int | None = None


def _work(t: Triangulation) -> Work:
    # analysis never flips, so the bound is irrelevant
    return Work(t, t.n + 3)


def classify_triangles(t: Triangulation) -> dict[tuple[int, int, int], TriangleClass]:
    """Ear, path or inner triangle by the number of hull edges."""
    n = t.n
    out = {}
    for tri in t.triangles():
        a, b, c = tri
        hull = [e for e in ((a, b), (b, c), (a, c)) if is_hull_edge(n, *e)]
        if len(hull) >= 2:
            # the tip is the vertex shared by both hull edges
            tip = (set(hull[0]) & set(hull[1])).pop() if n > 3 else a
            out[tri] = TriangleClass(EAR, tip)
        elif len(hull) == 1:
            out[tri] = TriangleClass(PATH)
        else:
            out[tri] = TriangleClass(INNER)
    return out


@dataclass(frozen=True)
class Fan:
    handle: int
    spokes: tuple[int, ...]
    triangles: tuple[tuple[int, int, int], ...]

    @property
    def size(self) -> int:
        """Number of diagonals of the fan triangles."""
        return len(self.spokes)


def _fan(h: int, spokes: list[int]) -> Fan:
    tris = tuple(tuple(sorted((h, x, y))) for x, y in zip(spokes, spokes[1:]))
    return Fan(h, tuple(spokes), tris)


def find_fans(t: Triangulation) -> list[Fan]:
    """All maximal fans, by ascending handle."""
    return [_fan(h, s) for h, s in fan_runs(_work(t))]


@dataclass(frozen=True)
class ZigzagPath:
    """A leaf path filling region ``(a, b)``; ``moves`` walks it from the base."""

    region: tuple[int, int]
    moves: tuple[str, ...]
    ear_tip: int

    @property
    def base(self) -> Diagonal | None:
        a, b = self.region
        return Diagonal.of(a, b)

    @property
    def is_zigzag(self) -> bool:
        return len(self.moves) <= 2 or is_strict_zigzag(list(self.moves))


def leaf_paths(t: Triangulation) -> list[ZigzagPath]:
    w = _work(t)
    return [ZigzagPath((a, b), tuple(w.region_moves(a, b) or ()), u) for u, a, b in leaf_regions(w)]


def whole_zigzag(t: Triangulation) -> ZigzagPath:
    """The single path of a triangulation whose dual tree is a path."""
    paths = leaf_paths(t)
    if len(paths) != 1:
        raise PreconditionError("the dual tree is not a path")
    return paths[0]


@dataclass(frozen=True)
class FringeReport:
    ok: bool
    witness: Fan | ZigzagPath | None = None

    def __bool__(self) -> bool:
        return self.ok


def is_fringe(t: Triangulation) -> FringeReport:
    w = _work(t)
    v = fringe_violation(w)
    if v is None:
        return FringeReport(True)
    if v[0] == "fan":
        return FringeReport(False, _fan(v[1], v[2]))
    a, b = v[1], v[2]
    u = next(u for u, x, y in leaf_regions(w) if (x, y) == (a, b))
    return FringeReport(False, ZigzagPath((a, b), tuple(w.region_moves(a, b) or ()), u))


def is_zigzag_triangulation(t: Triangulation) -> bool:
    """Exactly two ears joined by one strictly alternating path."""
    if t.n <= 4:
        return True
    w = _work(t)
    if len(ear_tips(w)) != 2:
        return False
    (_, a, b), = leaf_regions(w)
    moves = w.region_moves(a, b)
    return moves is not None and is_strict_zigzag(moves)


@dataclass(frozen=True)
class MergeTriangle:
    """Inner triangle ``(p, tip, q)`` in ccw order with leaf zigzags in the
    regions ``(p, tip)`` and ``(tip, q)``; ``(p, q)`` is the base edge."""

    p: int
    tip: int
    q: int
    zigzags: tuple[ZigzagPath, ZigzagPath]

    @property
    def triangle(self) -> tuple[int, int, int]:
        return tuple(sorted((self.p, self.tip, self.q)))

    @property
    def base(self) -> Diagonal:
        return Diagonal.of(self.p, self.q)


def _merge_triangle(w: Work, p: int, t: int, q: int) -> MergeTriangle:
    n = w.n

    def zz(a: int, b: int) -> ZigzagPath:
        moves = tuple(w.region_moves(a, b) or ())
        # the ear tip sits where the walk from the base ends
        x, y = a, b
        for m in moves:
            if m == "a":
                x = (x + 1) % n
            else:
                y = (y - 1) % n
        return ZigzagPath((a, b), moves, (x + 1) % n)

    return MergeTriangle(p, t, q, (zz(p, t), zz(t, q)))


def find_merge_triangles(t: Triangulation) -> list[MergeTriangle]:
    """One entry per admissible tip, ascending by tip."""
    w = _work(t)
    return [_merge_triangle(w, *c) for c in merge_candidates(w)]


@dataclass(frozen=True)
class LightMerge:
    merge: MergeTriangle
    plan: tuple  # flips preparing the merge: straightening and tip normalization
    degrees: tuple[int, int, int]  # p, tip, q after the plan
    both_light: bool


def find_light_merge_triangle(t: Triangulation, k: int) -> LightMerge:
    """A merge triangle whose base has room after preparing its zigzags.

    Prefers (ascending tip) one where both base endpoints end below ``k``;
    otherwise one with the tip and one base endpoint below ``k``.
    """
    from degflip.merge import normalize_tip

    if k < 7:
        raise PreconditionError(f"k={k} < 7")
    if t.max_degree > k:
        raise PreconditionError(f"max degree {t.max_degree} > k={k}")
    if is_zigzag_triangulation(t):
        raise PreconditionError("a zigzag triangulation has no merge triangle")
    w = Work(t, k)
    v = fringe_violation(w)
    if v is not None:
        raise PreconditionError(f"not a fringe triangulation: {v}")
    weak = None
    for c in merge_candidates(w):
        dp, _, dq = prepared_degrees(w, *c)
        if (dp < k and dq < k) or (weak is None and min(dp, dq) < k):
            trial = w.copy()
            p, tip, q = c
            trial.straighten(p, tip)
            trial.straighten(tip, q)
            normalize_tip(trial, p, tip, q)
            found = LightMerge(
                _merge_triangle(w, *c), tuple(trial.flips),
                (trial.deg(p), trial.deg(tip), trial.deg(q)), dp < k and dq < k,
            )
            if found.both_light:
                return found
            weak = weak or found
    if weak is None:
        raise RuntimeError("no light merge triangle found")
    return weak


@dataclass(frozen=True)
class DualDecomposition:
    dual: DualTree
    classes: tuple[TriangleClass, ...]
    leaf_paths: tuple[tuple[int, ...], ...]
    inner_paths: tuple[tuple[int, ...], ...]
    d_prime: frozenset[int]
    d_double_prime: frozenset[int]

    def induced_edges(self, nodes: frozenset[int]) -> list[tuple[int, int]]:
        return [(i, j) for i, j in self.dual.edges if i in nodes and j in nodes]


def decompose(t: Triangulation) -> DualDecomposition:
    """Dual tree with its leaf paths, inner paths and the pruned trees.

    ``d_prime`` drops every leaf path (ears included) from the dual tree and
    ``d_double_prime`` further drops the leaves of ``d_prime``.
    """
    d = dual_tree(t)
    cls = classify_triangles(t)
    classes = tuple(cls[tri] for tri in d.triangles)
    adj = d.adjacency()
    leaf_paths = []
    on_leaf = set()
    for leaf in d.leaves():
        path = [leaf]
        prev, cur = None, leaf
        while True:
            nxt = [x for x in adj[cur] if x != prev]
            if len(nxt) != 1 or len(adj[nxt[0]]) != 2:
                if len(nxt) == 1 and len(adj[nxt[0]]) == 1:
                    path.append(nxt[0])  # the whole tree is a path
                break
            prev, cur = cur, nxt[0]
            path.append(cur)
        leaf_paths.append(tuple(path))
        on_leaf.update(path)
    d1 = frozenset(range(len(d.triangles))) - on_leaf
    inner_paths = []
    seen = set()
    for i in sorted(d1):
        if len(adj[i]) == 2 and i not in seen:
            # grow a maximal run of path triangles between inner triangles
            run = [i]
            seen.add(i)
            for direction in (0, 1):
                prev, cur = i, adj[i][direction]
                while cur in d1 and len(adj[cur]) == 2 and cur not in seen:
                    seen.add(cur)
                    run.insert(0, cur) if direction == 0 else run.append(cur)
                    prev, cur = cur, next(x for x in adj[cur] if x != prev)
            inner_paths.append(tuple(run))
    deg1 = {i: sum(1 for x in adj[i] if x in d1) for i in d1}
    d2 = frozenset(i for i in d1 if deg1[i] >= 2)
    return DualDecomposition(d, classes, tuple(leaf_paths), tuple(inner_paths), d1, d2)
