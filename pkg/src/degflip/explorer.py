"""Exhaustive enumeration and degree-bounded flip graphs for small polygons.

This is the ground truth used to check the constructive pipeline: every
triangulation of the n-gon is generated, the flip graph restricted to
maximum degree at most k is built, and components, frozen nodes and exact
flip distances are read off it.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from degflip.core import Diagonal, Triangulation

DEFAULT_BUDGET = 16
DEFAULT_PAIR_BUDGET = 12
BUDGET_ENV = "DEGFLIP_BUDGET"


class BudgetExceeded(RuntimeError):
    """The requested size is above the enumeration budget."""

    def __init__(self, n: int, budget: int):
        super().__init__(
            f"n={n} exceeds the enumeration budget {budget} "
            f"({catalan(n - 2)} triangulations); raise it with {BUDGET_ENV}"
        )
        self.n = n
        self.budget = budget


def budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    return int(raw) if raw else DEFAULT_BUDGET


def catalan(m: int) -> int:
    """Catalan number by the product recurrence C(i+1) = C(i)·2(2i+1)/(i+2)."""
    c = 1
    for i in range(m):
        c = c * 2 * (2 * i + 1) // (i + 2)
    return c


def _check_budget(n: int, limit: int | None) -> None:
    limit = budget() if limit is None else limit
    if n > limit:
        raise BudgetExceeded(n, limit)


@lru_cache(maxsize=None)
def _small(i: int, j: int) -> tuple[tuple[Diagonal, ...], ...]:
    return tuple(_gen(i, j))


def _gen(i: int, j: int) -> Iterator[tuple[Diagonal, ...]]:
    """Diagonal tuples triangulating the chain ``i..j`` closed by ``(i, j)``."""
    if j - i < 2:
        yield ()
        return
    for c in range(i + 1, j):
        left = [Diagonal(i, c)] if c - i >= 2 else []
        right = [Diagonal(c, j)] if j - c >= 2 else []
        extra = tuple(left + right)
        for lt in _sub(i, c):
            for rt in _sub(c, j):  # a fresh stream per left side
                yield lt + rt + extra


def _sub(i: int, j: int):
    # memoize small chains; stream large ones to keep memory flat
    return _small(i, j) if j - i <= 10 else _gen(i, j)


def enumerate_diagonal_sets(n: int, limit: int | None = None) -> Iterator[tuple[Diagonal, ...]]:
    """Stream raw diagonal tuples of all triangulations of the n-gon."""
    if n < 3:
        raise ValueError(f"polygon size {n} < 3")
    _check_budget(n, limit)
    return _gen(0, n - 1)


def enumerate_triangulations(n: int, limit: int | None = None) -> Iterator[Triangulation]:
    """Every triangulation of the n-gon exactly once, in a fixed order.

    The order follows the apex of the triangle on the hull edge ``(0, n-1)``
    and then recursively the two sub-polygons it cuts off.
    """
    for diags in enumerate_diagonal_sets(n, limit):
        yield Triangulation(n, frozenset(diags))


def count_triangulations(n: int, limit: int | None = None) -> int:
    return sum(1 for _ in enumerate_diagonal_sets(n, limit))


def _bounded(n: int, k: int, first: int | None = None) -> Iterator[tuple[Diagonal, ...]]:
    """Like :func:`_gen` over the whole polygon, but prunes as soon as a
    vertex exceeds degree ``k``.  Degrees only grow along a branch.
    ``first`` restricts the apex on hull edge ``(0, n-1)``."""
    deg = [2] * n
    diags: list[Diagonal] = []

    def rec(stack: list[tuple[int, int]]) -> Iterator[tuple[Diagonal, ...]]:
        if not stack:
            yield tuple(diags)
            return
        i, j = stack[-1]
        rest = stack[:-1]
        if j - i < 2:
            yield from rec(rest)
            return
        for c in range(i + 1, j):
            added = []
            if c - i >= 2:
                added.append(Diagonal(i, c))
            if j - c >= 2:
                added.append(Diagonal(c, j))
            for a, b in added:
                deg[a] += 1
                deg[b] += 1
            if all(deg[a] <= k and deg[b] <= k for a, b in added):
                diags.extend(added)
                yield from rec(rest + [(c, j), (i, c)])
                del diags[len(diags) - len(added):]
            for a, b in added:
                deg[a] -= 1
                deg[b] -= 1

    if deg and max(deg) > k:
        return
    if first is None:
        yield from rec([(0, n - 1)])
        return
    # fix the apex of the triangle on hull edge (0, n-1)
    for a, b in ((0, first), (first, n - 1)):
        if b - a >= 2:
            deg[a] += 1
            deg[b] += 1
            diags.append(Diagonal(a, b))
    if max(deg) <= k:
        yield from rec([(first, n - 1), (0, first)])


def class_diagonal_sets(n: int, k: int | None = None, limit: int | None = None) -> Iterator[tuple[Diagonal, ...]]:
    """Diagonal tuples of every triangulation with max degree at most ``k``
    (all of them when ``k`` is None)."""
    if n < 3:
        raise ValueError(f"polygon size {n} < 3")
    _check_budget(n, limit)
    if k is None or k >= n - 1:
        return _gen(0, n - 1)
    return _bounded(n, k)


def _code(n: int, diags) -> str:
    return f"{n}:" + ",".join(f"{a}-{b}" for a, b in sorted(diags))


def _moves(n: int, diags, k: int) -> list[tuple[Diagonal, Diagonal]]:
    """Flips of ``diags`` whose new endpoints stay at degree ``<= k``."""
    nb = [{(v - 1) % n, (v + 1) % n} for v in range(n)]
    for a, b in diags:
        nb[a].add(b)
        nb[b].add(a)
    out = []
    for a, b in sorted(diags):
        common = nb[a] & nb[b]
        p = next(c for c in common if a < c < b)
        q = next(c for c in common if c < a or c > b)
        if len(nb[p]) < k and len(nb[q]) < k:
            out.append((Diagonal(a, b), Diagonal.of(p, q)))
    return out


def _neighbors_of(n: int, diags, k: int) -> list[str]:
    s = set(diags)
    codes = []
    for d, e in _moves(n, diags, k):
        codes.append(_code(n, (s - {d}) | {e}))
    return codes


@dataclass
class FlipGraph:
    n: int
    k: int
    nodes: list[str]  # canonical codes, sorted
    edges: list[tuple[int, int]]  # index pairs i < j, sorted

    def index(self) -> dict[str, int]:
        return {c: i for i, c in enumerate(self.nodes)}

    def degrees(self) -> list[int]:
        d = [0] * len(self.nodes)
        for i, j in self.edges:
            d[i] += 1
            d[j] += 1
        return d

    def to_networkx(self):
        import networkx as nx

        g = nx.Graph()
        g.add_nodes_from(range(len(self.nodes)))
        g.add_edges_from(self.edges)
        return g


def _chunk(n: int, k: int, first: int) -> list[tuple[str, list[str]]]:
    return [(_code(n, d), _neighbors_of(n, d, k)) for d in _bounded(n, k, first)]


def _adjacency(n: int, k: int, jobs: int) -> list[tuple[str, list[str]]]:
    firsts = list(range(1, n - 1))
    kk = min(k, n - 1)
    if jobs <= 1:
        parts = [_chunk(n, kk, c) for c in firsts]
    else:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as ex:
            parts = list(ex.map(_chunk, [n] * len(firsts), [kk] * len(firsts), firsts))
    return sorted(x for part in parts for x in part)


def build_flip_graph(n: int, k: int, limit: int | None = None, jobs: int = 1) -> FlipGraph:
    """All triangulations with max degree <= ``k`` and the flips between them.

    The result does not depend on ``jobs``.
    """
    if n < 3:
        raise ValueError(f"polygon size {n} < 3")
    _check_budget(n, limit)
    if n == 3:
        return FlipGraph(3, k, ["3:"] if k >= 2 else [], [])
    adj = _adjacency(n, k, jobs)
    nodes = [c for c, _ in adj]
    idx = {c: i for i, c in enumerate(nodes)}
    edges = sorted({(i, idx[o]) for i, (_, nbs) in enumerate(adj) for o in nbs if i < idx[o]})
    return FlipGraph(n, k, nodes, edges)


@dataclass
class ComponentReport:
    count: int
    sizes: list[int]  # ascending
    representatives: list[str]  # least code of each component, same order as sizes


def component_report(g: FlipGraph) -> ComponentReport:
    import networkx as nx

    comps = [sorted(c) for c in nx.connected_components(g.to_networkx())]
    comps.sort(key=lambda c: (len(c), c[0]))
    return ComponentReport(len(comps), [len(c) for c in comps], [g.nodes[c[0]] for c in comps])


def components(n: int, k: int, limit: int | None = None, jobs: int = 1) -> ComponentReport:
    return component_report(build_flip_graph(n, k, limit, jobs))


def frozen(n: int, k: int, limit: int | None = None, jobs: int = 1) -> list[Triangulation]:
    """Class members with no legal flip at bound ``k``, by code."""
    from degflip.core import parse_code

    g = build_flip_graph(n, k, limit, jobs)
    return [parse_code(g.nodes[i]) for i, d in enumerate(g.degrees()) if d == 0]


def exact_distance(t1: Triangulation, t2: Triangulation, k: int, limit: int | None = None) -> int | None:
    """Fewest flips from ``t1`` to ``t2`` staying at max degree <= ``k``;
    None when they lie in different components."""
    if t1.n != t2.n:
        raise ValueError(f"polygon sizes differ: {t1.n} != {t2.n}")
    for t in (t1, t2):
        if t.max_degree > k:
            raise ValueError(f"{t.canonical_code()} has max degree {t.max_degree} > k={k}")
    _check_budget(t1.n, limit)
    # BFS over the implicit graph; stops early once the target is met
    start, goal = t1.canonical_code(), t2.canonical_code()
    if start == goal:
        return 0
    n = t1.n
    seen = {start: 0}
    queue = deque([(start, t1.diagonals)])
    while queue:
        code, diags = queue.popleft()
        s = set(diags)
        for d, e in _moves(n, diags, k):
            nd = frozenset((s - {d}) | {e})
            c = _code(n, nd)
            if c not in seen:
                seen[c] = seen[code] + 1
                if c == goal:
                    return seen[c]
                queue.append((c, nd))
    return None


def all_distances(g: FlipGraph) -> dict[int, dict[int, int]]:
    """Exact distances between every pair in the same component."""
    import networkx as nx

    return dict(nx.all_pairs_shortest_path_length(g.to_networkx()))


def to_dot(g: FlipGraph) -> str:
    """Graphviz text: nodes labeled by canonical code, one edge per line."""
    lines = [f'graph "flips_n{g.n}_k{g.k}" {{']
    lines += [f'  "{c}";' for c in g.nodes]
    lines += [f'  "{g.nodes[i]}" -- "{g.nodes[j]}";' for i, j in g.edges]
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_edge_list(g: FlipGraph) -> str:
    """One ``code code`` line per edge; isolated nodes do not appear."""
    lines = [f"{g.nodes[i]} {g.nodes[j]}" for i, j in g.edges]
    return "".join(line + "\n" for line in lines)


def random_triangulation(n: int, k: int, rng, steps: int | None = None) -> Triangulation:
    """End of a random walk of legal flips at bound ``k`` from a zigzag.

    Not uniform over the class; it is a seeded sampler for sizes beyond
    enumeration.  ``rng`` is a :class:`random.Random`.
    """
    from degflip.core import zigzag_triangulation

    t = zigzag_triangulation(n, rng.randrange(n), rng.random() < 0.5)
    if n < 4:
        return t
    diags = set(t.diagonals)
    for _ in range(10 * n if steps is None else steps):
        moves = _moves(n, diags, k)
        if not moves:
            break
        d, e = rng.choice(moves)
        diags.remove(d)
        diags.add(e)
    return Triangulation(n, frozenset(diags))
