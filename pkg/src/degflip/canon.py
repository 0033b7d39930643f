"""Degree-bounded flip sequences: fringe, merge, rotate and canonicalize.

Each public operation takes an immutable triangulation, runs on a mutable
:class:`Work` copy that refuses any flip pushing a vertex above ``k``, and
returns the recorded :class:`FlipSequence`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, NamedTuple

from degflip.core import Flip, Triangulation, zigzag_triangulation
from degflip.engine import Work
from degflip.fringe import straighten_leaves, to_fringe_work
from degflip.merge import Probe, merge
from degflip.structure import (
    MergeTriangle,
    PreconditionError,
    ZigzagPath,
    fringe_violation,
    is_zigzag_triangulation,
    merge_candidates,
    prepared_degrees,
)

MIN_K = 7


class UnsupportedBoundError(ValueError):
    """The constructive pipeline needs k >= 7."""


@dataclass
class FlipSequence:
    n: int
    k: int
    initial: Triangulation
    flips: list[Flip]
    final: Triangulation
    max_intermediate_degree: int
    # instrumentation, not part of the serialized document
    probe: Probe = field(default_factory=Probe, compare=False, repr=False)
    phases: dict = field(default_factory=dict, compare=False, repr=False)

    def __len__(self) -> int:
        return len(self.flips)

    def reversed(self) -> "FlipSequence":
        """The same path walked backwards, from ``final`` to ``initial``."""
        return FlipSequence(
            self.n, self.k, self.final, [f.reversed() for f in reversed(self.flips)],
            self.initial, self.max_intermediate_degree, self.probe,
        )

    def then(self, other: "FlipSequence") -> "FlipSequence":
        if other.initial != self.final:
            raise ValueError("sequences do not chain")
        a, b = self.probe, other.probe
        probe = Probe(
            max(a.quad_max, b.quad_max), max(a.tip_max, b.tip_max),
            max(a.tip_selected_max, b.tip_selected_max), a.merges + b.merges,
        )
        return FlipSequence(
            self.n, max(self.k, other.k), self.initial, self.flips + other.flips, other.final,
            max(self.max_intermediate_degree, other.max_intermediate_degree), probe,
        )


class VerifyReport(NamedTuple):
    ok: bool
    index: int | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def verify_sequence(seq: FlipSequence) -> VerifyReport:
    """Replay ``seq`` and check every flip, the cap, and the recorded ends."""
    t = seq.initial
    if t.n != seq.n:
        return VerifyReport(False, None, f"initial has n={t.n}, sequence says {seq.n}")
    peak = t.max_degree
    if peak > seq.k:
        return VerifyReport(False, None, f"initial max degree {peak} exceeds k={seq.k}")
    w = Work(t, seq.k)
    nb, n, k = w.nb, seq.n, seq.k
    for i, f in enumerate(seq.flips):
        a, b = f.removed
        if not 0 <= a < n or b not in nb[a] or (a - b) % n in (1, n - 1):
            return VerifyReport(False, i, f"({a},{b}) is not a diagonal")
        # no separating triangles: the common neighbours are the two apexes
        p, q = nb[a] & nb[b]
        if (min(p, q), max(p, q)) != tuple(f.inserted):
            return VerifyReport(False, i, f"flip of ({a},{b}) inserts ({min(p, q)},{max(p, q)}), not {tuple(f.inserted)}")
        for v in (p, q):
            if len(nb[v]) >= k:
                return VerifyReport(False, i, f"flipping ({a},{b}) raises vertex {v} above degree {k}")
        nb[a].discard(b)
        nb[b].discard(a)
        nb[p].add(q)
        nb[q].add(p)
        peak = max(peak, len(nb[p]), len(nb[q]))
    if peak != seq.max_intermediate_degree:
        return VerifyReport(
            False, None,
            f"recorded max_intermediate_degree {seq.max_intermediate_degree}, replay gives {peak}",
        )
    if w.snapshot() != seq.final:
        return VerifyReport(False, None, "replay does not end at the recorded final triangulation")
    return VerifyReport(True)


def _check_input(t: Triangulation, k: int) -> None:
    if k < MIN_K:
        raise UnsupportedBoundError(f"degree bound k={k} is not supported; need k >= {MIN_K}")
    if t.max_degree > k:
        raise PreconditionError(f"input has max degree {t.max_degree} > k={k}")


def run(t: Triangulation, k: int, body: Callable[[Work, Probe], object]) -> FlipSequence:
    """Apply ``body`` to a working copy of ``t`` and record the flips."""
    w = Work(t, k)
    probe = Probe()
    body(w, probe)
    return FlipSequence(t.n, k, t, list(w.flips), w.snapshot(), w.max_degree, probe)


# -- Work-level phases -------------------------------------------------------

def _pick_merge(w: Work) -> tuple[int, int, int] | None:
    """First merge triangle by ascending tip whose prepared base endpoints are
    both below ``k``; failing that, the first with one endpoint below ``k``.
    """
    cands = merge_candidates(w)
    weak = None
    for c in cands:
        dp, _, dq = prepared_degrees(w, *c)
        if dp < w.k and dq < w.k:
            return c
        if weak is None and min(dp, dq) < w.k:
            weak = c
    if weak is None and cands:
        raise RuntimeError("no light merge triangle")
    return weak


def to_zigzag_work(w: Work, probe: Probe) -> list[int]:
    """Merge until no inner triangle is left; returns flips per merge."""
    per_merge = []
    straighten_leaves(w)
    while True:
        c = _pick_merge(w)
        if c is None:
            return per_merge
        before = len(w.flips)
        merge(w, *c, probe=probe)
        # repair: the merged zigzag and the path behind it form one leaf path
        straighten_leaves(w)
        per_merge.append(len(w.flips) - before)


def make_ear(w: Work, u: int) -> None:
    """Flip away every diagonal at ``u``."""
    n = w.n
    while w.deg(u) > 2:
        x = next(x for x in sorted(w.nb[u]) if (x - u) % n not in (1, n - 1))
        w.flip(u, x)


def rotate_work(w: Work, u: int, inverted: bool, probe: Probe) -> None:
    n = w.n
    u %= n
    if n <= 4:
        if n == 4 and not w.has_edge(u - 1, u + 1):
            w.flip(u, u + 2)
        return
    make_ear(w, u)
    p0, q0 = (u + 1) % n, (u - 1) % n
    # at most one inner triangle is left; merge it toward the ear at u
    for p, t, q in merge_candidates(w):
        if 0 < w.arc_len(q, u) < w.arc_len(q, p):
            merge(w, p, t, q, probe=probe)
            break
    w.straighten(p0, q0)
    want = "b" if inverted else "a"
    if w.first_move(p0, q0) not in (None, want):
        w.invert_region(p0, q0)


# -- public operations ---------------------------------------------------------

def _region_of(t: Triangulation, z) -> tuple[int, int]:
    if isinstance(z, ZigzagPath):
        return z.region
    a, b = z
    return a, b


def invert_zigzag(t: Triangulation, z, k: int) -> FlipSequence:
    """Flip every second diagonal of the zigzag ``z`` (a ZigzagPath or region)."""
    a, b = _region_of(t, z)

    def body(w: Work, probe: Probe) -> None:
        if w.arc_len(a, b) <= 2:
            return
        if not w.is_zigzag_region(a, b):
            raise PreconditionError(f"region ({a},{b}) is not a zigzag")
        w.invert_region(a, b)

    return run(t, k, body)


def to_fringe(t: Triangulation, k: int) -> FlipSequence:
    _check_input(t, k)
    seq = run(t, k, lambda w, probe: to_fringe_work(w))
    seq.phases["fringe"] = len(seq)
    return seq


def merge_zigzags(t: Triangulation, m: MergeTriangle, k: int) -> FlipSequence:
    """Merge the triangle ``m`` and its two leaf zigzags into one zigzag
    hanging from the base edge."""
    _check_input(t, k)
    p, tip, q = m.p, m.tip, m.q

    def body(w: Work, probe: Probe) -> None:
        if (p, tip, q) not in merge_candidates(w):
            raise PreconditionError(f"({p},{tip},{q}) is not a merge triangle")
        dp, _, dq = prepared_degrees(w, p, tip, q)
        if min(dp, dq) >= w.k:
            raise PreconditionError(f"merge triangle ({p},{tip},{q}) is not light: base degrees {dp}, {dq}")
        merge(w, p, tip, q, probe=probe)

    seq = run(t, k, body)
    seq.phases["merges"] = [len(seq)]
    return seq


def to_zigzag(t: Triangulation, k: int) -> FlipSequence:
    _check_input(t, k)
    witness = fringe_violation(Work(t, k))
    if witness is not None:
        raise PreconditionError(f"input is not a fringe triangulation: {witness}")
    merges: list[int] = []
    seq = run(t, k, lambda w, probe: merges.extend(to_zigzag_work(w, probe)))
    seq.phases["merges"] = merges
    return seq


def rotate(t: Triangulation, target_tip: int, target_inverted: bool, k: int) -> FlipSequence:
    """Flip the zigzag triangulation ``t`` into ``zigzag_triangulation(n,
    target_tip, target_inverted)`` with a linear number of flips."""
    if k < MIN_K:
        raise UnsupportedBoundError(f"degree bound k={k} is not supported; need k >= {MIN_K}")
    if not is_zigzag_triangulation(t):
        raise PreconditionError("rotate needs a zigzag triangulation")
    target = zigzag_triangulation(t.n, target_tip, target_inverted)
    if t == target:
        return run(t, k, lambda w, probe: None)
    seq = run(t, k, lambda w, probe: rotate_work(w, target_tip, target_inverted, probe))
    seq.phases["rotate"] = len(seq)
    return seq


def canonicalize(t: Triangulation, k: int) -> FlipSequence:
    """Flip ``t`` into the canonical zigzag with an ear tip at vertex 0."""
    _check_input(t, k)
    phases: dict = {}

    def body(w: Work, probe: Probe) -> None:
        to_fringe_work(w)
        phases["fringe"] = len(w.flips)
        before = len(w.flips)
        phases["merges"] = to_zigzag_work(w, probe)
        phases["zigzag"] = len(w.flips) - before
        before = len(w.flips)
        if w.snapshot() != zigzag_triangulation(w.n, 0):
            rotate_work(w, 0, False, probe)
        phases["rotate"] = len(w.flips) - before

    seq = run(t, k, body)
    if seq.final != zigzag_triangulation(t.n, 0):
        raise RuntimeError("canonicalization did not reach the canonical zigzag")
    seq.phases.update(phases)
    return seq


def _cancel(flips: Iterable[Flip]) -> list[Flip]:
    """Drop adjacent flip pairs that undo each other."""
    out: list[Flip] = []
    for f in flips:
        if out and out[-1].removed == f.inserted and out[-1].inserted == f.removed:
            out.pop()
        else:
            out.append(f)
    return out


def join(there: FlipSequence, back: FlipSequence) -> FlipSequence:
    """Path from ``there.initial`` to ``back.initial`` given sequences of both
    to a common final triangulation; adjacent undoing flips are cancelled."""
    if there.final != back.final:
        raise ValueError("sequences do not end at the same triangulation")
    undo = [Flip(f.inserted, f.removed) for f in reversed(back.flips)]
    flips = _cancel(there.flips + undo)
    # cancelling a flip against its undo keeps the walk valid; only the
    # peak degree can drop, so recount it
    deg = list(there.initial.degrees)
    peak = max(deg)
    for (a, b), (p, q) in flips:
        deg[a] -= 1
        deg[b] -= 1
        deg[p] += 1
        deg[q] += 1
        peak = max(peak, deg[p], deg[q])
    a, b = there.probe, back.probe
    probe = Probe(
        max(a.quad_max, b.quad_max), max(a.tip_max, b.tip_max),
        max(a.tip_selected_max, b.tip_selected_max), a.merges + b.merges,
    )
    seq = FlipSequence(there.n, max(there.k, back.k), there.initial, flips, back.initial, peak, probe)
    seq.phases = {"forward": len(there), "backward": len(back)}
    return seq


def flip_path(t1: Triangulation, t2: Triangulation, k: int) -> FlipSequence:
    """A flip sequence from ``t1`` to ``t2`` through the canonical zigzag."""
    if t1.n != t2.n:
        raise ValueError(f"polygon sizes differ: {t1.n} != {t2.n}")
    return join(canonicalize(t1, k), canonicalize(t2, k))
