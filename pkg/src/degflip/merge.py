"""Merging two zigzags at a merge triangle into one zigzag.

The merge grows a new zigzag from the base edge of the merge triangle.  A
splitting quadrilateral ``Q = (A, B, C, D)`` travels from the base toward
the tip: the zigzags hanging off ``AB`` and ``CD`` shrink, while the new
zigzag (hanging off ``DA``) and a temporary zigzag (off ``BC``) grow.
"""

from __future__ import annotations

from dataclasses import dataclass

from degflip.engine import Work


@dataclass
class Probe:
    """Degree instrumentation collected while merging."""

    quad_max: int = 0
    tip_max: int = 0  # tip degree once the zigzags are prepared
    tip_selected_max: int = 0  # tip degree when the merge triangle is chosen
    merges: int = 0

    def quad(self, w: Work, *vs: int) -> None:
        self.quad_max = max(self.quad_max, max(w.deg(v) for v in vs))


def _inc(w: Work, v: int, d: int = 1) -> int:
    return (v + d) % w.n


def normalize_tip(w: Work, p: int, t: int, q: int) -> int:
    """Invert the zigzags of region (p, t) and (t, q) so both end on the tip side.

    Afterwards the first chord of each zigzag is incident to ``t``.  Only
    ``t`` gains degree; ``p`` and ``q`` lose it.
    """
    flips = 0
    if w.first_move(p, t) == "b":
        flips += w.invert_region(p, t)
    if w.first_move(t, q) == "a":
        flips += w.invert_region(t, q)
    return flips


def merge(w: Work, p: int, t: int, q: int, first: str | None = None, probe: Probe | None = None) -> None:
    """Replace triangle (p, t, q) and its two zigzags by one zigzag from (p, q).

    ``first`` forces the side of the first step of the new zigzag: 'a'
    makes ``(p+1, q)`` its first chord, 'b' makes ``(p, q-1)``.
    """
    if probe is not None:
        probe.tip_selected_max = max(probe.tip_selected_max, w.deg(t))
    _merge(w, p, t, q, first, probe)


def _merge(w: Work, p: int, t: int, q: int, first: str | None, probe: Probe | None) -> None:
    # recursive core; inner calls work on temporary tips
    arc = w.arc_len
    w.straighten(p, t)
    w.straighten(t, q)
    normalize_tip(w, p, t, q)
    if probe is not None:
        probe.merges += 1
        probe.tip_max = max(probe.tip_max, w.deg(t))
    if first is None:
        first = "a" if w.deg(q) < w.k else "b"
    A, D = p, q
    side = first
    x = t
    # Grow the new zigzag from (A, D) while the apex of its last triangle is
    # the tip x; these steps consume the tip-adjacent triangles.
    for _ in range(2):
        if side == "a":
            if arc(A, x) == 1:
                A = x
                return _finish_tail(w, A, D, "b")
            w.flip(A, x)
            A = _inc(w, A)
        else:
            if arc(x, D) == 1:
                D = x
                return _finish_tail(w, A, D, "a")
            w.flip(x, D)
            D = _inc(w, D, -1)
        side = "b" if side == "a" else "a"
    # Both remaining zigzags now start on the tip side.
    if arc(A, x) == 1 or arc(x, D) == 1:
        return _merge(w, A, x, D, side, probe)
    w.flip(A, x)
    B = _inc(w, x, -1)
    w.flip(x, D)
    C = _inc(w, x)
    # each shrinking zigzag feeds the new zigzag, then the temporary one
    _sweep(w, A, B, C, D, side, "B" if side == "a" else "C", probe)


def _finish_tail(w: Work, A: int, D: int, side: str) -> None:
    """Region (A, D) is a zigzag; make its first step go to ``side``."""
    fm = w.first_move(A, D)
    if fm is not None and fm != side:
        w.invert_region(A, D)


def _sweep(w: Work, A: int, B: int, C: int, D: int, zside: str, tside: str, probe: Probe | None) -> None:
    arc = w.arc_len
    inc = lambda v, d=1: (v + d) % w.n  # noqa: E731
    turn = 1 if zside == "a" else 2
    while True:
        if probe is not None:
            probe.quad(w, A, B, C, D)
        e1 = arc(A, B) >= 2
        e2 = arc(C, D) >= 2
        if not e1 and not e2:
            _close(w, A, B, C, D, zside)
            return
        if not e1 or not e2:
            # one zigzag is used up: recurse at a fresh merge triangle
            if not e1:
                if zside == "a":
                    _set_diag(w, A, B, C, D, "BD")
                    return _merge(w, B, C, D, "b", probe)
                _set_diag(w, A, B, C, D, "AC")
                return _merge(w, A, C, D, "b", probe)
            if zside == "b":
                _set_diag(w, A, B, C, D, "AC")
                return _merge(w, A, B, C, "a", probe)
            _set_diag(w, A, B, C, D, "BD")
            return _merge(w, A, B, D, "a", probe)
        if turn == 1 and not e1:
            turn = 2
        if turn == 2 and not e2:
            turn = 1
        if turn == 1:
            y = w.apex(A, B)
            if zside == "a" and y == inc(A):
                _set_diag(w, A, B, C, D, "BD")
                w.flip(A, B)
                _see(probe, w, A, B, C, D)
                A = inc(A)
                zside = "b"
            elif tside == "B" and y == inc(B, -1):
                _set_diag(w, A, B, C, D, "AC")
                w.flip(A, B)
                _see(probe, w, A, B, C, D)
                B = inc(B, -1)
                tside = "C"
            else:
                raise RuntimeError(f"merge sweep stuck at Q={A, B, C, D} sides {zside}/{tside}")
            turn = 2
        else:
            y = w.apex(C, D)
            if zside == "b" and y == inc(D, -1):
                _set_diag(w, A, B, C, D, "AC")
                w.flip(C, D)
                _see(probe, w, A, B, C, D)
                D = inc(D, -1)
                zside = "a"
            elif tside == "C" and y == inc(C):
                _set_diag(w, A, B, C, D, "BD")
                w.flip(C, D)
                _see(probe, w, A, B, C, D)
                C = inc(C)
                tside = "B"
            else:
                raise RuntimeError(f"merge sweep stuck at Q={A, B, C, D} sides {zside}/{tside}")
            turn = 1


def _see(probe: Probe | None, w: Work, *vs: int) -> None:
    if probe is not None:
        probe.quad(w, *vs)


def _set_diag(w: Work, A: int, B: int, C: int, D: int, which: str) -> None:
    if which == "BD":
        if not w.has_edge(B, D):
            w.flip(A, C)
    else:
        if not w.has_edge(A, C):
            w.flip(B, D)


def _close(w: Work, A: int, B: int, C: int, D: int, zside: str) -> None:
    """Both shrinking zigzags are gone: join the new and the temporary zigzag."""
    if zside == "a":
        _set_diag(w, A, B, C, D, "BD")
        # steps through Q are a then b, so the temporary zigzag must start with a
        _finish_tail(w, B, C, "a")
    else:
        _set_diag(w, A, B, C, D, "AC")
        _finish_tail(w, B, C, "b")
