"""Turning fans into inner triangles plus zigzags until the triangulation is fringe."""

from __future__ import annotations

from degflip.engine import Work
from degflip.structure import fan_adjacent_inner, fan_runs, leaf_regions


def _plan(m: int, mid: int, left_first: bool) -> tuple[list[int], int, int]:
    """Order for flipping the handle chords to spokes ``1..m-2`` of a run.

    Flipping from ``mid`` outward, alternating sides, builds a zigzag between
    the outer spokes.  Returns the order and the gains of spoke 0 and m-1.
    """
    lo = hi = mid
    order = [mid]
    left = left_first
    while lo > 1 or hi < m - 2:
        if (left and lo > 1) or hi >= m - 2:
            lo -= 1
            order.append(lo)
        else:
            hi += 1
            order.append(hi)
        left = not left
    # after the flip that brings the interval to [lo, hi] the new chord is
    # (lo - 1, hi + 1); count those touching the outer spokes
    gain0 = gain1 = 0
    lo = hi = order[0]
    for i in order:
        lo, hi = min(lo, i), max(hi, i)
        gain0 += lo - 1 == 0
        gain1 += hi + 1 == m - 1
    return order, gain0, gain1


def convert_run(w: Work, h: int, spokes: list[int]) -> bool:
    """Replace the fan triangles between ``spokes[0]`` and ``spokes[-1]`` by the
    inner triangle ``(h, spokes[0], spokes[-1])`` and a zigzag.

    Returns False, without flipping, if an outer spoke lacks the room.
    """
    m = len(spokes)
    if m < 3:
        return False
    x0, xm = spokes[0], spokes[-1]
    room0, room1 = w.k - w.deg(x0), w.k - w.deg(xm)
    best = None
    for mid in range(1, m - 1):
        for left_first in (True, False):
            order, g0, g1 = _plan(m, mid, left_first)
            if g0 <= room0 and g1 <= room1:
                best = order
                break
        if best is not None:
            break
    if best is None:
        return False
    for i in best:
        w.flip(h, spokes[i])
    w.straighten(x0, xm)
    return True


def convert_fan(w: Work, h: int, spokes: list[int]) -> bool:
    """Convert the whole fan if its outer spokes allow it, else the widest
    part that avoids the heavy outer spokes.  Interior spokes have degree 3."""
    r = len(spokes) - 1
    candidates = [(0, r), (1, r), (0, r - 1), (1, r - 1)]
    for i, j in candidates:
        if j - i >= 2 and convert_run(w, h, spokes[i:j + 1]):
            return True
    return False


def straighten_leaves(w: Work) -> int:
    flips = 0
    for _, a, b in leaf_regions(w):
        flips += w.straighten(a, b)
    return flips


def separate_fan(w: Work, h: int, spokes: list[int]) -> bool:
    """Flip an outer spoke diagonal of a fan, heavy outer spokes first.

    Used on a small fan whose outer spokes lack room for a conversion and
    that has no inner triangle as a dual neighbor.  The flip takes one
    triangle off the fan and lowers the handle and that spoke.
    """
    x0, xr = spokes[0], spokes[-1]
    order = sorted((xr, x0), key=lambda s: w.deg(s) < w.k - 1)
    for s in order:
        c = w.apex(s, h) if s == xr else w.apex(h, s)
        if w.deg(c) < w.k:
            w.flip(h, s)
            return True
    return False


def unblock_fan(w: Work, h: int, spokes: list[int]) -> bool:
    """Lower a full vertex that blocks separating the fan.

    When the apexes beyond both outer spokes are at the bound, flip one
    of their other diagonals away, provided the flip is legal and does not
    touch the fan.  The next round can then separate the fan.
    """
    n = w.n
    x0, xr = spokes[0], spokes[-1]
    fan = {h, *spokes}
    for c in (w.apex(h, x0), w.apex(xr, h)):
        if w.deg(c) < w.k:
            continue
        for x in sorted(w.nb[c]):
            if x in fan or (x - c) % n in (1, n - 1):
                continue
            p, q = w.apex(c, x), w.apex(x, c)
            if fan & {p, q} or max(w.deg(p), w.deg(q)) >= w.k:
                continue
            w.flip(c, x)
            return True
    return False


def to_fringe_work(w: Work) -> None:
    progress = True
    rounds = 0
    while progress:
        rounds += 1
        if rounds > 4 * w.n + 8:
            raise RuntimeError("fan removal does not terminate")
        progress = False
        for h, spokes in fan_runs(w):
            if convert_fan(w, h, spokes):
                progress = True
                break
        if progress:
            continue
        stuck = [(h, sp) for h, sp in fan_runs(w) if not fan_adjacent_inner(w, h, sp)]
        for h, spokes in stuck:
            if separate_fan(w, h, spokes):
                progress = True
                break
        else:
            for h, spokes in stuck:
                if unblock_fan(w, h, spokes):
                    progress = True
                    break
    straighten_leaves(w)
