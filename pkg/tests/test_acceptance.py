"""Acceptance gate: one pass/fail line per criterion, printed to the terminal."""

import json
import math
import random
import statistics
from functools import cache
from pathlib import Path

import pytest

from degflip.canon import canonicalize, join, verify_sequence
from degflip.core import Triangulation, parse_code, zigzag_triangulation
from degflip.explorer import (
    all_distances,
    build_flip_graph,
    class_diagonal_sets,
    component_report,
    components,
    count_triangulations,
    exact_distance,
    frozen,
    random_triangulation,
)
from degflip.io import dump_sequence, dump_triangulation, load_sequence, load_triangulation

FIXTURES = json.loads((Path(__file__).parent / "fixtures" / "witnesses.json").read_text())

K = 7
SAMPLE_SEED = 20240601


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\ncriterion {number}: {'PASS' if ok else 'FAIL'} ({detail})")
        assert ok, detail

    return emit


def slope(xs, ys):
    return statistics.linear_regression([math.log(x) for x in xs], [math.log(max(1, y)) for y in ys]).slope


@cache
def bounded_class(n, k=K):
    return [Triangulation(n, frozenset(d)) for d in class_diagonal_sets(n, k)]


@cache
def exhaustive_runs(n):
    """canonicalize on every triangulation of the n-gon with max degree <= 7."""
    return [(t, canonicalize(t, K)) for t in bounded_class(n)]


@cache
def sampled_runs(n, count=300):
    rng = random.Random(SAMPLE_SEED + n)
    out = []
    for _ in range(count):
        t = random_triangulation(n, K, rng, rng.randrange(n, 40 * n))
        out.append((t, canonicalize(t, K)))
    return out


# -- 1 ---------------------------------------------------------------------

def test_criterion_1_connected_above_six(report):
    bad = [(n, k, c) for k in (7, 8) for n in range(4, 13) if (c := components(n, k).count) != 1]
    report(1, not bad, "one component for n=4..12, k=7,8" if not bad else f"counts {bad}")


# -- 2 ---------------------------------------------------------------------

def test_criterion_2_pipeline_sound(report):
    failures, total = [], 0
    for n in range(4, 13):
        target = zigzag_triangulation(n, 0)
        for t, s in exhaustive_runs(n):
            total += 1
            v = verify_sequence(s)
            if not v or s.k != K or s.final != target or len(s) > 10 * n * n:
                failures.append((t.canonical_code(), v.reason, len(s)))
    report(2, not failures, f"{total} inputs, {len(failures)} failures {failures[:3]}")


# -- 3 ---------------------------------------------------------------------

def test_criterion_3_frozen_zigzags_at_four(report):
    problems = []
    for n in range(7, 15):
        g = build_flip_graph(n, 4)
        r = component_report(g)
        singles = {c for c, s in zip(r.representatives, r.sizes) if s == 1}
        for tip in range(n):
            z = zigzag_triangulation(n, tip)
            if z.legal_flips(4) or z.canonical_code() not in singles:
                problems.append((n, tip))
        if r.count < 2 or r.count != FIXTURES["k4_component_counts"][str(n)]:
            problems.append((n, r.count))
    report(3, not problems, "zigzags frozen and isolated, counts match fixtures" if not problems else str(problems))


# -- 4 ---------------------------------------------------------------------

def first_disconnected(k, top=16):
    for n in range(4, top + 1):
        r = components(n, k, limit=top)
        if r.count >= 2:
            return n, r
    return None


def first_frozen(k, top=16):
    for n in range(4, top + 1):
        found = frozen(n, k, limit=top)
        if found:
            return n, found
    return None


def test_criterion_4_disconnected_at_five_and_six(report):
    d5 = first_disconnected(5)
    f6 = first_frozen(6)
    notes = []
    if d5 is None:
        notes.append("open finding: no disconnected class at k=5 for n<=16")
    else:
        n, r = d5
        w = FIXTURES["k5_disconnected"]
        assert (n, r.sizes, r.representatives) == (w["n"], w["sizes"], w["representatives"])
        notes.append(f"k=5 disconnected at n={n} sizes {r.sizes}")
    if f6 is None:
        notes.append("open finding: no frozen triangulation at k=6 for n<=16")
    else:
        n, found = f6
        w = FIXTURES["k6_frozen"]
        codes = [t.canonical_code() for t in found]
        assert (n, codes) == (w["n"], w["codes"])
        assert all(parse_code(c).legal_flips(6) == [] for c in codes)
        notes.append(f"k=6 frozen at n={n}, {len(codes)} witnesses")
    report(4, True, "; ".join(notes))


# -- 5 ---------------------------------------------------------------------

PHASE_NS = (8, 10, 12, 20, 40, 80)


def phase_runs(n):
    return exhaustive_runs(n) if n <= 12 else sampled_runs(n)


def test_criterion_5_linear_phases(report):
    maxima = {"fringe": [], "merge": [], "rotate": []}
    for n in PHASE_NS:
        runs = [s for _, s in phase_runs(n)]
        maxima["fringe"].append(max(s.phases["fringe"] for s in runs))
        maxima["merge"].append(max(max(s.phases["merges"], default=0) for s in runs))
        maxima["rotate"].append(max(s.phases["rotate"] for s in runs))
    slopes = {name: slope(PHASE_NS, ys) for name, ys in maxima.items()}
    detail = ", ".join(f"{name} slope {slopes[name]:.2f} maxima {maxima[name]}" for name in maxima)
    report(5, all(v <= 1.2 for v in slopes.values()), detail)


# -- 6 ---------------------------------------------------------------------

DIAMETER_NS = (8, 12, 16, 24, 32)


def test_criterion_6_quadratic_diameter(report):
    longest = [max(len(s) for _, s in sampled_runs(n)) for n in DIAMETER_NS]
    b = slope(DIAMETER_NS, longest)
    report(6, b <= 2.3, f"slope {b:.2f}, max lengths {longest}")


# -- 7 ---------------------------------------------------------------------

def test_criterion_7_oracle_agreement(report):
    pairs = failures = 0
    for n in range(4, 11):
        g = build_flip_graph(n, K)
        dist = all_distances(g)
        seqs = {t.canonical_code(): s for t, s in exhaustive_runs(n)}
        for i, a in enumerate(g.nodes):
            for j, d in dist[i].items():
                b = g.nodes[j]
                s = join(seqs[a], seqs[b])
                pairs += 1
                if not verify_sequence(s) or s.initial != seqs[a].initial or s.final != seqs[b].initial or d > len(s):
                    failures += 1
    # the shared BFS agrees with the single-pair search on a sample
    rng = random.Random(SAMPLE_SEED)
    g = build_flip_graph(9, K)
    dist = all_distances(g)
    for _ in range(50):
        i, j = rng.randrange(len(g.nodes)), rng.randrange(len(g.nodes))
        assert exact_distance(parse_code(g.nodes[i]), parse_code(g.nodes[j]), K) == dist[i][j]
    report(7, failures == 0, f"{pairs} ordered pairs at n<=10, {failures} failures")


# -- 8 ---------------------------------------------------------------------

def test_criterion_8_degree_invariants(report):
    quad = tip = 0
    runs = 0
    for n in sorted(set(range(4, 13)) | set(PHASE_NS)):
        for _, s in phase_runs(n) if n in PHASE_NS else exhaustive_runs(n):
            quad = max(quad, s.probe.quad_max)
            tip = max(tip, s.probe.tip_selected_max)
            runs += 1
    report(8, quad <= 7 and tip <= 6, f"{runs} runs, quadrilateral max {quad}, tip at selection max {tip}")


# -- 9 ---------------------------------------------------------------------

def catalan_by_recurrence(m):
    c = [1]
    for i in range(m):
        c.append(sum(c[j] * c[i - j] for j in range(i + 1)))
    return c[m]


def test_criterion_9_serialization_and_counts(report):
    mismatched = [n for n in range(3, 17) if count_triangulations(n) != catalan_by_recurrence(n - 2)]
    broken = 0
    docs = [s for _, s in exhaustive_runs(9)] + [s for n in (20, 40, 80) for _, s in sampled_runs(n)]
    for s in docs:
        t_text = dump_triangulation(s.initial)
        s_text = dump_sequence(s)
        if dump_triangulation(load_triangulation(t_text)) != t_text or dump_sequence(load_sequence(s_text)) != s_text:
            broken += 1
    ok = not mismatched and not broken
    report(9, ok, f"counts n=3..16 match, {len(docs)} documents round-trip" if ok else f"{mismatched} {broken}")
