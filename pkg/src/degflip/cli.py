"""Command-line front end.

Exit codes: 0 success, 2 usage error, 3 precondition or verification
failure, 4 enumeration budget refused.
"""

from __future__ import annotations

import argparse
import json
import sys

from degflip import explorer
from degflip.canon import UnsupportedBoundError, canonicalize, flip_path, verify_sequence
from degflip.core import TriangulationError, fan_triangulation, zigzag_triangulation
from degflip.io import DocumentError, dump_sequence, dump_triangulation, load_sequence, load_triangulation
from degflip.structure import PreconditionError

OK, USAGE, FAILED, BUDGET = 0, 2, 3, 4


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as f:
            return f.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _write(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def cmd_gen(a) -> int:
    if a.n < 3:
        raise UsageError(f"--n must be at least 3, got {a.n}")
    if a.kind == "zigzag":
        if a.apex is not None:
            raise UsageError("--apex applies to --kind fan; use --tip")
        t = zigzag_triangulation(a.n, a.tip or 0, a.inverted)
    else:
        if a.tip is not None or a.inverted:
            raise UsageError("--tip and --inverted apply to --kind zigzag; use --apex")
        t = fan_triangulation(a.n, a.apex or 0)
    _write(dump_triangulation(t), a.out)
    return OK


def cmd_canon(a) -> int:
    t = load_triangulation(_read(a.input))
    _write(dump_sequence(canonicalize(t, a.k)), a.out)
    return OK


def cmd_path(a) -> int:
    t1 = load_triangulation(_read(a.a))
    t2 = load_triangulation(_read(a.b))
    _write(dump_sequence(flip_path(t1, t2, a.k)), a.out)
    return OK


def cmd_verify(a) -> int:
    report = verify_sequence(load_sequence(_read(a.file)))
    if report:
        print("ok")
        return OK
    where = f"flip {report.index}: " if report.index is not None else ""
    print(f"fail: {where}{report.reason}")
    return FAILED


def cmd_components(a) -> int:
    r = explorer.components(a.n, a.k, jobs=a.jobs)
    _write(_json({"count": r.count, "sizes": r.sizes, "representatives": r.representatives}), a.out)
    return OK


def cmd_frozen(a) -> int:
    codes = [t.canonical_code() for t in explorer.frozen(a.n, a.k, jobs=a.jobs)]
    _write(_json({"n": a.n, "k": a.k, "count": len(codes), "frozen": codes}), a.out)
    return OK


def cmd_dist(a) -> int:
    t1 = load_triangulation(_read(a.a))
    t2 = load_triangulation(_read(a.b))
    for t in (t1, t2):
        if t.max_degree > a.k:
            raise PreconditionError(f"{t.canonical_code()} has max degree {t.max_degree} > k={a.k}")
    d = explorer.exact_distance(t1, t2, a.k)
    print("unreachable" if d is None else d)
    return OK


def cmd_export(a) -> int:
    g = explorer.build_flip_graph(a.n, a.k, jobs=a.jobs)
    _write(explorer.to_dot(g) if a.format == "dot" else explorer.to_edge_list(g), a.out)
    return OK


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="degflip", description="Degree-bounded flips in convex polygon triangulations.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="emit a zigzag or fan triangulation")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--kind", choices=["zigzag", "fan"], required=True)
    g.add_argument("--tip", type=int, help="ear tip of the zigzag")
    g.add_argument("--apex", type=int, help="handle of the fan")
    g.add_argument("--inverted", action="store_true")
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("canon", help="flip sequence to the canonical zigzag")
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--in", dest="input", required=True, help="triangulation document, - for stdin")
    c.add_argument("--out")
    c.set_defaults(func=cmd_canon)

    pa = sub.add_parser("path", help="flip sequence connecting two triangulations")
    pa.add_argument("--k", type=int, required=True)
    pa.add_argument("a")
    pa.add_argument("b")
    pa.add_argument("--out")
    pa.set_defaults(func=cmd_path)

    v = sub.add_parser("verify", help="replay and check a flip sequence document")
    v.add_argument("file")
    v.set_defaults(func=cmd_verify)

    for name, func, text in (
        ("components", cmd_components, "component report of the flip graph"),
        ("frozen", cmd_frozen, "triangulations with no legal flip"),
        ("export-graph", cmd_export, "write the flip graph"),
    ):
        e = sub.add_parser(name, help=text)
        e.add_argument("--n", type=int, required=True)
        e.add_argument("--k", type=int, required=True)
        e.add_argument("--jobs", type=int, default=1)
        if name == "export-graph":
            e.add_argument("--out", required=True)
            e.add_argument("--format", choices=["dot", "edges"], default="dot")
        else:
            e.add_argument("--out")
        e.set_defaults(func=func)

    d = sub.add_parser("dist", help="exact flip distance within the class")
    d.add_argument("--k", type=int, required=True)
    d.add_argument("a")
    d.add_argument("b")
    d.set_defaults(func=cmd_dist)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = _parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as e:
        return USAGE if e.code else OK
    if getattr(a, "jobs", 1) < 1:
        print("degflip: error: --jobs must be at least 1", file=sys.stderr)
        return USAGE
    try:
        return a.func(a)
    except UsageError as e:
        print(f"degflip: error: {e}", file=sys.stderr)
        return USAGE
    except explorer.BudgetExceeded as e:
        print(f"degflip: budget: {e}", file=sys.stderr)
        return BUDGET
    except (DocumentError, PreconditionError, UnsupportedBoundError, TriangulationError, ValueError) as e:
        print(f"degflip: {type(e).__name__}: {e}", file=sys.stderr)
        return FAILED


if __name__ == "__main__":
    sys.exit(main())
