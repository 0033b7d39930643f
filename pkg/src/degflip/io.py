"""JSON documents for triangulations and flip sequences.

Output has a fixed field order and layout and ends with a newline, so the
same value always serializes to the same bytes.
"""

from __future__ import annotations

import json

from degflip.canon import FlipSequence
from degflip.core import Diagonal, Flip, Triangulation, TriangulationError, validate_diagonals


class DocumentError(ValueError):
    """A malformed input document; the message names the offending position."""


def _pair(d) -> str:
    return f"[{d[0]}, {d[1]}]"


def _tri_body(t: Triangulation, indent: str) -> str:
    diags = ", ".join(_pair(d) for d in t.sorted_diagonals())
    return f'{{\n{indent}  "n": {t.n},\n{indent}  "diagonals": [{diags}]\n{indent}}}'


def dump_triangulation(t: Triangulation) -> str:
    return _tri_body(t, "") + "\n"


def dump_sequence(seq: FlipSequence) -> str:
    flips = ",\n".join(
        f'    {{"remove": {_pair(f.removed)}, "insert": {_pair(f.inserted)}}}' for f in seq.flips
    )
    flips = f"[\n{flips}\n  ]" if seq.flips else "[]"
    return (
        "{\n"
        f'  "n": {seq.n},\n'
        f'  "k": {seq.k},\n'
        f'  "initial": {_tri_body(seq.initial, "  ")},\n'
        f'  "flips": {flips},\n'
        f'  "final": {_tri_body(seq.final, "  ")},\n'
        f'  "max_intermediate_degree": {seq.max_intermediate_degree}\n'
        "}\n"
    )


def _load(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(f"{what}: line {e.lineno} column {e.colno}: {e.msg}") from None


def _int(v, where: str) -> int:
    if not isinstance(v, int) or isinstance(v, bool):
        raise DocumentError(f"{where}: expected an integer, got {v!r}")
    return v


def _field(obj, key: str, where: str):
    if not isinstance(obj, dict):
        raise DocumentError(f"{where}: expected an object")
    if key not in obj:
        raise DocumentError(f"{where}: missing field {key!r}")
    return obj[key]


def _pair_of(v, where: str) -> tuple[int, int]:
    if not isinstance(v, list) or len(v) != 2:
        raise DocumentError(f"{where}: expected a pair [a, b], got {v!r}")
    return _int(v[0], f"{where}[0]"), _int(v[1], f"{where}[1]")


def _tri_from(obj, where: str) -> Triangulation:
    n = _int(_field(obj, "n", where), f"{where}.n")
    raw = _field(obj, "diagonals", where)
    if not isinstance(raw, list):
        raise DocumentError(f"{where}.diagonals: expected a list")
    pairs = [_pair_of(v, f"{where}.diagonals[{i}]") for i, v in enumerate(raw)]
    report = validate_diagonals(n, pairs)
    if not report:
        raise DocumentError(f"{where}: {report.reason}")
    try:
        return Triangulation.from_diagonals(n, pairs)
    except TriangulationError as e:
        raise DocumentError(f"{where}: {e}") from None


def load_triangulation(text: str) -> Triangulation:
    return _tri_from(_load(text, "triangulation"), "$")


def load_sequence(text: str) -> FlipSequence:
    obj = _load(text, "flip sequence")
    n = _int(_field(obj, "n", "$"), "$.n")
    k = _int(_field(obj, "k", "$"), "$.k")
    initial = _tri_from(_field(obj, "initial", "$"), "$.initial")
    final = _tri_from(_field(obj, "final", "$"), "$.final")
    raw = _field(obj, "flips", "$")
    if not isinstance(raw, list):
        raise DocumentError("$.flips: expected a list")
    flips = []
    for i, f in enumerate(raw):
        where = f"$.flips[{i}]"
        a = _pair_of(_field(f, "remove", where), f"{where}.remove")
        b = _pair_of(_field(f, "insert", where), f"{where}.insert")
        flips.append(Flip(Diagonal.of(*a), Diagonal.of(*b)))
    peak = _int(_field(obj, "max_intermediate_degree", "$"), "$.max_intermediate_degree")
    return FlipSequence(n, k, initial, flips, final, peak)
