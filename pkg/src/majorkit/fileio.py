"""File formats and JSON emission shared by the command-line tools.

Vector files: one finite decimal per line, '#' comments ignored.
Edge-list files: two whitespace-separated labels per line.
Measure files: JSON {"K": int, "atoms": [{"leg": i, "r": x, "w": w}, ...]}.
Matrices go out as CSV and all JSON floats are printed at 17 significant
digits, so identical runs emit byte-identical output.
"""

from __future__ import annotations

import json
import math

from .spider import SpiderMeasure, SpiderPoint


def _content_lines(path):
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if line:
                yield lineno, line


def read_vector(path) -> list[float]:
    """Read a vector file: one finite decimal per line."""
    out = []
    for lineno, line in _content_lines(path):
        try:
            value = float(line)
        except ValueError:
            raise ValueError(f"{path}:{lineno}: not a number: {line!r}")
        if not math.isfinite(value):
            raise ValueError(f"{path}:{lineno}: non-finite entry {line!r}")
        out.append(value)
    if not out:
        raise ValueError(f"{path}: empty vector file")
    return out


def read_edge_list(path) -> list[tuple[str, str]]:
    """Read an edge-list file: two whitespace-separated labels per line."""
    out = []
    for lineno, line in _content_lines(path):
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(
                f"{path}:{lineno}: expected two labels, got {len(parts)}"
            )
        out.append((parts[0], parts[1]))
    if not out:
        raise ValueError(f"{path}: empty edge list")
    return out


def read_measure(path) -> SpiderMeasure:
    """Read a spider measure from JSON."""
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    try:
        k = int(data["K"])
        atoms = tuple(
            (SpiderPoint(int(a["leg"]), float(a["r"]), k), float(a["w"]))
            for a in data["atoms"]
        )
    except (KeyError, TypeError) as exc:
        raise ValueError(f"{path}: malformed measure file: {exc}")
    return SpiderMeasure(atoms)


def format_float(value: float) -> str:
    return f"{float(value):.17g}"


def write_matrix_csv(matrix, path) -> None:
    """Write a matrix as CSV, one row per line, 17-significant-digit cells."""
    rows = getattr(matrix, "entries", matrix)
    with open(path, "w", encoding="utf-8") as fh:
        for row in rows:
            fh.write(",".join(format_float(v) for v in row))
            fh.write("\n")


def dump_json(obj, indent: int | None = None) -> str:
    """Serialize to JSON with floats at 17 significant digits."""
    pieces: list[str] = []
    _emit(obj, pieces, indent, 0)
    return "".join(pieces)


def _emit(obj, out: list[str], indent: int | None, level: int) -> None:
    if obj is None:
        out.append("null")
    elif isinstance(obj, bool):
        out.append("true" if obj else "false")
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        if not math.isfinite(obj):
            raise ValueError(f"cannot serialize non-finite float {obj!r}")
        out.append(format_float(obj))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, dict):
        _emit_items(
            ((json.dumps(str(k)) + (": " if indent else ":"), v) for k, v in obj.items()),
            len(obj), "{", "}", out, indent, level,
        )
    elif isinstance(obj, (list, tuple)):
        _emit_items(((None, v) for v in obj), len(obj), "[", "]", out, indent, level)
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def _emit_items(items, count, open_ch, close_ch, out, indent, level) -> None:
    if count == 0:
        out.append(open_ch + close_ch)
        return
    out.append(open_ch)
    pad = "" if indent is None else "\n" + " " * (indent * (level + 1))
    for i, (key, value) in enumerate(items):
        out.append(pad)
        if key is not None:
            out.append(key)
        _emit(value, out, indent, level + 1)
        if i != count - 1:
            out.append("," if indent is None else ",")
    if indent is not None:
        out.append("\n" + " " * (indent * level))
    out.append(close_ch)
