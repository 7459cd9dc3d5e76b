"""Text formats for codes, graphs and coordinate subsets.

Code file::

    n k
    <k lines of n characters from {0,1}>   # leftmost character = coordinate 1

Graph file::

    |V| |E|
    <|E| lines "u v", 0 <= u, v < |V|, u != v>   # line i+2 is edge/coordinate i+1
"""

from __future__ import annotations

import hashlib
from pathlib import Path

from .errors import ParseError
from .gf2 import BitVector, Gf2Matrix, LinearCode
from .graphs import Graph


def _lines(text: str) -> list[str]:
    lines = [ln.rstrip() for ln in text.splitlines()]
    while lines and not lines[-1]:
        lines.pop()
    return lines


def _header(lines: list[str], names: str) -> tuple[int, int]:
    if not lines:
        raise ParseError(f"missing header '{names}'", 1)
    parts = lines[0].split()
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        raise ParseError(f"header must be '{names}' as two nonnegative integers", 1)
    return int(parts[0]), int(parts[1])


def _count_error_line(lines: list[str], expected: int) -> int:
    # first missing line, or first surplus line
    return len(lines) + 1 if len(lines) - 1 < expected else expected + 2


def parse_code(text: str) -> LinearCode:
    lines = _lines(text)
    n, k = _header(lines, "n k")
    if len(lines) - 1 != k:
        raise ParseError(f"expected {k} generator rows, found {len(lines) - 1}", _count_error_line(lines, k))
    rows = []
    for lineno, row in enumerate(lines[1:], start=2):
        for col, ch in enumerate(row, start=1):
            if ch not in "01":
                raise ParseError(f"invalid character {ch!r}", lineno, col)
        if len(row) != n:
            raise ParseError(f"row has {len(row)} characters, expected {n}", lineno)
        rows.append(BitVector.from_string(row))
    return LinearCode(Gf2Matrix(tuple(rows), n))


def format_code(code: LinearCode) -> str:
    rows = code.generators.rows
    return f"{code.n} {len(rows)}\n" + "".join(f"{r}\n" for r in rows)


def parse_graph(text: str) -> Graph:
    lines = _lines(text)
    nv, ne = _header(lines, "|V| |E|")
    if len(lines) - 1 != ne:
        raise ParseError(f"expected {ne} edge lines, found {len(lines) - 1}", _count_error_line(lines, ne))
    edges = []
    for lineno, row in enumerate(lines[1:], start=2):
        parts = row.split()
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise ParseError("edge line must be two vertex indices 'u v'", lineno)
        u, v = int(parts[0]), int(parts[1])
        if u >= nv or v >= nv:
            raise ParseError(f"vertex index out of range 0..{nv - 1}", lineno)
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", lineno)
        edges.append((u, v))
    return Graph(nv, tuple(edges))


def format_graph(g: Graph) -> str:
    return f"{g.num_vertices} {g.num_edges}\n" + "".join(f"{u} {v}\n" for u, v in g.edges)


def parse_code_file(path: str | Path) -> LinearCode:
    return parse_code(Path(path).read_text())


def parse_graph_file(path: str | Path) -> Graph:
    return parse_graph(Path(path).read_text())


def file_digest(path: str | Path) -> str:
    return "sha256:" + hashlib.sha256(Path(path).read_bytes()).hexdigest()


def parse_subset(spec: str, n: int) -> BitVector:
    """A 1-indexed comma list ("2,3"), empty string for the empty set, or "@file"
    with one index per line."""
    if spec.startswith("@"):
        items = [ln.strip() for ln in Path(spec[1:]).read_text().splitlines() if ln.strip()]
    else:
        items = [t.strip() for t in spec.split(",") if t.strip()]
    idx = []
    for t in items:
        if not t.isdigit() or not 1 <= int(t) <= n:
            raise ParseError(f"subset element {t!r} is not an index in 1..{n}", 1)
        idx.append(int(t) - 1)
    return BitVector.from_indices(n, idx)


def format_subset(S: BitVector) -> list[int]:
    return [i + 1 for i in S.indices()]
