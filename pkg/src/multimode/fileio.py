"""Plain-text graph format.

    c free comment
    p multimode <k> <n> <m> <directed:0|1>
    e <mode> <u> <v> [w]        (w defaults to 1)
    l <kind> <relation> <value> (optional label line)

Ids are 0-based.  ``m`` must equal the number of edge lines.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .graph import INF, GraphError, MultimodeGraph, build_graph, fmt_dist
from .instances import Label

RELATIONS = ("=", ">=", "<=")


class ParseError(ValueError):
    def __init__(self, source: str, line: int, msg: str):
        super().__init__(f"{source}:{line}: {msg}")
        self.source = source
        self.line = line


@dataclass
class GraphFile:
    graph: MultimodeGraph
    comments: list[str] = field(default_factory=list)
    labels: list[Label] = field(default_factory=list)


def _int(tok: str, source: str, lineno: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(source, lineno, f"{what} must be an integer, got {tok!r}") from None


def parse_label(tokens: list[str], source: str = "<label>", lineno: int = 1) -> Label:
    if len(tokens) != 3:
        raise ParseError(source, lineno, "label line needs: l <kind> <relation> <value>")
    kind, rel, val = tokens
    if rel not in RELATIONS:
        raise ParseError(source, lineno, f"relation must be one of {' '.join(RELATIONS)}")
    value = INF if val == "inf" else _int(val, source, lineno, "label value")
    return Label(kind, rel, value)


def parse_graph(text: str, source: str = "<string>") -> GraphFile:
    header = None
    edges: list[tuple[int, int, int, int]] = []
    comments: list[str] = []
    labels: list[Label] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        tag, *rest = line.split()
        if tag == "c":
            comments.append(line[1:].strip())
        elif tag == "p":
            if header is not None:
                raise ParseError(source, lineno, "duplicate header line")
            if len(rest) != 5 or rest[0] != "multimode":
                raise ParseError(source, lineno, "header must be: p multimode <k> <n> <m> <directed>")
            k, n, m, dr = (_int(t, source, lineno, name) for t, name in zip(rest[1:], ("k", "n", "m", "directed")))
            if dr not in (0, 1):
                raise ParseError(source, lineno, "directed flag must be 0 or 1")
            if k < 1 or n < 0 or m < 0:
                raise ParseError(source, lineno, "need k >= 1, n >= 0, m >= 0")
            header = (k, n, m, bool(dr), lineno)
        elif tag == "e":
            if header is None:
                raise ParseError(source, lineno, "edge line before header")
            if len(rest) not in (3, 4):
                raise ParseError(source, lineno, "edge line must be: e <mode> <u> <v> [w]")
            mode, u, v = (_int(t, source, lineno, name) for t, name in zip(rest, ("mode", "u", "v")))
            w = _int(rest[3], source, lineno, "weight") if len(rest) == 4 else 1
            k, n = header[0], header[1]
            if not 0 <= mode < k:
                raise ParseError(source, lineno, f"mode {mode} out of range [0,{k})")
            if not (0 <= u < n and 0 <= v < n):
                raise ParseError(source, lineno, f"endpoint out of range [0,{n})")
            if w < 0:
                raise ParseError(source, lineno, f"negative weight {w}")
            edges.append((mode, u, v, w))
        elif tag == "l":
            labels.append(parse_label(rest, source, lineno))
        else:
            raise ParseError(source, lineno, f"unknown line type {tag!r}")
    if header is None:
        raise ParseError(source, 0, "missing header line")
    k, n, m, directed, hline = header
    if m != len(edges):
        raise ParseError(source, hline, f"header declares {m} edges, found {len(edges)}")
    try:
        g = build_graph(n, k, directed, edges)
    except GraphError as exc:
        raise ParseError(source, hline, str(exc)) from None
    return GraphFile(g, comments, labels)


def read_graph(path: str | Path) -> GraphFile:
    p = Path(path)
    return parse_graph(p.read_text(), str(p))


def format_label(label: Label) -> str:
    return f"l {label.kind} {label.relation} {fmt_dist(label.value)}"


def format_graph(g: MultimodeGraph, comments: Iterable[str] = (), labels: Iterable[Label] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    edges = g.all_edges()
    lines.append(f"p multimode {g.k} {g.n} {len(edges)} {int(g.directed)}")
    lines.extend(f"e {mode} {u} {v} {w}" for mode, u, v, w in edges)
    lines.extend(format_label(lb) for lb in labels)
    return "\n".join(lines) + "\n"


def write_graph(path: str | Path, g: MultimodeGraph, comments: Iterable[str] = (), labels: Iterable[Label] = ()) -> None:
    Path(path).write_text(format_graph(g, comments, labels))


def parse_vectors(text: str, source: str = "<vectors>") -> tuple[list[list[int]], list[list[int]]]:
    """Vector file: lines ``a <bits>`` or ``b <bits>``; ``c`` lines are comments."""
    A: list[list[int]] = []
    B: list[list[int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if len(parts) != 2 or parts[0] not in ("a", "b") or set(parts[1]) - {"0", "1"}:
            raise ParseError(source, lineno, "vector line must be: a|b <0/1 string>")
        (A if parts[0] == "a" else B).append([int(ch) for ch in parts[1]])
    if not A or not B:
        raise ParseError(source, 0, "need at least one a-line and one b-line")
    dims = {len(v) for v in A + B}
    if len(dims) != 1:
        raise ParseError(source, 0, "all vectors need the same length")
    return A, B
