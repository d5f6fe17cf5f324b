"""Plain-text (and JSON) formats for graphs and matrices.

Graph file::

    # comment
    vertex a            # optional; edges register their endpoints
    edge a b 2.0

Matrix file::

    labels: a b c       # optional first line
    0.5 -0.25 -0.25
    ...

Numbers are written with 17 significant digits by default, which is enough
for every 64-bit float to read back bit-for-bit.  A document whose first
non-blank character is ``{`` is read as JSON with the same fields
(``vertices``/``edges`` or ``labels``/``entries``).
"""

from __future__ import annotations

import json
import math
from typing import Literal, Union

import numpy as np

from .errors import NonSquare, ParseError
from .forward import DtnMatrix, default_labels
from .graph import MetricGraph, validate
from .inverse import DistanceMatrix

DEFAULT_PRECISION = 17


def format_number(x: float, precision: int = DEFAULT_PRECISION) -> str:
    # adding 0.0 turns -0.0 into 0.0
    return f"{float(x) + 0.0:.{precision}g}"


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def _parse_float(token: str, lineno: int, what: str) -> float:
    try:
        value = float(token)
    except ValueError:
        raise ParseError(lineno, f"{what} {token!r} is not a number") from None
    if not math.isfinite(value):
        raise ParseError(lineno, f"{what} {token!r} is not finite")
    return value


def parse_graph(text: str) -> MetricGraph:
    """Read a graph file and validate the result."""
    if text.lstrip().startswith("{"):
        return _graph_from_json(text)
    vertices: list[str] = []
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = _strip(raw).split()
        if not tokens:
            continue
        kind = tokens[0]
        if kind == "vertex":
            if len(tokens) != 2:
                raise ParseError(lineno, "expected 'vertex <label>'")
            vertices.append(tokens[1])
        elif kind == "edge":
            if len(tokens) != 4:
                raise ParseError(lineno, "expected 'edge <label> <label> <length>'")
            length = _parse_float(tokens[3], lineno, "edge length")
            if length <= 0:
                raise ParseError(lineno, f"edge length {tokens[3]} must be positive")
            edges.append((tokens[1], tokens[2], length))
        else:
            raise ParseError(lineno, f"unknown directive {kind!r}")
    if len(set(vertices)) != len(vertices):
        dup = next(v for v in vertices if vertices.count(v) > 1)
        raise ParseError(0, f"vertex {dup!r} declared twice")
    g = MetricGraph.from_edges(edges, vertices)
    validate(g)
    return g


def _graph_from_json(text: str) -> MetricGraph:
    try:
        data = json.loads(text)
        g = MetricGraph.from_edges(
            [(u, v, float(w)) for u, v, w in data["edges"]], data.get("vertices", ())
        )
    except (ValueError, KeyError, TypeError) as exc:
        raise ParseError(0, f"invalid JSON graph: {exc}") from None
    validate(g)
    return g


def format_graph(
    g: MetricGraph,
    precision: int = DEFAULT_PRECISION,
    fmt: Literal["text", "json"] = "text",
) -> str:
    if fmt == "json":
        data = {
            "vertices": list(g.vertices),
            "edges": [[u, v, float(format_number(w, precision))] for u, v, w in g.edges],
        }
        return json.dumps(data, indent=2) + "\n"
    lines = [f"vertex {v}" for v in g.vertices]
    lines += [f"edge {u} {v} {format_number(w, precision)}" for u, v, w in g.edges]
    return "\n".join(lines) + "\n"


def parse_matrix(
    text: str, kind: Literal["dtn", "distance"] = "dtn"
) -> Union[DtnMatrix, DistanceMatrix]:
    """Read a square matrix file; ``kind`` chooses the returned type."""
    cls = DtnMatrix if kind == "dtn" else DistanceMatrix
    if text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
            entries = np.array(data["entries"], dtype=float)
            labels = data.get("labels")
        except (ValueError, KeyError, TypeError) as exc:
            raise ParseError(0, f"invalid JSON matrix: {exc}") from None
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise NonSquare(0, f"matrix of shape {entries.shape} is not square")
        if labels is not None and len(labels) != entries.shape[0]:
            raise ParseError(0, f"{len(labels)} labels for {entries.shape[0]} rows")
        return cls.from_array(entries, labels)

    labels = None
    rows: list[list[float]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        if not line:
            continue
        if line.startswith("labels:"):
            if labels is not None or rows:
                raise ParseError(lineno, "'labels:' must come before the matrix rows")
            labels = line[len("labels:"):].split()
            continue
        rows.append([_parse_float(tok, lineno, "entry") for tok in line.split()])
    if not rows:
        raise ParseError(0, "no matrix rows found")
    k = len(rows)
    for i, row in enumerate(rows):
        if len(row) != k:
            raise NonSquare(0, f"row {i + 1} has {len(row)} entries, expected {k}")
    if labels is not None and len(labels) != k:
        raise ParseError(0, f"{len(labels)} labels for {k} rows")
    if labels is not None and len(set(labels)) != k:
        raise ParseError(0, "labels must be distinct")
    return cls.from_array(np.array(rows), labels or default_labels(k))


def format_matrix(
    M: Union[DtnMatrix, DistanceMatrix],
    precision: int = DEFAULT_PRECISION,
    fmt: Literal["text", "json"] = "text",
) -> str:
    if fmt == "json":
        data = {
            "labels": list(M.labels),
            "entries": [[float(format_number(x, precision)) for x in row] for row in M.entries],
        }
        return json.dumps(data, indent=2) + "\n"
    lines = ["labels: " + " ".join(M.labels)]
    lines += [" ".join(format_number(x, precision) for x in row) for row in M.entries]
    return "\n".join(lines) + "\n"
