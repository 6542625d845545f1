"""Canonical JSON for graphs and partitions.

Graph documents look like ``{"name":"Q3","n":8,"edges":[[0,1,1],...]}`` with
0 <= u <= v < n, edges sorted lexicographically by (u, v), u == v encoding a
loop, and weights printed with 17 significant digits.  Serialization is
byte-stable: serialize -> parse -> serialize is the identity on bytes.
"""

from __future__ import annotations

import json
import math
import os

from pstlab.errors import InputError
from pstlab.graphs import Graph
from pstlab.partitions import Partition

import numpy as np


def format_weight(w: float) -> str:
    return format(float(w), ".17g")


def graph_to_json(g: Graph) -> str:
    parts = []
    if g.name is not None:
        parts.append(f'"name":{json.dumps(g.name)}')
    parts.append(f'"n":{g.n}')
    rows = []
    a = g.adjacency
    for u in range(g.n):
        for v in range(u, g.n):
            if a[u, v] != 0.0:
                rows.append(f"[{u},{v},{format_weight(a[u, v])}]")
    parts.append('"edges":[' + ",".join(rows) + "]")
    return "{" + ",".join(parts) + "}"


def graph_from_json(text: str) -> Graph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise InputError("graph document must be a JSON object")
    unknown = set(doc) - {"name", "n", "edges"}
    if unknown:
        raise InputError(f"unknown graph keys: {sorted(unknown)}")
    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise InputError('"name" must be a string')
    n = doc.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InputError('"n" must be a positive integer')
    edges = doc.get("edges")
    if not isinstance(edges, list):
        raise InputError('"edges" must be an array')
    a = np.zeros((n, n))
    seen = set()
    for row in edges:
        if (not isinstance(row, list) or len(row) != 3
                or any(isinstance(x, bool) for x in row[:2])
                or not all(isinstance(x, int) for x in row[:2])
                or not isinstance(row[2], (int, float))):
            raise InputError(f"malformed edge row: {row!r}")
        u, v, w = row
        if not (0 <= u <= v < n):
            raise InputError(f"edge ({u},{v}) violates 0 <= u <= v < n={n}")
        if (u, v) in seen:
            raise InputError(f"duplicate edge ({u},{v})")
        w = float(w)
        if not math.isfinite(w) or w < 0.0:
            raise InputError(f"edge ({u},{v}) has invalid weight {w!r}")
        seen.add((u, v))
        a[u, v] = w
        a[v, u] = w
    return Graph(a, name=name)


def partition_to_json(p: Partition) -> str:
    cells = [sorted(cell) for cell in p.cells()]
    cells.sort(key=lambda c: c[0])
    rows = ["[" + ",".join(str(v) for v in cell) + "]" for cell in cells]
    return f'{{"m":{p.m},"cells":[' + ",".join(rows) + "]}"


def partition_from_json(text: str) -> Partition:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict) or set(doc) != {"m", "cells"}:
        raise InputError('partition document must have exactly keys "m" and "cells"')
    m, cells = doc["m"], doc["cells"]
    if not isinstance(m, int) or isinstance(m, bool) or m < 1:
        raise InputError('"m" must be a positive integer')
    if not isinstance(cells, list) or len(cells) != m:
        raise InputError('"cells" must be an array of m cells')
    for cell in cells:
        if (not isinstance(cell, list) or not cell
                or not all(isinstance(v, int) and not isinstance(v, bool) for v in cell)):
            raise InputError(f"malformed cell: {cell!r}")
    return Partition.from_cells(cells)


def write_text(path: str, text: str, force: bool = False) -> None:
    """Write text to path; refuse to overwrite unless forced."""
    if os.path.exists(path) and not force:
        raise InputError(f"refusing to overwrite {path} (use --force)")
    with open(path, "w") as fh:
        fh.write(text)
        if not text.endswith("\n"):
            fh.write("\n")


def read_graph(path: str) -> Graph:
    try:
        with open(path) as fh:
            return graph_from_json(fh.read())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


def write_graph(path: str, g: Graph, force: bool = False) -> None:
    write_text(path, graph_to_json(g), force=force)


def read_partition(path: str) -> Partition:
    try:
        with open(path) as fh:
            return partition_from_json(fh.read())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


def write_partition(path: str, p: Partition, force: bool = False) -> None:
    write_text(path, partition_to_json(p), force=force)
