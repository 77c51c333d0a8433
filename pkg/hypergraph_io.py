"""
Reading and writing hypergraph files.

Text format: the first significant line is ``r n m``, followed by m lines of
r vertex ids. Blank lines and lines starting with ``#`` are skipped. The JSON
form is ``{"r": ..., "n": ..., "edges": [[...], ...]}``.
"""

import json
import logging
import os
from typing import List, Optional

from exceptions import InputError, ParseError
from hypergraph import UniformHypergraph

logger = logging.getLogger(__name__)


def _int_tokens(tokens: List[str], source: str, line: int) -> List[int]:
    values = []
    for token in tokens:
        try:
            values.append(int(token))
        except ValueError:
            raise ParseError(source, line, f"expected an integer, got {token!r}") from None
    return values


def parse_text(text: str, source: str = "<string>") -> UniformHypergraph:
    header = None
    edges = []
    seen = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        values = _int_tokens(stripped.split(), source, line_no)
        if header is None:
            if len(values) != 3:
                raise ParseError(source, line_no, "header must be 'r n m'")
            r, n, m = values
            if r < 2:
                raise ParseError(source, line_no, f"uniformity must be >= 2, got {r}")
            if n < 0 or m < 0:
                raise ParseError(source, line_no, "vertex and edge counts must be nonnegative")
            header = (r, n, m)
            continue
        r, n, m = header
        if len(edges) == m:
            raise ParseError(source, line_no, f"more than the declared {m} edges")
        if len(values) != r:
            raise ParseError(source, line_no, f"edge has {len(values)} vertices, expected {r}")
        if len(set(values)) != r:
            raise ParseError(source, line_no, "edge repeats a vertex")
        for v in values:
            if not 0 <= v < n:
                raise ParseError(source, line_no, f"vertex {v} outside [0, {n})")
        key = tuple(sorted(values))
        if key in seen:
            raise ParseError(source, line_no, f"duplicate edge, first seen on line {seen[key]}")
        seen[key] = line_no
        edges.append(key)

    if header is None:
        raise ParseError(source, 1, "missing 'r n m' header")
    r, n, m = header
    if len(edges) != m:
        raise ParseError(source, line_no, f"declared {m} edges, found {len(edges)}")
    return UniformHypergraph(r=r, n=n, edges=tuple(edges))


def parse_json(text: str, source: str = "<string>") -> UniformHypergraph:
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(source, e.lineno, e.msg) from None
    if not isinstance(document, dict) or not {"r", "n", "edges"} <= document.keys():
        raise ParseError(source, 1, "JSON hypergraph needs keys 'r', 'n' and 'edges'")
    r, n, raw_edges = document["r"], document["n"], document["edges"]
    if not isinstance(r, int) or not isinstance(n, int) or not isinstance(raw_edges, list):
        raise ParseError(source, 1, "'r' and 'n' must be integers and 'edges' a list")
    if r < 2 or n < 0:
        raise ParseError(source, 1, f"invalid header r={r}, n={n}")
    seen = set()
    edges = []
    for index, edge in enumerate(raw_edges):
        where = f"edge {index}"
        if not isinstance(edge, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in edge):
            raise ParseError(source, 1, f"{where} is not a list of integers")
        if len(edge) != r or len(set(edge)) != r:
            raise ParseError(source, 1, f"{where} must have {r} distinct vertices")
        if any(not 0 <= v < n for v in edge):
            raise ParseError(source, 1, f"{where} has a vertex outside [0, {n})")
        key = tuple(sorted(edge))
        if key in seen:
            raise ParseError(source, 1, f"{where} duplicates an earlier edge")
        seen.add(key)
        edges.append(key)
    return UniformHypergraph(r=r, n=n, edges=tuple(edges))


def parse_hypergraph(text: str, source: str = "<string>", fmt: Optional[str] = None) -> UniformHypergraph:
    if fmt is None:
        fmt = "json" if text.lstrip().startswith("{") else "text"
    if fmt == "json":
        return parse_json(text, source)
    if fmt == "text":
        return parse_text(text, source)
    raise InputError(f"unknown hypergraph format {fmt!r}")


def read_hypergraph(path: str) -> UniformHypergraph:
    """Load a hypergraph; ``.json`` files and files starting with ``{`` are read as JSON."""
    try:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None
    fmt = "json" if path.lower().endswith(".json") else None
    hypergraph = parse_hypergraph(text, source=path, fmt=fmt)
    logger.debug("Loaded %s: r=%d n=%d m=%d", path, hypergraph.r, hypergraph.n, hypergraph.m)
    return hypergraph


def format_text(hypergraph: UniformHypergraph) -> str:
    lines = [f"{hypergraph.r} {hypergraph.n} {hypergraph.m}"]
    lines.extend(" ".join(str(v) for v in edge) for edge in hypergraph.edges)
    return "\n".join(lines) + "\n"


def format_json(hypergraph: UniformHypergraph) -> str:
    return json.dumps({"r": hypergraph.r, "n": hypergraph.n, "edges": [list(e) for e in hypergraph.edges]})


def write_hypergraph(hypergraph: UniformHypergraph, path: str, fmt: Optional[str] = None) -> None:
    if fmt is None:
        fmt = "json" if os.path.splitext(path)[1].lower() == ".json" else "text"
    content = format_json(hypergraph) + "\n" if fmt == "json" else format_text(hypergraph)
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(content)
