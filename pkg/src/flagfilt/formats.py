"""Text file formats and canonical serialization.

All inputs are plain line-oriented text: posets as an element list plus
cover pairs, complexes as one face per line, graphs as edge/vertex lines,
weighted graphs as the same with a trailing weight token, and networks as
``u,v,w`` CSV rows.  Parse errors carry 1-based line numbers.  Weights are
parsed as exact decimal strings and compared as rationals; binary floats
never decide an ordering.

Output serialization is canonical (sorted keys, fixed separators) so equal
results are byte-identical, and files are written via a temporary name and
an atomic rename.
"""

from __future__ import annotations

import csv
import io
import json
import os
import tempfile
from fractions import Fraction
from typing import Iterator

from .barcodes import Barcode, RankInvariant, grade_value
from .complexes import ReflexiveGraph, SimplicialComplex
from .filtrations import EdgeRow, chain_poset_of_values, fraction_to_token
from .posets import Poset, poset_from_covers
from .weighted import PWeightedGraph

__all__ = [
    "InputFormatError",
    "parse_poset",
    "parse_complex",
    "parse_graph",
    "parse_weighted_graph",
    "parse_edge_list",
    "sniff_input_kind",
    "format_grade",
    "barcode_payload",
    "barcode_csv",
    "rank_payload",
    "canonical_json",
    "atomic_write_text",
]


class InputFormatError(ValueError):
    """A malformed input file; remembers the offending line."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def _content_lines(text: str) -> Iterator[tuple[int, str]]:
    for i, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield i, line


def parse_poset(text: str) -> Poset:
    """``elements: e1 e2 ...`` then ``cover: a b`` lines."""
    elements: list[str] | None = None
    covers: list[tuple[str, str]] = []
    for lineno, line in _content_lines(text):
        if line.startswith("elements:"):
            if elements is not None:
                raise InputFormatError("duplicate elements line", lineno)
            elements = line[len("elements:"):].split()
            if not elements:
                raise InputFormatError("empty element list", lineno)
        elif line.startswith("cover:"):
            if elements is None:
                raise InputFormatError("cover before elements line", lineno)
            parts = line[len("cover:"):].split()
            if len(parts) != 2:
                raise InputFormatError("cover needs exactly two elements", lineno)
            if parts[0] not in elements or parts[1] not in elements:
                missing = parts[0] if parts[0] not in elements else parts[1]
                raise InputFormatError(f"unknown element {missing!r}", lineno)
            covers.append((parts[0], parts[1]))
        else:
            raise InputFormatError(f"unrecognized directive {line.split()[0]!r}", lineno)
    if elements is None:
        raise InputFormatError("missing elements line")
    try:
        return poset_from_covers(elements, covers)
    except ValueError as exc:
        raise InputFormatError(str(exc)) from exc


def parse_complex(text: str) -> SimplicialComplex:
    """One face per line, whitespace-separated vertices; downward closure
    is computed on load."""
    faces = []
    for lineno, line in _content_lines(text):
        verts = line.split()
        if len(set(verts)) != len(verts):
            raise InputFormatError(f"face repeats a vertex: {line!r}", lineno)
        faces.append(tuple(verts))
    return SimplicialComplex(faces, closure=True)


def parse_graph(text: str) -> ReflexiveGraph:
    """``edge: u v`` lines plus optional ``vertex: u`` lines."""
    verts: list[str] = []
    edges: list[tuple[str, str]] = []
    for lineno, line in _content_lines(text):
        if line.startswith("edge:"):
            parts = line[len("edge:"):].split()
            if len(parts) != 2:
                raise InputFormatError("edge needs exactly two vertices", lineno)
            if parts[0] == parts[1]:
                raise InputFormatError("self-loops are implicit", lineno)
            verts.extend(parts)
            edges.append((parts[0], parts[1]))
        elif line.startswith("vertex:"):
            parts = line[len("vertex:"):].split()
            if len(parts) != 1:
                raise InputFormatError("vertex needs exactly one name", lineno)
            verts.append(parts[0])
        else:
            raise InputFormatError(f"unrecognized directive {line.split()[0]!r}", lineno)
    return ReflexiveGraph(verts, edges)


def sniff_input_kind(text: str) -> str:
    """Guess whether a betti input is a graph file or a complex file."""
    for _, line in _content_lines(text):
        if line.startswith(("edge:", "vertex:")):
            return "graph"
    return "complex"


def parse_weighted_graph(
    text: str, poset: Poset | None = None, direction: str = "ascending"
) -> PWeightedGraph:
    """``vertex: name w`` and ``edge: u v w`` lines.

    Weight tokens must name elements of the accompanying poset; without a
    poset they must be decimal numbers, and the poset becomes the chain of
    the values appearing in the file, oriented by ``direction``.
    """
    vertex_rows: list[tuple[int, str, str]] = []
    edge_rows: list[tuple[int, str, str, str]] = []
    for lineno, line in _content_lines(text):
        if line.startswith("vertex:"):
            parts = line[len("vertex:"):].split()
            if len(parts) != 2:
                raise InputFormatError("vertex needs a name and a weight", lineno)
            vertex_rows.append((lineno, parts[0], parts[1]))
        elif line.startswith("edge:"):
            parts = line[len("edge:"):].split()
            if len(parts) != 3:
                raise InputFormatError("edge needs two vertices and a weight", lineno)
            edge_rows.append((lineno, parts[0], parts[1], parts[2]))
        else:
            raise InputFormatError(f"unrecognized directive {line.split()[0]!r}", lineno)
    if poset is None:
        tokens = [(ln, w) for (ln, _, w) in vertex_rows]
        tokens += [(ln, w) for (ln, _, _, w) in edge_rows]
        values = []
        for lineno, token in tokens:
            try:
                values.append(Fraction(token))
            except (ValueError, ZeroDivisionError):
                raise InputFormatError(
                    f"weight {token!r} is not a decimal number and no poset was given",
                    lineno,
                ) from None
        if not values:
            raise InputFormatError("weighted graph file has no cells")
        poset = chain_poset_of_values(values, direction)
        normalize = lambda token: fraction_to_token(Fraction(token))  # noqa: E731
    else:
        def normalize(token: str) -> str:
            return token
    vertex_weights = {}
    verts = []
    for lineno, name, token in vertex_rows:
        w = normalize(token)
        if w not in poset:
            raise InputFormatError(f"weight element {token!r} is not in the poset", lineno)
        verts.append(name)
        vertex_weights[name] = w
    edges = []
    edge_weights = {}
    for lineno, u, v, token in edge_rows:
        w = normalize(token)
        if w not in poset:
            raise InputFormatError(f"weight element {token!r} is not in the poset", lineno)
        if u not in vertex_weights or v not in vertex_weights:
            missing = u if u not in vertex_weights else v
            raise InputFormatError(
                f"edge endpoint {missing!r} has no vertex line", lineno
            )
        edges.append((u, v))
        edge_weights[(u, v)] = w
    try:
        return PWeightedGraph(ReflexiveGraph(verts, edges), poset, vertex_weights, edge_weights)
    except ValueError as exc:
        raise InputFormatError(str(exc)) from exc


def parse_edge_list(text: str) -> tuple[list[EdgeRow], list[str]]:
    """CSV rows ``u,v,w`` with an optional header; single-field rows name
    isolated vertices.  Duplicate undirected edges are an error; an empty
    file is an empty network, not an error."""
    rows: list[EdgeRow] = []
    isolated: list[str] = []
    seen: set[tuple[str, str]] = set()
    reader = csv.reader(io.StringIO(text))
    first_data_row = True
    for lineno, row in enumerate(reader, start=1):
        fields = [f.strip() for f in row]
        if not fields or not any(fields):
            continue
        if fields[0].startswith("#"):
            continue
        if len(fields) == 1:
            isolated.append(fields[0])
            first_data_row = False
            continue
        if len(fields) != 3:
            raise InputFormatError(
                f"expected 'u,v,w' or a single vertex name, got {len(fields)} fields",
                lineno,
            )
        u, v, token = fields
        try:
            w = Fraction(token)
        except (ValueError, ZeroDivisionError):
            if first_data_row:
                first_data_row = False
                continue  # header row
            raise InputFormatError(f"weight {token!r} is not a decimal number", lineno) from None
        first_data_row = False
        if u == v:
            raise InputFormatError(f"self-loop on {u!r}", lineno)
        key = (u, v) if u <= v else (v, u)
        if key in seen:
            raise InputFormatError(f"duplicate edge {key!r}", lineno)
        seen.add(key)
        rows.append((u, v, w))
    return rows, isolated


# -- output ------------------------------------------------------------------


def format_grade(grade):
    """JSON value of a grade label: a number when it has an exact numeric
    value, otherwise the label itself."""
    if grade is None:
        return None
    if isinstance(grade, bool):
        raise TypeError("bool is not a grade")
    if isinstance(grade, int):
        return grade
    value = grade_value(grade)
    if value is None:
        return str(grade)
    if value.denominator == 1:
        return int(value)
    return float(value)


def barcode_payload(code: Barcode, include_zero_length: bool = False) -> list[dict]:
    """JSON rows {dim, birth, death}; null death encodes an infinite
    interval."""
    return [
        {
            "dim": iv.dim,
            "birth": format_grade(iv.birth),
            "death": format_grade(iv.death),
        }
        for iv in code.reported(include_zero_length)
    ]


def barcode_csv(code: Barcode, include_zero_length: bool = False) -> str:
    """CSV mirror of the JSON barcode: dim,birth,death with death empty
    for infinite intervals."""
    out = ["dim,birth,death"]
    for iv in code.reported(include_zero_length):
        birth = format_grade(iv.birth)
        death = format_grade(iv.death)
        out.append(
            f"{iv.dim},{birth},{'' if death is None else death}"
        )
    return "\n".join(out) + "\n"


def rank_payload(ri: RankInvariant) -> list[dict]:
    return [
        {"dim": n, "source": u, "target": v, "rank": r}
        for (n, u, v), r in ri.items()
    ]


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def atomic_write_text(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-flagfilt-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.chmod(tmp, 0o644)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
