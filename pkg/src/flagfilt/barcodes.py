"""Interval summaries of persistent homology.

Over a chain, the boundary matrix of the filtration-ordered cells is
column-reduced over GF(p); pivots pair births with deaths and unpaired
creators give infinite intervals.  Over a general poset no interval
decomposition is attempted: the computable summary is the rank invariant,
the table of ranks of all induced maps between comparable levels.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .complexes import SimplicialMap, clique_complex, vertex_sort_key
from .filtrations import (
    ChainFiltration,
    EdgeRow,
    SpaceFiltration,
    shortest_path_metric,
    space_quotients,
    vietoris_rips,
    weight_filtration,
    weighted_graph_from_edge_rows,
)
from .homology import FieldConfig, chain_complex, induced_map_on_homology
from .posets import MonotoneMap
from .weighted import PersistentGraph
from . import gf

__all__ = [
    "Interval",
    "Barcode",
    "RankInvariant",
    "FiltrationComparison",
    "barcode",
    "rank_invariant",
    "space_rank_invariant",
    "compare_filtrations",
    "grade_value",
]


@dataclass(frozen=True)
class Interval:
    """One persistence interval: born entering ``birth``, gone at ``death``
    (None means it never dies).  Grade labels mirror the filtration's
    grades; indices point into them."""

    dim: int
    birth_index: int
    death_index: int | None
    birth: object
    death: object | None

    @property
    def zero_length(self) -> bool:
        return self.death_index == self.birth_index

    def alive_at(self, index: int) -> bool:
        return self.birth_index <= index and (
            self.death_index is None or index < self.death_index
        )

    def spans(self, i: int, j: int) -> bool:
        """Born at or before step i and still alive after step j."""
        return self.birth_index <= i and (
            self.death_index is None or self.death_index > j
        )


@dataclass(frozen=True)
class Barcode:
    grades: tuple
    intervals: tuple[Interval, ...]

    def count_alive(self, index: int, dim: int) -> int:
        return sum(1 for iv in self.intervals if iv.dim == dim and iv.alive_at(index))

    def count_spanning(self, i: int, j: int, dim: int) -> int:
        return sum(1 for iv in self.intervals if iv.dim == dim and iv.spans(i, j))

    def reported(self, include_zero_length: bool = False) -> tuple[Interval, ...]:
        """Intervals for reports; zero-length ones are kept in the data
        model but suppressed by default."""
        if include_zero_length:
            return self.intervals
        return tuple(iv for iv in self.intervals if not iv.zero_length)

    def dims(self) -> tuple[int, ...]:
        return tuple(sorted({iv.dim for iv in self.intervals}))


def barcode(
    filtration: ChainFiltration,
    max_degree: int = 1,
    field: FieldConfig = FieldConfig(),
) -> Barcode:
    """Standard column reduction of the filtration boundary matrix.

    Cells are ordered by (birth step, dimension, vertex tuple), which puts
    every face before its cofaces; a zero reduced column creates a class,
    a pivot kills the class created at its lowest row.  Intervals in
    degrees above ``max_degree`` are not reported.
    """
    p = field.p
    final = filtration.final()
    cells = sorted(
        final.faces(),
        key=lambda f: (
            filtration.birth_index[f],
            len(f),
            tuple(vertex_sort_key(v) for v in f),
        ),
    )
    index = {f: i for i, f in enumerate(cells)}
    reduced: dict[int, dict[int, int]] = {}
    low_owner: dict[int, int] = {}
    pairs: list[tuple[int, int]] = []
    creators: list[int] = []
    for j, face in enumerate(cells):
        col: dict[int, int] = {}
        if len(face) > 1:
            for i in range(len(face)):
                facet = face[:i] + face[i + 1 :]
                col[index[facet]] = (-1) ** i % p
        while col:
            low = max(col)
            if low not in low_owner:
                break
            pivot = reduced[low_owner[low]]
            factor = col[low] * pow(pivot[low], p - 2, p) % p
            for r, c in pivot.items():
                val = (col.get(r, 0) - factor * c) % p
                if val:
                    col[r] = val
                else:
                    col.pop(r, None)
        if col:
            low = max(col)
            low_owner[low] = j
            reduced[j] = col
            pairs.append((low, j))
        else:
            creators.append(j)
    killed = {low for low, _ in pairs}
    raw: list[tuple[tuple, Interval]] = []
    for low, j in pairs:
        face = cells[low]
        dim = len(face) - 1
        if dim > max_degree:
            continue
        b = filtration.birth_index[face]
        d = filtration.birth_index[cells[j]]
        raw.append(
            (face, Interval(dim, b, d, filtration.grades[b], filtration.grades[d]))
        )
    for j in creators:
        if j in killed:
            continue
        face = cells[j]
        dim = len(face) - 1
        if dim > max_degree:
            continue
        b = filtration.birth_index[face]
        raw.append((face, Interval(dim, b, None, filtration.grades[b], None)))
    raw.sort(
        key=lambda t: (
            t[1].dim,
            t[1].birth_index,
            t[1].death_index if t[1].death_index is not None else len(cells) + 1,
            tuple(vertex_sort_key(v) for v in t[0]),
        )
    )
    return Barcode(filtration.grades, tuple(iv for _, iv in raw))


@dataclass(frozen=True)
class RankInvariant:
    """Ranks of the maps induced in homology between comparable levels.

    ``entries[(n, u, v)]`` is the rank of degree-n homology pushed from
    level u to level v; diagonal entries are Betti numbers.
    """

    max_degree: int
    entries: Mapping[tuple[int, str, str], int]

    def rank(self, n: int, u: str, v: str) -> int:
        return self.entries[(n, u, v)]

    def items(self):
        return sorted(self.entries.items())

    def betti_at(self, v: str) -> tuple[int, ...]:
        return tuple(self.entries[(n, v, v)] for n in range(self.max_degree + 1))


def _betti_from_chain_complex(cc, n: int, p: int) -> int:
    return (
        cc.dim_chains(n)
        - gf.rank(cc.boundaries[n], p)
        - gf.rank(cc.boundaries[n + 1], p)
    )


def _rank_table(
    poset_elements: Sequence[str],
    leq,
    complexes: Mapping[str, object],
    vertex_maps,
    max_degree: int,
    field: FieldConfig,
    pairs: Sequence[tuple[str, str]] | None,
) -> RankInvariant:
    p = field.p
    ccs = {v: chain_complex(complexes[v], max_degree, field) for v in poset_elements}
    if pairs is None:
        pairs = [
            (u, v)
            for u in poset_elements
            for v in poset_elements
            if leq(u, v)
        ]
    entries: dict[tuple[int, str, str], int] = {}
    for u, v in pairs:
        if not leq(u, v):
            raise ValueError(f"({u!r}, {v!r}) is not a comparable pair")
        for n in range(max_degree + 1):
            if u == v:
                entries[(n, u, v)] = _betti_from_chain_complex(ccs[u], n, p)
            else:
                sm = SimplicialMap(complexes[u], complexes[v], vertex_maps(u, v))
                induced = induced_map_on_homology(
                    sm, n, field, source_cc=ccs[u], target_cc=ccs[v]
                )
                entries[(n, u, v)] = induced.rank
    return RankInvariant(max_degree, entries)


def rank_invariant(
    f: PersistentGraph,
    max_degree: int = 1,
    field: FieldConfig = FieldConfig(),
    pairs: Sequence[tuple[str, str]] | None = None,
) -> RankInvariant:
    """Rank invariant of the clique complexes of a persistent graph.

    Evaluates every comparable pair by default; pass ``pairs`` to restrict
    the quadratic table on larger posets.
    """
    complexes = {
        v: clique_complex(f.graphs[v], max_dim=max_degree + 1)
        for v in f.poset.elements
    }

    def vertex_maps(u: str, v: str):
        return dict(f.map_at(u, v).vertex_map)

    return _rank_table(
        f.poset.elements, f.poset.leq, complexes, vertex_maps, max_degree, field, pairs
    )


def space_rank_invariant(
    sf: SpaceFiltration,
    max_degree: int = 1,
    field: FieldConfig = FieldConfig(),
    pairs: Sequence[tuple[str, str]] | None = None,
) -> RankInvariant:
    """Rank invariant of a finite-space filtration computed directly on the
    order complexes of the quotient spaces, with no graph in between; the
    reference values the graph pipeline must reproduce."""
    from .complexes import order_complex

    posets, classes = space_quotients(sf)
    complexes = {
        v: order_complex(posets[v], max_dim=max_degree + 1)
        for v in sf.poset.elements
    }

    def vertex_maps(u: str, v: str):
        raw = sf.map_between(u, v)
        assignment = {rep: classes[v][raw[rep]] for rep in posets[u].elements}
        # order preservation of the induced quotient map is part of the
        # filtration's validity; assert it via MonotoneMap
        from .posets import is_monotone

        mm = MonotoneMap(posets[u], posets[v], assignment)
        if not is_monotone(mm):
            raise AssertionError("quotient map is not monotone")
        return assignment

    return _rank_table(
        sf.poset.elements, sf.poset.leq, complexes, vertex_maps, max_degree, field, pairs
    )


def grade_value(grade) -> Fraction | None:
    """Numeric value of a grade label, when it has one."""
    if isinstance(grade, Fraction):
        return grade
    if isinstance(grade, int):
        return Fraction(grade)
    if isinstance(grade, str):
        try:
            return Fraction(grade)
        except (ValueError, ZeroDivisionError):
            return None
    if isinstance(grade, float):
        return Fraction(str(grade))
    return None


def _barcode_stats(code: Barcode, max_degree: int) -> dict:
    stats: dict[str, dict] = {}
    for n in range(max_degree + 1):
        ivs = [iv for iv in code.reported() if iv.dim == n]
        finite: list[Fraction] = []
        infinite = 0
        for iv in ivs:
            if iv.death is None:
                infinite += 1
                continue
            b, d = grade_value(iv.birth), grade_value(iv.death)
            if b is not None and d is not None:
                finite.append(abs(d - b))
        entry = {
            "count": len(ivs),
            "infinite": infinite,
            "max_persistence": float(max(finite)) if finite else None,
            "mean_persistence": (
                float(sum(finite) / len(finite)) if finite else None
            ),
        }
        stats[str(n)] = entry
    return stats


@dataclass(frozen=True)
class FiltrationComparison:
    """Barcodes of the same network under edge-weight thresholding and
    under its shortest-path metric, with summary statistics."""

    weight_barcode: Barcode
    metric_barcode: Barcode
    stats: dict
    warnings: tuple[str, ...]


def compare_filtrations(
    rows: Sequence[EdgeRow],
    isolated_vertices: Sequence = (),
    epsilons: Sequence | None = None,
    thresholds: Sequence | None = None,
    max_degree: int = 1,
    field: FieldConfig = FieldConfig(),
) -> FiltrationComparison:
    """Run both filtrations of a weighted network.

    Branch A thresholds edge weights from strongest to weakest and takes
    clique complexes.  Branch B embeds the (largest component of the)
    network in its weighted shortest-path metric and grows Vietoris-Rips
    complexes.  Custom grade lists are optional; by default branch A uses
    the distinct edge weights and branch B the distinct pairwise distances.
    """
    warnings: list[str] = []
    w = weighted_graph_from_edge_rows(rows, "descending", isolated_vertices)
    if thresholds is None:
        wf = weight_filtration(w, "descending", max_degree)
        grades = tuple(Fraction(g) for g in wf.grades)
        wf = ChainFiltration(grades, wf.complexes)
    else:
        values = sorted({Fraction(str(t)) for t in thresholds}, reverse=True)
        from .filtrations import _as_fraction  # exact thresholds only
        from .complexes import ReflexiveGraph, clique_complex as _cl

        complexes = []
        iso = tuple(isolated_vertices)
        for t in values:
            edges = [
                (u, v)
                for (u, v, wt) in rows
                if _as_fraction(wt) >= t
            ]
            verts = {x for e in edges for x in e} | set(iso)
            complexes.append(
                _cl(ReflexiveGraph(verts, edges), max_dim=max_degree + 1)
            )
        wf = ChainFiltration(tuple(values), complexes)
    weight_code = barcode(wf, max_degree, field)

    metric, metric_warnings = shortest_path_metric(rows, isolated_vertices)
    warnings.extend(metric_warnings)
    if epsilons is None:
        eps = sorted({d for _, d in metric.pair_distances()})
        if not eps:
            eps = [Fraction(0)]
    else:
        eps = [Fraction(str(e)) for e in epsilons]
    vr = vietoris_rips(metric, eps, max_degree)
    metric_code = barcode(vr, max_degree, field)

    stats = {
        "weight": _barcode_stats(weight_code, max_degree),
        "metric": _barcode_stats(metric_code, max_degree),
    }
    return FiltrationComparison(weight_code, metric_code, stats, tuple(warnings))
