"""Simplicial homology over a prime field.

The boundary of an n-face is the alternating sum of its facets, with signs
fixed by the complex's canonical vertex order.  Cycles are the kernel of
the boundary, boundaries its image one degree up, and Betti numbers are the
quotient dimensions, all computed by exact Gaussian elimination in GF(p).

Graph homology is the homology of the clique complex, so a graph argument
is expanded with the clique functor capped one degree above the requested
range.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from . import gf
from .complexes import (
    Face,
    ReflexiveGraph,
    SimplicialComplex,
    SimplicialMap,
    barycentric_subdivision,
    clique_complex,
    one_skeleton,
    vertex_sort_key,
)

__all__ = [
    "FieldConfig",
    "ChainComplexData",
    "HomologySummary",
    "InducedHomologyMap",
    "SubdivisionReport",
    "chain_complex",
    "betti_numbers",
    "graph_homology",
    "homology_basis",
    "induced_map_on_homology",
    "chain_map_matrix",
    "verify_subdivision_invariance",
]


@dataclass(frozen=True)
class FieldConfig:
    """Coefficient field GF(p); the default is GF(2)."""

    characteristic: int = 2

    def __post_init__(self) -> None:
        if not gf.is_prime(self.characteristic):
            raise ValueError(f"{self.characteristic} is not prime")

    @property
    def p(self) -> int:
        return self.characteristic


@dataclass(frozen=True)
class ChainComplexData:
    """Bases and boundary matrices of a complex up to a fixed degree.

    ``boundaries[n]`` maps degree-n chains to degree-(n-1) chains; rows are
    indexed by ``basis[n-1]``, columns by ``basis[n]``.  Degree 0 has a
    0-row matrix.  The composite of consecutive boundaries is checked to be
    zero at construction.
    """

    field: FieldConfig
    max_degree: int
    basis: Mapping[int, tuple[Face, ...]]
    boundaries: Mapping[int, np.ndarray]

    def dim_chains(self, n: int) -> int:
        return len(self.basis.get(n, ()))


def _boundary_matrix(
    lower: Sequence[Face], upper: Sequence[Face], p: int
) -> np.ndarray:
    row_index = {f: i for i, f in enumerate(lower)}
    m = np.zeros((len(lower), len(upper)), dtype=np.int64)
    for j, face in enumerate(upper):
        for i in range(len(face)):
            facet = face[:i] + face[i + 1 :]
            m[row_index[facet], j] = (-1) ** i % p
    return m


def chain_complex(
    s: SimplicialComplex,
    max_degree: int | None = None,
    field: FieldConfig = FieldConfig(),
) -> ChainComplexData:
    """Boundary matrices of ``s`` for degrees 0 .. max_degree + 1.

    When ``s`` came from a capped clique complex the caller must have built
    faces up to ``max_degree + 1``; degrees above the complex dimension are
    simply empty.
    """
    if max_degree is None:
        max_degree = max(s.dim, 0)
    if max_degree < 0:
        raise ValueError("max_degree must be >= 0")
    p = field.p
    basis: dict[int, tuple[Face, ...]] = {}
    for n in range(max_degree + 2):
        basis[n] = s.faces(n)
    boundaries: dict[int, np.ndarray] = {
        0: np.zeros((0, len(basis[0])), dtype=np.int64)
    }
    for n in range(1, max_degree + 2):
        boundaries[n] = _boundary_matrix(basis[n - 1], basis[n], p)
    for n in range(1, max_degree + 2):
        prod = boundaries[n - 1] @ boundaries[n] % p
        if np.any(prod):
            raise AssertionError(f"boundary composite is nonzero in degree {n}")
    return ChainComplexData(field, max_degree, basis, boundaries)


@dataclass(frozen=True)
class HomologySummary:
    """Betti numbers by degree, with optional cycle representatives.

    Representatives are sparse chains: per degree, one list of
    ``(coefficient, face)`` pairs per homology generator.
    """

    betti: tuple[int, ...]
    representatives: Mapping[int, tuple[tuple[tuple[int, Face], ...], ...]] | None = None


def homology_basis(cc: ChainComplexData, n: int) -> np.ndarray:
    """Columns are cycle vectors whose classes form a basis of H_n."""
    p = cc.field.p
    z = gf.nullspace(cc.boundaries[n], p)
    b_cols = cc.boundaries.get(n + 1)
    if b_cols is None or b_cols.shape[1] == 0:
        b = np.zeros((cc.dim_chains(n), 0), dtype=np.int64)
    else:
        b = b_cols % p
    pivots = gf.quotient_pivot_columns(b, z, p)
    return z[:, pivots]


def betti_numbers(
    s: SimplicialComplex,
    max_degree: int | None = None,
    field: FieldConfig = FieldConfig(),
    with_representatives: bool = False,
) -> HomologySummary:
    """Betti vector for degrees 0 .. max_degree.

    The empty complex yields an empty vector (all its homology vanishes);
    otherwise degree 0 counts connected components, i.e. homology is
    unreduced.
    """
    if s.is_empty():
        return HomologySummary(())
    cc = chain_complex(s, max_degree, field)
    p = field.p
    betti: list[int] = []
    reps: dict[int, tuple] = {}
    for n in range(cc.max_degree + 1):
        rank_dn = gf.rank(cc.boundaries[n], p)
        rank_dn1 = gf.rank(cc.boundaries[n + 1], p)
        betti.append(cc.dim_chains(n) - rank_dn - rank_dn1)
        if with_representatives:
            h = homology_basis(cc, n)
            faces = cc.basis[n]
            reps[n] = tuple(
                tuple(
                    (int(h[i, k]), faces[i])
                    for i in np.nonzero(h[:, k])[0]
                )
                for k in range(h.shape[1])
            )
    return HomologySummary(tuple(betti), reps if with_representatives else None)


def graph_homology(
    g: ReflexiveGraph,
    max_degree: int = 1,
    field: FieldConfig = FieldConfig(),
) -> HomologySummary:
    """Homology of the clique complex of the graph.

    Cliques are enumerated one dimension above ``max_degree`` so boundary
    ranks in the top requested degree are correct.
    """
    if g.is_null():
        return HomologySummary(())
    cl = clique_complex(g, max_dim=max_degree + 1)
    return betti_numbers(cl, max_degree, field)


def _collapse_free_image(f: SimplicialMap, face: Face) -> tuple[int, Face] | None:
    """Image of a face under the chain map: None when vertices collapse,
    otherwise (sign, sorted image face)."""
    images = [f.vertex_map[v] for v in face]
    if len(set(images)) != len(images):
        return None
    keys = [vertex_sort_key(v) for v in images]
    inversions = 0
    for i in range(len(keys)):
        for j in range(i + 1, len(keys)):
            if keys[i] > keys[j]:
                inversions += 1
    sign = -1 if inversions % 2 else 1
    return sign, tuple(sorted(images, key=vertex_sort_key))


def chain_map_matrix(
    f: SimplicialMap,
    n: int,
    source_cc: ChainComplexData,
    target_cc: ChainComplexData,
) -> np.ndarray:
    """Degree-n matrix of the chain map induced by a simplicial map.

    Faces whose vertices collapse are sent to zero; otherwise to the sorted
    image face with the sign of the sorting permutation.
    """
    p = source_cc.field.p
    target_index = {face: i for i, face in enumerate(target_cc.basis[n])}
    m = np.zeros((target_cc.dim_chains(n), source_cc.dim_chains(n)), dtype=np.int64)
    for j, face in enumerate(source_cc.basis[n]):
        hit = _collapse_free_image(f, face)
        if hit is None:
            continue
        sign, image = hit
        m[target_index[image], j] = sign % p
    return m


@dataclass(frozen=True)
class InducedHomologyMap:
    """Matrix of H_n(f) in chosen homology bases, with its rank."""

    degree: int
    matrix: np.ndarray
    rank: int
    source_betti: int
    target_betti: int


def induced_map_on_homology(
    f: SimplicialMap,
    n: int,
    field: FieldConfig = FieldConfig(),
    source_cc: ChainComplexData | None = None,
    target_cc: ChainComplexData | None = None,
) -> InducedHomologyMap:
    """Compute H_n(f) by pushing cycle representatives through the chain map
    and re-expressing their classes in the target homology basis."""
    p = field.p
    if source_cc is None:
        source_cc = chain_complex(f.source, n, field)
    if target_cc is None:
        target_cc = chain_complex(f.target, n, field)
    hs = homology_basis(source_cc, n)
    ht = homology_basis(target_cc, n)
    if hs.shape[1] == 0 or ht.shape[1] == 0:
        matrix = np.zeros((ht.shape[1], hs.shape[1]), dtype=np.int64)
        return InducedHomologyMap(n, matrix, 0, hs.shape[1], ht.shape[1])
    fm = chain_map_matrix(f, n, source_cc, target_cc)
    mapped = fm @ hs % p
    if np.any(target_cc.boundaries[n] @ mapped % p):
        raise AssertionError("chain map did not send cycles to cycles")
    b_cols = target_cc.boundaries[n + 1] % p
    if b_cols.shape[1] == 0:
        b_cols = np.zeros((target_cc.dim_chains(n), 0), dtype=np.int64)
    coords = gf.solve(np.concatenate([b_cols, ht], axis=1), mapped, p)
    matrix = coords[b_cols.shape[1]:, :]
    return InducedHomologyMap(
        n, matrix, gf.rank(matrix, p), hs.shape[1], ht.shape[1]
    )


@dataclass(frozen=True)
class SubdivisionReport:
    """Betti vectors of a complex and of the graph homology of the
    1-skeleton of its barycentric subdivision; they must agree."""

    ok: bool
    betti_direct: tuple[int, ...]
    betti_via_graph: tuple[int, ...]


def verify_subdivision_invariance(
    s: SimplicialComplex, field: FieldConfig = FieldConfig()
) -> SubdivisionReport:
    """Check that homology can be recovered from a graph alone.

    The 1-skeleton of the barycentric subdivision is a graph whose clique
    complex is the whole subdivision (it is flag), so its graph homology
    must match the homology of the original complex degree by degree.
    """
    if s.is_empty():
        return SubdivisionReport(True, (), ())
    max_degree = max(s.dim, 0)
    direct = betti_numbers(s, max_degree, field).betti
    g = one_skeleton(barycentric_subdivision(s))
    via_graph = graph_homology(g, max_degree, field).betti
    return SubdivisionReport(direct == via_graph, direct, via_graph)
