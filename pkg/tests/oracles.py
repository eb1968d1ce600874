"""Independent brute-force oracles.

Everything here recomputes results by a different route than the library:
chains and cliques by subset enumeration, ranks via sympy's exact GF(p)
matrices, components by breadth-first search.  Tests freeze expected
values against these, never against the code under test.
"""

from __future__ import annotations

import itertools
from collections import deque

import numpy as np
from sympy import GF, Matrix
from sympy.polys.matrices import DomainMatrix


def brute_chains(poset, max_size=None):
    """All nonempty pairwise-comparable subsets, as sorted vertex tuples."""
    out = set()
    elems = poset.elements
    cap = len(elems) if max_size is None else max_size
    for k in range(1, cap + 1):
        for combo in itertools.combinations(elems, k):
            if all(
                poset.leq(a, b) or poset.leq(b, a)
                for a, b in itertools.combinations(combo, 2)
            ):
                out.add(tuple(sorted(combo)))
    return out


def brute_cliques(graph, max_size=None):
    """All cliques as sorted vertex tuples, by subset enumeration."""
    out = set()
    verts = sorted(graph.vertices)
    cap = len(verts) if max_size is None else max_size
    for k in range(1, cap + 1):
        for combo in itertools.combinations(verts, k):
            if all(graph.has_edge(a, b) for a, b in itertools.combinations(combo, 2)):
                out.add(tuple(combo))
    return out


def sympy_rank_gf(matrix, p):
    m = Matrix(np.asarray(matrix, dtype=np.int64).tolist())
    if m.rows == 0 or m.cols == 0:
        return 0
    return DomainMatrix.from_Matrix(m).convert_to(GF(p)).rank()


def boundary_matrix_oracle(faces_below, faces_above):
    """Signed boundary matrix built independently of the library."""
    rows = {f: i for i, f in enumerate(sorted(faces_below))}
    below = sorted(faces_below)
    above = sorted(faces_above)
    m = np.zeros((len(below), len(above)), dtype=np.int64)
    for j, face in enumerate(above):
        for i in range(len(face)):
            facet = face[:i] + face[i + 1 :]
            m[rows[facet], j] = (-1) ** i
    return m


def sympy_betti(complex_, max_degree, p):
    """Betti numbers via sympy GF(p) ranks; string-vertex complexes only."""
    if complex_.is_empty():
        return ()
    faces_by_dim = {
        n: [tuple(f) for f in complex_.faces(n)] for n in range(max_degree + 2)
    }
    betti = []
    for n in range(max_degree + 1):
        c_n = len(faces_by_dim[n])
        if n == 0:
            rank_dn = 0
        else:
            rank_dn = sympy_rank_gf(
                boundary_matrix_oracle(faces_by_dim[n - 1], faces_by_dim[n]), p
            )
        rank_dn1 = sympy_rank_gf(
            boundary_matrix_oracle(faces_by_dim[n], faces_by_dim[n + 1]), p
        )
        betti.append(c_n - rank_dn - rank_dn1)
    return tuple(betti)


def bfs_component_count(graph):
    seen = set()
    count = 0
    for start in graph.vertices:
        if start in seen:
            continue
        count += 1
        queue = deque([start])
        seen.add(start)
        while queue:
            v = queue.popleft()
            for u, w in graph.edges:
                other = None
                if u == v:
                    other = w
                elif w == v:
                    other = u
                if other is not None and other not in seen:
                    seen.add(other)
                    queue.append(other)
    return count


def lower_sets(poset):
    """All downward-closed subsets by subset enumeration."""
    elems = poset.elements
    out = []
    for mask in range(1 << len(elems)):
        subset = {e for i, e in enumerate(elems) if mask >> i & 1}
        ok = True
        for x in subset:
            for y in elems:
                if poset.leq(y, x) and y not in subset:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(frozenset(subset))
    return out
