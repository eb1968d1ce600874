import random

import numpy as np
import pytest

from flagfilt import gf
from flagfilt.complexes import (
    ReflexiveGraph,
    SimplicialComplex,
    SimplicialMap,
    barycentric_subdivision,
    clique_complex,
    component_count,
    one_skeleton,
)
from flagfilt.generators import (
    hollow_triangle,
    octahedron_graph,
    random_complex,
    random_graph,
    square_graph,
    tetrahedron_boundary,
    triangle_complex,
)
from flagfilt.homology import (
    FieldConfig,
    betti_numbers,
    chain_complex,
    chain_map_matrix,
    graph_homology,
    homology_basis,
    induced_map_on_homology,
    verify_subdivision_invariance,
)

from oracles import bfs_component_count, sympy_betti, sympy_rank_gf

GF2 = FieldConfig(2)
GF3 = FieldConfig(3)
GF5 = FieldConfig(5)


def test_field_config_rejects_composites():
    with pytest.raises(ValueError):
        FieldConfig(4)
    with pytest.raises(ValueError):
        FieldConfig(1)


@pytest.mark.parametrize("seed", range(20))
@pytest.mark.parametrize("p", [2, 3, 7])
def test_rank_kernel_against_sympy(seed, p):
    rng = np.random.default_rng(seed)
    m = rng.integers(0, p, size=(rng.integers(1, 8), rng.integers(1, 8)))
    assert gf.rank(m, p) == sympy_rank_gf(m, p)
    null = gf.nullspace(m, p)
    assert null.shape[1] == m.shape[1] - gf.rank(m, p)
    if null.size:
        assert not np.any(m @ null % p)


@pytest.mark.parametrize("p", [2, 5])
def test_solve_kernel(p):
    rng = np.random.default_rng(3)
    a = rng.integers(0, p, size=(6, 4))
    x = rng.integers(0, p, size=(4, 2))
    b = a @ x % p
    got = gf.solve(a, b, p)
    assert np.array_equal(a @ got % p, b)
    with pytest.raises(ValueError, match="inconsistent"):
        gf.solve(np.zeros((2, 2), dtype=np.int64), np.array([1, 0]), p)


def test_boundary_of_single_edge():
    s = SimplicialComplex([("a", "b")], closure=True)
    cc2 = chain_complex(s, 1, GF2)
    assert cc2.boundaries[1].tolist() == [[1], [1]]
    cc3 = chain_complex(s, 1, GF3)
    assert cc3.boundaries[1].tolist() == [[2], [1]]  # -1 on the missing-0 facet


def test_boundary_of_full_triangle_signs():
    cc = chain_complex(triangle_complex(), 2, GF5)
    # rows in sorted edge order (a,b), (a,c), (b,c); signs +1, -1, +1
    col = cc.boundaries[2][:, 0].tolist()
    assert col == [1, 4, 1]


def test_chain_complex_of_empty_complex():
    cc = chain_complex(SimplicialComplex(()), 1, GF2)
    assert cc.dim_chains(0) == 0 and cc.dim_chains(1) == 0


@pytest.mark.parametrize("seed", range(12))
@pytest.mark.parametrize("p", [2, 3, 5])
def test_boundary_squares_to_zero(seed, p):
    rng = random.Random(seed)
    s = random_complex(rng, max_vertices=7, max_dim=3)
    cc = chain_complex(s, max(s.dim, 0), FieldConfig(p))
    for n in range(1, cc.max_degree + 2):
        assert not np.any(cc.boundaries[n - 1] @ cc.boundaries[n] % p)


def test_betti_of_single_vertex():
    assert betti_numbers(SimplicialComplex([("a",)]), 0).betti == (1,)


def test_betti_of_hollow_triangle():
    assert betti_numbers(hollow_triangle(), 1).betti == (1, 1)


def test_betti_of_octahedron_flag_complex():
    summary = graph_homology(octahedron_graph(), 2)
    assert summary.betti == (1, 0, 1)
    # independent oracles: sympy ranks and component count
    cl = clique_complex(octahedron_graph(), 3)
    assert sympy_betti(cl, 2, 2) == (1, 0, 1)
    assert summary.betti[0] == bfs_component_count(octahedron_graph())


@pytest.mark.parametrize("seed", range(10))
@pytest.mark.parametrize("p", [2, 3])
def test_betti_against_sympy_oracle(seed, p):
    rng = random.Random(seed)
    s = random_complex(rng, max_vertices=7, max_dim=3)
    deg = max(s.dim, 0)
    assert betti_numbers(s, deg, FieldConfig(p)).betti == sympy_betti(s, deg, p)


def test_graph_homology_of_k3_and_square():
    k3 = ReflexiveGraph("abc", [("a", "b"), ("a", "c"), ("b", "c")])
    assert graph_homology(k3, 1).betti == (1, 0)
    assert graph_homology(square_graph(), 1).betti == (1, 1)


def test_graph_homology_of_null_graph_is_empty():
    assert graph_homology(ReflexiveGraph(), 2).betti == ()
    assert betti_numbers(SimplicialComplex(()), 3).betti == ()


@pytest.mark.parametrize("seed", range(12))
def test_betti0_counts_components(seed):
    rng = random.Random(seed)
    g = random_graph(rng, 7, 0.3)
    if g.is_null():
        assert graph_homology(g, 1).betti == ()
        return
    assert graph_homology(g, 1).betti[0] == bfs_component_count(g)


@pytest.mark.parametrize("seed", range(10))
def test_euler_characteristic_consistency(seed):
    rng = random.Random(seed)
    s = random_complex(rng, max_vertices=7, max_dim=3)
    for p in (2, 3, 5):
        betti = betti_numbers(s, max(s.dim, 0), FieldConfig(p)).betti
        assert s.euler_characteristic() == sum(
            (-1) ** n * b for n, b in enumerate(betti)
        )


def test_field_independence_on_desk_examples():
    for s, deg in [
        (hollow_triangle(), 1),
        (tetrahedron_boundary(), 2),
        (triangle_complex(), 2),
    ]:
        vectors = {
            betti_numbers(s, deg, FieldConfig(p)).betti for p in (2, 3, 5)
        }
        assert len(vectors) == 1


def test_cycle_representatives_are_cycles():
    summary = betti_numbers(hollow_triangle(), 1, GF3, with_representatives=True)
    reps = summary.representatives[1]
    assert len(reps) == summary.betti[1] == 1
    cc = chain_complex(hollow_triangle(), 1, GF3)
    faces = {f: i for i, f in enumerate(cc.basis[1])}
    vec = np.zeros(cc.dim_chains(1), dtype=np.int64)
    for coeff, face in reps[0]:
        vec[faces[face]] = coeff
    assert not np.any(cc.boundaries[1] @ vec % 3)


def test_induced_map_identity_has_full_rank():
    s = hollow_triangle()
    ind = induced_map_on_homology(SimplicialMap.identity(s), 1, GF2)
    assert ind.rank == 1 == ind.source_betti == ind.target_betti
    assert np.array_equal(ind.matrix % 2, np.eye(1, dtype=np.int64))


def test_inclusion_into_filled_triangle_kills_the_cycle():
    inc = SimplicialMap.inclusion(hollow_triangle(), triangle_complex())
    ind = induced_map_on_homology(inc, 1, GF2)
    assert ind.source_betti == 1 and ind.target_betti == 0 and ind.rank == 0


def test_inclusion_of_persisting_cycle_has_rank_one():
    square = clique_complex(square_graph(), 2)
    bigger = SimplicialComplex(
        list(square.face_set()) + [("e",), ("a", "e")], closure=True
    )
    ind = induced_map_on_homology(SimplicialMap.inclusion(square, bigger), 1, GF2)
    assert ind.rank == 1


def _random_simplicial_map(rng, g, h, cap):
    from flagfilt.generators import random_graph_morphism

    m = random_graph_morphism(rng, g, h)
    if m is None:
        return None
    return SimplicialMap(
        clique_complex(g, cap), clique_complex(h, cap), dict(m.vertex_map)
    )


@pytest.mark.parametrize("seed", range(10))
def test_induced_map_functoriality(seed):
    rng = random.Random(seed)
    g = random_graph(rng, 5, 0.6, prefix="g", min_vertices=1)
    h = random_graph(rng, 5, 0.6, prefix="h", min_vertices=1)
    k = random_graph(rng, 5, 0.6, prefix="k", min_vertices=1)
    f1 = _random_simplicial_map(rng, g, h, 2)
    f2 = _random_simplicial_map(rng, h, k, 2)
    if f1 is None or f2 is None:
        return
    composed = f2.compose(f1)
    for n in (0, 1):
        a = induced_map_on_homology(f1, n, GF3)
        b = induced_map_on_homology(f2, n, GF3)
        c = induced_map_on_homology(composed, n, GF3)
        assert np.array_equal(b.matrix @ a.matrix % 3, c.matrix % 3)


def test_chain_map_collapse_sends_face_to_zero():
    src = SimplicialComplex([("a", "b")], closure=True)
    dst = SimplicialComplex([("x",)])
    sm = SimplicialMap(src, dst, {"a": "x", "b": "x"})
    cc_s = chain_complex(src, 1, GF2)
    cc_t = chain_complex(dst, 1, GF2)
    m = chain_map_matrix(sm, 1, cc_s, cc_t)
    assert m.shape == (0, 1)


def test_subdivision_invariance_examples():
    for s in (triangle_complex(), hollow_triangle(), tetrahedron_boundary()):
        rep = verify_subdivision_invariance(s, GF2)
        assert rep.ok, rep
    rep = verify_subdivision_invariance(triangle_complex(), GF2)
    assert rep.betti_direct == (1, 0, 0)
    rep = verify_subdivision_invariance(hollow_triangle(), GF3)
    assert rep.betti_direct == rep.betti_via_graph == (1, 1)


def test_subdivision_invariance_empty_is_vacuous():
    assert verify_subdivision_invariance(SimplicialComplex(())).ok


@pytest.mark.parametrize("seed", range(8))
def test_subdivision_invariance_random(seed):
    rng = random.Random(seed)
    s = random_complex(rng, max_vertices=8, max_dim=3, max_generators=4)
    for p in (2, 3):
        assert verify_subdivision_invariance(s, FieldConfig(p)).ok


def test_homology_basis_dimensions():
    cc = chain_complex(tetrahedron_boundary(), 2, GF2)
    assert homology_basis(cc, 0).shape[1] == 1
    assert homology_basis(cc, 1).shape[1] == 0
    assert homology_basis(cc, 2).shape[1] == 1
