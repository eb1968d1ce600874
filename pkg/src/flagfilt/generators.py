"""Instance generators.

Named small posets, graphs and complexes shared by the verification suites
and the tests; random instances driven by a caller-owned ``random.Random``
(so every run is reproducible from one seed); exhaustive enumerators for
the tiny-scale exact checks.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Iterator

import numpy as np

from .complexes import GraphMorphism, ReflexiveGraph, SimplicialComplex
from .filtrations import MetricData, SpaceFiltration
from .posets import (
    MonotoneMap,
    Poset,
    Preorder,
    antichain_poset,
    chain_poset,
    poset_from_covers,
)
from .weighted import PersistentGraph, PWeightedGraph

__all__ = [
    "diamond_poset",
    "v_poset",
    "pseudo_circle_poset",
    "named_poset",
    "triangle_complex",
    "hollow_triangle",
    "tetrahedron_boundary",
    "octahedron_graph",
    "square_graph",
    "named_complex",
    "all_posets_up_to_iso",
    "random_poset",
    "random_preorder",
    "random_graph",
    "random_weighted_graph",
    "random_inclusion_functor",
    "random_functor",
    "random_graph_morphism",
    "random_morphism_into_union",
    "random_monotone_map",
    "random_complex",
    "random_metric",
    "random_space_filtration",
    "all_weighted_graphs",
]


# -- named shapes -----------------------------------------------------------


def diamond_poset() -> Poset:
    return poset_from_covers(
        ["bot", "m1", "m2", "top"],
        [("bot", "m1"), ("bot", "m2"), ("m1", "top"), ("m2", "top")],
    )


def v_poset() -> Poset:
    """Two minimal points under one top: a < c > b."""
    return poset_from_covers(["a", "b", "c"], [("a", "c"), ("b", "c")])


def pseudo_circle_poset() -> Poset:
    """Four points, two below two; its order complex is a 4-cycle."""
    return poset_from_covers(
        ["a", "b", "c", "d"],
        [("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")],
    )


def named_poset(spec: str, rng: random.Random | None = None) -> Poset:
    """Posets by name: chainN, antichainN, diamond, v, pseudo-circle,
    randomN (needs an RNG)."""
    spec = spec.strip().lower()
    if spec == "diamond":
        return diamond_poset()
    if spec == "v":
        return v_poset()
    if spec in ("pseudo-circle", "pseudocircle"):
        return pseudo_circle_poset()
    for prefix, builder in (("chain", chain_poset), ("antichain", antichain_poset)):
        if spec.startswith(prefix) and spec[len(prefix):].isdigit():
            n = int(spec[len(prefix):])
            if n < 1:
                raise ValueError("poset size must be positive")
            return builder([f"t{i + 1}" for i in range(n)])
    if spec.startswith("random") and spec[len("random"):].isdigit():
        if rng is None:
            raise ValueError("random posets need a seeded RNG")
        return random_poset(rng, int(spec[len("random"):]))
    raise ValueError(f"unknown poset spec {spec!r}")


def triangle_complex() -> SimplicialComplex:
    return SimplicialComplex([("a", "b", "c")], closure=True)


def hollow_triangle() -> SimplicialComplex:
    return SimplicialComplex([("a", "b"), ("a", "c"), ("b", "c")], closure=True)


def tetrahedron_boundary() -> SimplicialComplex:
    verts = ("a", "b", "c", "d")
    return SimplicialComplex(itertools.combinations(verts, 3), closure=True)


def octahedron_graph() -> ReflexiveGraph:
    """K6 minus a perfect matching; its clique complex is the octahedron
    surface, a 2-sphere."""
    verts = ["a", "b", "c", "d", "e", "f"]
    matching = {("a", "d"), ("b", "e"), ("c", "f")}
    edges = [
        (u, v)
        for u, v in itertools.combinations(verts, 2)
        if (u, v) not in matching
    ]
    return ReflexiveGraph(verts, edges)


def square_graph() -> ReflexiveGraph:
    return ReflexiveGraph(
        ["a", "b", "c", "d"], [("a", "b"), ("b", "c"), ("c", "d"), ("a", "d")]
    )


def named_complex(spec: str) -> SimplicialComplex:
    from .complexes import clique_complex

    spec = spec.strip().lower()
    if spec == "triangle":
        return triangle_complex()
    if spec in ("hollow-triangle", "hollow"):
        return hollow_triangle()
    if spec in ("tetrahedron-boundary", "tetrahedron"):
        return tetrahedron_boundary()
    if spec == "octahedron":
        return clique_complex(octahedron_graph())
    if spec == "empty":
        return SimplicialComplex(())
    raise ValueError(f"unknown complex spec {spec!r}")


# -- exhaustive enumeration --------------------------------------------------


def all_posets_up_to_iso(n: int) -> list[Poset]:
    """All posets on n elements up to isomorphism.

    Every finite poset relabels along a linear extension to one whose
    relation is upper triangular, so scanning the upper-triangular masks
    and deduplicating by the minimal matrix over all permutations is
    exhaustive.  Intended for n <= 5.
    """
    if n == 0:
        return []
    pairs = list(itertools.combinations(range(n), 2))
    seen: dict[bytes, Poset] = {}
    perms = list(itertools.permutations(range(n)))
    for mask in range(1 << len(pairs)):
        m = np.eye(n, dtype=bool)
        for k, (i, j) in enumerate(pairs):
            if mask >> k & 1:
                m[i, j] = True
        closure = m.copy()
        for k in range(n):
            closure[closure[:, k]] |= closure[k]
        if not np.array_equal(closure, m):
            continue
        canon = min(m[np.ix_(perm, perm)].tobytes() for perm in perms)
        if canon not in seen:
            seen[canon] = Poset(
                [f"e{i}" for i in range(n)], m, _validated=True
            )
    return list(seen.values())


def all_weighted_graphs(p: Poset, max_vertices: int = 2) -> Iterator[PWeightedGraph]:
    """Every weighted graph with at most ``max_vertices`` vertices over p."""
    shapes: list[tuple[tuple, tuple]] = [((), ())]
    names = ("a", "b")[:max_vertices]
    for k in range(1, len(names) + 1):
        verts = names[:k]
        shapes.append((verts, ()))
        if k == 2:
            shapes.append((verts, (("a", "b"),)))
    for verts, edges in shapes:
        for vw in itertools.product(p.elements, repeat=len(verts)):
            weights = dict(zip(verts, vw))
            if not edges:
                yield PWeightedGraph(ReflexiveGraph(verts, ()), p, weights, {})
                continue
            (a, b) = edges[0]
            uppers = sorted(p.upset(weights[a]) & p.upset(weights[b]))
            for ew in uppers:
                yield PWeightedGraph(
                    ReflexiveGraph(verts, edges), p, weights, {("a", "b"): ew}
                )


# -- random instances --------------------------------------------------------


def random_poset(rng: random.Random, n: int, relation_prob: float = 0.35) -> Poset:
    m = np.eye(n, dtype=bool)
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < relation_prob:
                m[i, j] = True
    for k in range(n):
        m[m[:, k]] |= m[k]
    return Poset([f"e{i}" for i in range(n)], m, _validated=True)


def random_preorder(rng: random.Random, n: int, relation_prob: float = 0.3) -> Preorder:
    m = np.eye(n, dtype=bool)
    for i in range(n):
        for j in range(n):
            if i != j and rng.random() < relation_prob:
                m[i, j] = True
    for k in range(n):
        m[m[:, k]] |= m[k]
    return Preorder([f"e{i}" for i in range(n)], m, _validated=True)


def random_graph(
    rng: random.Random,
    max_vertices: int = 6,
    edge_prob: float = 0.5,
    prefix: str = "x",
    min_vertices: int = 0,
) -> ReflexiveGraph:
    n = rng.randint(min_vertices, max_vertices)
    verts = [f"{prefix}{i}" for i in range(n)]
    edges = [
        (a, b)
        for a, b in itertools.combinations(verts, 2)
        if rng.random() < edge_prob
    ]
    return ReflexiveGraph(verts, edges)


def random_weighted_graph(
    rng: random.Random,
    p: Poset,
    max_vertices: int = 6,
    edge_prob: float = 0.5,
) -> PWeightedGraph:
    """Random graph with edge weights drawn uniformly from the poset and
    each vertex weighted by a random lower bound of its incident edge
    weights.

    When incident edge weights admit no common lower bound (possible in
    posets without a bottom), the vertex falls back to a minimal element
    and the offending edges are lifted to a common upper bound or dropped.
    """
    g = random_graph(rng, max_vertices, edge_prob)
    edge_w = {e: rng.choice(p.elements) for e in g.sorted_edges()}
    vertex_w = {}
    for v in g.vertices:
        incident = [w for e, w in edge_w.items() if v in e]
        if not incident:
            vertex_w[v] = rng.choice(p.elements)
            continue
        lowers = set(p.elements)
        for w in incident:
            lowers &= p.downset(w)
        if lowers:
            vertex_w[v] = rng.choice(sorted(lowers))
        else:
            vertex_w[v] = rng.choice(sorted(p.minimal_elements()))
    edges = []
    for e, w in list(edge_w.items()):
        a, b = e
        if p.leq(vertex_w[a], w) and p.leq(vertex_w[b], w):
            edges.append(e)
            continue
        uppers = sorted(p.upset(vertex_w[a]) & p.upset(vertex_w[b]))
        if uppers:
            edge_w[e] = rng.choice(uppers)
            edges.append(e)
        else:
            del edge_w[e]
    graph = ReflexiveGraph(g.vertices, edges)
    return PWeightedGraph(graph, p, vertex_w, edge_w)


def _random_upset(rng: random.Random, p: Poset, element_prob: float = 0.4) -> frozenset:
    seeds = [e for e in p.elements if rng.random() < element_prob]
    out: set = set()
    for s in seeds:
        out |= p.upset(s)
    return frozenset(out)


def random_inclusion_functor(
    rng: random.Random,
    p: Poset,
    max_vertices: int = 5,
    edge_prob: float = 0.4,
) -> PersistentGraph:
    """Random functor with inclusion structure maps: every cell lives on a
    random upset of the poset, edges on subsets of their endpoints' upsets.
    One-critical exactly when every such upset has a least element."""
    g = random_graph(rng, max_vertices, edge_prob)
    edge_up = {e: _random_upset(rng, p) for e in g.sorted_edges()}
    vertex_up: dict = {}
    for v in g.vertices:
        up = set(_random_upset(rng, p, 0.3))
        for e, u in edge_up.items():
            if v in e:
                up |= u
        vertex_up[v] = frozenset(up)
    graphs = {}
    for lvl in p.elements:
        verts = [v for v, u in vertex_up.items() if lvl in u]
        edges = [e for e, u in edge_up.items() if lvl in u]
        graphs[lvl] = ReflexiveGraph(verts, edges)
    return PersistentGraph.from_inclusions(p, graphs)


def random_graph_morphism(
    rng: random.Random, g: ReflexiveGraph, h: ReflexiveGraph, attempts: int = 20
) -> GraphMorphism | None:
    if not g.vertices:
        return GraphMorphism(g, h, {})
    if not h.vertices:
        return None
    targets = list(h.vertices)
    for _ in range(attempts):
        vmap = {v: rng.choice(targets) for v in g.vertices}
        if all(h.adjacent(vmap[u], vmap[v]) for u, v in g.edges):
            return GraphMorphism(g, h, vmap)
    constant = targets[0]
    return GraphMorphism(g, h, {v: constant for v in g.vertices})


def random_functor(
    rng: random.Random,
    p: Poset,
    max_vertices: int = 3,
    attempts: int = 25,
) -> PersistentGraph:
    """Random persistent graph with arbitrary (not necessarily injective)
    structure maps; falls back to an inclusion functor when rejection
    sampling fails to satisfy functoriality."""
    if rng.random() < 0.3:
        return random_inclusion_functor(rng, p, max_vertices)
    for _ in range(attempts):
        graphs = {
            v: random_graph(rng, max_vertices, 0.5, prefix=f"g{p.index(v)}_", min_vertices=1)
            for v in p.elements
        }
        cover_maps = {}
        feasible = True
        for u, v in p.covers():
            m = random_graph_morphism(rng, graphs[u], graphs[v])
            if m is None:
                feasible = False
                break
            cover_maps[(u, v)] = m
        if not feasible:
            continue
        try:
            return PersistentGraph(p, graphs, cover_maps)
        except ValueError:
            continue
    return random_inclusion_functor(rng, p, max_vertices)


def random_morphism_into_union(
    rng: random.Random,
    f: PersistentGraph,
    union: PWeightedGraph,
    max_vertices: int = 4,
) -> tuple[PWeightedGraph, GraphMorphism]:
    """A random weighted graph with a weight-preserving morphism into the
    level union of ``f``, generated jointly so the morphism exists."""
    targets = list(union.graph.vertices)
    if not targets:
        empty = PWeightedGraph(ReflexiveGraph(), f.poset, {}, {})
        return empty, GraphMorphism(empty.graph, union.graph, {})
    n = rng.randint(1, max_vertices)
    verts = [f"s{i}" for i in range(n)]
    assign = {v: rng.choice(targets) for v in verts}
    vertex_w = {v: assign[v][1] for v in verts}
    edges = []
    edge_w = {}
    for a, b in itertools.combinations(verts, 2):
        if union.graph.adjacent(assign[a], assign[b]) and rng.random() < 0.6:
            edges.append((a, b))
            edge_w[(a, b)] = vertex_w[a]
    w = PWeightedGraph(ReflexiveGraph(verts, edges), f.poset, vertex_w, edge_w)
    alpha = GraphMorphism(w.graph, union.graph, assign)
    return w, alpha


def random_monotone_map(
    rng: random.Random, p: Poset, q: Poset, attempts: int = 50
) -> MonotoneMap:
    """Random order-preserving map, by rejection with a constant-map
    fallback (constants are always monotone)."""
    from .posets import is_monotone

    if not q.elements:
        raise ValueError("target poset is empty")
    targets = list(q.elements)
    for _ in range(attempts):
        f = MonotoneMap(p, q, {e: rng.choice(targets) for e in p.elements})
        if is_monotone(f):
            return f
    c = rng.choice(targets)
    return MonotoneMap(p, q, {e: c for e in p.elements})


def random_complex(
    rng: random.Random,
    max_vertices: int = 8,
    max_dim: int = 3,
    max_generators: int = 5,
) -> SimplicialComplex:
    n = rng.randint(1, max_vertices)
    verts = [f"v{i}" for i in range(n)]
    gens = []
    for _ in range(rng.randint(1, max_generators)):
        k = rng.randint(1, min(max_dim + 1, n))
        gens.append(rng.sample(verts, k))
    return SimplicialComplex(gens, closure=True)


def random_metric(rng: random.Random, n_points: int = 5) -> MetricData:
    points = [f"p{i}" for i in range(n_points)]
    dist = {
        (a, b): Fraction(rng.randint(1, 20), rng.choice((1, 2, 4)))
        for a, b in itertools.combinations(points, 2)
    }
    return MetricData.from_pairs(points, dist)


def random_space_filtration(
    rng: random.Random, max_levels: int = 4, max_points: int = 8
) -> SpaceFiltration:
    """A growing chain of finite T0 spaces with inclusion structure maps.

    Spaces are layered posets (relations only go up layers) because all the
    small finite models with interesting homology are of that shape: one
    run in five starts from the four-point circle model, one in seven from
    the six-point sphere model, the rest from random layered points.  Later
    levels add points and relations touching the new points only, so
    existing topology evolves by coning rather than being rewritten, each
    level contains the previous one, and the inclusions are continuous and
    injective.
    """
    levels = rng.randint(1, max_levels)
    chain = chain_poset([f"t{i + 1}" for i in range(levels)])
    n_layers = rng.randint(2, 3)
    layer_of: dict[str, int] = {}
    order: list[str] = []
    pairs: set[tuple[str, str]] = set()
    counter = 0

    def new_point(layer: int) -> str:
        nonlocal counter
        name = f"a{counter}"
        counter += 1
        layer_of[name] = layer
        order.append(name)
        return name

    seed = rng.random()
    if seed < 0.2:
        bottom = [new_point(0), new_point(0)]
        top = [new_point(1), new_point(1)]
        pairs.update((x, y) for x in bottom for y in top)
    elif seed < 0.35 and max_points >= 6:
        n_layers = 3
        layers = [[new_point(k), new_point(k)] for k in range(3)]
        for k in range(3):
            for j in range(k + 1, 3):
                pairs.update((x, y) for x in layers[k] for y in layers[j])
    else:
        for _ in range(rng.randint(2, min(4, max_points))):
            new_point(rng.randint(0, n_layers - 1))
        for x in order:
            for y in order:
                if layer_of[x] < layer_of[y] and rng.random() < 0.6:
                    pairs.add((x, y))
    spaces = {}
    for lvl in range(levels):
        if lvl > 0:
            budget = max_points - len(order)
            fresh = [
                new_point(rng.randint(0, n_layers - 1))
                for _ in range(rng.randint(0, min(2, budget)) if budget > 0 else 0)
            ]
            for x in order:
                for y in order:
                    if (
                        (x in fresh or y in fresh)
                        and layer_of[x] < layer_of[y]
                        and rng.random() < 0.5
                    ):
                        pairs.add((x, y))
        n = len(order)
        idx = {e: i for i, e in enumerate(order)}
        m = np.eye(n, dtype=bool)
        for x, y in pairs:
            m[idx[x], idx[y]] = True
        for k in range(n):
            m[m[:, k]] |= m[k]
        spaces[f"t{lvl + 1}"] = Preorder(list(order), m, _validated=True)
    cover_maps = {
        (u, v): {x: x for x in spaces[u].elements} for u, v in chain.covers()
    }
    return SpaceFiltration(chain, spaces, cover_maps)
