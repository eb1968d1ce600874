"""Poset-weighted graphs and persistent graphs.

A weighted graph ``(G, w)`` carries a map from every cell (vertex or edge)
into a poset ``P`` that is monotone with respect to the face order: an edge
never has a smaller weight than its endpoints.  Sublevels at poset elements
give a persistence functor ``P -> graphs`` with inclusion structure maps;
conversely, a persistence functor can be flattened into a weighted disjoint
union of its level graphs, or - when every cell has a unique minimal birth
element - collapsed back into a weighted graph on the union of its cells.

The verifiers at the bottom machine-check the categorical facts this
package relies on: the round trip between weighted graphs and one-critical
inclusion functors, and the two unit/counit adjunctions between the
sublevel and level-union constructions.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterator, Mapping

from .complexes import GraphMorphism, ReflexiveGraph
from .posets import Poset
from .reports import TrialOutcome, VerificationReport

__all__ = [
    "PWeightedGraph",
    "PersistentGraph",
    "NaturalTransformation",
    "CriticalValueTable",
    "sublevel_graph",
    "sublevel_functor",
    "level_disjoint_union",
    "level_union_map",
    "is_one_critical",
    "critical_values",
    "from_persistent",
    "cell_image",
    "is_weight_preserving",
    "is_weight_bounded",
    "graph_morphisms_between",
    "natural_transformations_between",
    "weight_preserving_morphisms",
    "verify_equivalence",
    "verify_first_adjunction",
    "verify_second_adjunction",
]

Cell = tuple  # ("v", vertex) or ("e", (u, v))


def _edge_key(e: tuple) -> tuple:
    from .complexes import vertex_sort_key

    u, v = e
    return tuple(sorted((u, v), key=vertex_sort_key))


def weight_preserving_morphisms(
    source: PWeightedGraph, target: "PWeightedGraph"
) -> list[GraphMorphism]:
    """All weight-preserving morphisms between two weighted graphs, by
    brute force; tiny instances only."""
    return [
        m
        for m in graph_morphisms_between(source.graph, target.graph)
        if is_weight_preserving(m, source, target)
    ]


class PWeightedGraph:
    """A reflexive graph with a monotone weight map into a poset.

    Monotonicity means ``w(x) <= w(e)`` in the poset for every endpoint
    ``x`` of every edge ``e``; sublevels are then genuine subgraphs.
    """

    __slots__ = ("graph", "poset", "vertex_weights", "edge_weights")

    def __init__(
        self,
        graph: ReflexiveGraph,
        poset: Poset,
        vertex_weights: Mapping,
        edge_weights: Mapping,
    ) -> None:
        self.graph = graph
        self.poset = poset
        vw = {}
        for v in graph.vertices:
            if v not in vertex_weights:
                raise ValueError(f"missing weight for vertex {v!r}")
            w = vertex_weights[v]
            if w not in poset:
                raise ValueError(f"weight {w!r} of vertex {v!r} is not a poset element")
            vw[v] = w
        ew = {}
        for e in graph.edges:
            key = _edge_key(e)
            if key in edge_weights:
                w = edge_weights[key]
            elif (key[1], key[0]) in edge_weights:
                w = edge_weights[(key[1], key[0])]
            else:
                raise ValueError(f"missing weight for edge {key!r}")
            if w not in poset:
                raise ValueError(f"weight {w!r} of edge {key!r} is not a poset element")
            ew[key] = w
        self.vertex_weights = vw
        self.edge_weights = ew
        for (u, v), w in ew.items():
            for x in (u, v):
                if not poset.leq(vw[x], w):
                    raise ValueError(
                        f"weights are not monotone: vertex {x!r} has weight "
                        f"{vw[x]!r}, incident edge has weight {w!r}"
                    )

    def weight_of_vertex(self, v):
        return self.vertex_weights[v]

    def weight_of_edge(self, u, v=None):
        key = _edge_key(u if v is None else (u, v))
        return self.edge_weights[key]

    def cells(self) -> Iterator[Cell]:
        for v in self.graph.vertices:
            yield ("v", v)
        for e in self.graph.sorted_edges():
            yield ("e", e)

    def cell_weight(self, cell: Cell):
        kind, payload = cell
        return self.vertex_weights[payload] if kind == "v" else self.edge_weights[payload]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PWeightedGraph):
            return NotImplemented
        return (
            self.graph == other.graph
            and self.poset == other.poset
            and self.vertex_weights == other.vertex_weights
            and self.edge_weights == other.edge_weights
        )

    def __hash__(self) -> int:
        return hash(
            (
                self.graph,
                self.poset,
                tuple(sorted(self.vertex_weights.items(), key=repr)),
                tuple(sorted(self.edge_weights.items(), key=repr)),
            )
        )

    def __repr__(self) -> str:
        return (
            f"PWeightedGraph({len(self.graph.vertices)} vertices, "
            f"{len(self.graph.edges)} edges over {len(self.poset)} poset elements)"
        )


def sublevel_graph(w: PWeightedGraph, v: str) -> ReflexiveGraph:
    """Subgraph of all cells with weight <= v; monotonicity guarantees that
    every surviving edge keeps its endpoints."""
    if v not in w.poset:
        raise KeyError(f"{v!r} is not an element of the weight poset")
    verts = [x for x, wx in w.vertex_weights.items() if w.poset.leq(wx, v)]
    edges = [e for e, we in w.edge_weights.items() if w.poset.leq(we, v)]
    return ReflexiveGraph(verts, edges)


class PersistentGraph:
    """A functor from a poset into reflexive graphs.

    Structure maps are stored on cover pairs only and composed on demand;
    functoriality (all cover paths between two elements compose to the same
    morphism) is validated at construction, which also makes on-demand
    composition well defined.
    """

    __slots__ = ("poset", "graphs", "cover_maps", "_maps")

    def __init__(
        self,
        poset: Poset,
        graphs: Mapping[str, ReflexiveGraph],
        cover_maps: Mapping[tuple[str, str], GraphMorphism],
    ) -> None:
        self.poset = poset
        self.graphs = {v: graphs[v] for v in poset.elements}
        covers = set(poset.covers())
        if set(cover_maps) != covers:
            missing = covers - set(cover_maps)
            extra = set(cover_maps) - covers
            raise ValueError(
                f"cover maps mismatch: missing {sorted(missing)}, extra {sorted(extra)}"
            )
        for (u, v), m in cover_maps.items():
            if m.source != self.graphs[u] or m.target != self.graphs[v]:
                raise ValueError(f"cover map for ({u!r}, {v!r}) has wrong endpoints")
        self.cover_maps = dict(cover_maps)
        self._maps: dict[tuple[str, str], GraphMorphism] = {}
        self._close()

    def _close(self) -> None:
        order = self.poset.sorted_elements()
        for e in order:
            self._maps[(e, e)] = GraphMorphism.identity(self.graphs[e])
        for v in order:
            below = [u for u in order if self.poset.leq(u, v) and u != v]
            for u in below:
                candidates = []
                for w in below + [v]:
                    if (w, v) in self.cover_maps and self.poset.leq(u, w):
                        candidates.append(self.cover_maps[(w, v)].compose(self._maps[(u, w)]))
                if not candidates:
                    raise AssertionError(f"no cover path from {u!r} to {v!r}")
                first = candidates[0]
                for other in candidates[1:]:
                    if not first.same_assignment(other):
                        raise ValueError(
                            f"structure maps are not functorial between {u!r} and {v!r}"
                        )
                self._maps[(u, v)] = first

    @classmethod
    def from_inclusions(
        cls, poset: Poset, graphs: Mapping[str, ReflexiveGraph]
    ) -> "PersistentGraph":
        cover_maps = {
            (u, v): GraphMorphism.inclusion(graphs[u], graphs[v])
            for u, v in poset.covers()
        }
        return cls(poset, graphs, cover_maps)

    def graph_at(self, v: str) -> ReflexiveGraph:
        return self.graphs[v]

    def map_at(self, u: str, v: str) -> GraphMorphism:
        if not self.poset.leq(u, v):
            raise ValueError(f"{u!r} is not below {v!r}")
        return self._maps[(u, v)]

    def all_inclusions(self) -> bool:
        return all(m.is_inclusion() for m in self.cover_maps.values())

    def all_injective(self) -> bool:
        return all(m.is_injective() for m in self.cover_maps.values())

    def pointwise_equal(self, other: "PersistentGraph") -> bool:
        if self.poset != other.poset:
            return False
        if any(self.graphs[v] != other.graphs[v] for v in self.poset.elements):
            return False
        return all(
            self.cover_maps[c].same_assignment(other.cover_maps[c])
            for c in self.cover_maps
        )

    def __repr__(self) -> str:
        sizes = [len(self.graphs[v].vertices) for v in self.poset.elements]
        return f"PersistentGraph(levels={len(self.poset)}, vertex counts={sizes})"


@dataclass(frozen=True)
class NaturalTransformation:
    """Level-indexed family of graph morphisms commuting with the structure
    maps of its endpoints."""

    source: PersistentGraph
    target: PersistentGraph
    components: Mapping[str, GraphMorphism]

    def __post_init__(self) -> None:
        if self.source.poset != self.target.poset:
            raise ValueError("endpoints live over different posets")
        for v in self.source.poset.elements:
            comp = self.components[v]
            if comp.source != self.source.graphs[v] or comp.target != self.target.graphs[v]:
                raise ValueError(f"component at {v!r} has wrong endpoints")
        for (u, v), up in self.source.cover_maps.items():
            left = self.components[v].compose(up)
            right = self.target.cover_maps[(u, v)].compose(self.components[u])
            if not left.same_assignment(right):
                raise ValueError(f"naturality fails on cover ({u!r}, {v!r})")

    def at(self, v: str) -> GraphMorphism:
        return self.components[v]


def sublevel_functor(w: PWeightedGraph) -> PersistentGraph:
    """The persistence functor of a weighted graph: sublevel graphs with
    inclusion structure maps.  Always one-critical, with each cell born at
    its own weight."""
    graphs = {v: sublevel_graph(w, v) for v in w.poset.elements}
    return PersistentGraph.from_inclusions(w.poset, graphs)


def level_disjoint_union(f: PersistentGraph) -> PWeightedGraph:
    """Flatten a persistence functor into one weighted graph.

    Cells of the level graph at ``v`` are tagged ``(cell, v)`` and weighted
    ``v``; the result is a disjoint union of uniformly weighted components,
    and morphisms flattened alongside (see :func:`level_union_map`)
    preserve weights.
    """
    verts = []
    edges = []
    vws = {}
    ews = {}
    for v in f.poset.elements:
        g = f.graphs[v]
        for x in g.vertices:
            verts.append((x, v))
            vws[(x, v)] = v
        for a, b in g.edges:
            e = _edge_key(((a, v), (b, v)))
            edges.append(e)
            ews[e] = v
    return PWeightedGraph(ReflexiveGraph(verts, edges), f.poset, vws, ews)


def level_union_map(mu: NaturalTransformation) -> GraphMorphism:
    """Flattened morphism between level unions: (x, v) -> (mu_v(x), v)."""
    src = level_disjoint_union(mu.source).graph
    dst = level_disjoint_union(mu.target).graph
    vmap = {
        (x, v): (mu.components[v].vertex_map[x], v)
        for v in mu.source.poset.elements
        for x in mu.source.graphs[v].vertices
    }
    return GraphMorphism(src, dst, vmap)


@dataclass(frozen=True)
class CriticalValueTable:
    """Unique minimal birth element per cell of a one-critical functor."""

    vertex_births: Mapping
    edge_births: Mapping


def _birth_sets(f: PersistentGraph) -> tuple[dict, dict]:
    vertex_births: dict = {}
    edge_births: dict = {}
    for v in f.poset.elements:
        g = f.graphs[v]
        for x in g.vertices:
            vertex_births.setdefault(x, set()).add(v)
        for e in g.edges:
            edge_births.setdefault(e, set()).add(v)
    return vertex_births, edge_births


def _least_element(p: Poset, subset: set) -> str | None:
    for m in subset:
        if all(p.leq(m, x) for x in subset):
            return m
    return None


def critical_values(f: PersistentGraph) -> CriticalValueTable | None:
    """Birth table of an inclusion functor, or None when some cell has no
    least birth element (i.e. the functor is not one-critical).

    Raises ``ValueError`` when structure maps are not inclusions: births
    only make sense when cells keep their identity along the filtration.
    """
    if not f.all_inclusions():
        raise ValueError("structure maps are not inclusions")
    vb, eb = _birth_sets(f)
    vertex_births = {}
    for x, levels in vb.items():
        m = _least_element(f.poset, levels)
        if m is None:
            return None
        vertex_births[x] = m
    edge_births = {}
    for e, levels in eb.items():
        m = _least_element(f.poset, levels)
        if m is None:
            return None
        edge_births[e] = m
    return CriticalValueTable(vertex_births, edge_births)


def is_one_critical(f: PersistentGraph) -> bool:
    """True iff every cell that ever appears has a least birth element."""
    return critical_values(f) is not None


def from_persistent(f: PersistentGraph) -> PWeightedGraph:
    """Collapse a one-critical inclusion functor to a weighted graph.

    The graph is the union of all level graphs and each cell is weighted by
    its least birth element; the sublevel functor of the result agrees with
    the input pointwise.
    """
    table = critical_values(f)
    if table is None:
        raise ValueError("functor is not one-critical")
    verts = set(table.vertex_births)
    edges = set(table.edge_births)
    return PWeightedGraph(
        ReflexiveGraph(verts, edges),
        f.poset,
        dict(table.vertex_births),
        dict(table.edge_births),
    )


# -- morphism helpers ------------------------------------------------------


def cell_image(m: GraphMorphism, cell: Cell) -> Cell:
    """Image of a cell under a graph morphism; an edge whose endpoints
    collapse maps onto a vertex."""
    kind, payload = cell
    if kind == "v":
        return ("v", m.vertex_map[payload])
    a, b = payload
    ia, ib = m.vertex_map[a], m.vertex_map[b]
    if ia == ib:
        return ("v", ia)
    return ("e", _edge_key((ia, ib)))


def is_weight_preserving(
    m: GraphMorphism, source: PWeightedGraph, target: PWeightedGraph
) -> bool:
    """Weight of every cell image equals the weight of the cell."""
    for cell in source.cells():
        if target.cell_weight(cell_image(m, cell)) != source.cell_weight(cell):
            return False
    return True


def is_weight_bounded(
    m: GraphMorphism, source: PWeightedGraph, target: PWeightedGraph
) -> bool:
    """Weight of every cell image is below the weight of the cell, i.e. the
    morphism maps sublevels into sublevels."""
    p = target.poset
    for cell in source.cells():
        if not p.leq(target.cell_weight(cell_image(m, cell)), source.cell_weight(cell)):
            return False
    return True


_ENUMERATION_CAP = 200_000


def graph_morphisms_between(g: ReflexiveGraph, h: ReflexiveGraph) -> list[GraphMorphism]:
    """All graph morphisms g -> h, by brute-force vertex assignment."""
    if not g.vertices:
        return [GraphMorphism(g, h, {})]
    if not h.vertices:
        return []
    total = len(h.vertices) ** len(g.vertices)
    if total > _ENUMERATION_CAP:
        raise ValueError(f"too many candidate assignments ({total})")
    out = []
    for choice in itertools.product(h.vertices, repeat=len(g.vertices)):
        vmap = dict(zip(g.vertices, choice))
        if all(h.adjacent(vmap[u], vmap[v]) for u, v in g.edges):
            out.append(GraphMorphism(g, h, vmap))
    return out


def natural_transformations_between(
    f: PersistentGraph, g: PersistentGraph
) -> list[NaturalTransformation]:
    """All natural transformations f -> g; exponential, intended for the
    uniqueness checks on very small instances only."""
    order = f.poset.sorted_elements()
    per_level = {v: graph_morphisms_between(f.graphs[v], g.graphs[v]) for v in order}
    out: list[NaturalTransformation] = []

    def extend(i: int, chosen: dict[str, GraphMorphism]) -> None:
        if i == len(order):
            out.append(NaturalTransformation(f, g, dict(chosen)))
            return
        v = order[i]
        for comp in per_level[v]:
            ok = True
            for u, w in f.cover_maps:
                if w == v and u in chosen:
                    left = comp.compose(f.cover_maps[(u, v)])
                    right = g.cover_maps[(u, v)].compose(chosen[u])
                    if not left.same_assignment(right):
                        ok = False
                        break
                if u == v and w in chosen:
                    left = chosen[w].compose(f.cover_maps[(v, w)])
                    right = g.cover_maps[(v, w)].compose(comp)
                    if not left.same_assignment(right):
                        ok = False
                        break
            if ok:
                chosen[v] = comp
                extend(i + 1, chosen)
                del chosen[v]

    extend(0, {})
    return out


# -- verifiers -------------------------------------------------------------


def verify_equivalence(
    p: Poset, trials: int = 50, seed: int = 0
) -> VerificationReport:
    """Round trips between weighted graphs and one-critical functors.

    Per trial: a random weighted graph must survive
    ``from_persistent(sublevel_functor(.))`` unchanged, with pointwise equal
    sublevel functors; a random inclusion functor must either rebuild
    pointwise from its collapsed weighted graph (when one-critical) or make
    the collapse fail (when not).
    """
    from .generators import random_inclusion_functor, random_weighted_graph

    rng = random.Random(seed)
    outcomes = []
    for t in range(trials):
        detail = ""
        ok = True
        w = random_weighted_graph(rng, p)
        f = sublevel_functor(w)
        try:
            if not is_one_critical(f):
                ok, detail = False, "sublevel functor is not one-critical"
            w2 = from_persistent(f)
            if ok and w2 != w:
                ok, detail = False, "collapse of the sublevel functor changed the graph"
            if ok and not sublevel_functor(w2).pointwise_equal(f):
                ok, detail = False, "rebuilt functor differs pointwise"
            if ok:
                table = critical_values(f)
                claimed = dict(table.vertex_births) | dict(table.edge_births)
                actual = dict(w.vertex_weights) | dict(w.edge_weights)
                if claimed != actual:
                    ok, detail = False, "birth table does not equal the weight map"
        except ValueError as exc:
            ok, detail = False, f"unexpected error: {exc}"
        if ok:
            g = random_inclusion_functor(rng, p)
            if is_one_critical(g):
                g2 = sublevel_functor(from_persistent(g))
                if not g2.pointwise_equal(g):
                    ok, detail = False, "one-critical functor not rebuilt pointwise"
            else:
                try:
                    from_persistent(g)
                    ok, detail = False, "collapse of a non-one-critical functor succeeded"
                except ValueError:
                    pass
        outcomes.append(TrialOutcome(t, ok, detail))
    return VerificationReport("equivalence", tuple(outcomes))


def _unit_into_union(w: PWeightedGraph) -> GraphMorphism:
    """The unit at (X, w): send each cell into the level copy at its own
    weight inside the flattened sublevel functor."""
    union = level_disjoint_union(sublevel_functor(w))
    vmap = {x: (x, w.vertex_weights[x]) for x in w.graph.vertices}
    return GraphMorphism(w.graph, union.graph, vmap)


def verify_first_adjunction(
    p: Poset, trials: int = 50, seed: int = 0, uniqueness_cell_cap: int = 8
) -> VerificationReport:
    """Sublevel functor (weight-preserving side) is left adjoint to the
    level union.

    Per trial a random functor ``f`` and a random weight-preserving
    morphism ``alpha`` from a weighted graph into its level union are
    generated jointly; the trial checks that the transposed natural
    transformation composed with the unit recovers ``alpha`` and, on
    sources with at most ``uniqueness_cell_cap`` cells, that it is the only
    natural transformation doing so.
    """
    from .generators import random_functor, random_morphism_into_union

    rng = random.Random(seed)
    outcomes = []
    for t in range(trials):
        ok, detail = True, ""
        f = random_functor(rng, p)
        union = level_disjoint_union(f)
        w, alpha = random_morphism_into_union(rng, f, union)
        if w.graph.is_null():
            outcomes.append(TrialOutcome(t, True, "vacuous: empty source"))
            continue
        if not is_weight_preserving(alpha, w, union):
            outcomes.append(TrialOutcome(t, False, "generator produced a bad morphism"))
            continue
        sub = sublevel_functor(w)
        # transpose alpha level by level: push the level copy of a cell up
        # from its weight to the ambient level
        components = {}
        try:
            for v in p.elements:
                xv = sub.graphs[v]
                vmap = {}
                for x in xv.vertices:
                    a, u = alpha.vertex_map[x]
                    vmap[x] = f.map_at(u, v).vertex_map[a]
                components[v] = GraphMorphism(xv, f.graphs[v], vmap)
            transposed = NaturalTransformation(sub, f, components)
        except ValueError as exc:
            outcomes.append(TrialOutcome(t, False, f"transpose is not natural: {exc}"))
            continue
        unit = _unit_into_union(w)
        flattened = level_union_map(transposed)
        recovered = flattened.compose(unit)
        if not recovered.same_assignment(alpha):
            ok, detail = False, "triangle does not commute"
        if ok and len(w.graph.vertices) + len(w.graph.edges) <= uniqueness_cell_cap:
            matches = 0
            for cand in natural_transformations_between(sub, f):
                if level_union_map(cand).compose(unit).same_assignment(alpha):
                    matches += 1
            if matches != 1:
                ok, detail = False, f"expected a unique transpose, found {matches}"
        outcomes.append(TrialOutcome(t, ok, detail))
    return VerificationReport("adjunction-1", tuple(outcomes))


def verify_second_adjunction(
    p: Poset, trials: int = 50, seed: int = 0
) -> VerificationReport:
    """Level union (on inclusion functors) is left adjoint to the sublevel
    functor: both unit/counit composites are identities, checked cell by
    cell.

    For a functor ``f``: flattening, taking sublevels, and flattening again
    then projecting tags away must be the identity on the flattened graph.
    For a weighted graph ``(G, w)``: at every level ``v``, sending ``x`` to
    ``(x, v)`` inside the sublevel of the flattened functor and projecting
    back must be the identity on the sublevel at ``v``.
    """
    from .generators import random_inclusion_functor, random_weighted_graph

    rng = random.Random(seed)
    outcomes = []
    for t in range(trials):
        ok, detail = True, ""
        f = random_inclusion_functor(rng, p)
        union = level_disjoint_union(f)  # (coprod_v f(v), level weights)
        sub_of_union = sublevel_functor(union)
        try:
            # unit legs at f: x in f(v) -> (x, v) lands in the sublevel of
            # the union at v; each leg must be a graph morphism
            for v in p.elements:
                GraphMorphism(
                    f.graphs[v],
                    sub_of_union.graphs[v],
                    {x: (x, v) for x in f.graphs[v].vertices},
                )
            # flattened unit on the union: (x, v) -> ((x, v), v)
            flat_twice = level_disjoint_union(sub_of_union)
            unit_vmap = {(x, v): ((x, v), v) for (x, v) in union.graph.vertices}
            flattened_unit = GraphMorphism(union.graph, flat_twice.graph, unit_vmap)
            if not is_weight_preserving(flattened_unit, union, flat_twice):
                ok, detail = False, "flattened unit does not preserve weights"
            # counit at the union: forget the outer tag
            counit_vmap = {(cell, v): cell for (cell, v) in flat_twice.graph.vertices}
            counit = GraphMorphism(flat_twice.graph, union.graph, counit_vmap)
            if ok and not is_weight_bounded(counit, flat_twice, union):
                ok, detail = False, "counit does not respect sublevels"
            # first identity: counit . flattened unit = id on the union
            composite = counit.compose(flattened_unit)
            if ok and not composite.same_assignment(GraphMorphism.identity(union.graph)):
                ok, detail = False, "counit/unit composite is not the identity"
        except ValueError as exc:
            ok, detail = False, f"unit or counit is not a morphism: {exc}"
        if ok:
            w = random_weighted_graph(rng, p)
            sub = sublevel_functor(w)
            u2 = level_disjoint_union(sub)
            sub2 = sublevel_functor(u2)
            try:
                for v in p.elements:
                    gv = sub.graphs[v]
                    into = GraphMorphism(
                        gv, sub2.graphs[v], {x: (x, v) for x in gv.vertices}
                    )
                    back = GraphMorphism(
                        sub2.graphs[v], gv, {(x, u): x for (x, u) in sub2.graphs[v].vertices}
                    )
                    if not back.compose(into).same_assignment(GraphMorphism.identity(gv)):
                        ok, detail = False, f"levelwise composite not identity at {v!r}"
                        break
            except ValueError as exc:
                ok, detail = False, f"levelwise maps invalid: {exc}"
        outcomes.append(TrialOutcome(t, ok, detail))
    return VerificationReport("adjunction-2", tuple(outcomes))
