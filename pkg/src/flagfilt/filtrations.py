"""Filtration builders.

Three roads lead to a chain of nested clique complexes: thresholding a
weighted graph by its own weights, growing a neighborhood graph of a finite
metric space (Vietoris-Rips), and pushing a filtration of finite spaces
through quotient -> order complex -> 1-skeleton.  The chain case feeds the
barcode algorithm; general posets keep their functor form and are
summarized by rank invariants instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .complexes import (
    GraphMorphism,
    ReflexiveGraph,
    SimplicialComplex,
    SimplicialMap,
    clique_complex,
    induced_order_map,
    one_skeleton,
    order_complex,
    vertex_sort_key,
)
from .posets import MonotoneMap, Poset, Preorder, chain_poset, kolmogorov_quotient
from .weighted import PersistentGraph, PWeightedGraph, sublevel_graph

__all__ = [
    "MetricData",
    "ChainFiltration",
    "SpaceFiltration",
    "EdgeRow",
    "weight_filtration",
    "weighted_graph_from_edge_rows",
    "chain_poset_of_values",
    "distance_graph",
    "vietoris_rips",
    "metric_weighted_graph",
    "space_filtration_to_graph",
    "space_quotients",
    "space_order_complexes",
    "space_order_map",
    "chain_filtration_from_persistent_graph",
    "shortest_path_metric",
]


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(str(x))
    raise TypeError(f"cannot interpret {x!r} as an exact number")


def fraction_to_token(f: Fraction) -> str:
    """Canonical decimal string of an exact value, used as poset element
    names and grade labels.  Falls back to the float repr only for values
    with a non-terminating decimal expansion."""
    f = Fraction(f)
    if f.denominator == 1:
        return str(f.numerator)
    den = f.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return repr(float(f))
    k = max(twos, fives)
    scaled = f.numerator * 10**k // f.denominator
    sign = "-" if scaled < 0 else ""
    digits = str(abs(scaled)).rjust(k + 1, "0")
    whole, frac = digits[:-k], digits[-k:]
    return f"{sign}{whole}.{frac}"


@dataclass(frozen=True)
class MetricData:
    """Finite symmetric distance data with zero diagonal.

    The triangle inequality is deliberately not enforced: the neighborhood
    graph construction never uses it, and shortest-path matrices from user
    data may carry rounding noise.
    """

    points: tuple
    distances: Mapping[tuple, Fraction]

    @staticmethod
    def from_pairs(points: Sequence, pairs: Mapping[tuple, object]) -> "MetricData":
        pts = tuple(sorted(set(points), key=vertex_sort_key))
        dist: dict[tuple, Fraction] = {}
        for (a, b), d in pairs.items():
            if a == b:
                raise ValueError("diagonal distances are implicitly zero")
            key = tuple(sorted((a, b), key=vertex_sort_key))
            d = _as_fraction(d)
            if d < 0:
                raise ValueError(f"negative distance for {key!r}")
            if key in dist and dist[key] != d:
                raise ValueError(f"conflicting distances for {key!r}")
            dist[key] = d
        for a, b in _point_pairs(pts):
            if (a, b) not in dist:
                raise ValueError(f"missing distance for ({a!r}, {b!r})")
        return MetricData(pts, dist)

    def d(self, a, b) -> Fraction:
        if a == b:
            return Fraction(0)
        return self.distances[tuple(sorted((a, b), key=vertex_sort_key))]

    def pair_distances(self) -> tuple[tuple[tuple, Fraction], ...]:
        return tuple(sorted(self.distances.items()))


def _point_pairs(points: Sequence):
    for i, a in enumerate(points):
        for b in points[i + 1 :]:
            yield (a, b)


class ChainFiltration:
    """Strictly nested complexes over an increasing list of grades.

    ``grades`` are opaque labels in filtration order (numbers for metric or
    edge-weight pipelines, poset element names for abstract chains); the
    i-th complex is the state at the i-th grade.  Cells carry their birth
    index, and faces are always born no later than their cofaces.
    """

    __slots__ = ("grades", "complexes", "birth_index")

    def __init__(self, grades: Sequence, complexes: Sequence[SimplicialComplex]):
        if len(grades) != len(complexes):
            raise ValueError("one grade per complex required")
        self.grades = tuple(grades)
        self.complexes = tuple(complexes)
        for i in range(len(complexes) - 1):
            if not complexes[i].is_subcomplex_of(complexes[i + 1]):
                raise ValueError(f"complex at step {i} is not nested in step {i + 1}")
        birth: dict[tuple, int] = {}
        for i, cx in enumerate(self.complexes):
            for face in cx.faces():
                birth.setdefault(face, i)
        self.birth_index = birth

    def __len__(self) -> int:
        return len(self.grades)

    def final(self) -> SimplicialComplex:
        if not self.complexes:
            return SimplicialComplex(())
        return self.complexes[-1]

    def birth_of(self, face) -> int:
        return self.birth_index[tuple(sorted(face, key=vertex_sort_key))]

    def __repr__(self) -> str:
        return f"ChainFiltration({len(self)} steps, final {self.final()!r})"


EdgeRow = tuple  # (u, v, Fraction weight)


def chain_poset_of_values(values: Iterable[Fraction], direction: str) -> Poset:
    """Chain poset named by canonical decimal tokens, oriented so the poset
    order is the filtration order for the requested direction."""
    vals = sorted(set(_as_fraction(v) for v in values))
    if direction == "descending":
        vals = vals[::-1]
    elif direction != "ascending":
        raise ValueError("direction must be 'ascending' or 'descending'")
    return chain_poset([fraction_to_token(v) for v in vals])


def weighted_graph_from_edge_rows(
    rows: Sequence[EdgeRow],
    direction: str = "ascending",
    isolated_vertices: Sequence = (),
) -> PWeightedGraph:
    """Build the weighted graph of an edge list.

    Only edges carry data; a vertex is born with its first incident edge,
    i.e. at the minimal incident weight for ascending filtrations and at
    the maximal one for descending (the first threshold that shows any of
    its edges).  Isolated vertices are born at the first threshold.  The
    chain poset is oriented by ``direction`` so sublevels in poset order
    are exactly the requested filtration.
    """
    if not rows and not isolated_vertices:
        raise ValueError("empty edge list")
    weights = [_as_fraction(w) for (_, _, w) in rows]
    poset = chain_poset_of_values(weights or [Fraction(0)], direction)
    order = {e: i for i, e in enumerate(poset.elements)}
    edges = []
    edge_w: dict[tuple, str] = {}
    incident: dict[object, list[str]] = {}
    for (u, v, w), frac in zip(rows, weights):
        if u == v:
            raise ValueError(f"self-loop on {u!r} is not allowed")
        token = fraction_to_token(frac)
        key = tuple(sorted((u, v), key=vertex_sort_key))
        if key in edge_w:
            raise ValueError(f"duplicate edge {key!r}")
        edges.append(key)
        edge_w[key] = token
        incident.setdefault(u, []).append(token)
        incident.setdefault(v, []).append(token)
    vertex_w = {}
    first = poset.elements[0]
    for v, tokens in incident.items():
        vertex_w[v] = min(tokens, key=order.__getitem__)
    for v in isolated_vertices:
        if v not in vertex_w:
            vertex_w[v] = first
    graph = ReflexiveGraph(vertex_w.keys(), edges)
    return PWeightedGraph(graph, poset, vertex_w, edge_w)


def _direction_consistent(poset: Poset, direction: str) -> bool:
    """When all element names are numeric, the poset order must run in the
    declared numeric direction."""
    try:
        vals = [Fraction(e) for e in poset.sorted_elements()]
    except (ValueError, ZeroDivisionError):
        return True
    if direction == "ascending":
        return all(a < b for a, b in zip(vals, vals[1:]))
    return all(a > b for a, b in zip(vals, vals[1:]))


def weight_filtration(
    w: PWeightedGraph, direction: str = "ascending", max_degree: int = 1
) -> ChainFiltration:
    """Sublevel clique filtration of a weighted graph over a chain poset.

    Thresholds are the distinct weights in use, traversed from the bottom
    of the chain; ``direction`` states how that order relates to numeric
    weight values and is validated when the values are numeric.  Build the
    graph with :func:`weighted_graph_from_edge_rows` for the matching
    direction (descending needs vertices born at their maximal incident
    weight).
    """
    if direction not in ("ascending", "descending"):
        raise ValueError("direction must be 'ascending' or 'descending'")
    if not w.poset.is_chain():
        raise ValueError(
            "weight poset is not totally ordered; compute a rank invariant instead"
        )
    if not _direction_consistent(w.poset, direction):
        raise ValueError(
            f"the weight poset runs against the requested {direction} direction; "
            "rebuild the weighted graph for that direction (vertex births use the "
            "minimal incident weight ascending, maximal descending)"
        )
    used = set(w.vertex_weights.values()) | set(w.edge_weights.values())
    thresholds = [e for e in w.poset.sorted_elements() if e in used]
    complexes = [
        clique_complex(sublevel_graph(w, t), max_dim=max_degree + 1)
        for t in thresholds
    ]
    return ChainFiltration(thresholds, complexes)


def distance_graph(m: MetricData, eps) -> ReflexiveGraph:
    """Neighborhood graph: points joined when their distance is <= eps."""
    e = _as_fraction(eps)
    return ReflexiveGraph(
        m.points,
        [(a, b) for a, b in _point_pairs(m.points) if m.d(a, b) <= e],
    )


def vietoris_rips(
    m: MetricData, epsilons: Sequence, max_degree: int = 1
) -> ChainFiltration:
    """Clique complexes of the neighborhood graphs at increasing scales."""
    eps = [_as_fraction(e) for e in epsilons]
    if any(a >= b for a, b in zip(eps, eps[1:])):
        raise ValueError("epsilons must be strictly increasing")
    complexes = [
        clique_complex(distance_graph(m, e), max_dim=max_degree + 1) for e in eps
    ]
    return ChainFiltration(tuple(eps), complexes)


def metric_weighted_graph(m: MetricData, direction: str = "ascending") -> PWeightedGraph:
    """The complete graph on the points, edges weighted by distance and
    vertices born at scale zero; its sublevel filtration is the
    Vietoris-Rips filtration."""
    values = [d for _, d in m.pair_distances()] + [Fraction(0)]
    poset = chain_poset_of_values(values, direction)
    edges = {}
    for (a, b), d in m.distances.items():
        edges[(a, b)] = fraction_to_token(d)
    zero = fraction_to_token(Fraction(0))
    vertex_w = {p: zero for p in m.points}
    graph = ReflexiveGraph(m.points, edges.keys())
    return PWeightedGraph(graph, poset, vertex_w, edges)


# -- finite-space filtrations ----------------------------------------------


@dataclass(frozen=True)
class SpaceFiltration:
    """A functor from a poset into finite spaces (preorders).

    Structure maps are stored on cover pairs as plain element assignments;
    they must be continuous (order preserving) and functorial.
    """

    poset: Poset
    spaces: Mapping[str, Preorder]
    cover_maps: Mapping[tuple[str, str], Mapping[str, str]]

    def __post_init__(self) -> None:
        covers = set(self.poset.covers())
        if set(self.cover_maps) != covers:
            raise ValueError("cover maps do not match the poset covers")
        for v in self.poset.elements:
            if v not in self.spaces:
                raise ValueError(f"missing space at {v!r}")
        for (u, v), f in self.cover_maps.items():
            src, dst = self.spaces[u], self.spaces[v]
            for x in src.elements:
                if x not in f:
                    raise ValueError(f"map at cover ({u!r}, {v!r}) misses {x!r}")
                if f[x] not in dst:
                    raise ValueError(
                        f"map at cover ({u!r}, {v!r}) leaves the target space"
                    )
            for a, b in src.pairs():
                if not dst.leq(f[a], f[b]):
                    raise ValueError(f"map at cover ({u!r}, {v!r}) is not continuous")
        self._check_functorial()

    def _check_functorial(self) -> None:
        order = self.poset.sorted_elements()
        maps: dict[tuple[str, str], dict[str, str]] = {}
        for e in order:
            maps[(e, e)] = {x: x for x in self.spaces[e].elements}
        for v in order:
            below = [u for u in order if self.poset.leq(u, v) and u != v]
            for u in below:
                candidates = []
                for w in below + [v]:
                    if (w, v) in self.cover_maps and self.poset.leq(u, w):
                        g = self.cover_maps[(w, v)]
                        candidates.append({x: g[y] for x, y in maps[(u, w)].items()})
                first = candidates[0]
                for other in candidates[1:]:
                    if other != first:
                        raise ValueError(
                            f"structure maps are not functorial between {u!r} and {v!r}"
                        )
                maps[(u, v)] = first
        object.__setattr__(self, "_maps", maps)

    def map_between(self, u: str, v: str) -> dict[str, str]:
        if not self.poset.leq(u, v):
            raise ValueError(f"{u!r} is not below {v!r}")
        return dict(self._maps[(u, v)])

    def all_injective(self) -> bool:
        return all(
            len(set(f.values())) == len(self.spaces[u].elements)
            for (u, _), f in self.cover_maps.items()
        )


def space_quotients(
    sf: SpaceFiltration,
) -> tuple[dict[str, Poset], dict[str, dict[str, str]]]:
    """Kolmogorov quotient of every level, with the point -> class maps."""
    posets: dict[str, Poset] = {}
    classes: dict[str, dict[str, str]] = {}
    for v in sf.poset.elements:
        q, assignment = kolmogorov_quotient(sf.spaces[v])
        posets[v] = q
        classes[v] = assignment
    return posets, classes


def _quotient_map(
    sf: SpaceFiltration,
    posets: dict[str, Poset],
    classes: dict[str, dict[str, str]],
    u: str,
    v: str,
) -> MonotoneMap:
    raw = sf.map_between(u, v)
    assignment = {}
    for rep in posets[u].elements:
        assignment[rep] = classes[v][raw[rep]]
    return MonotoneMap(posets[u], posets[v], assignment)


def space_filtration_to_graph(sf: SpaceFiltration) -> PersistentGraph:
    """Replace each space by the 1-skeleton of the order complex of its
    quotient; persistent homology of the clique complexes of the result
    agrees with the persistent homology of the spaces.

    Structure maps must be injective (the graph realization of a filtration
    is only claimed under that hypothesis); otherwise this raises.
    """
    if not sf.all_injective():
        raise ValueError("structure maps must be injective")
    posets, classes = space_quotients(sf)
    graphs = {
        v: one_skeleton(order_complex(posets[v], max_dim=1))
        for v in sf.poset.elements
    }
    cover_maps = {}
    for (u, v) in sf.poset.covers():
        f = _quotient_map(sf, posets, classes, u, v)
        cover_maps[(u, v)] = GraphMorphism(graphs[u], graphs[v], dict(f.assignment))
    return PersistentGraph(sf.poset, graphs, cover_maps)


def space_order_complexes(
    sf: SpaceFiltration, max_dim: int | None = None
) -> dict[str, SimplicialComplex]:
    """Order complex of the quotient of every level (capped dimension)."""
    posets, _ = space_quotients(sf)
    return {v: order_complex(posets[v], max_dim) for v in sf.poset.elements}


def space_order_map(
    sf: SpaceFiltration, u: str, v: str, max_dim: int | None = None
) -> SimplicialMap:
    """Simplicial map between order complexes induced by the filtration."""
    posets, classes = space_quotients(sf)
    return induced_order_map(_quotient_map(sf, posets, classes, u, v), max_dim)


def chain_filtration_from_persistent_graph(
    f: PersistentGraph, max_degree: int = 1
) -> ChainFiltration:
    """Clique filtration of an injective persistent graph over a chain.

    Vertices are renamed by their image in the top level, turning the
    structure maps into literal inclusions; this is the canonical
    one-critical presentation of an injective chain filtration.
    """
    if not f.poset.is_chain():
        raise ValueError("persistent graph is not indexed by a chain")
    if not f.all_injective():
        raise ValueError("structure maps must be injective")
    order = f.poset.sorted_elements()
    if not order:
        return ChainFiltration((), ())
    top = order[-1]
    complexes = []
    for v in order:
        to_top = f.map_at(v, top)
        g = f.graphs[v]
        renamed = ReflexiveGraph(
            [to_top.vertex_map[x] for x in g.vertices],
            [(to_top.vertex_map[a], to_top.vertex_map[b]) for a, b in g.edges],
        )
        complexes.append(clique_complex(renamed, max_dim=max_degree + 1))
    return ChainFiltration(order, complexes)


def shortest_path_metric(
    rows: Sequence[EdgeRow], isolated_vertices: Sequence = ()
) -> tuple[MetricData, list[str]]:
    """Weighted shortest-path distances of a network, exactly over rationals.

    A disconnected network is restricted to its largest component (ties
    broken by the smallest vertex label) and a warning is returned.
    """
    import heapq

    adj: dict[object, list[tuple[object, Fraction]]] = {}
    for u, v, w in rows:
        d = _as_fraction(w)
        if d < 0:
            raise ValueError(
                f"edge ({u!r}, {v!r}) has negative weight {w}; shortest-path "
                "distances need nonnegative weights"
            )
        adj.setdefault(u, []).append((v, d))
        adj.setdefault(v, []).append((u, d))
    for v in isolated_vertices:
        adj.setdefault(v, [])
    graph = ReflexiveGraph(adj.keys(), [(u, v) for u, v, _ in rows])
    from .complexes import components

    comps = components(graph)
    warnings: list[str] = []
    if len(comps) > 1:
        comps = sorted(
            comps,
            key=lambda c: (-len(c), min(vertex_sort_key(v) for v in c)),
        )
        kept = comps[0]
        dropped = sum(len(c) for c in comps[1:])
        warnings.append(
            f"network is disconnected; metric restricted to the largest "
            f"component ({len(kept)} vertices, {dropped} dropped)"
        )
    else:
        kept = comps[0] if comps else frozenset()
    points = tuple(sorted(kept, key=vertex_sort_key))
    dist: dict[tuple, Fraction] = {}
    counter = 0
    for src in points:
        best: dict[object, Fraction] = {src: Fraction(0)}
        heap: list[tuple[Fraction, int, object]] = [(Fraction(0), counter, src)]
        counter += 1
        done: set = set()
        while heap:
            d, _, node = heapq.heappop(heap)
            if node in done:
                continue
            done.add(node)
            for nxt, w in adj[node]:
                if nxt not in kept:
                    continue
                nd = d + w
                if nxt not in best or nd < best[nxt]:
                    best[nxt] = nd
                    heapq.heappush(heap, (nd, counter, nxt))
                    counter += 1
        for dst in points:
            if vertex_sort_key(dst) > vertex_sort_key(src):
                dist[(src, dst)] = best[dst]
    return MetricData.from_pairs(points, dist), warnings
