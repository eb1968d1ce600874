"""Abstract simplicial complexes, reflexive graphs, and the maps between
poset, complex and graph worlds: order complex, face poset, barycentric
subdivision, skeleta, and the clique functor.

Vertices are opaque identifiers (strings, ints, or nested tuples produced by
tagged disjoint unions); faces are tuples strictly sorted by a canonical key
so every complex has a fixed total vertex order, which later fixes boundary
signs.  Values are immutable after construction.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .posets import MonotoneMap, Poset, is_monotone

__all__ = [
    "vertex_sort_key",
    "vertex_label",
    "SimplicialComplex",
    "ReflexiveGraph",
    "SimplicialMap",
    "GraphMorphism",
    "order_complex",
    "face_poset",
    "face_label",
    "barycentric_subdivision",
    "k_skeleton",
    "one_skeleton",
    "clique_complex",
    "is_flag",
    "induced_order_map",
    "clique_map",
    "component_count",
    "components",
]

Vertex = object
Face = tuple


def vertex_sort_key(v):
    """Total order on mixed identifier types (ints, strings, nested tuples)."""
    if isinstance(v, bool):
        raise TypeError("bool is not a valid vertex identifier")
    if isinstance(v, int):
        return (0, v)
    if isinstance(v, str):
        return (1, v)
    if isinstance(v, tuple):
        return (2, tuple(vertex_sort_key(x) for x in v))
    raise TypeError(f"unsupported vertex identifier {v!r}")


def vertex_label(v) -> str:
    """Deterministic printable name for a vertex identifier."""
    if isinstance(v, str):
        return v
    if isinstance(v, int):
        return str(v)
    if isinstance(v, tuple):
        return "(" + ",".join(vertex_label(x) for x in v) + ")"
    raise TypeError(f"unsupported vertex identifier {v!r}")


def _normalize_face(face: Iterable) -> Face:
    items = tuple(face)
    if not items:
        raise ValueError("the empty tuple is not a face")
    if len(set(items)) != len(items):
        raise ValueError(f"face {items!r} repeats a vertex")
    return tuple(sorted(items, key=vertex_sort_key))


class SimplicialComplex:
    """Downward-closed family of faces over a totally ordered vertex set.

    The empty complex (no faces, dimension -1) is allowed; it is what empty
    sublevels of a filtration produce.
    """

    __slots__ = ("_faces_by_dim", "vertices")

    def __init__(self, faces: Iterable[Iterable], *, closure: bool = False) -> None:
        by_dim: dict[int, set[Face]] = {}
        for f in faces:
            face = _normalize_face(f)
            by_dim.setdefault(len(face) - 1, set()).add(face)
        if closure and by_dim:
            for d in range(max(by_dim), 0, -1):
                for face in list(by_dim.get(d, ())):
                    for sub in itertools.combinations(face, d):
                        by_dim.setdefault(d - 1, set()).add(sub)
        self._faces_by_dim: dict[int, frozenset[Face]] = {
            d: frozenset(fs) for d, fs in sorted(by_dim.items())
        }
        self.vertices: tuple = tuple(
            v for (v,) in sorted(self._faces_by_dim.get(0, frozenset()))
        )
        self._validate()

    def _validate(self) -> None:
        for d, faces in self._faces_by_dim.items():
            if d == 0:
                continue
            below = self._faces_by_dim.get(d - 1, frozenset())
            for face in faces:
                for sub in itertools.combinations(face, d):
                    if sub not in below:
                        raise ValueError(
                            f"complex is not downward closed: {face!r} present "
                            f"but its facet {sub!r} is missing"
                        )

    # -- queries ---------------------------------------------------------

    @property
    def dim(self) -> int:
        return max(self._faces_by_dim, default=-1)

    def is_empty(self) -> bool:
        return not self._faces_by_dim

    def faces(self, dim: int | None = None) -> tuple[Face, ...]:
        """Faces of one dimension (or all), in canonical sorted order."""
        if dim is not None:
            return tuple(sorted(self._faces_by_dim.get(dim, frozenset())))
        out: list[Face] = []
        for d in sorted(self._faces_by_dim):
            out.extend(sorted(self._faces_by_dim[d]))
        return tuple(out)

    def face_set(self) -> frozenset[Face]:
        return frozenset(f for fs in self._faces_by_dim.values() for f in fs)

    def has_face(self, face: Iterable) -> bool:
        f = tuple(sorted(face, key=vertex_sort_key))
        return f in self._faces_by_dim.get(len(f) - 1, frozenset())

    def face_counts(self) -> tuple[int, ...]:
        return tuple(len(self._faces_by_dim.get(d, ())) for d in range(self.dim + 1))

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * c for d, c in enumerate(self.face_counts()))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self._faces_by_dim == other._faces_by_dim

    def __hash__(self) -> int:
        return hash(tuple(sorted((d, fs) for d, fs in self._faces_by_dim.items())))

    def __repr__(self) -> str:
        return f"SimplicialComplex(dim={self.dim}, f={self.face_counts()})"

    def is_subcomplex_of(self, other: "SimplicialComplex") -> bool:
        return all(
            fs <= other._faces_by_dim.get(d, frozenset())
            for d, fs in self._faces_by_dim.items()
        )


class ReflexiveGraph:
    """Vertex set plus undirected edges; every vertex carries an implicit
    self-loop, so the graph is exactly a simplicial complex of dimension <= 1.
    The null graph (no vertices) is a valid value.
    """

    __slots__ = ("vertices", "edges")

    def __init__(self, vertices: Iterable = (), edges: Iterable[tuple] = ()) -> None:
        self.vertices: tuple = tuple(sorted(set(vertices), key=vertex_sort_key))
        vset = set(self.vertices)
        es = set()
        for e in edges:
            u, v = e
            if u == v:
                raise ValueError(f"explicit self-loop on {u!r}; self-loops are implicit")
            if u not in vset or v not in vset:
                raise ValueError(f"edge {e!r} mentions a missing vertex")
            es.add(tuple(sorted((u, v), key=vertex_sort_key)))
        self.edges: frozenset[tuple] = frozenset(es)

    def sorted_edges(self) -> tuple[tuple, ...]:
        return tuple(sorted(self.edges, key=lambda e: tuple(map(vertex_sort_key, e))))

    def has_edge(self, u, v) -> bool:
        return tuple(sorted((u, v), key=vertex_sort_key)) in self.edges

    def adjacent(self, u, v) -> bool:
        """Adjacency in the reflexive sense: equal or joined by an edge."""
        return u == v or self.has_edge(u, v)

    def neighbors(self, v) -> tuple:
        out = [u if w == v else w for (u, w) in self.edges if v in (u, w)]
        return tuple(sorted(out, key=vertex_sort_key))

    def as_complex(self) -> SimplicialComplex:
        faces: list[tuple] = [(v,) for v in self.vertices]
        faces.extend(self.edges)
        return SimplicialComplex(faces)

    def is_subgraph_of(self, other: "ReflexiveGraph") -> bool:
        return set(self.vertices) <= set(other.vertices) and self.edges <= other.edges

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ReflexiveGraph):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.vertices, self.edges))

    def __repr__(self) -> str:
        return f"ReflexiveGraph({len(self.vertices)} vertices, {len(self.edges)} edges)"

    def is_null(self) -> bool:
        return not self.vertices


@dataclass(frozen=True)
class SimplicialMap:
    """Vertex assignment under which the image of every face is a face.

    Images are deduplicated: a face whose vertices collapse maps onto a
    lower-dimensional face of the target.
    """

    source: SimplicialComplex
    target: SimplicialComplex
    vertex_map: Mapping

    def __post_init__(self) -> None:
        for v in self.source.vertices:
            if v not in self.vertex_map:
                raise ValueError(f"vertex map is not total: missing {v!r}")
        for face in self.source.faces():
            if not self.target.has_face(self.image(face)):
                raise ValueError(
                    f"image of face {face!r} is not a face of the target"
                )

    def __call__(self, v):
        return self.vertex_map[v]

    def image(self, face: Face) -> Face:
        return tuple(sorted({self.vertex_map[v] for v in face}, key=vertex_sort_key))

    def compose(self, other: "SimplicialMap") -> "SimplicialMap":
        """self after other."""
        return SimplicialMap(
            other.source,
            self.target,
            {v: self.vertex_map[other.vertex_map[v]] for v in other.source.vertices},
        )

    @staticmethod
    def identity(s: SimplicialComplex) -> "SimplicialMap":
        return SimplicialMap(s, s, {v: v for v in s.vertices})

    @staticmethod
    def inclusion(s: SimplicialComplex, t: SimplicialComplex) -> "SimplicialMap":
        if not s.is_subcomplex_of(t):
            raise ValueError("source is not a subcomplex of the target")
        return SimplicialMap(s, t, {v: v for v in s.vertices})


@dataclass(frozen=True)
class GraphMorphism:
    """Morphism of reflexive graphs: endpoints of an edge stay adjacent, where
    adjacency includes equality (an edge may collapse onto a vertex)."""

    source: ReflexiveGraph
    target: ReflexiveGraph
    vertex_map: Mapping

    def __post_init__(self) -> None:
        tset = set(self.target.vertices)
        for v in self.source.vertices:
            if v not in self.vertex_map:
                raise ValueError(f"vertex map is not total: missing {v!r}")
            if self.vertex_map[v] not in tset:
                raise ValueError(f"{v!r} maps outside the target graph")
        for u, v in self.source.edges:
            if not self.target.adjacent(self.vertex_map[u], self.vertex_map[v]):
                raise ValueError(
                    f"edge ({u!r}, {v!r}) does not map to an edge or vertex"
                )

    def __call__(self, v):
        return self.vertex_map[v]

    def compose(self, other: "GraphMorphism") -> "GraphMorphism":
        """self after other."""
        return GraphMorphism(
            other.source,
            self.target,
            {v: self.vertex_map[other.vertex_map[v]] for v in other.source.vertices},
        )

    def is_inclusion(self) -> bool:
        return self.source.is_subgraph_of(self.target) and all(
            self.vertex_map[v] == v for v in self.source.vertices
        )

    def is_injective(self) -> bool:
        img = [self.vertex_map[v] for v in self.source.vertices]
        return len(set(img)) == len(img)

    @staticmethod
    def identity(g: ReflexiveGraph) -> "GraphMorphism":
        return GraphMorphism(g, g, {v: v for v in g.vertices})

    @staticmethod
    def inclusion(g: ReflexiveGraph, h: ReflexiveGraph) -> "GraphMorphism":
        if not g.is_subgraph_of(h):
            raise ValueError("source is not a subgraph of the target")
        return GraphMorphism(g, h, {v: v for v in g.vertices})

    def same_assignment(self, other: "GraphMorphism") -> bool:
        return self.source == other.source and all(
            self.vertex_map[v] == other.vertex_map[v] for v in self.source.vertices
        )


# -- poset <-> complex ----------------------------------------------------


def order_complex(p: Poset, max_dim: int | None = None) -> SimplicialComplex:
    """Complex whose faces are the nonempty chains of the poset.

    ``max_dim`` caps the chain length at ``max_dim + 1`` elements; homology
    in degree n only ever needs chains of dimension n + 1.
    """
    strict_above: dict[str, list[str]] = {}
    order = p.sorted_elements()
    rank = {e: i for i, e in enumerate(order)}
    for e in p.elements:
        ups = [u for u in p.upset(e) if u != e]
        strict_above[e] = sorted(ups, key=lambda u: rank[u])
    cap = len(p) if max_dim is None else max_dim + 1
    faces: list[tuple] = []

    def grow(chain: list[str], candidates: Sequence[str]) -> None:
        faces.append(tuple(chain))
        if len(chain) >= cap:
            return
        for c in candidates:
            grow(chain + [c], strict_above[c])

    for e in order:
        grow([e], strict_above[e])
    return SimplicialComplex(faces)


def face_label(face: Face) -> str:
    """Canonical name of a face when faces become poset elements/vertices."""
    return "|".join(vertex_label(v) for v in face)


def face_poset(s: SimplicialComplex) -> Poset:
    """Poset of the faces of the complex ordered by inclusion.

    Elements are the canonical face labels; an empty complex gives the empty
    poset.
    """
    faces = s.faces()
    labels = [face_label(f) for f in faces]
    if len(set(labels)) != len(labels):
        raise ValueError("face labels collide; rename vertices")
    n = len(faces)
    m = np.zeros((n, n), dtype=bool)
    sets = [set(f) for f in faces]
    for i in range(n):
        for j in range(n):
            m[i, j] = sets[i] <= sets[j]
    return Poset(labels, m, _validated=True)


def barycentric_subdivision(s: SimplicialComplex) -> SimplicialComplex:
    """Order complex of the face poset: one vertex per face, one face per
    chain of inclusions.  The result is always a flag complex."""
    return order_complex(face_poset(s))


def k_skeleton(s: SimplicialComplex, k: int) -> SimplicialComplex:
    if k < 0:
        raise ValueError("skeleton dimension must be >= 0")
    return SimplicialComplex(
        f for f in s.faces() if len(f) - 1 <= k
    )


def one_skeleton(s: SimplicialComplex) -> ReflexiveGraph:
    return ReflexiveGraph(s.vertices, s.faces(1))


def clique_complex(
    g: ReflexiveGraph, max_dim: int | None = None
) -> SimplicialComplex:
    """All cliques of the graph as faces, capped at dimension ``max_dim``.

    Uses ordered extension over index-sorted candidate sets: every clique is
    produced exactly once, deterministically, and branches are pruned to the
    dimension cap.  Unbounded mode exists for flagness checks on small
    inputs; homology callers should always cap.
    """
    verts = g.vertices
    index = {v: i for i, v in enumerate(verts)}
    above: list[list[int]] = [[] for _ in verts]
    for u, v in g.edges:
        i, j = index[u], index[v]
        if i > j:
            i, j = j, i
        above[i].append(j)
    for lst in above:
        lst.sort()
    cap = len(verts) if max_dim is None else max_dim + 1
    adj_sets = [set(a) for a in above]
    faces: list[tuple] = []

    def grow(clique: list[int], cands: Sequence[int]) -> None:
        faces.append(tuple(verts[i] for i in clique))
        if len(clique) >= cap:
            return
        for k, c in enumerate(cands):
            grow(clique + [c], [x for x in cands[k + 1 :] if x in adj_sets[c]])

    for i in range(len(verts)):
        grow([i], above[i])
    return SimplicialComplex(faces)


def is_flag(s: SimplicialComplex) -> bool:
    """True iff the complex equals the clique complex of its own 1-skeleton."""
    return s == clique_complex(one_skeleton(s))


def induced_order_map(
    f: MonotoneMap, max_dim: int | None = None
) -> SimplicialMap:
    """Order-complex functor on morphisms: apply ``f`` vertexwise.

    Chains map to chains after deduplication.  Raises when ``f`` is not
    monotone.
    """
    if not is_monotone(f):
        raise ValueError("map is not monotone")
    return SimplicialMap(
        order_complex(f.source, max_dim),  # type: ignore[arg-type]
        order_complex(f.target, max_dim),  # type: ignore[arg-type]
        dict(f.assignment),
    )


def clique_map(m: GraphMorphism, max_dim: int | None = None) -> SimplicialMap:
    """Clique functor on morphisms: images of cliques are cliques."""
    return SimplicialMap(
        clique_complex(m.source, max_dim),
        clique_complex(m.target, max_dim),
        dict(m.vertex_map),
    )


def components(g: ReflexiveGraph) -> list[frozenset]:
    """Connected components as vertex sets, deterministic order."""
    seen: set = set()
    out: list[frozenset] = []
    for start in g.vertices:
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for u in g.neighbors(v):
                if u not in comp:
                    comp.add(u)
                    stack.append(u)
        seen |= comp
        out.append(frozenset(comp))
    return out


def component_count(g: ReflexiveGraph) -> int:
    return len(components(g))
