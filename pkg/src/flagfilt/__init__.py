"""flagfilt: persistent homology of finite topological spaces and weighted
networks through clique-complex filtrations.

Finite spaces are preorders; their Kolmogorov quotients are posets whose
order complexes carry the homology.  Weighted networks filter by edge
weight.  Both reduce to one picture: a graph weighted in a poset, whose
sublevel clique complexes realize the persistent homology.  The package
computes Betti numbers, barcodes over chains, rank invariants over general
posets, and machine-checks the categorical facts the reduction rests on.
"""

__version__ = "0.1.0"

from .posets import (  # noqa: F401
    MonotoneMap,
    Poset,
    Preorder,
    alexandrov_closed_sets,
    antichain_poset,
    chain_poset,
    downset,
    is_monotone,
    is_t0,
    kolmogorov_quotient,
    order_from_closed_sets,
    poset_from_covers,
    upset,
)
from .complexes import (  # noqa: F401
    GraphMorphism,
    ReflexiveGraph,
    SimplicialComplex,
    SimplicialMap,
    barycentric_subdivision,
    clique_complex,
    component_count,
    face_poset,
    induced_order_map,
    is_flag,
    k_skeleton,
    one_skeleton,
    order_complex,
)
from .homology import (  # noqa: F401
    ChainComplexData,
    FieldConfig,
    HomologySummary,
    betti_numbers,
    chain_complex,
    graph_homology,
    induced_map_on_homology,
    verify_subdivision_invariance,
)
from .weighted import (  # noqa: F401
    CriticalValueTable,
    NaturalTransformation,
    PersistentGraph,
    PWeightedGraph,
    critical_values,
    from_persistent,
    is_one_critical,
    level_disjoint_union,
    sublevel_functor,
    sublevel_graph,
    verify_equivalence,
    verify_first_adjunction,
    verify_second_adjunction,
)
from .filtrations import (  # noqa: F401
    ChainFiltration,
    MetricData,
    SpaceFiltration,
    chain_filtration_from_persistent_graph,
    distance_graph,
    metric_weighted_graph,
    shortest_path_metric,
    space_filtration_to_graph,
    vietoris_rips,
    weight_filtration,
    weighted_graph_from_edge_rows,
)
from .barcodes import (  # noqa: F401
    Barcode,
    FiltrationComparison,
    Interval,
    RankInvariant,
    barcode,
    compare_filtrations,
    rank_invariant,
    space_rank_invariant,
)
