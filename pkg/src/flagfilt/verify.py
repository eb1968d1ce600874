"""Verification suites.

Bundles the law verifiers into named suites runnable from the service and
the CLI: the equivalence round trip, both adjunctions, subdivision
invariance of homology, and flagness of order complexes and barycentric
subdivisions.  Suites that quantify over posets run over a default family
(chain, diamond, and a seeded random poset) unless one is given.
"""

from __future__ import annotations

import random
from typing import Sequence

from .complexes import SimplicialComplex, barycentric_subdivision, is_flag, order_complex
from .generators import (
    hollow_triangle,
    named_poset,
    octahedron_graph,
    random_complex,
    random_poset,
    tetrahedron_boundary,
    triangle_complex,
)
from .homology import FieldConfig, verify_subdivision_invariance
from .posets import Poset
from .reports import TrialOutcome, VerificationReport
from .weighted import (
    verify_equivalence,
    verify_first_adjunction,
    verify_second_adjunction,
)

SUITES = ("equivalence", "adjunction-1", "adjunction-2", "subdivision", "flagness")

__all__ = ["SUITES", "run_suite", "run_suites", "verify_flagness"]


def _default_posets(seed: int) -> list[Poset]:
    rng = random.Random(seed)
    return [named_poset("chain3"), named_poset("diamond"), random_poset(rng, 5)]


def verify_flagness(trials: int = 50, seed: int = 0) -> VerificationReport:
    """Order complexes of random posets and barycentric subdivisions of
    random complexes must equal the clique complexes of their 1-skeleta."""
    rng = random.Random(seed)
    outcomes = []
    for t in range(trials):
        p = random_poset(rng, rng.randint(1, 7))
        s = random_complex(rng, max_vertices=7, max_dim=3, max_generators=4)
        ok = True
        detail = ""
        if not is_flag(order_complex(p)):
            ok, detail = False, "order complex is not flag"
        elif not is_flag(barycentric_subdivision(s)):
            ok, detail = False, "barycentric subdivision is not flag"
        outcomes.append(TrialOutcome(t, ok, detail))
    return VerificationReport("flagness", tuple(outcomes))


def _subdivision_corpus(trials: int, seed: int) -> list[SimplicialComplex]:
    from .complexes import clique_complex

    rng = random.Random(seed)
    corpus = [
        triangle_complex(),
        hollow_triangle(),
        tetrahedron_boundary(),
        clique_complex(octahedron_graph()),
    ]
    for _ in range(trials):
        corpus.append(random_complex(rng, max_vertices=8, max_dim=3, max_generators=4))
    return corpus


def run_subdivision_suite(
    trials: int = 20,
    seed: int = 0,
    complexes: Sequence[SimplicialComplex] | None = None,
    characteristics: Sequence[int] = (2, 3),
) -> VerificationReport:
    items = list(complexes) if complexes is not None else _subdivision_corpus(trials, seed)
    outcomes = []
    idx = 0
    for s in items:
        for p in characteristics:
            rep = verify_subdivision_invariance(s, FieldConfig(p))
            detail = "" if rep.ok else (
                f"GF({p}): {rep.betti_direct} != {rep.betti_via_graph}"
            )
            outcomes.append(TrialOutcome(idx, rep.ok, detail))
            idx += 1
    return VerificationReport("subdivision", tuple(outcomes))


def _merge(name: str, reports: Sequence[VerificationReport]) -> VerificationReport:
    outcomes = []
    i = 0
    for rep in reports:
        for o in rep.outcomes:
            detail = o.detail
            if not o.ok and rep.name != name:
                detail = f"[{rep.name}] {detail}"
            outcomes.append(TrialOutcome(i, o.ok, detail))
            i += 1
    return VerificationReport(name, tuple(outcomes))


def run_suite(
    name: str,
    trials: int = 50,
    seed: int = 0,
    poset: Poset | None = None,
    complex_: SimplicialComplex | None = None,
) -> VerificationReport:
    if name == "flagness":
        return verify_flagness(trials, seed)
    if name == "subdivision":
        complexes = [complex_] if complex_ is not None else None
        return run_subdivision_suite(trials, seed, complexes)
    posets = [poset] if poset is not None else _default_posets(seed)
    if name == "equivalence":
        reps = [verify_equivalence(p, trials, seed) for p in posets]
    elif name == "adjunction-1":
        reps = [verify_first_adjunction(p, trials, seed) for p in posets]
    elif name == "adjunction-2":
        reps = [verify_second_adjunction(p, trials, seed) for p in posets]
    else:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return _merge(name, reps)


def run_suites(
    names: Sequence[str],
    trials: int = 50,
    seed: int = 0,
    poset: Poset | None = None,
    complex_: SimplicialComplex | None = None,
) -> list[VerificationReport]:
    expanded: list[str] = []
    for n in names:
        if n == "all":
            expanded.extend(SUITES)
        else:
            expanded.append(n)
    return [run_suite(n, trials, seed, poset, complex_) for n in expanded]
