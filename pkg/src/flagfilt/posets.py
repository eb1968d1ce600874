"""Finite preorders and posets.

A finite topological space is encoded by its specialization preorder: the
minimal closed set containing ``x`` is the downset of ``x``, and ``x <= y``
exactly when that closed set is contained in the one of ``y``.  T0 spaces
correspond to posets, general finite spaces to preorders; the Kolmogorov
quotient collapses mutually comparable points and lands in posets.

The order relation is stored as a dense boolean matrix over element
positions, so ``leq`` queries are O(1) and closure/quotient algorithms are
simple matrix passes.  All values are immutable after construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

__all__ = [
    "Preorder",
    "Poset",
    "MonotoneMap",
    "is_t0",
    "kolmogorov_quotient",
    "downset",
    "upset",
    "poset_from_covers",
    "chain_poset",
    "antichain_poset",
    "is_monotone",
    "identity_map",
    "alexandrov_closed_sets",
    "minimal_closed_set",
    "order_from_closed_sets",
]


class Preorder:
    """A finite set with a reflexive and transitive boolean relation.

    ``elements`` fixes a positional order used by the relation matrix; the
    element names themselves are opaque strings.
    """

    __slots__ = ("elements", "_index", "_leq")

    def __init__(
        self,
        elements: Sequence[str],
        leq_matrix: np.ndarray | Sequence[Sequence[bool]],
        *,
        _validated: bool = False,
    ) -> None:
        self.elements: tuple[str, ...] = tuple(elements)
        for e in self.elements:
            if not isinstance(e, str):
                raise TypeError(f"poset elements must be strings, got {e!r}")
        if len(set(self.elements)) != len(self.elements):
            raise ValueError("duplicate elements")
        self._index: dict[str, int] = {e: i for i, e in enumerate(self.elements)}
        m = np.asarray(leq_matrix, dtype=bool).copy()
        n = len(self.elements)
        if m.shape != (n, n):
            raise ValueError(f"relation matrix must be {n}x{n}, got {m.shape}")
        m.setflags(write=False)
        self._leq = m
        if not _validated:
            self._validate()

    def _validate(self) -> None:
        m = self._leq
        if not np.all(np.diagonal(m)):
            raise ValueError("relation is not reflexive")
        # transitive closure must not add pairs
        reach = m.astype(np.uint8) @ m.astype(np.uint8) > 0
        if np.any(reach & ~m):
            raise ValueError("relation is not transitive")

    # -- queries ---------------------------------------------------------

    def index(self, e: str) -> int:
        try:
            return self._index[e]
        except KeyError:
            raise KeyError(f"unknown element {e!r}") from None

    def leq(self, a: str, b: str) -> bool:
        return bool(self._leq[self.index(a), self.index(b)])

    def comparable(self, a: str, b: str) -> bool:
        return self.leq(a, b) or self.leq(b, a)

    def matrix(self) -> np.ndarray:
        """Read-only boolean relation matrix in element-position order."""
        return self._leq

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, e: object) -> bool:
        return e in self._index

    def __iter__(self) -> Iterator[str]:
        return iter(self.elements)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Preorder):
            return NotImplemented
        return self.elements == other.elements and np.array_equal(self._leq, other._leq)

    def __hash__(self) -> int:
        return hash((self.elements, self._leq.tobytes()))

    def __repr__(self) -> str:
        kind = type(self).__name__
        return f"{kind}({len(self)} elements, {int(self._leq.sum())} relations)"

    def pairs(self) -> Iterator[tuple[str, str]]:
        """All related pairs (a, b) with a <= b, in position order."""
        rows, cols = np.nonzero(self._leq)
        for i, j in zip(rows.tolist(), cols.tolist()):
            yield self.elements[i], self.elements[j]

    def downset(self, v: str) -> frozenset[str]:
        j = self.index(v)
        return frozenset(self.elements[i] for i in np.nonzero(self._leq[:, j])[0])

    def upset(self, v: str) -> frozenset[str]:
        i = self.index(v)
        return frozenset(self.elements[j] for j in np.nonzero(self._leq[i, :])[0])

    def minimal_elements(self) -> tuple[str, ...]:
        m = self._leq
        strict_below = m & ~m.T  # a < b strictly, a != b resolved by antisymmetric part
        has_lower = np.any(strict_below & ~np.eye(len(self), dtype=bool), axis=0)
        return tuple(e for e, low in zip(self.elements, has_lower) if not low)

    def maximal_elements(self) -> tuple[str, ...]:
        m = self._leq
        strict_above = m & ~m.T
        has_upper = np.any(strict_above & ~np.eye(len(self), dtype=bool), axis=1)
        return tuple(e for e, up in zip(self.elements, has_upper) if not up)

    def is_chain(self) -> bool:
        return bool(np.all(self._leq | self._leq.T))


class Poset(Preorder):
    """A preorder whose relation is also antisymmetric.

    Equivalently a finite T0 space: closed sets are the downsets and the
    specialization order is the stored relation.
    """

    __slots__ = ()

    def _validate(self) -> None:
        super()._validate()
        both = self._leq & self._leq.T
        if np.any(both & ~np.eye(len(self), dtype=bool)):
            raise ValueError("relation is not antisymmetric")

    def covers(self) -> tuple[tuple[str, str], ...]:
        """Cover pairs (a, b): a < b with nothing strictly between."""
        m = self._leq
        n = len(self)
        strict = m & ~np.eye(n, dtype=bool)
        # b covers a iff strict[a,b] and no c with strict[a,c] and strict[c,b]
        via = (strict.astype(np.uint8) @ strict.astype(np.uint8)) > 0
        cov = strict & ~via
        out = []
        for i in range(n):
            for j in np.nonzero(cov[i])[0]:
                out.append((self.elements[i], self.elements[int(j)]))
        return tuple(out)

    def comparable_pairs(self) -> tuple[tuple[str, str], ...]:
        """All pairs (u, v) with u <= v, including u == v."""
        return tuple(self.pairs())

    def reverse(self) -> "Poset":
        return Poset(self.elements, self._leq.T, _validated=True)

    def bottom(self) -> str | None:
        mins = self.minimal_elements()
        if len(mins) == 1 and all(self.leq(mins[0], e) for e in self.elements):
            return mins[0]
        return None

    def sorted_elements(self) -> tuple[str, ...]:
        """Elements in a linear extension (stable topological order)."""
        m = self._leq
        n = len(self)
        strict = m & ~np.eye(n, dtype=bool)
        remaining = list(range(n))
        out: list[int] = []
        while remaining:
            for i in remaining:
                if not any(strict[j, i] for j in remaining):
                    out.append(i)
                    remaining.remove(i)
                    break
            else:  # pragma: no cover - antisymmetry rules this out
                raise AssertionError("no minimal element found")
        return tuple(self.elements[i] for i in out)


def is_t0(space: Preorder) -> bool:
    """True iff no two distinct points are mutually comparable."""
    m = space.matrix()
    both = m & m.T
    return not np.any(both & ~np.eye(len(space), dtype=bool))


def kolmogorov_quotient(space: Preorder) -> tuple[Poset, dict[str, str]]:
    """Collapse topologically indistinguishable points.

    Points are identified when each lies in every closed set containing the
    other, i.e. when they are mutually comparable.  Each class is named by
    its lexicographically least member.  Returns the quotient poset and the
    element -> class-name assignment, which is surjective and monotone.
    """
    m = space.matrix()
    both = m & m.T
    assignment: dict[str, str] = {}
    reps: list[str] = []
    for i, e in enumerate(space.elements):
        cls = [space.elements[j] for j in np.nonzero(both[i])[0]]
        rep = min(cls)
        assignment[e] = rep
        if rep == e and rep not in reps:
            reps.append(rep)
    # order class representatives by their position in the original carrier
    reps.sort(key=lambda r: space.elements.index(r))
    idx = {r: k for k, r in enumerate(reps)}
    q = np.zeros((len(reps), len(reps)), dtype=bool)
    for a, b in space.pairs():
        q[idx[assignment[a]], idx[assignment[b]]] = True
    return Poset(reps, q), assignment


def downset(p: Preorder, v: str) -> frozenset[str]:
    """The minimal Alexandrov-closed set containing ``v``: all x <= v."""
    return p.downset(v)


def upset(p: Preorder, v: str) -> frozenset[str]:
    return p.upset(v)


def poset_from_covers(
    elements: Sequence[str], cover_pairs: Iterable[tuple[str, str]]
) -> Poset:
    """Reflexive-transitive closure of a Hasse diagram.

    Raises ``ValueError`` when the cover relation has a cycle (the closure
    would not be antisymmetric).
    """
    elements = tuple(elements)
    index = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    m = np.eye(n, dtype=bool)
    for a, b in cover_pairs:
        if a not in index or b not in index:
            missing = a if a not in index else b
            raise ValueError(f"cover mentions unknown element {missing!r}")
        if a == b:
            raise ValueError(f"cover pair ({a!r}, {b!r}) is degenerate")
        m[index[a], index[b]] = True
    # Warshall closure, row-at-a-time
    for k in range(n):
        m[m[:, k]] |= m[k]
    both = m & m.T
    if np.any(both & ~np.eye(n, dtype=bool)):
        i, j = np.argwhere(both & ~np.eye(n, dtype=bool))[0]
        raise ValueError(
            f"cover relation contains a cycle through {elements[i]!r} and {elements[j]!r}"
        )
    return Poset(elements, m, _validated=True)


def chain_poset(labels: Sequence[str]) -> Poset:
    """Total order with the given labels from bottom to top."""
    n = len(labels)
    m = np.triu(np.ones((n, n), dtype=bool))
    return Poset(labels, m, _validated=True)


def antichain_poset(labels: Sequence[str]) -> Poset:
    return Poset(labels, np.eye(len(labels), dtype=bool), _validated=True)


@dataclass(frozen=True)
class MonotoneMap:
    """A function between posets, candidate order-preserving morphism.

    The assignment must be total on the source; order preservation itself is
    checked by :func:`is_monotone` so that invalid candidates can be built
    and rejected explicitly.
    """

    source: Preorder
    target: Preorder
    assignment: Mapping[str, str]

    def __post_init__(self) -> None:
        for e in self.source.elements:
            if e not in self.assignment:
                raise ValueError(f"assignment is not total: missing {e!r}")
            if self.assignment[e] not in self.target:
                raise ValueError(
                    f"assignment sends {e!r} outside the target poset"
                )

    def __call__(self, e: str) -> str:
        return self.assignment[e]

    def compose(self, other: "MonotoneMap") -> "MonotoneMap":
        """self after other (other.source -> self.target)."""
        if other.target.elements != self.source.elements:
            raise ValueError("composition endpoints do not match")
        return MonotoneMap(
            other.source,
            self.target,
            {e: self.assignment[other.assignment[e]] for e in other.source.elements},
        )

    def is_injective(self) -> bool:
        values = [self.assignment[e] for e in self.source.elements]
        return len(set(values)) == len(values)


def identity_map(p: Preorder) -> MonotoneMap:
    return MonotoneMap(p, p, {e: e for e in p.elements})


def is_monotone(f: MonotoneMap) -> bool:
    """True iff x <= y in the source implies f(x) <= f(y) in the target."""
    for a, b in f.source.pairs():
        if not f.target.leq(f.assignment[a], f.assignment[b]):
            return False
    return True


_CLOSED_SET_LIMIT = 16


def alexandrov_closed_sets(p: Preorder) -> list[frozenset[str]]:
    """All closed sets of the Alexandrov topology, i.e. all downsets.

    Enumerates every subset, so it is restricted to small carriers; it is
    meant as an independent oracle for the order <-> topology round trip.
    """
    if len(p) > _CLOSED_SET_LIMIT:
        raise ValueError(f"closed-set enumeration is capped at {_CLOSED_SET_LIMIT} elements")
    elems = p.elements
    closed: list[frozenset[str]] = []
    for mask in range(1 << len(elems)):
        subset = [e for i, e in enumerate(elems) if mask >> i & 1]
        member = set(subset)
        if all(x in member for s in subset for x in p.downset(s)):
            closed.append(frozenset(subset))
    return closed


def minimal_closed_set(
    x: str, closed_family: Iterable[frozenset[str]]
) -> frozenset[str]:
    """Intersection of all closed sets containing ``x``."""
    out: frozenset[str] | None = None
    for c in closed_family:
        if x in c:
            out = c if out is None else out & c
    if out is None:
        raise ValueError(f"no closed set contains {x!r}")
    return out


def order_from_closed_sets(
    elements: Sequence[str], closed_family: Iterable[frozenset[str]]
) -> Poset:
    """Recover the specialization order: x <= y iff U_x is contained in U_y.

    ``U_x`` is the minimal closed set containing x.  Together with
    :func:`alexandrov_closed_sets` this re-derives a poset from its own
    topology and must reproduce it exactly.
    """
    family = list(closed_family)
    elements = tuple(elements)
    mins = {e: minimal_closed_set(e, family) for e in elements}
    n = len(elements)
    m = np.zeros((n, n), dtype=bool)
    for i, x in enumerate(elements):
        for j, y in enumerate(elements):
            m[i, j] = mins[x] <= mins[y]
    return Poset(elements, m)
