import random

import numpy as np
import pytest

from flagfilt.posets import (
    MonotoneMap,
    Poset,
    Preorder,
    alexandrov_closed_sets,
    antichain_poset,
    chain_poset,
    downset,
    identity_map,
    is_monotone,
    is_t0,
    kolmogorov_quotient,
    minimal_closed_set,
    order_from_closed_sets,
    poset_from_covers,
)
from flagfilt.generators import diamond_poset, random_poset, random_preorder, v_poset

from oracles import lower_sets


def indiscrete_pair() -> Preorder:
    return Preorder(["a", "b"], [[True, True], [True, True]])


def test_is_t0_indiscrete_pair_is_not():
    assert not is_t0(indiscrete_pair())


def test_is_t0_chain():
    assert is_t0(chain_poset(["a", "b"]))


def test_is_t0_scc_with_top():
    # a ~ b strongly connected, c above both
    m = np.array(
        [
            [True, True, True],
            [True, True, True],
            [False, False, True],
        ]
    )
    x = Preorder(["a", "b", "c"], m)
    # oracle: antisymmetry by enumeration
    expected = all(
        not (x.leq(p, q) and x.leq(q, p))
        for p in x.elements
        for q in x.elements
        if p != q
    )
    assert is_t0(x) == expected is False


def test_kolmogorov_indiscrete_collapses():
    q, assignment = kolmogorov_quotient(indiscrete_pair())
    assert q.elements == ("a",)
    assert assignment == {"a": "a", "b": "a"}


def test_kolmogorov_on_poset_is_identity():
    p = diamond_poset()
    q, assignment = kolmogorov_quotient(p)
    assert q == p
    assert assignment == {e: e for e in p.elements}


def test_kolmogorov_scc_below_top():
    m = np.array(
        [
            [True, True, True],
            [True, True, True],
            [False, False, True],
        ]
    )
    q, assignment = kolmogorov_quotient(Preorder(["a", "b", "c"], m))
    assert q == chain_poset(["a", "c"])
    assert assignment == {"a": "a", "b": "a", "c": "c"}


@pytest.mark.parametrize("seed", range(20))
def test_kolmogorov_properties(seed):
    rng = random.Random(seed)
    x = random_preorder(rng, rng.randint(1, 7))
    q, assignment = kolmogorov_quotient(x)
    assert is_t0(q)
    assert set(assignment.values()) == set(q.elements)  # surjective
    for a, b in x.pairs():  # monotone
        assert q.leq(assignment[a], assignment[b])
    # quotienting twice changes nothing
    q2, again = kolmogorov_quotient(q)
    assert q2 == q and all(again[e] == e for e in q.elements)


def test_downset_examples():
    chain = chain_poset(["a", "b", "c"])
    assert downset(chain, "b") == {"a", "b"}
    assert downset(antichain_poset(["a", "b"]), "a") == {"a"}
    assert downset(v_poset(), "c") == {"a", "b", "c"}
    with pytest.raises(KeyError):
        downset(chain, "zz")


@pytest.mark.parametrize("seed", range(10))
def test_downset_monotone(seed):
    rng = random.Random(seed)
    p = random_poset(rng, 6)
    for u, v in p.pairs():
        assert p.downset(u) <= p.downset(v)


def test_poset_from_covers_chain():
    p = poset_from_covers(["a", "b"], [("a", "b")])
    assert p.leq("a", "b") and not p.leq("b", "a")


def test_poset_from_covers_cycle_errors():
    with pytest.raises(ValueError, match="cycle"):
        poset_from_covers(["a", "b"], [("a", "b"), ("b", "a")])


def test_poset_from_covers_diamond_closure():
    p = poset_from_covers(
        ["a", "b", "c", "d"], [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")]
    )
    # hand closure: 4 reflexive + a<b, a<c, a<d, b<d, c<d
    assert int(p.matrix().sum()) == 9
    assert p.leq("a", "d")


def test_covers_of_diamond():
    assert set(diamond_poset().covers()) == {
        ("bot", "m1"),
        ("bot", "m2"),
        ("m1", "top"),
        ("m2", "top"),
    }


def test_is_monotone_identity():
    assert is_monotone(identity_map(diamond_poset()))


def test_is_monotone_chain_to_antichain_fails():
    f = MonotoneMap(
        chain_poset(["a", "b"]), antichain_poset(["x", "y"]), {"a": "x", "b": "y"}
    )
    assert not is_monotone(f)


def test_is_monotone_diamond_collapse():
    target = chain_poset(["bot", "m", "top"])
    f = MonotoneMap(
        diamond_poset(),
        target,
        {"bot": "bot", "m1": "m", "m2": "m", "top": "top"},
    )
    # oracle: check every comparable pair by hand enumeration
    for a, b in diamond_poset().pairs():
        assert target.leq(f(a), f(b))
    assert is_monotone(f)


def test_monotone_map_requires_totality():
    with pytest.raises(ValueError, match="total"):
        MonotoneMap(chain_poset(["a", "b"]), chain_poset(["x"]), {"a": "x"})


@pytest.mark.parametrize("seed", range(15))
def test_composition_of_monotone_maps_is_monotone(seed):
    from flagfilt.generators import random_monotone_map

    rng = random.Random(seed)
    p = random_poset(rng, rng.randint(1, 5))
    q = random_poset(rng, rng.randint(1, 5))
    r = random_poset(rng, rng.randint(1, 5))
    f = random_monotone_map(rng, p, q)
    g = random_monotone_map(rng, q, r)
    assert is_monotone(f) and is_monotone(g)
    assert is_monotone(g.compose(f))


def test_closed_sets_of_chain():
    chain = chain_poset(["a", "b", "c"])
    closed = set(alexandrov_closed_sets(chain))
    assert closed == {
        frozenset(),
        frozenset({"a"}),
        frozenset({"a", "b"}),
        frozenset({"a", "b", "c"}),
    }


@pytest.mark.parametrize("seed", range(20))
def test_closed_sets_are_exactly_the_lower_sets(seed):
    rng = random.Random(seed)
    p = random_poset(rng, rng.randint(1, 6))
    assert set(alexandrov_closed_sets(p)) == set(lower_sets(p))


@pytest.mark.parametrize("seed", range(25))
def test_order_recovered_from_topology(seed):
    rng = random.Random(seed)
    p = random_poset(rng, rng.randint(1, 6))
    closed = alexandrov_closed_sets(p)
    assert order_from_closed_sets(p.elements, closed) == p


def test_minimal_closed_set_is_downset():
    p = diamond_poset()
    closed = alexandrov_closed_sets(p)
    for e in p.elements:
        assert minimal_closed_set(e, closed) == p.downset(e)


def test_antisymmetry_validation():
    with pytest.raises(ValueError, match="antisymmetric"):
        Poset(["a", "b"], [[True, True], [True, True]])
    with pytest.raises(ValueError, match="transitive"):
        Preorder(
            ["a", "b", "c"],
            [[True, True, False], [False, True, True], [False, False, True]],
        )


def test_sorted_elements_is_a_linear_extension():
    rng = random.Random(4)
    for _ in range(10):
        p = random_poset(rng, 7)
        order = p.sorted_elements()
        pos = {e: i for i, e in enumerate(order)}
        for a, b in p.pairs():
            assert pos[a] <= pos[b]


def test_chain_detection():
    assert chain_poset(["a", "b", "c"]).is_chain()
    assert not diamond_poset().is_chain()
    assert not antichain_poset(["a", "b"]).is_chain()
