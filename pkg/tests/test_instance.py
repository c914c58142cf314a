import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from indexcoding.errors import DuplicateIndex, IndexOutOfRange, InvalidInstance, OddPairSet
from indexcoding.fixtures import INSTANCES, fixture
from indexcoding.instance import (
    Instance,
    is_acyclic_set,
    is_independent_set,
    is_minimal_cyclic,
    is_quasi_minimal_cyclic,
    mais,
    mais_exhaustive,
    minimal_cyclic_order,
    peel_order,
    random_instance,
)


def knowledge_graph(I):
    """Arc i -> j whenever user i knows message j."""
    G = nx.DiGraph()
    G.add_nodes_from(range(1, I.m + 1))
    G.add_edges_from((i, j) for i in range(1, I.m + 1) for j in I.side_info(i))
    return G


def acyclic_by_graph(G, M):
    return nx.is_directed_acyclic_graph(G.subgraph(M))


@st.composite
def instances(draw, max_m=8):
    m = draw(st.integers(1, max_m))
    sets = [
        draw(st.frozensets(st.sampled_from([j for j in range(1, m + 1) if j != i]) if m > 1 else st.nothing()))
        for i in range(1, m + 1)
    ]
    return Instance.from_sets(sets)


# -- construction -------------------------------------------------------------------


def test_instance_validation():
    with pytest.raises(InvalidInstance):
        Instance.from_sets([[1]])
    with pytest.raises(InvalidInstance):
        Instance.from_sets([[2]])
    with pytest.raises(InvalidInstance):
        Instance.from_json({"m": 2, "B": [[2]]})
    I = Instance.from_sets([[2], []])
    with pytest.raises(IndexOutOfRange):
        I.side_info(3)
    assert I.side_info(2) == {1}
    assert Instance.from_json(I.to_json()) == I


# -- predicates -----------------------------------------------------------------------


def test_independent_set_examples():
    I1, E = fixture("I1"), fixture("Example1")
    assert is_independent_set(E, [])
    assert is_independent_set(I1, {1, 2, 3, 4})
    assert not is_independent_set(E, {1, 2, 3})


def test_minimal_cyclic_examples():
    E, I1 = fixture("Example1"), fixture("I1")
    assert is_minimal_cyclic(E, (1, 2, 3))
    assert is_minimal_cyclic(I1, (10, 11, 12))
    assert not is_minimal_cyclic(I1, (1, 2))
    assert minimal_cyclic_order(E, {1, 2, 3}) == [1, 3, 2]
    assert minimal_cyclic_order(E, {1, 2, 4}) is None
    with pytest.raises(DuplicateIndex):
        is_minimal_cyclic(E, (1, 1, 2))


def test_acyclic_examples():
    E, I3 = fixture("Example1"), fixture("I3")
    assert is_acyclic_set(E, [])
    assert is_acyclic_set(E, [3])
    for M in ({1, 2, 4}, {1, 3, 4}, {2, 3, 4}):
        assert is_acyclic_set(E, M)
    assert not is_acyclic_set(E, {1, 2, 3})
    assert is_acyclic_set(I3, range(1, 9))
    assert peel_order(E, {1, 2, 4}) == [4, 1, 2]


def test_quasi_minimal_cyclic_examples():
    I3 = fixture("I3")
    assert is_quasi_minimal_cyclic(I3, ((19, 20), (21, 22), (23, 24)))
    assert is_quasi_minimal_cyclic(I3, ((27, 28), (29, 30), (33, 34)))
    full = Instance.from_sets([[2, 3, 4], [1, 3, 4], [1, 2, 4], [1, 2, 3]])
    assert not is_quasi_minimal_cyclic(full, ((1, 2), (3, 4)))
    with pytest.raises(OddPairSet):
        is_quasi_minimal_cyclic(I3, ((19, 20, 21),))


def test_peeling_matches_graph_oracle_on_random_instances():
    rng = random.Random(2024)
    for _ in range(1000):
        m = rng.randint(1, 8)
        I = random_instance(rng, m, rng.random())
        G = knowledge_graph(I)
        for mask in range(1 << m):
            M = [k + 1 for k in range(m) if mask >> k & 1]
            assert is_acyclic_set(I, M) == acyclic_by_graph(G, M), (I, M)


@pytest.mark.parametrize("name", INSTANCES)
def test_peeling_matches_graph_oracle_on_fixtures(name):
    # exhaustive up to size 3, then a seeded sample of larger subsets up to 12
    I = fixture(name)
    G = knowledge_graph(I)
    users = range(1, I.m + 1)
    for size in range(0, min(3, I.m) + 1):
        for M in itertools.combinations(users, size):
            assert is_acyclic_set(I, M) == acyclic_by_graph(G, M)
    rng = random.Random(name)
    for _ in range(3000):
        M = rng.sample(list(users), rng.randint(1, min(12, I.m)))
        assert is_acyclic_set(I, M) == acyclic_by_graph(G, M)


@settings(max_examples=200, deadline=None)
@given(I=instances(), data=st.data())
def test_independent_sets_are_acyclic(I, data):
    M = data.draw(st.sets(st.integers(1, I.m)))
    if is_independent_set(I, M):
        assert is_acyclic_set(I, M)


# -- MAIS ------------------------------------------------------------------------------


def test_mais_examples():
    res = mais(fixture("Example1"))
    assert (res.lo, res.hi, res.status) == (3, 3, "Exact")
    assert is_acyclic_set(fixture("Example1"), res.witness)
    assert mais(Instance.from_sets([[]])).value == 1
    assert mais(fixture("I1"), witness=range(1, 5)).lo == 4
    assert mais(fixture("I3"), witness=range(1, 9)).lo == 8


def test_mais_exact_on_i1():
    res = mais(fixture("I1"), max_seconds=60)
    assert res.status == "Exact" and res.lo == 4


def test_mais_budget_and_bad_witness():
    res = mais(fixture("I3"), max_nodes=50, max_seconds=None)
    assert res.status == "Budget"
    assert res.lo <= res.hi
    assert is_acyclic_set(fixture("I3"), res.witness)
    bad = mais(fixture("Example1"), witness=[1, 2, 3])
    assert bad.lo == 0 and bad.status == "Bounded"


@settings(max_examples=150, deadline=None)
@given(I=instances(max_m=10))
def test_mais_matches_exhaustive(I):
    res = mais(I)
    assert res.status == "Exact"
    assert res.lo == mais_exhaustive(I) == len(res.witness)
    assert is_acyclic_set(I, res.witness)


@settings(max_examples=100, deadline=None)
@given(I=instances(max_m=9), data=st.data())
def test_mais_monotone_in_interference(I, data):
    i = data.draw(st.integers(1, I.m))
    extra = data.draw(st.sets(st.integers(1, I.m)))
    sets = [set(b) for b in I.B]
    sets[i - 1] |= extra - {i}
    bigger = Instance.from_sets(sets)
    assert mais(bigger).lo >= mais(I).lo


def test_exhaustive_rejects_large_instances():
    with pytest.raises(ValueError):
        mais_exhaustive(fixture("I3"))
