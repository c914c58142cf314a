import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from indexcoding.compose import (
    NOWAY,
    TWOWAY,
    combined_code_87,
    combined_code_91,
    compose,
    decode_87,
    decode_91,
    instance_87,
    instance_91,
    no_way,
    two_way,
)
from indexcoding.fixtures import fixture
from indexcoding.gf import rank_of_rows
from indexcoding.instance import Instance, mais, random_instance
from indexcoding.sideinfo import SideInformation

EMPTY = Instance(0, ())


def minrank(I, p):
    """Scalar linear rate by brute force over fitting matrices.

    Row i has 1 on the diagonal, 0 on B_i and a free value on A_i.  The
    minimum rank is the shortest scalar linear code; it never drops below
    the acyclic-set bound, which lets the search stop early.
    """
    free = [(i, j) for i in range(I.m) for j in sorted(I.side_info(i + 1))]
    floor = mais(I).lo
    best = I.m
    for vals in itertools.product(range(p), repeat=len(free)):
        rows = [[1 if i == j else 0 for j in range(I.m)] for i in range(I.m)]
        for (i, j), v in zip(free, vals):
            rows[i][j - 1] = v
        best = min(best, rank_of_rows(rows, p))
        if best == floor:
            break
    return best


def free_entries(I):
    return sum(len(I.side_info(i)) for i in range(1, I.m + 1))


@st.composite
def instances(draw, max_m=6):
    m = draw(st.integers(0, max_m))
    sets = [
        draw(st.frozensets(st.sampled_from([j for j in range(1, m + 1) if j != i]))) if m > 1 else frozenset()
        for i in range(1, m + 1)
    ]
    return Instance.from_sets(sets)


# -- connections --------------------------------------------------------------------------


def test_no_way_examples():
    I = no_way(fixture("I1"), fixture("I3"))
    assert I.m == 87
    assert set(range(30, 88)) <= I.interfering(1)
    assert I.interfering(1) - set(range(30, 88)) == fixture("I1").interfering(1)
    b = fixture("Example1")
    assert no_way(EMPTY, b) == b


def test_two_way_examples():
    a, b = fixture("I1"), fixture("I3")
    I = two_way(a, b)
    for i in range(1, 30):
        assert I.interfering(i) == a.interfering(i)
    assert I.interfering(30) == {j + 29 for j in b.interfering(1)}
    Ip = instance_91()
    assert Ip.m == 91
    assert set(range(1, 30)) <= Ip.interfering(30)
    assert instance_87().m == 87


@settings(max_examples=100, deadline=None)
@given(a=instances(), b=instances())
def test_connections_preserve_invariants(a, b):
    for I in (no_way(a, b), two_way(a, b)):
        assert I.m == a.m + b.m
        for i in range(1, I.m + 1):
            assert i not in I.interfering(i)
            assert all(1 <= j <= I.m for j in I.interfering(i))
    nw = no_way(a, b)
    for i in range(1, a.m + 1):
        assert set(range(a.m + 1, a.m + b.m + 1)) <= nw.interfering(i)


def test_compose_fold():
    parts = [fixture("Example1"), fixture("I_a"), fixture("Example1")]
    c = compose(parts, [NOWAY, TWOWAY])
    assert c.result.m == 12
    assert [off for _, off in c.parts] == [0, 4, 8]
    assert c.result == two_way(no_way(parts[0], parts[1]), parts[2])
    with pytest.raises(ValueError):
        compose(parts, [NOWAY])
    with pytest.raises(ValueError):
        compose(parts[:2], ["sideways"])


# -- rates of compositions (brute force) -------------------------------------------------


def test_minrank_oracle_sanity():
    assert minrank(fixture("Example1"), 2) == 3
    assert minrank(fixture("I_a"), 3) == 4
    cycle = Instance.from_sets([[3], [1], [2]])
    assert minrank(cycle, 2) == 2


@pytest.mark.parametrize("p", [2, 3])
def test_no_way_rates_add(p):
    rng = random.Random(100 + p)
    budget = 14 if p == 2 else 9
    checked = 0
    while checked < 25:
        a = random_instance(rng, rng.randint(1, 4), rng.random())
        b = random_instance(rng, rng.randint(1, 4), rng.random())
        if free_entries(a) + free_entries(b) > budget:
            continue
        assert minrank(no_way(a, b), p) == minrank(a, p) + minrank(b, p)
        checked += 1


@pytest.mark.parametrize("p", [2, 3])
def test_two_way_rates_take_max(p):
    rng = random.Random(200 + p)
    budget = 14 if p == 2 else 9
    checked = 0
    while checked < 25:
        a = random_instance(rng, rng.randint(1, 3), rng.random())
        b = random_instance(rng, rng.randint(1, 3), rng.random())
        if free_entries(two_way(a, b)) > budget:
            continue
        assert minrank(two_way(a, b), p) == max(minrank(a, p), minrank(b, p))
        checked += 1


# -- combined codes ------------------------------------------------------------------------


def test_combined_codes_zero_and_width():
    assert combined_code_87([0] * 87) == (0,) * 12
    assert combined_code_91([0] * 91) == (0,) * 8
    with pytest.raises(ValueError):
        combined_code_87([0] * 86)
    with pytest.raises(ValueError):
        combined_code_91([0] * 87)


@pytest.mark.parametrize("m,enc,dec,build", [
    (87, combined_code_87, decode_87, instance_87),
    (91, combined_code_91, decode_91, instance_91),
])
def test_combined_round_trip_with_locality(m, enc, dec, build):
    I = build()
    rng = random.Random(m)
    for _ in range(300):
        x = [rng.randrange(3) for _ in range(m)]
        w = enc(x)
        for i in range(1, m + 1):
            side = SideInformation(x, I.side_info(i))
            assert dec(i, w, side) == x[i - 1]
            assert side.accessed <= I.side_info(i)
    with pytest.raises(IndexError):
        dec(m + 1, enc([0] * m), {})


def test_combined_91_accepts_plain_mapping():
    I = instance_91()
    rng = random.Random(5)
    x = [rng.randrange(3) for _ in range(91)]
    w = combined_code_91(x)
    for i in (1, 9, 30, 33, 34, 42, 91):
        side = {k: x[k - 1] for k in I.side_info(i)}
        assert decode_91(i, w, side) == x[i - 1]
