import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from indexcoding.errors import InconsistentInputs, IndexOutOfRange, MissingSideInformation
from indexcoding.fixtures import fixture
from indexcoding.nlcode import (
    G_ARGS,
    M_I3,
    Z_TERMS,
    combo_from_partial,
    decode_all_i3,
    decode_i3,
    encode_i3,
    encode_symbol,
    g_eval,
    quadruple_inputs,
    quadruple_total,
    read_set,
    recover_quadruple,
    side_information_for,
    symbol_support,
)
from indexcoding.sideinfo import SideInformation

I3 = fixture("I3")
messages = st.lists(st.integers(0, 2), min_size=M_I3, max_size=M_I3)


def unit(i):
    x = [0] * M_I3
    x[i - 1] = 1
    return x


# -- the cubic and its identities -------------------------------------------------------


def test_g_examples():
    assert g_eval(0, 0, 0, 0) == 0
    assert g_eval(1, 1, 1, 1) == 1
    assert g_eval(1, 0, 0, 0) == 0


def test_g_is_symmetric():
    for args in itertools.product(range(3), repeat=4):
        v = g_eval(*args)
        assert all(g_eval(*perm) == v for perm in itertools.permutations(args))


def test_quadruple_identity_exhaustive():
    for xi, xj, xl, xv, xw in itertools.product(range(3), repeat=5):
        g_vals, sums = quadruple_inputs(xi, xj, xl, xv, xw)
        assert quadruple_total(xw, sum(g_vals), sums) == (xi + xj + xl + xv) % 3
        assert recover_quadruple(xw, g_vals, sums) == (xi, xj, xl, xv)


def test_quadruple_pinned_tuple():
    g_vals, sums = quadruple_inputs(1, 2, 0, 1, 2)
    assert recover_quadruple(2, g_vals, sums) == (1, 2, 0, 1)
    assert recover_quadruple(0, (0, 0, 0, 0), (0, 0, 0, 0)) == (0, 0, 0, 0)


def test_quadruple_rejects_inconsistent_inputs():
    g_vals, sums = quadruple_inputs(1, 2, 0, 1, 2)
    with pytest.raises(InconsistentInputs):
        recover_quadruple(2, g_vals, (sums[0], sums[1], sums[2], (sums[3] + 1) % 3))
    with pytest.raises(InconsistentInputs):
        recover_quadruple(2, g_vals[:3], sums)


def test_combination_identity_exhaustive():
    assert combo_from_partial(0, 0, 0, 0) == 0
    for xi, xj, xl, xv, xw in itertools.product(range(3), repeat=5):
        want = (g_eval(xi, xj, xv, xw) + 2 * g_eval(xi, xl, xv, xw)) % 3
        assert combo_from_partial(xi, xj, xl, xv + xw) == want


# -- encoder ------------------------------------------------------------------------------


def test_encoder_examples():
    assert encode_i3([0] * M_I3) == (0,) * 8
    assert encode_i3(unit(1)) == (1, 0, 0, 0, 0, 0, 0, 0)
    assert encode_i3(unit(9)) == (1, 0, 1, 0, 1, 0, 0, 0)
    assert len(encode_i3([1] * M_I3)) == 8


def test_every_message_is_in_exactly_one_parity_class():
    counts = {}
    for terms in Z_TERMS.values():
        for i in terms:
            counts[i] = counts.get(i, 0) + 1
    assert set(counts) == set(range(1, M_I3 + 1))
    g_args = {i for args in G_ARGS.values() for i in args}
    assert g_args == {9, 11, 13, 15, 17}


@settings(max_examples=200, deadline=None)
@given(x=messages, y=messages, data=st.data())
def test_conditional_linearity(x, y, data):
    # agree on the g arguments, then the difference of codewords is linear
    for k in (9, 11, 13, 15, 17):
        y[k - 1] = x[k - 1]
    zx, zy = encode_i3(x), encode_i3(y)
    for k in range(1, 9):
        lin = sum(x[i - 1] - y[i - 1] for i in Z_TERMS[k]) % 3
        assert (zx[k - 1] - zy[k - 1]) % 3 == lin


@settings(max_examples=100, deadline=None)
@given(x=messages)
def test_single_symbol_encoder_matches(x):
    z = encode_i3(x)
    vals = {i: v for i, v in enumerate(x, start=1)}
    for k in range(1, 9):
        assert encode_symbol(k, vals) == z[k - 1]
        assert set(symbol_support(k)) >= set(Z_TERMS[k])


# -- decoders -------------------------------------------------------------------------------


def test_zero_message_decodes_to_zero():
    z = encode_i3([0] * M_I3)
    for i in range(1, M_I3 + 1):
        assert decode_i3(i, z, side_information_for(i, [0] * M_I3, I3)) == 0


def test_read_sets_lie_in_side_information():
    for i in range(1, M_I3 + 1):
        assert set(read_set(i)) <= I3.side_info(i)


@settings(max_examples=300, deadline=None)
@given(x=messages)
def test_round_trip_with_locality_audit(x):
    z = encode_i3(x)
    for i in range(1, M_I3 + 1):
        side = side_information_for(i, x, I3)
        assert decode_i3(i, z, side) == x[i - 1]
        assert side.accessed <= I3.side_info(i)


def test_round_trip_seeded():
    rng = random.Random(0xC0FFEE)
    for _ in range(2000):
        x = [rng.randrange(3) for _ in range(M_I3)]
        assert decode_all_i3(encode_i3(x), x, I3) == x


def test_decoder_accepts_plain_mapping():
    rng = random.Random(4)
    x = [rng.randrange(3) for _ in range(M_I3)]
    z = encode_i3(x)
    for i in range(1, M_I3 + 1):
        side = {k: x[k - 1] for k in I3.side_info(i)}
        assert decode_i3(i, z, side) == x[i - 1]


def test_decoder_without_needed_side_information_raises():
    x = [1] * M_I3
    z = encode_i3(x)
    with pytest.raises(MissingSideInformation):
        decode_i3(9, z, SideInformation(x, set()))
    with pytest.raises(MissingSideInformation):
        decode_i3(9, z, {})
    with pytest.raises(IndexOutOfRange):
        decode_i3(59, z, {})
    with pytest.raises(IndexOutOfRange):
        decode_i3(1, z[:7], {})
