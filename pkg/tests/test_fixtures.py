import numpy as np
import pytest

from indexcoding import fixtures
from indexcoding.errors import UnknownFixture
from indexcoding.fixtures import fixture
from indexcoding.gf import BlockMatrix, FieldSpec
from indexcoding.instance import Instance
from indexcoding.matroid import MatroidSpec, verify_representation

PINNED = {
    "I1": "930b914da889cce65c4bbc2d877ee8e7bee13ffc111ba1cc61b51410727e83d9",
    "I2": "5960ff6f1b1cf6bbc8fe6b926261e37c28e264bdcbe75717d100213a543e1f18",
    "I3": "458142e1bd537847f629a27b0e7ec91df4e0f7a9f329b8e8128a0b9759b4cd5b",
    "I_a": "062886e4a12ea26e8d1d446ec24947723b45452b29adddfc405268da7a860a4c",
    "Example1": "de9ac13c870692465e60d68763c001c7d9e8044a0f1386926517c3c94730b3e7",
    "H_fig1": "98ee2430b5bb17248266941bd7504cf045a887d72f3462ed3cea6e043540469b",
    "H_fig2": "0ec6cad6d8b67dc8b4f7a457e91a40be36d57fdb31f8cf86e5ae9dab6ae35c95",
    "N1": "3ae149b30f1b175d2d9095f928e5b4b0d7c411a2174d324dff71257f55414318",
    "N2": "ca491dc3385e3d6d2e4962b7cea9385a6ab665f885a5540b2140a627b241fced",
    "N3": "06659ee16de4b9b38230f751cedb9a75958256e23e532216bca9bd789a5e5fd9",
}


@pytest.mark.parametrize("name", fixtures.NAMES)
def test_catalog_integrity(name):
    assert fixtures.sha256(name) == PINNED[name]


@pytest.mark.parametrize("name", fixtures.NAMES)
def test_fixtures_load_and_round_trip(name):
    obj = fixture(name)
    assert isinstance(obj, (Instance, BlockMatrix, MatroidSpec))
    assert obj.to_json() == fixtures.raw(name)
    assert fixture(name) == obj


def test_unknown_fixture():
    with pytest.raises(UnknownFixture):
        fixture("I4")
    with pytest.raises(KeyError):
        fixtures.kind_of("nope")


def test_instance_examples():
    assert fixture("I1").m == 29
    assert fixture("I3").m == 58
    assert fixture("I3").interfering(17) == {18}
    assert fixture("I_a").m == 4
    assert all(fixture("I_a").interfering(i) == {1, 2, 3, 4} - {i} for i in range(1, 5))


def test_i2_differs_from_i1_only_in_users_5_to_9():
    I1, I2 = fixture("I1"), fixture("I2")
    changed = [i for i in range(1, 30) if I1.interfering(i) != I2.interfering(i)]
    assert changed and set(changed) <= {5, 6, 7, 8, 9}
    assert I2.interfering(9) == frozenset()


def test_matrix_shapes():
    H1, H2 = fixture("H_fig1"), fixture("H_fig2")
    assert (H1.r, H1.m, H1.t) == (4, 29, 1)
    assert (H2.r, H2.m * H2.t) == (8, 58)


def test_fig2_is_fig1_tensor_identity():
    H1 = np.array(fixture("H_fig1").inner.entries)
    H2 = np.array(fixture("H_fig2").inner.entries)
    assert (H2 == np.kron(H1, np.eye(2, dtype=int))).all()


def test_cross_fixture_consistency():
    head1 = fixture("H_fig1").restrict(range(1, 10))
    assert verify_representation(fixture("N1"), head1.with_field(FieldSpec(3))).valid
    assert verify_representation(fixture("N2"), head1.with_field(FieldSpec(2))).valid
    head2 = fixture("H_fig2").restrict(range(1, 19))
    assert verify_representation(fixture("N3"), head2.with_field(FieldSpec(2))).valid


def test_n3_contract():
    spec = fixture("N3")
    assert (spec.n, spec.f, spec.t) == (18, 8, 1)
    assert spec.rank_at_least == ((frozenset(range(9, 17)), 7),)
    assert all(len(q) % 2 == 0 for q in spec.quasi_circuit_sets)
