import pytest

from indexcoding.errors import MissingSideInformation
from indexcoding.sideinfo import SideInformation


def test_vector_view_checks_access():
    side = SideInformation([10, 20, 30], {1, 3})
    assert side[1] == 10 and side[3] == 30
    with pytest.raises(MissingSideInformation):
        side[2]
    with pytest.raises(KeyError):
        side[4]
    assert side.accessed == {1, 3}
    assert list(side) == [1, 3] and len(side) == 2


def test_mapping_view_and_missing_values():
    side = SideInformation({2: 5}, {2, 7})
    assert side[2] == 5
    with pytest.raises(MissingSideInformation):
        side[7]
    assert list(side) == [2]


def test_gather():
    side = SideInformation([1, 2, 3, 4], {2, 4})
    assert side.gather([4, 2]) == [4, 2]
    assert side.accessed == {2, 4}
    with pytest.raises(MissingSideInformation):
        side.gather([1, 2])
    short = SideInformation([1], {1, 5})
    with pytest.raises(MissingSideInformation):
        short.gather([5])
