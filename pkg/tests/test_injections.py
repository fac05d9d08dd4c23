import pytest

from cycrook.injections import (
    ContractViolation,
    PartialInjection,
    chain_resolve,
    cycle_count,
    enumerate_injections,
    rewire,
)


def phi(mapping):
    return PartialInjection.from_dict(mapping)


def test_enumerate_injections():
    assert [m.as_dict() for m in enumerate_injections({1}, 2)] == [{1: 1}, {1: 2}]
    assert len(list(enumerate_injections({1, 3}, 4))) == 12
    assert [len(m) for m in enumerate_injections(set(), 3)] == [0]
    assert list(enumerate_injections({1, 2, 3}, 2)) == []


@pytest.mark.parametrize(
    "mapping,cycles",
    [({1: 1}, 1), ({1: 2, 2: 1}, 1), ({1: 2, 2: 3}, 0), ({1: 1, 2: 3, 3: 2, 4: 5}, 2)],
)
def test_cycle_count(mapping, cycles):
    assert cycle_count(phi(mapping)) == cycles


@pytest.mark.parametrize(
    "mapping,j,expected",
    [({3: 5}, 5, 3), ({2: 3, 3: 5}, 5, 2), ({1: 4, 2: 1}, 4, 2)],
)
def test_chain_resolve(mapping, j, expected):
    assert chain_resolve(phi(mapping), j) == expected


def test_chain_resolve_rejects_domain_points():
    with pytest.raises(ContractViolation):
        chain_resolve(phi({2: 3, 3: 5}), 3)
    with pytest.raises(ContractViolation):
        chain_resolve(phi({2: 3}), 4)


@pytest.mark.parametrize(
    "mapping,cols,expected",
    [
        ({3: 5}, (1, 2, 3, 4, 5), (1, 2, 4, 3)),
        ({3: 2}, (1, 2, 3, 4, 5), (1, 3, 4, 5)),
        ({2: 3, 3: 5}, (1, 2, 3, 4, 5), (1, 4, 2)),
        ({1: 1}, (1, 2, 3), (2, 3)),
    ],
)
def test_rewire(mapping, cols, expected):
    assert rewire(phi(mapping), cols) == expected


def test_invalid_maps():
    with pytest.raises(ContractViolation):
        PartialInjection(((1, 2), (1, 3)))
    with pytest.raises(ContractViolation):
        PartialInjection(((1, 2), (3, 2)))


def test_render():
    assert str(phi({2: 3, 1: 1})) == "{1->1, 2->3}"
