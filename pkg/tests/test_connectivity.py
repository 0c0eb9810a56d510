import pytest

from pyintertwine.connectivity import connectivity, hyperplanes, is_rounded
from pyintertwine.fixtures import uniform, mk4, pairsum, free_spike, catalog
from pyintertwine.matroid import is_uniform


@pytest.mark.parametrize('matroid, tutte, vertical, rounded', [
    (mk4(), 3, 3, True),
    (uniform(2, 4), None, 2, True),
    (pairsum(2), 1, 1, False),
    (free_spike(4), 3, 3, False),
])
def test_connectivity(matroid, tutte, vertical, rounded):
    result = connectivity(matroid)
    assert result.tutte == tutte
    assert result.vertical == vertical
    assert result.rounded == rounded


def test_hyperplanes():
    # the four triangles and the three pairs of opposite edges
    assert len(hyperplanes(mk4())) == 7
    assert sorted(hyperplanes(pairsum(2)).tolist()) == [0b0011, 0b1100]
    assert not is_rounded(pairsum(2))


def test_construction_is_rounded(flagship):
    result = connectivity(flagship)
    assert result.rounded
    assert result.vertical == flagship.rank
    assert str(result).startswith('lambda=')


def test_connectivity_limit():
    with pytest.raises(ValueError, match='too large'):
        connectivity(uniform(2, 19))


def test_tutte_below_vertical_connectivity():
    for identifier, matroid in catalog().items():
        if is_uniform(matroid):
            continue
        result = connectivity(matroid)
        assert result.tutte is not None and result.tutte <= result.vertical, identifier
