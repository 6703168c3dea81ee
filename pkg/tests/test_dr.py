import math
from fractions import Fraction

import numpy as np
import pytest

from isodiam.dr import (DRQuery, conjectured_value, dr_lower_bound, dr_search,
                        dr_simplex_value, equiangular_check, max_simplex_volume,
                        witness_library)
from isodiam.errors import InvalidQuery, UnknownWitness


def bound_exact(m, n, j):
    sq = Fraction(math.comb(n, j)) * Fraction(m, n) ** j / (math.comb(m, j) * math.factorial(j) ** 2)
    return math.sqrt(sq)


@pytest.mark.parametrize("m,n,j", [(m, n, j) for n in range(1, 6)
                                   for m in range(n, math.comb(n + 1, 2) + 1)
                                   for j in range(1, n + 1)])
def test_lower_bound_against_rational_arithmetic(m, n, j):
    assert dr_lower_bound(m, n, j) == pytest.approx(bound_exact(m, n, j), rel=1e-13)


def test_known_values():
    assert dr_lower_bound(6, 3, 3) == pytest.approx(math.sqrt(10) / 30, rel=1e-14)
    assert dr_lower_bound(3, 2, 2) == pytest.approx(math.sqrt(3) / 4, rel=1e-14)
    assert dr_simplex_value(3, 3) == pytest.approx(4 / (6 * math.sqrt(27)), rel=1e-14)
    assert conjectured_value(3) == pytest.approx(1 / (6 * math.sqrt(2)))


def test_query_clamping_and_errors():
    with pytest.warns(UserWarning):
        q = DRQuery(9, 3, 3)
    assert (q.m, q.clamped_from) == (6, 9)
    with pytest.warns(UserWarning):
        assert dr_lower_bound(20, 3, 2) == dr_lower_bound(6, 3, 2)
    for bad in [(2, 3, 1), (3, 3, 0), (3, 2, 3), (3.0, 2, 1)]:
        with pytest.raises(InvalidQuery):
            DRQuery(*bad)


def test_max_simplex_volume_ties_are_lexicographic():
    assert max_simplex_volume(witness_library("crosspolytope4"), 2) == (0.5, (0, 1))


def test_dr533_witness():
    W = witness_library("dr533")
    assert W.value == pytest.approx(1 / 8, abs=1e-14)
    assert W.subset == (0, 1, 3)
    assert W.decomposition.residual < 1e-14


def test_equiangular():
    ok, c, target = equiangular_check(witness_library("icosahedron_lines").decomposition.directions)
    assert ok and c == pytest.approx(1 / math.sqrt(5)) and target == pytest.approx(c)
    ok, c, _ = equiangular_check(witness_library("regular_simplex2").decomposition.directions)
    assert ok and c == pytest.approx(0.5)
    assert not equiangular_check(witness_library("dr533").decomposition.directions)[0]


def test_witness_library():
    assert witness_library("tetrahedron_edges").value == pytest.approx(1 / (6 * math.sqrt(2)))
    assert witness_library("crosspolytope", n=3).n == 3
    with pytest.raises(UnknownWitness):
        witness_library("dodecahedron")
    with pytest.raises(UnknownWitness):
        witness_library("crosspolytope")


def test_search_small_is_deterministic():
    a = dr_search(5, 3, seed=3, restarts=6, iters=300)
    b = dr_search(5, 3, seed=3, restarts=6, iters=300, threads=3)
    assert a.value == b.value
    assert np.array_equal(a.decomposition.directions, b.decomposition.directions)
    assert a.decomposition.residual < 1e-8
    assert a.value >= dr_lower_bound(5, 3, 3) - 1e-12


def test_search_m_equals_n_finds_orthonormal_basis():
    W = dr_search(3, 3, seed=0, restarts=2, iters=50)
    assert W.value == pytest.approx(1 / 6)


def test_search_limits():
    with pytest.raises(InvalidQuery):
        dr_search(12, 3, seed=0)
    with pytest.raises(InvalidQuery):
        dr_search(6, 5, seed=0)
