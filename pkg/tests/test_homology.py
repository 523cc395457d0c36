"""Smith normal form and exact integer homology."""

import numpy as np
import pytest

from spanmin import (Chain, Complex, InvalidInputError, PreconditionError,
                     boundary, boundary_matrix, build_grid_complex,
                     homology_group, is_cycle, is_null_homologous,
                     smith_normal_form)
from spanmin.homology import _snf_diagonal, _snf_diagonal_sparse


def hollow_triangle():
    return Complex({0: [(0,), (1,), (2,)],
                    1: [(0, 1), (0, 2), (1, 2)]},
                   coords=[(0, 0), (1, 0), (0, 1)])


def hollow_tetrahedron():
    return Complex.from_maximal(
        [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)],
        coords=[(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])


def flat_torus():
    """The 7-vertex (Csaszar) triangulation of the torus: 14 triangles."""
    tris = []
    for i in range(7):
        tris.append(((i) % 7, (i + 1) % 7, (i + 3) % 7))
        tris.append(((i) % 7, (i + 2) % 7, (i + 3) % 7))
    coords = [(float(i), 0.0) for i in range(7)]
    return Complex.from_maximal(tris, coords)


# -- Smith normal form -------------------------------------------------------

def test_snf_identity():
    r = smith_normal_form(np.eye(3, dtype=int))
    assert r.diagonal == [1, 1, 1]
    assert r.check(np.eye(3, dtype=int))


def test_snf_zero_matrix():
    r = smith_normal_form(np.zeros((2, 3), dtype=int))
    assert r.diagonal == [0, 0]
    assert r.rank == 0


def test_snf_known_invariant_factors():
    A = [[2, 4], [6, 8]]
    r = smith_normal_form(A)
    assert r.diagonal == [2, 4]
    assert r.check(A)


def test_snf_empty_matrix():
    r = smith_normal_form([])
    assert r.diagonal == []


def test_snf_divisibility_chain_random():
    rng = np.random.default_rng(11)
    for _ in range(40):
        m, n = rng.integers(1, 7, size=2)
        A = rng.integers(-9, 10, size=(int(m), int(n)))
        r = smith_normal_form(A)
        assert r.check(A)
        d = [x for x in r.diagonal if x]
        for a, b in zip(d, d[1:]):
            assert b % a == 0


def test_sparse_diagonal_matches_dense_random():
    rng = np.random.default_rng(7)
    for _ in range(60):
        m, n = rng.integers(1, 9, size=2)
        A = rng.integers(-6, 7, size=(int(m), int(n)))
        A[rng.random(A.shape) < 0.5] = 0
        dense = [x for x in smith_normal_form(A).diagonal if x]
        assert _snf_diagonal(A) == dense


def test_sparse_diagonal_handles_non_unit_entries():
    cols = {0: {0: 4, 1: 6}, 1: {0: 10, 1: 4}}
    # matrix [[4,10],[6,4]]: det = -44, gcd = 2 -> invariants (2, 22)
    assert _snf_diagonal_sparse(cols) == [2, 22]


# -- homology battery --------------------------------------------------------

def test_circle_homology():
    K = hollow_triangle()
    assert homology_group(K, 0).rank == 1
    h1 = homology_group(K, 1)
    assert (h1.rank, h1.torsion) == (1, ())


def test_hollow_tetrahedron_homology():
    K = hollow_tetrahedron()
    assert homology_group(K, 0).rank == 1
    assert homology_group(K, 1).is_trivial()
    h2 = homology_group(K, 2)
    assert (h2.rank, h2.torsion) == (1, ())


def test_torus_homology():
    K = flat_torus()
    assert K.n_simplices(2) == 14
    assert homology_group(K, 0).rank == 1
    h1 = homology_group(K, 1)
    assert (h1.rank, h1.torsion) == (2, ())
    assert homology_group(K, 2).rank == 1


def test_contractible_grids_trivial():
    for n, box in [(1, [3]), (2, [2, 2]), (3, [1, 1, 1])]:
        K = build_grid_complex(n, box)
        assert homology_group(K, 0).rank == 1
        for k in range(1, n + 1):
            assert homology_group(K, k).is_trivial()


def test_two_components():
    K = Complex({0: [(0,), (1,), (2,), (3,)], 1: [(0, 1), (2, 3)]},
                coords=[(0,), (1,), (2,), (3,)])
    assert homology_group(K, 0).rank == 2


def test_homology_dimension_range():
    K = hollow_triangle()
    with pytest.raises(InvalidInputError):
        homology_group(K, 2)
    with pytest.raises(InvalidInputError):
        homology_group(K, -1)


def test_rank_consistency_on_grid():
    K = build_grid_complex(2, [2, 2])
    for k in range(1, 3):
        nk = K.n_simplices(k)
        rk = len(_snf_diagonal(boundary_matrix(K, k)))
        rk1 = (len(_snf_diagonal(boundary_matrix(K, k + 1)))
               if k + 1 <= K.dim else 0)
        assert homology_group(K, k).rank == nk - rk - rk1


def test_subdivided_square_same_homology():
    for box in ([1, 1], [2, 2], [4, 4]):
        K = build_grid_complex(2, box)
        assert homology_group(K, 0).rank == 1
        assert homology_group(K, 1).is_trivial()


# -- cycles and null-homology ------------------------------------------------

def test_is_cycle():
    K = hollow_triangle()
    loop = Chain.from_simplices(K, [((0, 1), 1), ((1, 2), 1), ((2, 0), 1)])
    assert is_cycle(loop)
    assert not is_cycle(Chain(K, 1, {0: 1}))
    assert is_cycle(Chain(K, 1, {}))


def test_null_homology_filled_triangle():
    K = Complex.from_maximal([(0, 1, 2)], coords=[(0, 0), (1, 0), (0, 1)])
    loop = Chain.from_simplices(K, [((0, 1), 1), ((1, 2), 1), ((2, 0), 1)])
    null, witness = is_null_homologous(loop)
    assert null
    assert boundary(witness) == loop


def test_null_homology_hollow_triangle():
    K = hollow_triangle()
    loop = Chain.from_simplices(K, [((0, 1), 1), ((1, 2), 1), ((2, 0), 1)])
    null, witness = is_null_homologous(loop)
    assert not null and witness is None
    # H_1 is torsion-free, so 2z does not bound either
    null2, _ = is_null_homologous(2 * loop)
    assert not null2


def test_null_homology_zero_cycle():
    K = build_grid_complex(2, [2, 2])
    p = K.grid.vertex_at((0, 0))
    q = K.grid.vertex_at((2, 2))
    z = Chain(K, 0, {q: 1, p: -1})
    null, witness = is_null_homologous(z)
    assert null
    assert boundary(witness) == z


def test_null_homology_separated_points():
    K = Complex({0: [(0,), (1,)]}, coords=[(0,), (1,)])
    z = Chain(K, 0, {0: -1, 1: 1})
    null, witness = is_null_homologous(z)
    assert not null and witness is None


def test_null_homology_requires_cycle():
    K = hollow_triangle()
    with pytest.raises(PreconditionError):
        is_null_homologous(Chain(K, 1, {0: 1}))


def test_null_homology_witnesses_random_grid():
    rng = np.random.default_rng(3)
    K = build_grid_complex(2, [3, 3])
    n2 = K.n_simplices(2)
    for _ in range(15):
        x = Chain(K, 2, {int(i): int(c) for i, c in
                         zip(rng.integers(0, n2, 5), rng.integers(-3, 4, 5))})
        z = boundary(x)
        null, witness = is_null_homologous(z)
        assert null
        assert boundary(witness) == z
