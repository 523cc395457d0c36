"""Complement models, constraint realization, spanning and competitor checks."""

import numpy as np
import pytest

from spanmin import (ConstraintCycle, FaceSet, InvalidInputError,
                     PreconditionError, RealizationError, Region,
                     build_grid_complex, competitor_check,
                     complement_subcomplex, free_collapse_candidates,
                     is_spanning, realize_constraint, spanning_check)
from spanmin.complement import ComplementModel
from spanmin.problems import generate_faceset, linking_loops


def separating_row(K):
    """All horizontal edges across the middle of a 2D grid box."""
    return generate_faceset("separating-row", K, 1)


def point_pair(box):
    mid = box[1] // 2
    return ConstraintCycle(kind="point-pair",
                           points=((0, 0), (0, box[1])))


# -- constraint validation ----------------------------------------------------

def test_constraint_kind_validation():
    with pytest.raises(InvalidInputError):
        ConstraintCycle(kind="sphere", points=((0, 0),))
    with pytest.raises(InvalidInputError):
        ConstraintCycle(kind="point-pair", points=((0, 0),))
    with pytest.raises(InvalidInputError):
        ConstraintCycle(kind="loop", points=((0, 0),))
    assert ConstraintCycle(kind="point-pair",
                           points=((0, 0), (1, 1))).degree == 0
    assert ConstraintCycle(kind="loop",
                           points=((0, 0), (1, 0), (1, 1))).degree == 1


# -- complement model ---------------------------------------------------------

def test_single_interior_edge_does_not_separate():
    K = build_grid_complex(2, [2, 2])
    v0, v1 = K.grid.vertex_at((1, 1)), K.grid.vertex_at((2, 1))
    e = K.index(tuple(sorted((v0, v1))))
    model = complement_subcomplex(K, FaceSet(K, 1, (e,)), max_dim=1)
    assert model.homology(0).rank == 1


def test_separating_row_two_components():
    K = build_grid_complex(2, [2, 2])
    model = complement_subcomplex(K, separating_row(K), max_dim=1)
    assert model.homology(0).rank == 2


def test_separating_row_with_gap_reconnects():
    K = build_grid_complex(2, [2, 2])
    F = separating_row(K)
    gapped = F.difference(F.faces[:1])
    model = complement_subcomplex(K, gapped, max_dim=1)
    assert model.homology(0).rank == 1


def test_4d_plane_complement_h1():
    K = build_grid_complex(4, [2, 2, 2, 2])
    c = [b // 2 for b in K.grid.box]
    faces = tuple(
        i for i, s in enumerate(K.simplices(2))
        if all(K.grid.points[v][2] == c[2] and K.grid.points[v][3] == c[3]
               for v in s))
    model = complement_subcomplex(K, FaceSet(K, 2, faces), max_dim=2)
    h1 = model.homology(1)
    assert (h1.rank, h1.torsion) == (1, ())


def test_model_vertex_and_is_clear():
    K = build_grid_complex(2, [2, 2])
    F = separating_row(K)
    model = complement_subcomplex(K, F, max_dim=1)
    blocked = F.faces[0]
    assert not model.is_clear(1, blocked)
    with pytest.raises(RealizationError):
        model.model_vertex(1, blocked)
    free = next(i for i in range(K.n_simplices(1)) if i not in F)
    assert model.is_clear(1, free)
    assert model.model_vertex(1, free) >= 0


def test_wrong_complex_rejected():
    K1 = build_grid_complex(2, [1, 1])
    K2 = build_grid_complex(2, [1, 1])
    with pytest.raises(PreconditionError):
        ComplementModel(K1, FaceSet(K2, 1, ()), max_dim=1)


# -- realization and spanning -------------------------------------------------

def test_point_pair_realizes_as_zero_cycle():
    K = build_grid_complex(2, [2, 2])
    model = complement_subcomplex(K, separating_row(K), max_dim=1)
    chain = realize_constraint(point_pair(K.grid.box), model)
    assert chain.dim == 0
    assert sorted(chain.coeffs.values()) == [-1, 1]


def test_loop_realizes_as_cycle():
    K = build_grid_complex(2, [3, 3])
    loop = ConstraintCycle(kind="loop", points=(
        (0, 0), (1, 0), (2, 0), (2, 1), (2, 2), (1, 2), (0, 2), (0, 1)))
    model = complement_subcomplex(K, FaceSet(K, 1, ()), max_dim=2)
    chain = realize_constraint(loop, model)
    assert chain.dim == 1 and not chain.is_zero()


def test_constraint_contact_raises():
    K = build_grid_complex(2, [2, 2])
    F = separating_row(K)
    mid = K.grid.box[1] // 2
    touching = ConstraintCycle(kind="point-pair",
                               points=((0, mid), (2, 2)))
    model = complement_subcomplex(K, F, max_dim=1)
    with pytest.raises(RealizationError):
        realize_constraint(touching, model)


def test_loop_must_follow_grid_edges():
    K = build_grid_complex(2, [3, 3])
    bad = ConstraintCycle(kind="loop", points=((0, 0), (2, 0), (0, 2)))
    model = complement_subcomplex(K, FaceSet(K, 1, ()), max_dim=2)
    with pytest.raises(RealizationError):
        realize_constraint(bad, model)


def test_spanning_check_pass_and_fail():
    K = build_grid_complex(2, [2, 2])
    F = separating_row(K)
    cons = [point_pair(K.grid.box)]
    [status] = spanning_check(K, F, cons)
    assert status.passed and status.reason == "nontrivial"
    # removing one edge opens a gap: the pair bounds
    gapped = F.difference(F.faces[:1])
    [status] = spanning_check(K, gapped, cons)
    assert not status.passed and status.reason == "null-homologous"


def test_spanning_check_contact_reason():
    K = build_grid_complex(2, [2, 2])
    F = separating_row(K)
    touching = ConstraintCycle(kind="point-pair", points=((0, 1), (2, 2)))
    [status] = spanning_check(K, F, [touching])
    assert not status.passed and status.reason == "contact"


def test_spanning_check_degenerate_reason():
    K = build_grid_complex(2, [2, 2])
    degenerate = ConstraintCycle(kind="point-pair", points=((0, 0), (0, 0)))
    [status] = spanning_check(K, FaceSet(K, 1, ()), [degenerate])
    assert not status.passed and status.reason == "degenerate"


def test_4d_linking_loop_spanning():
    K = build_grid_complex(4, [2, 2, 2, 2])
    F = generate_faceset("two-planes-orthogonal", K, 2)
    loops = linking_loops(K.grid.box)
    assert is_spanning(K, F, loops)
    # dropping the plane linked by the first loop kills that constraint
    c = [b // 2 for b in K.grid.box]
    first_plane = tuple(
        i for i in F.faces
        if all(K.grid.points[v][2] == c[2] and K.grid.points[v][3] == c[3]
               for v in K.simplex(2, i)))
    statuses = spanning_check(K, F.difference(first_plane), loops)
    assert not statuses[0].passed
    assert statuses[1].passed


def test_union_find_oracle_agreement():
    # degree-0 verdicts match a direct reachability computation
    rng = np.random.default_rng(19)
    K = build_grid_complex(2, [3, 3])
    ne = K.n_simplices(1)
    cons = [ConstraintCycle(kind="point-pair", points=((0, 0), (3, 3)))]
    for _ in range(25):
        faces = tuple(sorted(rng.choice(ne, size=10, replace=False).tolist()))
        F = FaceSet(K, 1, faces)
        [status] = spanning_check(K, F, cons)
        if status.reason == "contact":
            continue
        model = complement_subcomplex(K, F, max_dim=1)
        u = model.sd.sd_id(0, K.grid.vertex_at((0, 0)))
        v = model.sd.sd_id(0, K.grid.vertex_at((3, 3)))
        separated = not model.same_component(u, v)
        assert status.passed == separated


# -- regions and competitor checks ---------------------------------------------

def test_region_validation_and_membership():
    with pytest.raises(InvalidInputError):
        Region(lo=(1, 1), hi=(0, 0))
    R = Region(lo=(0, 0), hi=(2, 1))
    assert R.contains_point((1, 1))
    assert not R.contains_point((1, 2))


def test_competitor_identity():
    K = build_grid_complex(2, [2, 2])
    E = separating_row(K)
    R = Region(lo=(0, 0), hi=(2, 2))
    v = competitor_check(E, E, R, 1, [point_pair(K.grid.box)])
    assert v.overall and v.boundary_match


def test_competitor_hole_detected():
    K = build_grid_complex(2, [2, 2])
    E = separating_row(K)
    F = E.difference(E.faces[:1])
    R = Region(lo=(0, 0), hi=(2, 2))
    v = competitor_check(E, F, R, 1, [point_pair(K.grid.box)])
    assert not v.overall
    assert v.survival[0] == (0, False)


def test_competitor_boundary_mismatch():
    K = build_grid_complex(2, [2, 2])
    E = separating_row(K)
    F = E.difference(E.faces[:1])
    R = Region(lo=(0, 0), hi=(0, 0))  # the edit is outside this region
    v = competitor_check(E, F, R, 1, [])
    assert not v.boundary_match and not v.overall


def test_competitor_monotone_in_region():
    # passing for a region implies passing for any containing region
    K = build_grid_complex(2, [2, 2])
    E = separating_row(K)
    small = Region(lo=(0, 0), hi=(1, 2))
    big = Region(lo=(0, 0), hi=(2, 2))
    cons = [point_pair(K.grid.box)]
    if competitor_check(E, E, small, 1, cons).overall:
        assert competitor_check(E, E, big, 1, cons).overall


def test_competitor_mismatched_inputs():
    K = build_grid_complex(2, [2, 2])
    E = separating_row(K)
    R = Region(lo=(0, 0), hi=(2, 2))
    with pytest.raises(PreconditionError):
        competitor_check(E, FaceSet(K, 1, ()), R, 0, [])


# -- free-face collapses --------------------------------------------------------

def test_collapse_candidates_on_path():
    K = build_grid_complex(2, [2, 2])
    # an L-shaped path of edges: both ends are free
    pts = [((0, 0), (1, 0)), ((1, 0), (2, 0)), ((2, 0), (2, 1))]
    faces = tuple(K.index(tuple(sorted(
        (K.grid.vertex_at(a), K.grid.vertex_at(b))))) for a, b in pts)
    F = FaceSet(K, 1, faces)
    moves = free_collapse_candidates(F)
    collapsible = {f for f, _ in moves}
    assert faces[0] in collapsible and faces[2] in collapsible
    assert faces[1] not in collapsible


def test_collapse_candidates_respect_region():
    K = build_grid_complex(2, [2, 2])
    pts = [((0, 0), (1, 0)), ((1, 0), (2, 0))]
    faces = tuple(K.index(tuple(sorted(
        (K.grid.vertex_at(a), K.grid.vertex_at(b))))) for a, b in pts)
    F = FaceSet(K, 1, faces)
    R = Region(lo=(1, 0), hi=(2, 0))
    moves = free_collapse_candidates(F, region=R)
    assert all(f == faces[1] for f, _ in moves)
