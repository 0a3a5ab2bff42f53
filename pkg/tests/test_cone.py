from hypothesis import given, settings
from hypothesis import strategies as st

import corpus
import oracles
from cornerforge import (
    Cone,
    IntMatrix,
    Sublattice,
    cone_combine,
    cone_intersection,
    dual_cone,
    face_lattice_of_cone,
    linear_preimage,
)
from strategies import ray_lists


def test_orthant_is_self_dual():
    assert dual_cone(Cone.orthant(2)) == Cone.orthant(2)


def test_dual_of_wedge():
    c = Cone(2, [(1, 0), (1, 2)])
    # hand check: normals of the two walls are (0,1) and (2,-1)
    assert dual_cone(c) == Cone(2, [(0, 1), (2, -1)])
    assert set(c.facet_normals) == {(0, 1), (2, -1)}


def test_dual_of_plane_is_zero():
    assert dual_cone(Cone.full_space(2)) == Cone.zero(2)
    assert dual_cone(Cone.zero(2)) == Cone.full_space(2)


def test_rays_canonical_and_primitive():
    a = Cone(2, [(2, 0), (1, 2), (3, 3), (0, 0)])
    b = Cone(2, [(1, 2), (1, 0)])
    assert a == b and hash(a) == hash(b)
    assert a.rays == ((1, 0), (1, 2))


def test_face_lattice_examples():
    faces, order = face_lattice_of_cone(Cone.orthant(2))
    assert len(faces) == 4
    assert sorted(f.codim for f in faces) == [0, 1, 1, 2]
    faces, _ = face_lattice_of_cone(Cone(2, [(1, 0), (1, 2)]))
    assert [f.codim for f in faces] == [2, 1, 1, 0]
    faces, _ = face_lattice_of_cone(Cone(1, [(1,), (-1,)]))
    assert len(faces) == 1 and faces[0].cone == Cone.full_space(1)


def test_face_order_is_inclusion():
    c = Cone(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, -1)])
    faces, order = face_lattice_of_cone(c)
    for i, j in order:
        assert faces[i].cone <= faces[j].cone
    for i, a in enumerate(faces):
        for j, b in enumerate(faces):
            if a.cone <= b.cone:
                assert (i, j) in order


def test_queries():
    o = Cone.orthant(2)
    assert o.contains((1, 1)) and not o.contains((-1, 0)) and o.is_pointed()
    w = Cone(2, [(1, 0), (1, 2)])
    assert w.relative_interior_point() == (2, 2)
    assert w.relative_interior_contains((2, 2))
    h = Cone(2, [(1, 0), (-1, 0), (0, 1)])
    assert h.lineality() == Sublattice(2, [(1, 0)])
    assert not h.is_pointed() and h.dim() == 2
    assert Cone.zero(3).relative_interior_point() == (0, 0, 0)


def test_intersection_and_preimage():
    a = Cone(2, [(1, 0), (1, 1)])
    b = Cone(2, [(1, 1), (0, 1)])
    assert cone_intersection(a, b) == Cone(2, [(1, 1)])
    assert cone_combine("intersection", a, b) == Cone(2, [(1, 1)])
    assert linear_preimage(IntMatrix.identity(2), Cone.orthant(2)) == Cone.orthant(2)
    diag = IntMatrix([[1], [1]], 1)
    assert linear_preimage(diag, Cone(2, [(1, 1)])) == Cone(1, [(1,)])
    assert cone_combine("linear_preimage", diag, Cone(2, [(1, 1)])) == Cone(1, [(1,)])


def test_double_dual_corpus():
    for p in corpus.monoid_corpus():
        c = p.cone
        assert dual_cone(dual_cone(c)) == c


def test_face_anti_isomorphism_corpus():
    for p in corpus.monoid_corpus(100):
        c = p.cone
        d = dual_cone(c)
        faces, dfaces = c.faces(), d.faces()
        assert len(faces) == len(dfaces)
        partner = {}
        for i, f in enumerate(faces):
            # F^perp in the dual: dual vectors vanishing on F
            perp = [j for j, g in enumerate(dfaces) if all(sum(a * b for a, b in zip(u, v)) == 0 for u in g.cone.rays for v in f.cone.rays)]
            best = max(perp, key=lambda j: dfaces[j].cone.dim())
            partner[i] = best
            assert f.codim == dfaces[best].cone.dim() - d.lineality().rank
        assert sorted(partner.values()) == list(range(len(dfaces)))
        for i, a in enumerate(faces):
            for j, b in enumerate(faces):
                if a.cone <= b.cone:
                    assert dfaces[partner[j]].cone <= dfaces[partner[i]].cone


@settings(max_examples=50)
@given(st.integers(1, 3).flatmap(lambda r: st.tuples(st.just(r), ray_lists(r, 4, -2, 3))), st.data())
def test_contains_matches_caratheodory(rank_rays, data):
    rank, rays = rank_rays
    c = Cone(rank, rays)
    v = data.draw(st.lists(st.integers(-3, 3), min_size=rank, max_size=rank))
    assert c.contains(v) == oracles.caratheodory_contains(rays, v)


@settings(max_examples=50)
@given(st.integers(1, 3).flatmap(lambda r: st.tuples(st.just(r), ray_lists(r, 5, -2, 3))))
def test_inequalities_match_brute_force(rank_rays):
    rank, rays = rank_rays
    c = Cone(rank, rays)
    h = oracles.HRep(rank, rays)
    assert c.dim() == h.dim
    # the equations may differ by a basis change; membership of test points may not
    for v in [(x, y, z)[:rank] for x in range(-2, 3) for y in range(-2, 3) for z in range(-2, 3)]:
        assert c.contains(v) == h.contains(v)
    if c.is_pointed() and c.is_full():
        assert sorted(c.facet_normals) == h.normals


@settings(max_examples=40)
@given(st.integers(1, 3).flatmap(lambda r: st.tuples(st.just(r), ray_lists(r, 4, -2, 3))))
def test_intersection_membership(rank_rays):
    rank, rays = rank_rays
    a = Cone(rank, rays)
    b = Cone.orthant(rank)
    i = cone_intersection(a, b)
    for v in [(x, y, z)[:rank] for x in range(-2, 3) for y in range(-2, 3) for z in range(-2, 3)]:
        assert i.contains(v) == (a.contains(v) and b.contains(v))
