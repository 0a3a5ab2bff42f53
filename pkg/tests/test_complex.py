import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import corpus
from cornerforge import (
    Arrow,
    ComplexMorphism,
    IntMatrix,
    MonoidalComplex,
    NotASubcomplexError,
    ToricMonoid,
    check_refinement,
    compose,
    downward_closure,
    face_complex_of_monoid,
    identity_map,
    induced_morphism,
    make_monomial_map,
    restrict_complex,
    stellar_subdivision,
    subcomplex,
    subcomplex_inclusion,
    teardrop_complex,
    validate_complex,
    validate_morphism,
    zero_complex,
)
from strategies import full_monoids

N1, N2, N3 = ToricMonoid.free(1), ToricMonoid.free(2), ToricMonoid.free(3)


def test_face_complex_counts():
    fc = face_complex_of_monoid(N2)
    # inclusion pairs of the Boolean lattice on two atoms: 1 + 2*2 + 4 = 9
    assert len(fc.objects) == 4 and len(fc.arrows) == 9
    assert validate_complex(fc) == []
    assert len(face_complex_of_monoid(ToricMonoid.zero()).objects) == 1
    assert len(face_complex_of_monoid(N3).objects) == 8


def test_teardrop_is_valid():
    t = teardrop_complex()
    assert validate_complex(t) == []
    assert len(t.arrows_between(1, 2)) == 2
    assert t.maximal_objects() == (2,)


def test_missing_zero_object():
    c = MonoidalComplex([N1], [Arrow(0, 0, IntMatrix.identity(1))])
    v = validate_complex(c)
    assert len(v) == 1
    assert v[0].axiom == "unique object" and v[0].object == 0
    assert N1.faces[0] == N1.unit_face and v[0].selector == N1.unit_face.selector
    assert "0 arrows" in str(v[0])


def test_missing_composite():
    t = teardrop_complex()
    corner = [a for a in t.arrows if (a.source, a.target) == (0, 2)]
    c = MonoidalComplex(t.objects, [a for a in t.arrows if a not in corner])
    axioms = {v.axiom for v in validate_complex(c)}
    # dropping 0 -> N2 breaks closure under composition and leaves the corner of N2 uncovered
    assert axioms == {"composition", "unique object"}
    assert validate_complex(c.with_closure()) == []


def test_non_face_arrow():
    c = face_complex_of_monoid(N1)
    bad = MonoidalComplex(c.objects, list(c.arrows) + [Arrow(1, 1, IntMatrix([[2]]))])
    assert any(v.axiom == "arrow" for v in validate_complex(bad))


def test_corpus_face_complexes_validate():
    for p in corpus.monoid_corpus(60):
        assert validate_complex(face_complex_of_monoid(p)) == []


# -- morphisms ---------------------------------------------------------------------


def test_identity_and_inclusion_morphisms():
    for c in (face_complex_of_monoid(N2), teardrop_complex(), zero_complex()):
        assert validate_morphism(ComplexMorphism.identity(c)) == []
    fc = face_complex_of_monoid(N2)
    inc = subcomplex_inclusion(fc, [0, 1])
    assert validate_morphism(inc) == []
    assert validate_complex(inc.source) == []


def test_axis_assignment_is_not_interior():
    src, tgt = face_complex_of_monoid(N1), face_complex_of_monoid(N2)
    top = len(tgt.objects) - 1
    m = ComplexMorphism(src, tgt, [(0, IntMatrix.zeros(0, 0)), (top, IntMatrix([[1], [0]]))])
    v = validate_morphism(m)
    assert [x.axiom for x in v] == ["interior"] and v[0].object == 1


def test_non_commuting_square():
    t = teardrop_complex()
    fc = face_complex_of_monoid(N1)
    # a ray whose corner goes to the N object: the square over 0 -> ray holds only with the right target
    m = ComplexMorphism(fc, t, [(0, IntMatrix.zeros(0, 0)), (2, IntMatrix([[1], [1]]))])
    assert validate_morphism(m) == []
    m = ComplexMorphism(fc, t, [(1, IntMatrix.zeros(1, 0)), (2, IntMatrix([[1], [1]]))])
    assert any(v.axiom in ("interior", "commutation") for v in validate_morphism(m))


def test_subcomplex_requires_downward_closure():
    fc = face_complex_of_monoid(N2)
    with pytest.raises(NotASubcomplexError):
        subcomplex(fc, [1])
    assert downward_closure(fc, [3]) == (0, 1, 2, 3)
    assert len(subcomplex(fc, downward_closure(fc, [1])).objects) == 2


def _map_from_dual_point(p, w, scale=1):
    # f: X_N -> X_P with dual 1 -> w; exponents are the values of w on the Hilbert basis
    return make_monomial_map(N1, p, [[scale * sum(a * b for a, b in zip(w, h)) for h in p.hilbert_basis]])


@settings(max_examples=25)
@given(full_monoids(max_rank=3), st.integers(1, 3))
def test_induced_morphism_is_functorial(p, k):
    w = p.dual.cone.relative_interior_point()
    f = _map_from_dual_point(p, w)
    h = make_monomial_map(N1, N1, [[k]])
    fh = compose(f, h)
    assert _map_from_dual_point(p, w, k).mu == fh.mu
    left = induced_morphism(fh)
    right = induced_morphism(f).compose(induced_morphism(h))
    assert left == right
    assert validate_morphism(left) == []
    ident = identity_map(p)
    assert induced_morphism(compose(ident, f)) == induced_morphism(f)
    assert induced_morphism(ident) == ComplexMorphism.identity(induced_morphism(ident).source)


# -- restriction ---------------------------------------------------------------------


def test_restrict_identity_to_face_subcomplex():
    fc = face_complex_of_monoid(N2)
    r = restrict_complex(ComplexMorphism.identity(fc), [0, 1])
    assert r.source_indices == (0, 1) == r.target_indices
    assert r.morphism.source.objects == fc.objects[:2]
    assert validate_morphism(r.morphism) == []


def test_restrict_corner_refinement():
    ref = stellar_subdivision(N2, (1, 1))
    target = ref.target
    ray = target.index_of_cone(N2.faces[1].cone)
    sub = downward_closure(target, [ray])
    res = restrict_complex(ref.morphism, sub)
    # only the corner and the ray itself lie over the ray
    assert len(res.morphism.source.objects) == 2
    assert check_refinement(res.morphism) == []
    assert all(m.is_unimodular() for _, m in res.morphism.assignment if m.nrows)


def test_restrict_to_zero_subcomplex():
    ref = stellar_subdivision(N2, (1, 1))
    res = restrict_complex(ref.morphism, [0])
    assert len(res.morphism.source.objects) == 1 and res.morphism.source.objects[0] == ToricMonoid.zero()
    assert check_refinement(res.morphism) == []


def test_restrictions_of_corpus_refinements():
    for p, r in corpus.refinement_corpus(15):
        t = r.target
        for i in range(len(t.objects)):
            res = restrict_complex(r.morphism, downward_closure(t, [i]))
            assert check_refinement(res.morphism) == []
