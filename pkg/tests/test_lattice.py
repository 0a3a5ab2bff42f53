import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from cornerforge import (
    IntMatrix,
    LatticeOverflowError,
    NoLeftInverseError,
    Sublattice,
    hermite_normal_form,
    integer_kernel,
    integer_right_inverse,
    lattice_quotient,
    left_inverse_on_sublattice,
    normal_forms,
    primitive,
    saturated_span,
    smith_normal_form,
    solve_integer,
    split_quotient,
)
from strategies import int_matrices


def diag(*xs):
    return IntMatrix([[x if i == j else 0 for j in range(len(xs))] for i, x in enumerate(xs)], len(xs))


# -- IntMatrix -----------------------------------------------------------------


def test_matrix_basics():
    m = IntMatrix([[1, 2], [3, 4]], 2)
    assert m.shape == (2, 2)
    assert m.T.rows == ((1, 3), (2, 4))
    assert (m @ IntMatrix.identity(2)) == m
    assert m.apply((1, 1)) == (3, 7)
    assert m.det() == -2
    assert not m.is_unimodular()
    assert IntMatrix([[2, 1], [1, 1]], 2).is_unimodular()


def test_overflow_is_an_error():
    big = 2**62
    with pytest.raises(LatticeOverflowError):
        IntMatrix([[2**63]], 1)
    m = IntMatrix([[big]], 1)
    with pytest.raises(LatticeOverflowError):
        m @ IntMatrix([[4]], 1)


def test_empty_shapes():
    z = IntMatrix.zeros(0, 3)
    assert z.shape == (0, 3)
    assert (IntMatrix.zeros(2, 0) @ z).shape == (2, 3)


# -- normal forms --------------------------------------------------------------


def test_identity_normal_forms():
    nf = normal_forms(IntMatrix.identity(2))
    assert nf.hermite == IntMatrix.identity(2)
    assert nf.smith == IntMatrix.identity(2)


def test_smith_diag_2_3():
    # invariant factors from gcds of minors: d1 = gcd(2,3) = 1, d2 = 6
    assert oracles.invariant_factors([[2, 0], [0, 3]]) == [1, 6]
    d, u, v = smith_normal_form(diag(2, 3))
    assert d == diag(1, 6)
    assert u @ diag(2, 3) @ v == d


def test_smith_zero_matrix():
    d, _, _ = smith_normal_form(IntMatrix.zeros(2, 3))
    assert d == IntMatrix.zeros(2, 3)


def test_normal_forms_reject_empty():
    with pytest.raises(ValueError):
        normal_forms(IntMatrix.zeros(0, 2))


def _is_row_echelon(h):
    last = -1
    zero_seen = False
    for row in h.rows:
        nz = [j for j, x in enumerate(row) if x]
        if not nz:
            zero_seen = True
            continue
        if zero_seen or nz[0] <= last:
            return False
        last = nz[0]
        if row[last] <= 0:
            return False
        for other in h.rows[: h.rows.index(row)]:
            if not 0 <= other[last] < row[last]:
                return False
    return True


@given(int_matrices())
def test_hermite_recomposes(m):
    h, u = hermite_normal_form(m)
    assert u @ m == h
    assert abs(u.det()) == 1
    assert _is_row_echelon(h)


@given(int_matrices(max_rows=3, max_cols=3))
def test_smith_recomposes_and_matches_minors(m):
    d, u, v = smith_normal_form(m)
    assert u @ m @ v == d
    assert abs(u.det()) == 1 and abs(v.det()) == 1
    diagonal = [d[i, i] for i in range(min(d.shape))]
    assert all(d[i, j] == 0 for i in range(d.nrows) for j in range(d.ncols) if i != j)
    nonzero = [x for x in diagonal if x]
    assert all(x > 0 for x in nonzero)
    assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))
    assert nonzero == oracles.invariant_factors([list(r) for r in m.rows])


@given(st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3), min_size=1, max_size=4))
def test_hermite_is_canonical(vectors):
    # the same lattice from a shuffled, recombined generating set gives the same basis
    a = Sublattice(3, vectors)
    mixed = list(reversed(vectors)) + [tuple(x + y for x, y in zip(vectors[0], vectors[-1]))]
    assert Sublattice(3, mixed) == a


# -- integer systems -----------------------------------------------------------


def test_solve_examples():
    assert solve_integer(diag(2, 2), (2, 4)) == (1, 2)
    assert solve_integer(diag(2, 2), (1, 0)) is None
    a = IntMatrix([[1, 1], [0, 1]], 2)
    x = solve_integer(a, (3, 1))
    assert x == (2, 1) and a.apply(x) == (3, 1)


@settings(max_examples=40)
@given(int_matrices(min_rows=2, max_rows=3, min_cols=2, max_cols=3, lo=-3, hi=3), st.data())
def test_solve_agrees_with_box_search(a, data):
    b = tuple(data.draw(st.integers(-6, 6)) for _ in range(a.nrows))
    x = solve_integer(a, b)
    brute = oracles.brute_solve([list(r) for r in a.rows], b, 10)
    if x is not None:
        assert a.apply(x) == b
    if brute is not None:
        assert x is not None
    if x is None:
        assert brute is None


@given(int_matrices(max_rows=3, max_cols=4, lo=-3, hi=3))
def test_integer_kernel(a):
    ker = integer_kernel(a)
    assert all(a.apply(k) == (0,) * a.nrows for k in ker)
    assert len(ker) == a.ncols - a.rank()
    if ker:
        assert Sublattice(a.ncols, ker).is_saturated()


# -- sublattices ---------------------------------------------------------------


def test_sublattice_membership_and_saturation():
    k = Sublattice(2, [(2, 0), (0, 2)])
    assert k.contains((2, 4)) and not k.contains((1, 0))
    assert not k.is_saturated()
    assert saturated_span(2, [(2, 0)]) == Sublattice(2, [(1, 0)])


@settings(max_examples=30)
@given(st.lists(st.lists(st.integers(-3, 3), min_size=2, max_size=2), min_size=1, max_size=3))
def test_saturation_matches_span_points(vectors):
    sat = Sublattice(2, vectors).saturation()
    for p in oracles.lattice_points_of_span(2, vectors, box=3):
        assert sat.contains(p)


# -- left inverses ---------------------------------------------------------------


def test_left_inverse_examples():
    nu = IntMatrix([[0, 1], [1, 1]], 2)
    tau = left_inverse_on_sublattice(nu, Sublattice.full(2))
    assert tau == IntMatrix([[-1, 1], [1, 0]], 2)
    assert tau @ nu == IntMatrix.identity(2)
    assert left_inverse_on_sublattice(IntMatrix.identity(3), Sublattice.full(3)) == IntMatrix.identity(3)
    col = IntMatrix([[1], [1]], 1)
    tau = left_inverse_on_sublattice(col, Sublattice.full(1))
    assert tau == IntMatrix([[1, 0]], 2)
    assert tau @ col == IntMatrix.identity(1)


def test_left_inverse_requires_injectivity():
    with pytest.raises(NoLeftInverseError):
        left_inverse_on_sublattice(IntMatrix([[1, 1]], 2), Sublattice.full(2))
    with pytest.raises(NoLeftInverseError):
        left_inverse_on_sublattice(IntMatrix([[2]], 1), Sublattice.full(1))


@given(int_matrices(max_rows=4, max_cols=3, lo=-3, hi=3), st.data())
def test_left_inverse_property(nu, data):
    vecs = data.draw(
        st.lists(st.lists(st.integers(-2, 2), min_size=nu.ncols, max_size=nu.ncols), min_size=1, max_size=nu.ncols)
    )
    dom = Sublattice(nu.ncols, vecs)
    try:
        tau = left_inverse_on_sublattice(nu, dom)
    except NoLeftInverseError:
        return
    for v in dom.basis:
        assert tau.apply(nu.apply(v)) == v


def test_right_inverse():
    m = IntMatrix([[1, 1, 0], [0, 1, 1]], 3)
    z = integer_right_inverse(m)
    assert m @ z == IntMatrix.identity(2)


# -- quotients -----------------------------------------------------------------


def test_quotient_examples():
    q = lattice_quotient(2, Sublattice(2, [(1, 0)]))
    assert (q.free_rank, q.torsion) == (1, ())
    assert q.projection.apply((1, 0)) == (0,)
    q = lattice_quotient(2, Sublattice(2, [(2, 0)]))
    assert (q.free_rank, q.torsion) == (1, (2,))
    q = lattice_quotient(2, Sublattice.full(2))
    assert (q.free_rank, q.torsion) == (0, ())


def test_split_quotient():
    k = Sublattice(3, [(1, 1, 0)])
    u, uinv = split_quotient(3, k)
    assert u @ uinv == IntMatrix.identity(3)
    image = u.apply((1, 1, 0))
    assert image[1:] == (0, 0) and abs(image[0]) == 1
    with pytest.raises(ValueError):
        split_quotient(2, Sublattice(2, [(2, 0)]))


def test_primitive():
    assert primitive((2, 4, -6)) == (1, 2, -3)
    assert primitive((0, 0)) == (0, 0)
