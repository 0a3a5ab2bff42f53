"""Hypothesis strategies for small integer data."""

from hypothesis import strategies as st

from cornerforge import IntMatrix, ToricMonoid


def int_matrices(max_rows=4, max_cols=4, lo=-6, hi=6, min_rows=1, min_cols=1):
    return st.tuples(st.integers(min_rows, max_rows), st.integers(min_cols, max_cols)).flatmap(
        lambda s: st.lists(
            st.lists(st.integers(lo, hi), min_size=s[1], max_size=s[1]), min_size=s[0], max_size=s[0]
        ).map(lambda rows: IntMatrix(rows, s[1]))
    )


def ray_lists(rank, max_rays=5, lo=0, hi=4):
    vec = st.lists(st.integers(lo, hi), min_size=rank, max_size=rank).filter(any)
    return st.lists(vec, min_size=1, max_size=max_rays)


@st.composite
def monoids(draw, min_rank=1, max_rank=3, lo=0, hi=4):
    rank = draw(st.integers(min_rank, max_rank))
    return ToricMonoid(rank, draw(ray_lists(rank, rank + 2, lo, hi)))


@st.composite
def full_monoids(draw, max_rank=3, hi=3):
    rank = draw(st.integers(2, max_rank))
    extra = draw(ray_lists(rank, 2, 0, hi))
    eye = [[int(i == j) for j in range(rank)] for i in range(rank)]
    # a full-dimensional cone: perturb the orthant by extra rays
    rays = [[e + x for e, x in zip(row, extra[i % len(extra)])] for i, row in enumerate(eye)]
    m = ToricMonoid(rank, rays + extra)
    return m if m.cone.is_full() else ToricMonoid(rank, rays + extra + eye)
