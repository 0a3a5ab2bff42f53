"""Deterministic random corpora shared by the property and acceptance tests."""

import random

from cornerforge import NonInteriorError, ToricMonoid, make_monomial_map, stellar_subdivision
from cornerforge.lattice import primitive


def random_rays(rng: random.Random, rank: int, k: int, hi: int = 5) -> list:
    rays = []
    while len(rays) < k:
        v = tuple(rng.randint(0, hi) for _ in range(rank))
        if any(v):
            rays.append(primitive(v))
    return rays


def monoid_corpus(n: int = 200, max_rank: int = 4, seed: int = 2024) -> list:
    """Cones of rank 1..max_rank with 1..rank+2 rays drawn from [0,5]^rank."""
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        rank = rng.randint(1, max_rank)
        k = rng.randint(1, rank + 2)
        out.append(ToricMonoid(rank, random_rays(rng, rank, k)))
    return out


def full_corpus(n: int, max_rank: int = 3, seed: int = 7) -> list:
    """Full-dimensional sharp monoids (so the dual carries fan refinements)."""
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        rank = rng.randint(2, max_rank)
        k = rng.randint(rank, rank + 1)
        p = ToricMonoid(rank, random_rays(rng, rank, k, hi=3))
        if p.cone.is_full():
            out.append(p)
    return out


def random_stellar(p: ToricMonoid, rng: random.Random, steps: int):
    """1..steps stellar subdivisions of P^vee at random Hilbert-basis sums."""
    base = p.dual
    r = None
    for _ in range(steps):
        cones = list(r.cones) if r is not None else [base.cone]
        c = rng.choice(cones)
        hb = ToricMonoid(c.rank, cone=c).hilbert_basis
        picks = rng.sample(hb, rng.randint(2, min(3, len(hb)))) if len(hb) >= 2 else hb
        v = primitive(tuple(sum(x) for x in zip(*picks)))
        r = stellar_subdivision(r if r is not None else base, v)
    return r


def refinement_corpus(n: int = 50, seed: int = 11) -> list:
    """(P, R) pairs: R refines P^vee by 1-3 random stellar subdivisions."""
    rng = random.Random(seed)
    out = []
    for p in full_corpus(n, seed=seed):
        out.append((p, random_stellar(p, rng, rng.randint(1, 3))))
    return out


def maps_into(p: ToricMonoid, r, rng: random.Random, count: int) -> list:
    """Interior monomial maps X_{N^k} -> X_P whose dual image lies in one cone of R.

    Returns (dual images of the generators of N^k, map) pairs. About a third
    of the candidates use bare Hilbert-basis elements of the cone, which may
    land on the boundary; those are not interior and are skipped.
    """
    out = []
    hb = p.hilbert_basis
    for _ in range(count):
        c = rng.choice(r.cones)
        cell_hb = ToricMonoid(c.rank, cone=c).hilbert_basis
        k = rng.randint(1, 2)
        inner = c.relative_interior_point()
        if rng.random() < 0.3:
            ws = [rng.choice(cell_hb) for _ in range(k)]
        else:
            ws = [tuple(a + b for a, b in zip(inner, rng.choice(cell_hb))) for _ in range(k)]
        mu = [[sum(a * b for a, b in zip(w, h)) for h in hb] for w in ws]
        try:
            out.append((ws, make_monomial_map(ToricMonoid.free(k), p, mu)))
        except NonInteriorError:
            continue
    return out


def map_corpus(pairs: list, per_pair: int = 4, seed: int = 17) -> list:
    """(P, R, dual images, map) quadruples over a refinement corpus."""
    rng = random.Random(seed)
    return [(p, r, ws, f) for p, r in pairs for ws, f in maps_into(p, r, rng, per_pair)]
