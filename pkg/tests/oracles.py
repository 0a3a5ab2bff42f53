"""Brute-force reference implementations.

None of these call into the package's algorithms; they recompute everything
from first principles (minors, exhaustive search, subset enumeration) so the
tests compare two independent derivations.
"""

from fractions import Fraction
from itertools import combinations, product
from math import gcd

import numpy as np


def det(m):
    """Determinant by Laplace expansion (small matrices only)."""
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    total = 0
    for j in range(n):
        if m[0][j]:
            minor = [row[:j] + row[j + 1:] for row in m[1:]]
            total += (-1) ** j * m[0][j] * det(minor)
    return total


def invariant_factors(m):
    """Smith invariant factors from gcds of k x k minors: s_k = d_k / d_(k-1)."""
    rows, cols = len(m), len(m[0]) if m else 0
    out = []
    prev = 1
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for ri in combinations(range(rows), k):
            for ci in combinations(range(cols), k):
                g = gcd(g, det([[m[i][j] for j in ci] for i in ri]))
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return out


def rank_q(vectors):
    a = [[Fraction(x) for x in v] for v in vectors]
    r = 0
    ncols = len(a[0]) if a else 0
    for c in range(ncols):
        p = next((i for i in range(r, len(a)) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c] / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
    return r


def nullspace_q(rows, n):
    """Integer basis of {x : r.x = 0} by Gauss-Jordan over Q."""
    a = [[Fraction(x) for x in r] for r in rows if any(r)]
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(a)) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        a[r] = [x / a[r][c] for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    basis = []
    for f in (c for c in range(n) if c not in pivots):
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for i, p in enumerate(pivots):
            x[p] = -a[i][f]
        den = 1
        for v in x:
            den = den * v.denominator // gcd(den, v.denominator)
        basis.append(tuple(int(v * den) for v in x))
    return basis


def solve_q(a, b):
    """Some rational solution of a x = b (a given by rows) or None."""
    n = len(a[0]) if a else 0
    aug = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(a, b)]
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(aug)) if aug[i][c]), None)
        if p is None:
            continue
        aug[r], aug[p] = aug[p], aug[r]
        aug[r] = [x / aug[r][c] for x in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    if any(row[n] for row in aug[r:]):
        return None
    x = [Fraction(0)] * n
    for i, p in enumerate(pivots):
        x[p] = aug[i][n]
    return x


def caratheodory_contains(rays, v):
    """v in cone(rays) iff it is a nonnegative combination of some independent subset."""
    if not any(v):
        return True
    rays = [r for r in rays if any(r)]
    for k in range(1, len(v) + 1):
        for sub in combinations(rays, k):
            if rank_q(sub) != k:
                continue
            cols = [list(x) for x in zip(*sub)]
            lam = solve_q(cols, v)
            if lam is not None and all(x >= 0 for x in lam):
                return True
    return False


class HRep:
    """Equations and facet inequalities of cone(rays), found by subset enumeration."""

    def __init__(self, rank, rays):
        self.rank = rank
        rays = [tuple(r) for r in rays if any(r)]
        self.equations = nullspace_q(rays, rank) if rays else [
            tuple(int(i == j) for j in range(rank)) for i in range(rank)
        ]
        d = rank_q(rays) if rays else 0
        self.dim = d
        normals = set()
        if d >= 1:
            span_basis = []
            for r in rays:
                if rank_q(span_basis + [r]) > len(span_basis):
                    span_basis.append(r)
            for sub in combinations(rays, d - 1):
                if d > 1 and rank_q(list(sub)) != d - 1:
                    continue
                # n = sum c_i b_i, orthogonal to the chosen rays
                gram = [[sum(x * y for x, y in zip(b, s)) for b in span_basis] for s in sub]
                ker = nullspace_q(gram, len(span_basis)) if sub else nullspace_q([], len(span_basis))
                if len(ker) != 1:
                    continue
                n = [sum(c * b[i] for c, b in zip(ker[0], span_basis)) for i in range(rank)]
                vals = [sum(x * y for x, y in zip(n, r)) for r in rays]
                if all(x >= 0 for x in vals):
                    pass
                elif all(x <= 0 for x in vals):
                    n = [-x for x in n]
                else:
                    continue
                g = 0
                for x in n:
                    g = gcd(g, x)
                if g:
                    normals.add(tuple(x // g for x in n))
        self.normals = sorted(normals)

    def contains(self, v):
        return all(sum(a * b for a, b in zip(e, v)) == 0 for e in self.equations) and all(
            sum(a * b for a, b in zip(m, v)) >= 0 for m in self.normals
        )

    def contains_many(self, pts: np.ndarray) -> np.ndarray:
        ok = np.ones(len(pts), bool)
        if self.equations:
            ok &= np.all(pts @ np.array(self.equations).T == 0, axis=1)
        if self.normals:
            ok &= np.all(pts @ np.array(self.normals).T >= 0, axis=1)
        return ok


def box_hilbert_basis(rank, rays):
    """Irreducible elements of cone(rays) ∩ Z^rank for rays in the nonnegative orthant.

    Every Hilbert-basis element is a ray or lies in a half-open parallelepiped
    of rays, so its coordinates are bounded by the coordinate sums of all rays.
    """
    rays = [tuple(r) for r in rays if any(r)]
    if not rays:
        return []
    if any(x < 0 for r in rays for x in r):
        raise ValueError("oracle needs rays in the nonnegative orthant")
    bound = [sum(r[i] for r in rays) for i in range(rank)]
    h = HRep(rank, rays)
    pts = np.array(list(product(*(range(b + 1) for b in bound))), dtype=np.int64)
    pts = pts[h.contains_many(pts)]
    pts = pts[np.any(pts != 0, axis=1)]
    pts = pts[np.argsort(pts.sum(axis=1), kind="stable")]
    basis = []
    for v in pts:
        if basis:
            diff = v[None, :] - np.array(basis)
            nonneg = np.all(diff >= 0, axis=1)
            if nonneg.any() and h.contains_many(diff[nonneg]).any():
                continue
        basis.append(v)
    return sorted(tuple(int(x) for x in b) for b in basis)


def brute_solve(a_rows, b, box=6):
    """Integer x with a x = b and entries in [-box, box], or None."""
    n = len(a_rows[0]) if a_rows else 0
    for x in product(range(-box, box + 1), repeat=n):
        if all(sum(c * y for c, y in zip(row, x)) == t for row, t in zip(a_rows, b)):
            return x
    return None


def lattice_points_of_span(rank, vectors, box=4):
    """Points of span_Q(vectors) ∩ Z^rank inside the box, by direct search."""
    eqs = nullspace_q([tuple(v) for v in vectors if any(v)], rank) if any(any(v) for v in vectors) else [
        tuple(int(i == j) for j in range(rank)) for i in range(rank)
    ]
    out = []
    for x in product(range(-box, box + 1), repeat=rank):
        if all(sum(a * b for a, b in zip(e, x)) == 0 for e in eqs):
            out.append(x)
    return out
