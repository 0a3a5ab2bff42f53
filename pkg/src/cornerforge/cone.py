"""Rational polyhedral cones in Z^n.

A cone is stored twice: by generators (lineality basis with both signs plus
the pointed extreme rays) and by inequalities (equations cutting out the
linear span plus one primitive normal per facet). Both halves are computed
by the double description method and canonicalized, so two cones are equal
exactly when their representations are.
"""

from __future__ import annotations

from functools import cached_property, lru_cache
from typing import Iterable, NamedTuple, Sequence

from .lattice import (
    IntMatrix,
    Sublattice,
    as_vector,
    canonical_key,
    dot,
    primitive,
    rational_rank,
    saturated_span,
    solve_rational,
)


def _neg(v):
    return tuple(-x for x in v)


def _dd(constraints: Sequence[Sequence], n: int) -> tuple:
    """Double description of {u in Q^n : a.u >= 0 for every constraint a}.

    Returns (lineality, rays): a basis of the lineality space and the
    extreme rays modulo it.
    """
    lineality = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    rays: list = []
    zeros: list = []  # zero sets over processed constraints, parallel to rays
    processed = 0
    for a in constraints:
        if not any(a):
            continue
        k = processed
        processed += 1
        pivot = next((i for i, l in enumerate(lineality) if dot(a, l)), None)
        if pivot is not None:
            l0 = lineality.pop(pivot)
            s = dot(a, l0)
            if s < 0:
                l0, s = _neg(l0), -s
            lineality = [
                primitive(tuple(s * x - dot(a, l) * y for x, y in zip(l, l0))) for l in lineality
            ]
            rays = [primitive(tuple(s * x - dot(a, r) * y for x, y in zip(r, l0))) for r in rays]
            zeros = [z | {k} for z in zeros]
            rays.append(l0)
            zeros.append(frozenset(range(k)))
            continue
        signs = [dot(a, r) for r in rays]
        pos = [i for i, s in enumerate(signs) if s > 0]
        neg = [i for i, s in enumerate(signs) if s < 0]
        new_rays = [rays[i] for i, s in enumerate(signs) if s >= 0]
        new_zeros = [zeros[i] | {k} if signs[i] == 0 else zeros[i] for i, s in enumerate(signs) if s >= 0]
        for p in pos:
            for q in neg:
                common = zeros[p] & zeros[q]
                if any(common <= zeros[t] for t in range(len(rays)) if t not in (p, q)):
                    continue
                sp, sq = signs[p], -signs[q]
                r = primitive(tuple(sp * x + sq * y for x, y in zip(rays[q], rays[p])))
                new_rays.append(r)
                new_zeros.append(common | {k})
        rays, zeros = new_rays, new_zeros
    return lineality, rays


def _projector(basis: Sequence) -> callable:
    """v -> an integer multiple of the component of v orthogonal to span(basis).

    With Gram matrix G and adjugate A = det(G) G^-1, that multiple is
    det(G) v - B^T A B v.
    """
    if not basis:
        return lambda v: tuple(v)
    k = len(basis)
    gram = [[dot(a, b) for b in basis] for a in basis]
    det = IntMatrix(gram, k).det()
    inv = [solve_rational(gram, [int(i == j) for i in range(k)]) for j in range(k)]
    adj = [[int(inv[j][i] * det) for j in range(k)] for i in range(k)]

    def project(v):
        bv = [dot(b, v) for b in basis]
        c = [dot(row, bv) for row in adj]
        return tuple(det * x - sum(ci * b[i] for ci, b in zip(c, basis)) for i, x in enumerate(v))

    return project


def _canonical_pair(n: int, lineality: Iterable, rays: Iterable) -> tuple:
    """(HNF basis of the lineality lattice, sorted primitive ray reps orthogonal to it)."""
    lineality = [l for l in lineality if any(l)]
    if lineality:
        basis = saturated_span(n, lineality).basis
    else:
        basis = ()
    reps = set()
    project = _projector(basis)
    for r in rays:
        proj = project(r)
        if any(proj):
            reps.add(primitive(proj))
    return basis, tuple(sorted(reps, key=canonical_key))


@lru_cache(maxsize=1 << 16)
def _cone_data(rank: int, gens: tuple) -> tuple:
    """Both canonical descriptions of cone(gens); memoized since fans share faces."""
    eq, normals = _dd(gens, rank)
    equations, facet_normals = _canonical_pair(rank, eq, normals)
    dual_gens = list(equations) + [_neg(e) for e in equations] + list(facet_normals)
    lin, pr = _dd(dual_gens, rank)
    lineality_basis, pointed_rays = _canonical_pair(rank, lin, pr)
    both = set(lineality_basis) | {_neg(l) for l in lineality_basis} | set(pointed_rays)
    return equations, facet_normals, lineality_basis, pointed_rays, tuple(sorted(both, key=canonical_key))


class Cone:
    """Rational polyhedral cone generated by integer vectors in Z^rank."""

    __slots__ = ("rank", "lineality_basis", "pointed_rays", "equations", "facet_normals", "rays", "__dict__")

    def __init__(self, rank: int, rays: Iterable[Sequence] = ()):
        self.rank = int(rank)
        gens = [as_vector(r) for r in rays]
        if any(len(g) != self.rank for g in gens):
            raise ValueError(f"generator length differs from ambient rank {self.rank}")
        key = tuple(sorted({primitive(g) for g in gens if any(g)}))
        (self.equations, self.facet_normals, self.lineality_basis, self.pointed_rays, self.rays) = _cone_data(
            self.rank, key
        )

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, rank: int) -> "Cone":
        return cls(rank, ())

    @classmethod
    def orthant(cls, rank: int) -> "Cone":
        return cls(rank, IntMatrix.identity(rank).rows)

    @classmethod
    def full_space(cls, rank: int) -> "Cone":
        eye = IntMatrix.identity(rank).rows
        return cls(rank, list(eye) + [_neg(e) for e in eye])

    # -- queries --------------------------------------------------------

    def contains(self, v: Sequence) -> bool:
        if len(v) != self.rank:
            raise ValueError("vector length differs from ambient rank")
        return all(dot(e, v) == 0 for e in self.equations) and all(
            dot(m, v) >= 0 for m in self.facet_normals
        )

    def relative_interior_contains(self, v: Sequence) -> bool:
        return all(dot(e, v) == 0 for e in self.equations) and all(
            dot(m, v) > 0 for m in self.facet_normals
        )

    def relative_interior_point(self) -> tuple:
        """Sum of the pointed rays; the zero vector for a linear subspace."""
        return tuple(sum(r[i] for r in self.pointed_rays) for i in range(self.rank))

    def lineality(self) -> Sublattice:
        return Sublattice(self.rank, self.lineality_basis)

    def is_pointed(self) -> bool:
        return not self.lineality_basis

    @cached_property
    def _dim(self) -> int:
        return self.rank - len(self.equations)

    def dim(self) -> int:
        return self._dim

    def is_full(self) -> bool:
        return not self.equations

    def is_simplicial(self) -> bool:
        return self.is_pointed() and len(self.pointed_rays) == self.dim()

    def span(self) -> Sublattice:
        """Saturated lattice span(C) intersected with Z^n."""
        return saturated_span(self.rank, self.rays)

    # -- derived cones --------------------------------------------------

    def dual(self) -> "Cone":
        gens = list(self.equations) + [_neg(e) for e in self.equations] + list(self.facet_normals)
        return Cone(self.rank, gens)

    def faces(self) -> tuple:
        return self._faces

    @cached_property
    def _faces(self) -> tuple:
        normals = self.facet_normals

        def closure(selected):
            rays = [r for r in self.pointed_rays if all(dot(normals[i], r) == 0 for i in selected)]
            sel = frozenset(i for i, m in enumerate(normals) if all(dot(m, r) == 0 for r in rays))
            return sel, rays

        lin = list(self.lineality_basis) + [_neg(l) for l in self.lineality_basis]
        seen = {}
        start, start_rays = closure(frozenset())
        frontier = [(start, start_rays)]
        seen[start] = start_rays
        while frontier:
            nxt = []
            for sel, _ in frontier:
                for j in range(len(normals)):
                    if j in sel:
                        continue
                    s2, r2 = closure(sel | {j})
                    if s2 not in seen:
                        seen[s2] = r2
                        nxt.append((s2, r2))
            frontier = nxt
        d = self.dim()
        out = []
        for sel, rays in seen.items():
            c = Cone(self.rank, lin + rays)
            out.append(ConeFace(tuple(sorted(sel)), c, d - c.dim()))
        out.sort(key=lambda f: (f.cone.dim(), [canonical_key(r) for r in f.cone.rays]))
        return tuple(out)

    def face_of(self, other: "Cone") -> bool:
        """True when ``other`` is a face of this cone."""
        return any(f.cone == other for f in self.faces())

    def facets(self) -> tuple:
        return tuple(f for f in self.faces() if f.codim == 1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cone):
            return NotImplemented
        return self.rank == other.rank and self.rays == other.rays

    def __hash__(self) -> int:
        return hash((self.rank, self.rays))

    def __repr__(self) -> str:
        return f"Cone({self.rank}, {[list(r) for r in self.rays]})"

    def __le__(self, other: "Cone") -> bool:
        return all(other.contains(r) for r in self.rays)


class ConeFace(NamedTuple):
    """A face: the facet normals vanishing on it, the face cone, and its codimension."""

    selector: tuple
    cone: Cone
    codim: int

    def contains_face(self, other: "ConeFace") -> bool:
        return set(self.selector) <= set(other.selector)


def dual_cone(c: Cone) -> Cone:
    return c.dual()


def face_lattice_of_cone(c: Cone) -> tuple:
    """Faces of C and the inclusion relation as index pairs (i, j) meaning face i <= face j."""
    faces = c.faces()
    order = tuple(
        (i, j) for i, a in enumerate(faces) for j, b in enumerate(faces) if b.contains_face(a)
    )
    return faces, order


def cone_intersection(a: Cone, b: Cone) -> Cone:
    if a.rank != b.rank:
        raise ValueError("cones live in lattices of different rank")
    return Cone(a.rank, list(a.dual().rays) + list(b.dual().rays)).dual()


def linear_preimage(matrix: IntMatrix, c: Cone) -> Cone:
    """{v : matrix @ v in C}; the matrix maps Z^m to Z^rank(C)."""
    if matrix.nrows != c.rank:
        raise ValueError("matrix target rank differs from the cone's rank")
    t = matrix.T
    return Cone(matrix.ncols, [t.apply(u) for u in c.dual().rays]).dual()


def minkowski_sum(a: Cone, b: Cone) -> Cone:
    if a.rank != b.rank:
        raise ValueError("cones live in lattices of different rank")
    return Cone(a.rank, a.rays + b.rays)


def cone_image(matrix: IntMatrix, c: Cone) -> Cone:
    return Cone(matrix.nrows, [matrix.apply(r) for r in c.rays])


def cone_combine(kind: str, *args) -> Cone:
    if kind == "intersection":
        return cone_intersection(*args)
    if kind == "linear_preimage":
        return linear_preimage(*args)
    raise ValueError(f"unknown combination {kind!r}")


def is_mutual_face(a: Cone, b: Cone, q: Cone) -> bool:
    return a.face_of(q) and b.face_of(q)


def rays_rank(vectors: Iterable[Sequence]) -> int:
    return rational_rank(list(vectors))


__all__ = [
    "Cone",
    "ConeFace",
    "cone_combine",
    "cone_image",
    "cone_intersection",
    "dual_cone",
    "face_lattice_of_cone",
    "is_mutual_face",
    "linear_preimage",
    "minkowski_sum",
]
