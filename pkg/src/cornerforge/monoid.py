"""Toric monoids stored as cone ∩ Z^n, with their algebra."""

from __future__ import annotations

import itertools
import math
from functools import cached_property, lru_cache
from fractions import Fraction
from typing import Iterable, NamedTuple, Optional, Sequence

import numpy as np

from .cone import Cone, ConeFace, _neg
from .errors import NotAFaceError, RelationError
from .lattice import (
    IntMatrix,
    Sublattice,
    canonical_key,
    dot,
    integer_kernel,
    inverse_unimodular,
    left_inverse_on_sublattice,
    orthogonal_projection,
    rational_nullspace,
    rational_rank,
    smith_normal_form,
    solve_rational,
    sort_vectors,
)


def _add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def _sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


# -- Hilbert bases ---------------------------------------------------------


def _facet_normal(facet: Sequence, span_eqs: Sequence, d: int) -> tuple:
    null = rational_nullspace(list(facet) + list(span_eqs), d)
    assert len(null) == 1
    return null[0]


def _placing_triangulation(rays: Sequence, d: int) -> list:
    """Simplices (tuples of ray indices) triangulating cone(rays)."""
    simplices: list = []
    used: list = []
    for idx, r in enumerate(rays):
        if not used:
            simplices = [(idx,)]
            used.append(idx)
            continue
        current = [rays[i] for i in used]
        if rational_rank(current + [r]) > rational_rank(current):
            simplices = [s + (idx,) for s in simplices]
            used.append(idx)
            continue
        span_eqs = rational_nullspace(current, d)
        count: dict = {}
        opposite: dict = {}
        for s in simplices:
            for k in range(len(s)):
                f = tuple(sorted(s[:k] + s[k + 1 :]))
                count[f] = count.get(f, 0) + 1
                opposite[f] = s[k]
        new = []
        for f, c in count.items():
            if c != 1:
                continue
            m = _facet_normal([rays[i] for i in f], span_eqs, d)
            if dot(m, rays[opposite[f]]) < 0:
                m = _neg(m)
            if dot(m, r) < 0:
                new.append(f + (idx,))
        simplices.extend(new)
        used.append(idx)
    return simplices


def _parallelepiped_points(gens: Sequence, d: int) -> list:
    """Nonzero lattice points of the half-open parallelepiped spanned by d independent gens."""
    a = IntMatrix.from_columns(gens, d)
    dm, u, _v = smith_normal_form(a)
    uinv = inverse_unimodular(u)
    factors = [dm[i, i] for i in range(d)]
    # lam = A^{-1} p = adj p / det, with adj integral
    det = a.det()
    inv = [solve_rational(a.rows, [int(i == k) for i in range(d)]) for k in range(d)]
    adj = IntMatrix.from_columns([[int(x * det) for x in col] for col in inv], d)
    out = []
    for c in itertools.product(*(range(f) for f in factors)):
        if not any(c):
            continue
        p = uinv.apply(c)
        shift = [x // det for x in adj.apply(p)]
        q = tuple(p[i] - sum(shift[j] * gens[j][i] for j in range(d)) for i in range(d))
        out.append(q)
    return out


@lru_cache(maxsize=1 << 14)
def _pointed_hilbert_basis(cone: Cone) -> tuple:
    return tuple(_compute_pointed_hilbert_basis(cone))


def pointed_hilbert_basis(cone: Cone) -> list:
    """Irreducible elements of a pointed full-dimensional cone ∩ Z^d (memoized per cone)."""
    return list(_pointed_hilbert_basis(cone))


def _compute_pointed_hilbert_basis(cone: Cone) -> list:
    """Irreducible elements of a pointed full-dimensional cone ∩ Z^d."""
    d = cone.rank
    rays = list(cone.pointed_rays)
    if not rays:
        return []
    candidates = set(rays)
    for simplex in _placing_triangulation(rays, d):
        for p in _parallelepiped_points([rays[i] for i in simplex], d):
            candidates.add(p)
    grading = tuple(sum(m[i] for m in cone.facet_normals) for i in range(d))
    if not cone.facet_normals:
        grading = tuple(0 for _ in range(d))
    ordered = sorted(candidates, key=lambda v: (dot(grading, v), canonical_key(v)))
    basis: list = []
    for x in ordered:
        if not any(cone.contains(_sub(x, h)) for h in basis):
            basis.append(x)
    return basis


# -- monoids ---------------------------------------------------------------


class ToricMonoid:
    """The saturated monoid cone(rays) ∩ Z^rank."""

    def __init__(self, rank: int, rays: Iterable[Sequence] = (), *, cone: Optional[Cone] = None):
        if cone is None:
            cone = Cone(rank, rays)
        elif cone.rank != rank:
            raise ValueError("cone rank differs from monoid rank")
        self.rank = rank
        self.cone = cone

    @classmethod
    def free(cls, n: int) -> "ToricMonoid":
        return cls(n, cone=Cone.orthant(n))

    @classmethod
    def zero(cls) -> "ToricMonoid":
        return cls(0, ())

    @property
    def rays(self) -> tuple:
        return self.cone.rays

    def __eq__(self, other) -> bool:
        if not isinstance(other, ToricMonoid):
            return NotImplemented
        return self.cone == other.cone

    def __hash__(self) -> int:
        return hash(self.cone)

    def __repr__(self) -> str:
        return f"ToricMonoid({self.rank}, {[list(r) for r in self.rays]})"

    # group lattice

    @cached_property
    def group_lattice(self) -> Sublattice:
        return self.cone.span()

    @cached_property
    def group_basis(self) -> IntMatrix:
        """rank x dim matrix whose columns are the canonical basis of P^gp."""
        return self.group_lattice.matrix

    @cached_property
    def _coords_matrix(self) -> IntMatrix:
        return left_inverse_on_sublattice(self.group_basis, Sublattice.full(self.dim))

    def coords(self, v: Sequence) -> tuple:
        """Coordinates of a vector of P^gp in the group basis."""
        c = self._coords_matrix.apply(v)
        if self.group_basis.apply(c) != tuple(v):
            raise ValueError(f"{tuple(v)} is not in the group lattice")
        return c

    def in_group(self, v: Sequence) -> bool:
        return self.group_basis.apply(self._coords_matrix.apply(v)) == tuple(v)

    @property
    def dim(self) -> int:
        return self.cone.dim()

    @cached_property
    def local_cone(self) -> Cone:
        """The cone in group coordinates (full-dimensional in Z^dim)."""
        return Cone(self.dim, [self._coords_matrix.apply(r) for r in self.rays])

    def contains(self, v: Sequence) -> bool:
        return self.cone.contains(v)

    def is_sharp(self) -> bool:
        return self.cone.is_pointed()

    @cached_property
    def units(self) -> Sublattice:
        return self.cone.lineality()

    # Hilbert basis

    @cached_property
    def hilbert_basis(self) -> tuple:
        if self.is_sharp():
            local = pointed_hilbert_basis(self.local_cone)
            return sort_vectors(self.group_basis.apply(v) for v in local)
        dec = self.decomposition
        sharp_hb = dec.sharp.hilbert_basis
        units = self.units.basis
        lifts = [self._reduce_lift(dec.splitting.lift_sharp(v)) for v in sharp_hb]
        return sort_vectors(list(lifts) + list(units) + [_neg(u) for u in units])

    def _reduce_lift(self, v: tuple) -> tuple:
        units = self.units.basis
        proj = orthogonal_projection(v, units)
        shift = [Fraction(a) - b for a, b in zip(v, proj)]
        coeffs = solve_integer_rational(units, shift)
        return tuple(x - sum(round(c) * u[i] for c, u in zip(coeffs, units)) for i, x in enumerate(v))

    @property
    def hilbert_matrix(self) -> IntMatrix:
        """rank x k matrix whose columns are the Hilbert basis."""
        return IntMatrix.from_columns(self.hilbert_basis, self.rank)

    # faces

    @cached_property
    def faces(self) -> tuple:
        return tuple(FaceHandle(self, f.selector) for f in self.cone.faces())

    def face(self, selector: Iterable[int]) -> "FaceHandle":
        sel = tuple(sorted(selector))
        for f in self.faces:
            if f.selector == sel:
                return f
        raise NotAFaceError(f"selector {sel} does not describe a face")

    def face_from_cone(self, cone: Cone) -> "FaceHandle":
        for f in self.faces:
            if f.cone == cone:
                return f
        raise NotAFaceError(f"{cone} is not a face of {self}")

    @cached_property
    def whole(self) -> "FaceHandle":
        return FaceHandle(self, (), ConeFace((), self.cone, 0))

    @cached_property
    def unit_face(self) -> "FaceHandle":
        # every facet normal vanishes on the lineality space, so no face enumeration is needed
        c = self.cone
        lin = Cone(self.rank, list(c.lineality_basis) + [_neg(x) for x in c.lineality_basis])
        sel = tuple(range(len(c.facet_normals)))
        return FaceHandle(self, sel, ConeFace(sel, lin, c.dim() - lin.dim()))

    def smallest_face_containing(self, vectors: Iterable[Sequence]) -> "FaceHandle":
        vectors = list(vectors)
        best = None
        for f in self.faces:
            if all(f.cone.contains(v) for v in vectors):
                if best is None or f.cone.dim() < best.cone.dim():
                    best = f
        return best

    def face_with_interior_point(self, v: Sequence) -> "FaceHandle":
        for f in self.faces:
            if f.cone.relative_interior_contains(v):
                return f
        raise ValueError(f"{tuple(v)} is not in the monoid")

    # derived structure

    @cached_property
    def decomposition(self) -> "Decomposition":
        return decompose(self)

    @cached_property
    def dual(self) -> "ToricMonoid":
        return dual_monoid(self)

    def is_smooth(self) -> bool:
        return self.decomposition.is_smooth

    @cached_property
    def _presentation(self) -> "Presentation":
        return _compute_presentation(self)


def solve_integer_rational(basis: Sequence, v: Sequence) -> list:
    """Rational coordinates of v in an independent basis (empty basis gives [])."""
    if not basis:
        return []
    gram = [[Fraction(dot(a, b)) for b in basis] for a in basis]
    rhs = [Fraction(dot(a, v)) for a in basis]
    return solve_rational(gram, rhs)


class FaceHandle:
    """A face of a monoid, named by the facet normals that vanish on it."""

    __slots__ = ("parent", "selector", "__dict__")

    def __init__(self, parent: ToricMonoid, selector: Sequence[int], cone_face=None):
        self.parent = parent
        self.selector = tuple(sorted(selector))
        if cone_face is not None:
            self.__dict__["_cone_face"] = cone_face

    @cached_property
    def _cone_face(self):
        for f in self.parent.cone.faces():
            if f.selector == self.selector:
                return f
        raise NotAFaceError(f"selector {self.selector} does not describe a face")

    @property
    def cone(self) -> Cone:
        return self._cone_face.cone

    @property
    def codim(self) -> int:
        return self._cone_face.codim

    @property
    def dim(self) -> int:
        return self.cone.dim()

    @cached_property
    def monoid(self) -> ToricMonoid:
        return ToricMonoid(self.parent.rank, cone=self.cone)

    @property
    def group_lattice(self) -> Sublattice:
        return self.monoid.group_lattice

    def __le__(self, other: "FaceHandle") -> bool:
        return set(other.selector) <= set(self.selector)

    def __lt__(self, other: "FaceHandle") -> bool:
        return self <= other and self.selector != other.selector

    def __eq__(self, other) -> bool:
        if not isinstance(other, FaceHandle):
            return NotImplemented
        return self.parent == other.parent and self.selector == other.selector

    def __hash__(self) -> int:
        return hash((self.parent, self.selector))

    def __repr__(self) -> str:
        return f"FaceHandle({self.selector}, {self.cone})"

    def index(self) -> int:
        return self.parent.faces.index(self)


def _require_face(p: ToricMonoid, s: FaceHandle) -> FaceHandle:
    if not isinstance(s, FaceHandle) or s.parent != p:
        raise NotAFaceError("face handle belongs to a different monoid")
    s._cone_face
    return s


# -- homomorphisms ---------------------------------------------------------


class MonoidHom:
    """Homomorphism given by an integer matrix between the ambient lattices."""

    def __init__(self, source: ToricMonoid, target: ToricMonoid, matrix: IntMatrix):
        if matrix.shape != (target.rank, source.rank):
            raise ValueError(
                f"matrix shape {matrix.shape} does not map rank {source.rank} to rank {target.rank}"
            )
        self.source = source
        self.target = target
        self.matrix = matrix
        # the target is saturated, so checking the cone generators suffices
        for r in source.rays:
            if not target.contains(matrix.apply(r)):
                raise ValueError(f"generator {r} is not mapped into the target monoid")

    @property
    def maps_monoid(self) -> bool:
        return True

    def __call__(self, v: Sequence) -> tuple:
        return self.matrix.apply(v)

    @cached_property
    def interior(self) -> bool:
        p = self.matrix.apply(self.source.cone.relative_interior_point())
        return self.target.cone.relative_interior_contains(p)

    @cached_property
    def injective(self) -> bool:
        return (self.matrix @ self.source.group_basis).rank() == self.source.dim

    @cached_property
    def image_cone(self) -> Cone:
        return Cone(self.target.rank, [self.matrix.apply(r) for r in self.source.rays])

    @cached_property
    def image_face(self) -> Optional[FaceHandle]:
        try:
            return self.target.face_from_cone(self.image_cone)
        except NotAFaceError:
            return None

    @cached_property
    def iso_onto_face(self) -> bool:
        if not self.injective or self.image_face is None:
            return False
        image_group = Sublattice(self.target.rank, (self.matrix @ self.source.group_basis).columns)
        return image_group == self.image_face.group_lattice

    def compose(self, other: "MonoidHom") -> "MonoidHom":
        """self ∘ other."""
        return MonoidHom(other.source, self.target, self.matrix @ other.matrix)

    def __repr__(self) -> str:
        return f"MonoidHom({self.matrix.tolist()})"


def is_interior_hom(h: MonoidHom) -> bool:
    return h.interior


def generated_monoid_contains(gens: Sequence, v: Sequence, grading: Sequence) -> bool:
    """Is v a nonnegative integer combination of gens (all of positive degree)?"""
    target = dot(grading, v)
    gens = [g for g in gens]
    seen = set()

    def search(rest, start):
        if not any(rest):
            return True
        if dot(grading, rest) <= 0 or (rest, start) in seen:
            return False
        seen.add((rest, start))
        for i in range(start, len(gens)):
            if search(_sub(rest, gens[i]), i):
                return True
        return False

    return target >= 0 and search(tuple(v), 0)


def is_saturated_image(hom: MonoidHom) -> bool:
    """Does the image of the source equal (image cone) ∩ Z^m?"""
    if hom.injective:
        image_group = Sublattice(hom.target.rank, (hom.matrix @ hom.source.group_basis).columns)
        return image_group.is_saturated()
    image_gens = [hom.matrix.apply(h) for h in hom.source.hilbert_basis]
    sat = ToricMonoid(hom.target.rank, cone=hom.image_cone)
    if not sat.is_sharp():
        group = Sublattice(hom.target.rank, image_gens)
        if group != sat.group_lattice:
            return False
        units = sat.units.basis
        for u in list(units) + [_neg(x) for x in units]:
            if not _in_generated(image_gens, u):
                return False
        return True
    grading = tuple(sum(m[i] for m in sat.cone.facet_normals) for i in range(hom.target.rank))
    gens = [g for g in image_gens if any(g)]
    return all(generated_monoid_contains(gens, h, grading) for h in sat.hilbert_basis)


def _in_generated(gens, v) -> bool:
    # bounded search over small coefficient boxes; used only for non-sharp images
    for coeffs in itertools.product(range(4), repeat=len(gens)):
        s = tuple(sum(c * g[i] for c, g in zip(coeffs, gens)) for i in range(len(v)))
        if s == tuple(v):
            return True
    return False


# -- decomposition, quotients, localization --------------------------------


class Splitting(NamedTuple):
    """An isomorphism between a monoid and a product, given by two matrices.

    ``forward`` maps the monoid's ambient lattice to Z^a x Z^b (first factor
    first) and ``inverse`` goes back.
    """

    forward: IntMatrix
    inverse: IntMatrix
    first_rank: int

    def lift_sharp(self, v: Sequence) -> tuple:
        return self.inverse.apply(tuple(v) + (0,) * (self.inverse.ncols - len(v)))

    def verify(self, monoid: ToricMonoid, first: ToricMonoid) -> bool:
        """Both composites are identities on generators; images land in the product."""
        for h in monoid.hilbert_basis:
            img = self.forward.apply(h)
            if self.inverse.apply(img) != h:
                return False
            if not first.contains(img[: self.first_rank]):
                return False
        b = self.forward.nrows - self.first_rank
        product_gens = [tuple(g) + (0,) * b for g in first.hilbert_basis]
        eye = IntMatrix.identity(b).rows
        product_gens += [(0,) * self.first_rank + e for e in eye]
        product_gens += [(0,) * self.first_rank + _neg(e) for e in eye]
        for g in product_gens:
            back = self.inverse.apply(g)
            if self.forward.apply(back) != g or not monoid.contains(back):
                return False
        return True


class Quotient(NamedTuple):
    monoid: ToricMonoid
    projection: MonoidHom
    splitting: Splitting


def quotient_by_face(p: ToricMonoid, s: FaceHandle) -> Quotient:
    """P/S in the free lattice P^gp/S^gp with projection and S^{-1}P ≅ P/S × S^gp."""
    _require_face(p, s)
    d = p.dim
    s_gens = [p.coords(r) for r in s.cone.rays]
    s_lattice = Sublattice(d, s_gens).saturation()  # S^gp: faces of saturated monoids are saturated
    k = s_lattice.rank
    if k:
        dm, u, _ = smith_normal_form(s_lattice.matrix)
        torsion = [dm[i, i] for i in range(k) if dm[i, i] != 1]
        assert not torsion, "quotient by a face has no torsion"
    else:
        u = IntMatrix.identity(d)
    pi = IntMatrix(u.rows[k:], d)
    kappa = IntMatrix(u.rows[:k], d)
    coords = p._coords_matrix
    proj = pi @ coords if d else IntMatrix.zeros(0, p.rank)
    qcone = Cone(d - k, [proj.apply(r) for r in p.rays])
    q = ToricMonoid(d - k, cone=qcone)
    forward = pi.vstack(kappa) @ coords if d else IntMatrix.zeros(0, p.rank)
    uinv = inverse_unimodular(u)
    cols = uinv.columns
    reordered = IntMatrix.from_columns(list(cols[k:]) + list(cols[:k]), d) if d else IntMatrix.zeros(0, 0)
    inverse = p.group_basis @ reordered if d else IntMatrix.zeros(p.rank, 0)
    projection = MonoidHom(p, q, IntMatrix(proj.rows, p.rank))
    return Quotient(q, projection, Splitting(forward, inverse, d - k))


class Decomposition(NamedTuple):
    units: Sublattice
    sharp: ToricMonoid
    group: Sublattice
    splitting: Splitting
    is_smooth: bool


def decompose(p: ToricMonoid) -> Decomposition:
    q = quotient_by_face(p, p.unit_face)
    sharp = q.monoid
    smooth = len(sharp.hilbert_basis) == sharp.dim
    return Decomposition(p.units, sharp, p.group_lattice, q.splitting, smooth)


class Localization(NamedTuple):
    monoid: ToricMonoid
    inclusion: MonoidHom


def localize(p: ToricMonoid, s: FaceHandle) -> Localization:
    _require_face(p, s)
    c = Cone(p.rank, list(p.rays) + [_neg(r) for r in s.cone.rays])
    m = ToricMonoid(p.rank, cone=c)
    return Localization(m, MonoidHom(p, m, IntMatrix.identity(p.rank)))


def localization_splitting(p: ToricMonoid, s: FaceHandle) -> tuple:
    """(S^{-1}P, P/S, splitting) with the splitting verified on Hilbert generators."""
    loc = localize(p, s).monoid
    q = quotient_by_face(p, s)
    if not q.splitting.verify(loc, q.monoid):
        raise AssertionError("localization splitting failed to verify")
    return loc, q.monoid, q.splitting


# -- duality ---------------------------------------------------------------


def dual_monoid(p: ToricMonoid) -> ToricMonoid:
    """Hom(P, N) in the lattice dual to the group-basis coordinates of P^gp."""
    return ToricMonoid(p.dim, cone=p.local_cone.dual())


class DoubleDual(NamedTuple):
    double_dual: ToricMonoid
    sharp: ToricMonoid
    matrix: IntMatrix  # from the sharp part's lattice to the double dual's lattice


def double_dual_isomorphism(p: ToricMonoid) -> DoubleDual:
    """Explicit isomorphism P^sharp -> (P^vee)^vee, checked to be unimodular and cone preserving."""
    dec = p.decomposition
    dual = p.dual
    dd = dual.dual
    bprime = dual.group_basis  # columns span the dual's group inside Z^dim(P)
    d, k = p.dim, dec.sharp.dim
    # section: P^sharp coordinates -> group coordinates of P
    uinv_cols = [p.coords(c) for c in dec.splitting.inverse.columns[:k]] if k else []
    section = IntMatrix.from_columns(uinv_cols, d) if k else IntMatrix.zeros(d, 0)
    m = bprime.T @ section if k else IntMatrix.zeros(dd.rank, 0)
    if m.nrows != m.ncols or not m.is_unimodular():
        raise AssertionError("double dual map is not unimodular")
    image = Cone(dd.rank, [m.apply(r) for r in dec.sharp.rays])
    if image != dd.cone:
        raise AssertionError("double dual map does not match cones")
    return DoubleDual(dd, dec.sharp, m)


class Annihilator(NamedTuple):
    face: FaceHandle  # face of P.dual

    def witness(self, p: ToricMonoid, x: Sequence) -> Optional[tuple]:
        """q in S^perp with q(x) != 0, for x in P outside S."""
        cx = p.coords(x)
        for q in self.face.cone.rays:
            if dot(q, cx):
                return q
        return None


def annihilator(p: ToricMonoid, s: FaceHandle) -> FaceHandle:
    """S^perp as a face of P.dual."""
    _require_face(p, s)
    s_gens = [p.coords(r) for r in s.cone.rays]
    best = None
    for f in p.dual.faces:
        if all(dot(q, v) == 0 for q in f.cone.rays for v in s_gens):
            if best is None or f.cone.dim() > best.cone.dim():
                best = f
    return best


def annihilator_witness(p: ToricMonoid, s: FaceHandle, x: Sequence) -> Optional[tuple]:
    perp = annihilator(p, s)
    if s.cone.contains(x):
        return None
    return Annihilator(perp).witness(p, x)


# -- presentations and supports --------------------------------------------


class Presentation(NamedTuple):
    generators: tuple
    units: tuple
    relations: tuple  # pairs (a, b) of exponent tuples with sum a_i g_i = sum b_i g_i
    box_bound: int
    verified: bool


def _relation_from_vector(z: Sequence) -> tuple:
    return tuple(max(x, 0) for x in z), tuple(max(-x, 0) for x in z)


def presentation(p: ToricMonoid) -> Presentation:
    """Hilbert generators and binomial relations, box-checked for completeness."""
    return p._presentation


def _compute_presentation(p: ToricMonoid, max_box: int = 20000, bound: int = 6) -> Presentation:
    gens = p.hilbert_basis
    k = len(gens)
    units = tuple(i for i, g in enumerate(gens) if p.units.contains(g))
    if k == 0:
        return Presentation(gens, units, (), bound, True)
    hm = p.hilbert_matrix
    relations = [_relation_from_vector(z) for z in integer_kernel(hm)]
    b = bound
    while b > 0 and (b + 1) ** k > max_box:
        b -= 1
    if b == 0 or not relations:
        return Presentation(gens, units, tuple(relations), b, b > 0 or not relations)
    # box points in lexicographic order; moves stay inside a fiber, so fibers are unions of components
    pts = np.array(list(itertools.product(range(b + 1), repeat=k)), dtype=np.int64)
    radix = (b + 1) ** np.arange(k - 1, -1, -1, dtype=np.int64)
    keys = pts @ np.array(hm.tolist(), dtype=np.int64).reshape(hm.shape).T
    _, fiber = np.unique(keys, axis=0, return_inverse=True)
    fiber = fiber.reshape(-1)
    # a move and its reverse give the same undirected edges
    edges = [_move_edges(pts, radix, b, rel) for rel in relations]
    labels = _component_labels(len(pts), edges)
    order = np.lexsort((np.arange(len(pts)), fiber))
    bounds = np.flatnonzero(np.diff(fiber[order])) + 1
    groups = sorted(np.split(order, bounds), key=lambda g: g[0])
    for g in groups:
        if len(g) < 2:
            continue
        while True:
            rest = g[labels[g] != labels[g[0]]]
            if not len(rest):
                break
            x, y = tuple(int(v) for v in pts[g[0]]), tuple(int(v) for v in pts[rest[0]])
            common = tuple(min(u, v) for u, v in zip(x, y))
            lhs, rhs = _sub(x, common), _sub(y, common)
            relations.append((lhs, rhs))
            edges.append(_move_edges(pts, radix, b, (lhs, rhs)))
            labels = _component_labels(len(pts), edges, labels)
    return Presentation(gens, units, tuple(relations), b, True)


def _move_edges(pts: np.ndarray, radix: np.ndarray, b: int, move: tuple) -> tuple:
    """Index pairs (a, a - lhs + rhs) for box points a where the move applies."""
    lhs, rhs = (np.array(v, dtype=np.int64) for v in move)
    moved = pts - lhs + rhs
    ok = np.all(pts >= lhs, axis=1) & np.all(moved <= b, axis=1)
    return np.flatnonzero(ok), moved[ok] @ radix


def _component_labels(n: int, edges: list, labels: Optional[np.ndarray] = None) -> np.ndarray:
    """Smallest point index in each connected component (moves are used both ways)."""
    labels = np.arange(n) if labels is None else labels.copy()
    if not edges:
        return labels
    src = np.concatenate([e[0] for e in edges])
    dst = np.concatenate([e[1] for e in edges])
    while True:
        low = np.minimum(labels[src], labels[dst])
        new = labels.copy()
        np.minimum.at(new, src, low)
        np.minimum.at(new, dst, low)
        new = new[new]
        if np.array_equal(new, labels):
            return labels
        labels = new


def check_relations(p: ToricMonoid, x: Sequence, rel_tol: float = 1e-12) -> None:
    """Raise RelationError when coordinates x violate a binomial relation."""
    for lhs, rhs in presentation(p).relations:
        left = math.prod(xi**a for xi, a in zip(x, lhs))
        right = math.prod(xi**b for xi, b in zip(x, rhs))
        if abs(left - right) > rel_tol * max(abs(left), abs(right), 1e-300) and not (
            left == 0 and right == 0
        ):
            raise RelationError(f"coordinates violate relation {lhs} = {rhs}", relation=(lhs, rhs))


class Support(NamedTuple):
    face: FaceHandle
    codim: int
    normal_model: ToricMonoid


def support_of_point(p: ToricMonoid, x: Sequence) -> Support:
    gens = p.hilbert_basis
    if len(x) != len(gens):
        raise ValueError(f"expected {len(gens)} coordinates, got {len(x)}")
    if any(v < 0 for v in x):
        raise ValueError("coordinates must be nonnegative")
    check_relations(p, x)
    positive = [g for g, v in zip(gens, x) if v > 0]
    face = p.smallest_face_containing(positive) if positive else p.unit_face
    for g, v in zip(gens, x):
        if face.cone.contains(g) and v <= 0:
            raise RelationError(f"generator {g} lies in the support face but has coordinate 0")
    return Support(face, face.codim, quotient_by_face(p, face).monoid)


__all__ = [
    "Annihilator",
    "Decomposition",
    "DoubleDual",
    "FaceHandle",
    "Localization",
    "MonoidHom",
    "Presentation",
    "Quotient",
    "Splitting",
    "Support",
    "ToricMonoid",
    "annihilator",
    "annihilator_witness",
    "check_relations",
    "decompose",
    "double_dual_isomorphism",
    "dual_monoid",
    "generated_monoid_contains",
    "is_interior_hom",
    "is_saturated_image",
    "localization_splitting",
    "localize",
    "pointed_hilbert_basis",
    "presentation",
    "quotient_by_face",
    "support_of_point",
]
