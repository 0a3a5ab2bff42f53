"""Monomial (interior b-) maps between model spaces and their lifts through blow-ups.

A map X_P -> X_Q is recorded by its exponent matrix ``mu``: one row per
Hilbert generator of P, one column per Hilbert generator of Q, so that the
pulled-back coordinate of q_j is the monomial prod_i x_i ** mu[i][j].
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .blowup import BlowupAtlas, Refinement, _monomials, blowup_atlas, nonneg_decomposition
from .complex import ComplexMorphism, face_complex_of_monoid
from .errors import FactorizationError, NonInteriorError, NotAFaceError, RelationError
from .lattice import IntMatrix, integer_right_inverse, rational_rank
from .monoid import FaceHandle, MonoidHom, ToricMonoid, annihilator, check_relations, presentation


@dataclass(frozen=True, eq=False)
class MonomialMap:
    domain: ToricMonoid
    codomain: ToricMonoid
    mu: IntMatrix
    group_matrix: IntMatrix  # Q group coordinates -> P group coordinates
    dual_hom: MonoidHom  # P^vee -> Q^vee
    local: bool = True  # the corner of X_P goes to the corner of X_Q

    @property
    def shape(self) -> tuple:
        return self.mu.shape

    def __repr__(self) -> str:
        return f"MonomialMap(mu={self.mu.tolist()})"


def make_monomial_map(p: ToricMonoid, q: ToricMonoid, mu, local: bool = True) -> MonomialMap:
    """Validate an exponent matrix and build the map X_P -> X_Q it describes.

    With ``local`` (the default) the dual map P^vee -> Q^vee must be
    interior, i.e. the germ sends the corner to the corner. Lifts through a
    blow-up generally land in a boundary stratum of their chart and are built
    with ``local=False``.
    """
    if not isinstance(mu, IntMatrix):
        mu = IntMatrix(mu, len(q.hilbert_basis))
    kp, kq = len(p.hilbert_basis), len(q.hilbert_basis)
    if mu.shape != (kp, kq):
        raise ValueError(f"mu must be {kp}x{kq}, got {mu.shape[0]}x{mu.shape[1]}")
    hp = IntMatrix.from_columns([p.coords(h) for h in p.hilbert_basis], p.dim)
    hq = IntMatrix.from_columns([q.coords(h) for h in q.hilbert_basis], q.dim)
    p_units = [p.units.contains(h) for h in p.hilbert_basis]
    q_units = [q.units.contains(h) for h in q.hilbert_basis]
    for i in range(kp):
        for j in range(kq):
            if mu[i, j] < 0 and not (p_units[i] or q_units[j]):
                raise ValueError(f"negative exponent mu[{i}][{j}] on sharp coordinates")
    y = hp @ mu if kp else IntMatrix.zeros(p.dim, kq)
    if q.dim:
        z = integer_right_inverse(hq)
        a = y @ z
    else:
        a = IntMatrix.zeros(p.dim, 0)
    if q.dim and a @ hq != y:
        for lhs, rhs in presentation(q).relations:
            if y.apply(lhs) != y.apply(rhs):
                raise RelationError(
                    f"exponents violate the codomain relation {list(lhs)} = {list(rhs)}",
                    relation=(lhs, rhs),
                )
        raise RelationError("exponents are not induced by a group homomorphism")
    p_local = ToricMonoid(p.dim, cone=p.local_cone)
    q_local = ToricMonoid(q.dim, cone=q.local_cone)
    MonoidHom(q_local, p_local, a)  # f^vee maps Q into P
    dual = MonoidHom(p.dual, q.dual, a.T)
    if local and not dual.interior:
        face = q.dual.smallest_face_containing(dual.matrix.apply(r) for r in p.dual.rays)
        raise NonInteriorError(
            f"the dual map sends P^vee into the proper face {list(map(list, face.cone.rays))}", face=face
        )
    return MonomialMap(p, q, mu, a, dual, dual.interior)


def identity_map(p: ToricMonoid) -> MonomialMap:
    return make_monomial_map(p, p, IntMatrix.identity(len(p.hilbert_basis)))


def evaluate(f: MonomialMap, x: Sequence[float], rel_tol: float = 1e-12) -> tuple:
    x = [float(v) for v in x]
    if len(x) != f.mu.nrows:
        raise ValueError(f"expected {f.mu.nrows} coordinates")
    if any(v <= 0 for v in x):
        raise ValueError("evaluation needs strictly positive coordinates")
    check_relations(f.domain, x, rel_tol)
    out = tuple(math.prod(xi ** f.mu[i, j] for i, xi in enumerate(x)) for j in range(f.mu.ncols))
    check_relations(f.codomain, out, max(rel_tol, 1e-12) * 10)
    return out


def compose(g: MonomialMap, f: MonomialMap) -> MonomialMap:
    """g ∘ f for f: X_P -> X_Q and g: X_Q -> X_R."""
    if f.codomain != g.domain:
        raise ValueError("maps are not composable")
    return make_monomial_map(f.domain, g.codomain, f.mu @ g.mu, local=f.local and g.local)


def same_group_map(f: MonomialMap, g: MonomialMap) -> bool:
    return f.domain == g.domain and f.codomain == g.codomain and f.group_matrix == g.group_matrix


def induced_morphism(f: MonomialMap) -> ComplexMorphism:
    """Face complex of P^vee -> face complex of Q^vee."""
    src = face_complex_of_monoid(f.domain.dual)
    tgt = face_complex_of_monoid(f.codomain.dual)
    m = f.dual_hom.matrix
    assignment = []
    for i, face in enumerate(src.faces):
        b = src.bases[i]
        image = [m.apply(r) for r in face.cone.rays]
        g = f.codomain.dual.smallest_face_containing(image)
        assignment.append((tgt.index_of_face(g), g.monoid._coords_matrix @ m @ b))
    return ComplexMorphism(src, tgt, assignment)


def factors_through(f_nat: MonoidHom, r: Refinement) -> Optional[int]:
    """Index of the smallest cone of R containing the image of f_nat, if any."""
    image = f_nat.image_cone
    best = None
    for i, c in enumerate(r.fan_faces):
        if image <= c and (best is None or c.dim() < r.fan_faces[best].dim()):
            best = i
    return best


@dataclass(frozen=True, eq=False)
class Lift:
    map: MonomialMap
    chart: int  # position in atlas.charts
    cell: int  # fan face the image factors through
    atlas: BlowupAtlas

    @property
    def mu(self) -> IntMatrix:
        return self.map.mu


def blowdown_map(atlas: BlowupAtlas, chart: int) -> MonomialMap:
    c = atlas.charts[chart]
    return make_monomial_map(c.monoid, atlas.base, c.blowdown)


def _decompose_in(p: ToricMonoid, v: Sequence) -> tuple:
    local = [p.coords(h) for h in p.hilbert_basis]
    grading = p.local_cone.dual().relative_interior_point()
    coeffs = nonneg_decomposition(local, v, grading)
    if coeffs is None:
        raise FactorizationError(f"{tuple(v)} is not in the domain monoid")
    return coeffs


def lift_into(f: MonomialMap, atlas: BlowupAtlas, chart: int) -> MonomialMap:
    c = atlas.charts[chart]
    if not f.domain.is_sharp():
        raise ValueError("lifting needs a sharp domain")
    cols = [_decompose_in(f.domain, f.group_matrix.apply(g)) for g in c.monoid.hilbert_basis]
    mu = IntMatrix.from_columns(cols, len(f.domain.hilbert_basis))
    return make_monomial_map(f.domain, c.monoid, mu, local=False)


def lift(f: MonomialMap, r: Refinement, atlas: Optional[BlowupAtlas] = None) -> Lift:
    """The unique lift of f through the blow-up of X_Q along R, in the least possible chart."""
    if not f.codomain.is_sharp():
        raise ValueError("lifting needs a sharp codomain")
    cell = factors_through(f.dual_hom, r)
    if cell is None:
        raise FactorizationError("the map does not factor through a single cone of the refinement")
    atlas = atlas or blowup_atlas(f.codomain, r)
    cone = r.fan_faces[cell]
    chart = next(i for i, c in enumerate(atlas.charts) if cone <= c.cone)
    lifted = lift_into(f, atlas, chart)
    stratum = atlas.charts[chart].monoid.dual.smallest_face_containing(
        lifted.dual_hom.matrix.apply(x) for x in f.domain.dual.rays
    )
    if stratum.cone != cone:
        raise AssertionError("lift does not land in the stratum of its factorization cell")
    down = blowdown_map(atlas, chart)
    if not same_group_map(compose(down, lifted), f):
        raise AssertionError("blow-down of the lift differs from the map")
    return Lift(lifted, chart, cell, atlas)


def charts_containing(l: Lift) -> tuple:
    cone = l.atlas.refinement.fan_faces[l.cell]
    return tuple(i for i, c in enumerate(l.atlas.charts) if cone <= c.cone)


def lifts_agree(f: MonomialMap, atlas: BlowupAtlas, a: int, b: int) -> bool:
    """Lifts into charts a < b agree after applying the gluing transition."""
    la, lb = lift_into(f, atlas, a), lift_into(f, atlas, b)
    t = atlas.gluing(a, b).transition
    via = la.mu @ t
    hp = IntMatrix.from_columns([f.domain.coords(h) for h in f.domain.hilbert_basis], f.domain.dim)
    return hp @ via == hp @ lb.mu


def numeric_lift_check(l: Lift, f: MonomialMap, samples: int = 100, seed: int = 0) -> float:
    """Largest relative deviation between blowdown(lift(x)) and f(x) on random interior points."""
    rng = np.random.default_rng(seed)
    p = f.domain
    gens = np.array([p.coords(h) for h in p.hilbert_basis], float).reshape(-1, p.dim)
    mu_l = np.array(l.mu.tolist(), float).reshape(l.mu.shape)
    mu_b = np.array(l.atlas.charts[l.chart].blowdown.tolist(), float).reshape(l.atlas.charts[l.chart].blowdown.shape)
    mu_f = np.array(f.mu.tolist(), float).reshape(f.mu.shape)
    size = np.abs(gens).sum(axis=1).max() if gens.size else 1.0
    for m in (mu_l, mu_f):
        size *= max(1.0, np.abs(m).sum(axis=0).max()) if m.size else 1.0
    size *= max(1.0, np.abs(mu_b).sum(axis=0).max()) if mu_b.size else 1.0
    scale = 1.0 / max(size, 1.0)
    w = rng.normal(scale=scale, size=(samples, p.dim))
    x = np.exp(w @ gens.T)
    down = _monomials(_monomials(x, mu_l), mu_b)
    direct = _monomials(x, mu_f)
    worst = float(np.max(np.abs(down - direct) / direct)) if direct.size else 0.0
    return worst


@dataclass(frozen=True)
class TangentMatrix:
    rows: tuple  # rational entries: Hom(P;R) -> Hom(Q;R)

    @property
    def shape(self) -> tuple:
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)

    def rank(self) -> int:
        return rational_rank(self.rows)

    def is_surjective(self) -> bool:
        return self.rank() == self.shape[0]


def tangent_map(f: MonomialMap) -> TangentMatrix:
    m = f.dual_hom.matrix
    return TangentMatrix(tuple(tuple(Fraction(x) for x in r) for r in m.rows))


def is_b_etale(f: MonomialMap) -> bool:
    m = f.dual_hom.matrix
    return m.nrows == m.ncols and abs(m.det()) == 1


def is_b_transverse(f: MonomialMap, g: MonomialMap) -> bool:
    if f.codomain != g.codomain:
        raise ValueError("transversality needs a common codomain")
    a, b = tangent_map(f), tangent_map(g)
    stacked = [ra + rb for ra, rb in zip(a.rows, b.rows)]
    n = f.codomain.dim
    if not stacked:
        return True
    return rational_rank(stacked) == n


@dataclass(frozen=True, eq=False)
class NormalMonoidData:
    outer: ToricMonoid  # W(F)^vee, realized as F^perp
    inner: ToricMonoid  # W(G)^vee, realized as G^perp
    embedding: MonoidHom


def normal_monoid_data(p: ToricMonoid, g: FaceHandle, f: FaceHandle) -> NormalMonoidData:
    """For faces G <= F of P: F^perp embedded as a face of G^perp."""
    if not g <= f:
        raise NotAFaceError("G is not a face of F")
    fp, gp = annihilator(p, f), annihilator(p, g)
    if not fp <= gp:
        raise AssertionError("annihilators do not reverse inclusion")
    outer = ToricMonoid(fp.dim, cone=fp.monoid.local_cone)
    inner = ToricMonoid(gp.dim, cone=gp.monoid.local_cone)
    m = gp.monoid._coords_matrix @ fp.monoid.group_basis
    hom = MonoidHom(outer, inner, m)
    if not hom.iso_onto_face:
        raise AssertionError("normal monoid embedding is not onto a face")
    return NormalMonoidData(outer, inner, hom)


__all__ = [
    "Lift",
    "MonomialMap",
    "NormalMonoidData",
    "TangentMatrix",
    "blowdown_map",
    "charts_containing",
    "compose",
    "evaluate",
    "factors_through",
    "identity_map",
    "induced_morphism",
    "is_b_etale",
    "is_b_transverse",
    "lift",
    "lift_into",
    "lifts_agree",
    "make_monomial_map",
    "normal_monoid_data",
    "numeric_lift_check",
    "same_group_map",
    "tangent_map",
]
