"""Saturated refinements, stellar subdivisions and blow-up atlases."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from .complex import (
    Arrow,
    ComplexMorphism,
    FaceComplex,
    MonoidalComplex,
    Violation,
    face_complex_of_monoid,
    restrict_complex,
    validate_morphism,
)
from .cone import Cone, _neg, cone_intersection, linear_preimage
from .errors import InvalidRefinementError, ResolutionError
from .lattice import (
    IntMatrix,
    Sublattice,
    canonical_key,
    dot,
    left_inverse_on_sublattice,
    primitive,
    solve_integer,
)
from .monoid import (
    FaceHandle,
    MonoidHom,
    ToricMonoid,
    annihilator,
    dual_monoid,
    is_saturated_image,
    localize,
)

log = logging.getLogger(__name__)


def _cone_key(c: Cone) -> tuple:
    return (c.dim(), [canonical_key(r) for r in c.rays])


# -- refinements -----------------------------------------------------------


def check_refinement(m: ComplexMorphism) -> list:
    """Violations of (R1)/(R2) for a complex morphism; empty means a saturated refinement."""
    out = list(validate_morphism(m))
    if out:
        return out
    homs = [m.hom(i) for i in range(len(m.source.objects))]
    for i, h in enumerate(homs):
        if not h.injective:
            out.append(Violation("R1", i, None, f"object {i} is not mapped injectively"))
        elif not is_saturated_image(h):
            out.append(Violation("R2", i, None, "image not saturated"))
    if out:
        return out
    for t, target in enumerate(m.target.objects):
        over = [i for i, (tt, _) in enumerate(m.assignment) if tt == t]
        images = {i: homs[i].image_cone for i in over}
        dim_t = target.dim
        maximal = [i for i in over if images[i].dim() == dim_t]
        tcone = target.cone
        if not maximal:
            out.append(Violation("R2", t, None, "interior is not covered by any maximal image"))
            continue
        for a_pos, a in enumerate(maximal):
            for b in maximal[a_pos + 1 :]:
                q = cone_intersection(images[a], images[b])
                if not (images[a].face_of(q) and images[b].face_of(q)):
                    out.append(
                        Violation(
                            "R2",
                            t,
                            None,
                            f"images of objects {a} and {b} meet in {q.rays}, which is not a mutual face",
                        )
                    )
        for a in maximal:
            p = images[a].relative_interior_point()
            hits = sum(1 for b in maximal if images[b].contains(p))
            if hits != 1:
                out.append(Violation("R2", t, None, f"interior point {p} of object {a} is covered {hits} times"))
            for facet in images[a].facets():
                if not tcone.relative_interior_contains(facet.cone.relative_interior_point()):
                    continue
                shared = sum(
                    1 for b in maximal if b != a and any(f.cone == facet.cone for f in images[b].facets())
                )
                if shared != 1:
                    out.append(
                        Violation(
                            "R2",
                            t,
                            None,
                            f"interior wall {facet.cone.rays} of object {a} is shared with {shared} cones",
                        )
                    )
        interior_faces = {}
        for a in maximal:
            for f in images[a].faces():
                if tcone.relative_interior_contains(f.cone.relative_interior_point()):
                    interior_faces[f.cone] = 0
        for i in over:
            if images[i] in interior_faces:
                interior_faces[images[i]] += 1
            else:
                out.append(Violation("R2", t, None, f"image of object {i} is not an interior cell"))
        for c, n in interior_faces.items():
            if n != 1:
                out.append(Violation("R2", t, None, f"interior cell {c.rays} is the image of {n} objects"))
    return out


@dataclass(frozen=True, eq=False)
class Refinement:
    """A validated saturated refinement, optionally remembering its fan."""

    morphism: ComplexMorphism
    base: Optional[ToricMonoid] = None
    cones: tuple = ()  # maximal cones, in the base's lattice
    fan_faces: tuple = ()  # cone of every source object, in the base's lattice
    fan_bases: tuple = ()  # source object lattice -> base lattice
    r1: bool = True
    r2: bool = True

    @classmethod
    def from_morphism(cls, m: ComplexMorphism, **kwargs) -> "Refinement":
        violations = check_refinement(m)
        if violations:
            raise InvalidRefinementError(violations)
        return cls(m, **kwargs)

    @property
    def source(self) -> MonoidalComplex:
        return self.morphism.source

    @property
    def target(self) -> MonoidalComplex:
        return self.morphism.target

    def maximal_indices(self) -> tuple:
        return tuple(self.fan_faces.index(c) for c in self.cones)

    def index_of(self, cone: Cone) -> int:
        return self.fan_faces.index(cone)

    def is_trivial(self) -> bool:
        return len(self.cones) == 1 and self.base is not None and self.cones[0] == self.base.cone


def validate_refinement(m: ComplexMorphism) -> Union[Refinement, list]:
    violations = check_refinement(m)
    if violations:
        return violations
    return Refinement(m)


def fan_refinement(base: ToricMonoid, cones: Sequence[Cone]) -> Refinement:
    """Refinement of the face complex of ``base`` by a fan with the given maximal cones."""
    if not base.cone.is_full():
        raise ValueError("fan refinements need a full-dimensional base cone")
    cones = sorted(set(cones), key=_cone_key)
    faces = {}
    for c in cones:
        if c.rank != base.rank:
            raise ValueError("cone lives in a different lattice")
        for f in c.faces():
            faces[f.cone] = None
    fan = sorted(faces, key=_cone_key)
    monoids = [ToricMonoid(base.rank, cone=c) for c in fan]
    objects = [ToricMonoid(m.dim, cone=m.local_cone) for m in monoids]
    arrows = []
    for i, c in enumerate(fan):
        for j, g in enumerate(fan):
            if c == g or g.face_of(c):
                arrows.append(Arrow(i, j, monoids[j]._coords_matrix @ monoids[i].group_basis))
    source = MonoidalComplex(objects, arrows, [str([list(r) for r in c.rays]) for c in fan])
    target = face_complex_of_monoid(base)
    assignment = []
    for i, c in enumerate(fan):
        face = base.face_with_interior_point(c.relative_interior_point())
        t = target.index_of_face(face)
        assignment.append((t, face.monoid._coords_matrix @ monoids[i].group_basis))
    morphism = ComplexMorphism(source, target, assignment)
    return Refinement.from_morphism(
        morphism,
        base=base,
        cones=tuple(cones),
        fan_faces=tuple(fan),
        fan_bases=tuple(m.group_basis for m in monoids),
    )


def trivial_refinement(base: ToricMonoid) -> Refinement:
    return fan_refinement(base, [base.cone])


def stellar_subdivision(obj: Union[ToricMonoid, Refinement], ray: Sequence[int]) -> Refinement:
    """Star subdivision of a monoid's cone (or of a fan refinement) at a primitive vector."""
    if isinstance(obj, Refinement):
        if obj.base is None:
            raise ValueError("stellar subdivision needs a fan refinement")
        base, cones = obj.base, list(obj.cones)
    else:
        base, cones = obj, [obj.cone]
    v = tuple(ray)
    if primitive(v) != v or not any(v):
        raise ValueError(f"{v} is not a primitive vector")
    if not base.cone.contains(v):
        raise ValueError(f"{v} lies outside the support")
    new = []
    for c in cones:
        if not c.contains(v):
            new.append(c)
            continue
        for f in c.facets():
            if f.cone.contains(v):
                continue
            new.append(Cone(c.rank, list(f.cone.rays) + [v]))
    return fan_refinement(base, new)


def is_smooth_cone(c: Cone) -> bool:
    if not c.is_simplicial():
        return False
    m = ToricMonoid(c.rank, cone=c)
    return len(m.hilbert_basis) == c.dim()


def resolve(p: ToricMonoid, max_steps: int = 64) -> Refinement:
    """Subdivide cone(P) until every maximal cone is smooth."""
    if not p.is_sharp():
        raise ValueError("resolve needs a sharp monoid")
    if not p.cone.is_full():
        raise ValueError("resolve needs a full-dimensional cone")
    current: Union[ToricMonoid, Refinement] = p
    cones = [p.cone]
    for step in range(max_steps + 1):
        bad = next((c for c in cones if not is_smooth_cone(c)), None)
        if bad is None:
            return current if isinstance(current, Refinement) else trivial_refinement(p)
        if step == max_steps:
            break
        hb = ToricMonoid(bad.rank, cone=bad).hilbert_basis
        witness = [h for h in hb if h not in bad.rays]
        v = witness[0] if witness else bad.rays[0]
        log.debug("resolve step %d: subdividing %s at %s", step, bad.rays, v)
        current = stellar_subdivision(current, v)
        cones = list(current.cones)
    raise ResolutionError(f"resolution did not finish within {max_steps} subdivisions")


# -- blow-up atlases -------------------------------------------------------


def nonneg_decomposition(gens: Sequence, v: Sequence, grading: Sequence) -> Optional[tuple]:
    """Coefficients c >= 0 with sum c_i gens_i = v, or None.

    All generators must have positive degree.  Earlier generators are tried
    first with the largest possible coefficient, which makes the result
    deterministic.
    """
    degs = [dot(grading, g) for g in gens]
    if any(d <= 0 for d in degs):
        raise ValueError("grading must be positive on every generator")
    k = len(gens)
    n = len(v)

    def go(i, rest):
        if i == k:
            return () if not any(rest) else None
        deg = dot(grading, rest)
        if deg < 0:
            return None
        for c in range(deg // degs[i], -1, -1):
            nxt = tuple(rest[j] - c * gens[i][j] for j in range(n))
            tail = go(i + 1, nxt)
            if tail is not None:
                return (c,) + tail
        return None

    return go(0, tuple(v))


def express_in_hilbert_basis(m: ToricMonoid, v: Sequence) -> tuple:
    """Coefficients expressing v ∈ m in the Hilbert basis (sharp monoids only)."""
    grading = m.cone.dual().relative_interior_point()
    coeffs = nonneg_decomposition(m.hilbert_basis, v, grading)
    if coeffs is None:
        raise ValueError(f"{tuple(v)} is not in the monoid")
    return coeffs


@dataclass(frozen=True, eq=False)
class BlowupChart:
    index: int  # source object of the refinement
    cone: Cone
    monoid: ToricMonoid  # chart monoid R^vee
    blowdown: IntMatrix  # rows: chart Hilbert basis, columns: base Hilbert basis
    group_matrix: IntMatrix  # blow-down on group lattices (base coordinates -> chart coordinates)

    @property
    def group_det(self) -> int:
        return self.group_matrix.det()


@dataclass(frozen=True, eq=False)
class GluingDatum:
    charts: tuple  # (i, j) chart positions
    intersection: Cone
    intersection_index: int
    localized: ToricMonoid
    localized_agree: bool
    transition: IntMatrix  # rows: chart i Hilbert basis, columns: chart j Hilbert basis
    transition_unimodular: Optional[bool]
    separating: Optional[tuple]


@dataclass(frozen=True, eq=False)
class BlowupAtlas:
    base: ToricMonoid
    units_rank: int
    refinement: Refinement
    charts: tuple
    gluings: tuple
    blowup_complex: MonoidalComplex
    beta: ComplexMorphism
    face_correspondence: tuple  # (source object, stratum codimension)

    def chart_for(self, index: int) -> BlowupChart:
        for c in self.charts:
            if c.index == index:
                return c
        raise KeyError(index)

    def gluing(self, i: int, j: int) -> GluingDatum:
        for g in self.gluings:
            if g.charts == (i, j):
                return g
        raise KeyError((i, j))


def _perp_face(chart: ToricMonoid, q: Cone) -> FaceHandle:
    best = None
    for f in chart.faces:
        if all(dot(a, b) == 0 for a in f.cone.rays for b in q.rays):
            if best is None or f.dim > best.dim:
                best = f
    return best


def _separating_functional(r1: Cone, r2: Cone, q: Cone) -> Optional[tuple]:
    k = cone_intersection(r1.dual(), Cone(r2.rank, [_neg(x) for x in r2.dual().rays]))
    s = k.relative_interior_point()
    if not any(s):
        return None
    s = primitive(s)
    ok = (
        all(dot(s, x) >= 0 for x in r1.rays)
        and all(dot(s, x) <= 0 for x in r2.rays)
        and all(dot(s, x) == 0 for x in q.rays)
        and all((dot(s, x) == 0) == q.contains(x) for x in r1.rays)
        and all((dot(s, x) == 0) == q.contains(x) for x in r2.rays)
    )
    return s if ok else None


def blowup_atlas(p: ToricMonoid, r: Refinement) -> BlowupAtlas:
    """Charts, gluing data and blow-down maps of the blow-up of X_P along R."""
    units_rank = 0
    if not p.is_sharp():
        units_rank = p.units.rank
        p = p.decomposition.sharp
    pd = p.dual
    if r.base is None or r.base != pd:
        raise InvalidRefinementError(["refinement is not a fan refinement of the dual monoid"])
    d = p.dim
    base_hb = [p.coords(h) for h in p.hilbert_basis]
    base_h = IntMatrix.from_columns(base_hb, d)
    charts = []
    for c in r.cones:
        idx = r.index_of(c)
        chart = ToricMonoid(d, cone=c.dual())
        grading = c.relative_interior_point()
        cols = []
        for h in base_hb:
            coeffs = nonneg_decomposition(chart.hilbert_basis, h, grading)
            if coeffs is None:
                raise AssertionError("base generator is not in the chart monoid")
            cols.append(coeffs)
        mu = IntMatrix.from_columns(cols, len(chart.hilbert_basis))
        chart_h = chart.hilbert_matrix
        # group level: chart_h @ mu expresses the base generators, so the map is chart_h mu base_h^+
        y = chart_h @ mu
        if y != base_h:
            raise AssertionError("blow-down matrix does not reproduce the base generators")
        z = left_inverse_on_sublattice(base_h.T, Sublattice.full(d)).T if d else IntMatrix.zeros(0, 0)
        group = y @ z if d else IntMatrix.zeros(0, 0)
        charts.append(BlowupChart(idx, c, chart, mu, group))
    gluings = []
    for a in range(len(charts)):
        for b in range(a + 1, len(charts)):
            c1, c2 = charts[a], charts[b]
            q = cone_intersection(c1.cone, c2.cone)
            if not (c1.cone.face_of(q) and c2.cone.face_of(q)):
                raise InvalidRefinementError([f"charts {a},{b} meet in a non-face"])
            loc1 = localize(c1.monoid, _perp_face(c1.monoid, q)).monoid
            loc2 = localize(c2.monoid, _perp_face(c2.monoid, q)).monoid
            agree = loc1 == loc2 and loc1.cone == q.dual()
            cols = []
            for g in c2.monoid.hilbert_basis:
                x = solve_integer(c1.monoid.hilbert_matrix, g)
                if x is None:
                    raise AssertionError("chart generator outside the common group")
                cols.append(x)
            t = IntMatrix.from_columns(cols, len(c1.monoid.hilbert_basis))
            unimod = t.is_unimodular() if t.nrows == t.ncols else None
            sep = _separating_functional(c1.cone, c2.cone, q)
            gluings.append(GluingDatum((a, b), q, r.index_of(q), loc1, agree, t, unimod, sep))
    correspondence = tuple((i, fc.dim()) for i, fc in enumerate(r.fan_faces))
    return BlowupAtlas(
        p,
        units_rank,
        r,
        tuple(charts),
        tuple(gluings),
        r.morphism.source,
        r.morphism,
        correspondence,
    )


@dataclass(frozen=True)
class NumericCheck:
    samples: int
    max_rel_error: float
    positive: bool

    def ok(self, tol: float = 1e-12) -> bool:
        return self.positive and self.max_rel_error <= tol


def _rel(a, b) -> float:
    a, b = np.asarray(a, float), np.asarray(b, float)
    return float(np.max(np.abs(a - b) / np.maximum(np.abs(b), np.finfo(float).tiny))) if a.size else 0.0


def _monomials(x: np.ndarray, exps: np.ndarray) -> np.ndarray:
    """Row-wise x^exps: (samples, n) points, (n, m) exponents -> (samples, m)."""
    return np.prod(x[:, :, None] ** exps[None, :, :], axis=1)


def numeric_roundtrip(atlas: BlowupAtlas, samples: int = 100, seed: int = 0) -> NumericCheck:
    """Sample interior points of every chart and push them through blow-downs and transitions."""
    rng = np.random.default_rng(seed)
    p = atlas.base
    d = p.dim
    base_hb = np.array([p.coords(h) for h in p.hilbert_basis], float).reshape(-1, d)
    tau = None
    if d:
        tau = np.array(left_inverse_on_sublattice(IntMatrix(base_hb.astype(int).tolist(), d), Sublattice.full(d)).tolist(), float)
    # keep every log-coordinate O(1) so that large exponents cannot overflow
    norms = [sum(abs(x) for x in h) for ch in atlas.charts for h in ch.monoid.hilbert_basis]
    norms += [float(np.abs(base_hb).sum(axis=1).max())] if base_hb.size else []
    scale = 1.0 / max(norms + [1.0])
    worst, positive = 0.0, True
    for ci, chart in enumerate(atlas.charts):
        gens = np.array(chart.monoid.hilbert_basis, float).reshape(-1, d)
        mu = np.array(chart.blowdown.tolist(), float).reshape(len(gens), -1)
        w = rng.normal(scale=scale, size=(samples, d))
        x = np.exp(w @ gens.T)
        y = _monomials(x, mu)
        positive &= bool(np.all(y > 0))
        worst = max(worst, _rel(y, np.exp(w @ base_hb.T)))
        if tau is not None:
            w_back = np.log(y) @ tau.T
            worst = max(worst, _rel(np.exp(w_back @ gens.T), x))
        for g in atlas.gluings:
            if g.charts[0] != ci:
                continue
            other = atlas.charts[g.charts[1]]
            t = np.array(g.transition.tolist(), float).reshape(g.transition.nrows, g.transition.ncols)
            x2 = _monomials(x, t)
            other_gens = np.array(other.monoid.hilbert_basis, float).reshape(-1, d)
            worst = max(worst, _rel(x2, np.exp(w @ other_gens.T)))
            mu2 = np.array(other.blowdown.tolist(), float).reshape(len(other_gens), -1)
            worst = max(worst, _rel(_monomials(x2, mu2), y))
    return NumericCheck(samples, worst, positive)


# -- complexes and localization -------------------------------------------


@dataclass(frozen=True, eq=False)
class BlowupComplex:
    complex: MonoidalComplex
    beta: ComplexMorphism
    strata: tuple  # per base object: source objects whose interior lands in its interior


def blowup_complex(base: MonoidalComplex, r: Union[Refinement, ComplexMorphism], strict: bool = True) -> BlowupComplex:
    """The complex of the blow-up (the refinement's source) with its blow-down morphism."""
    if isinstance(r, Refinement):
        m = r.morphism
    else:
        m = r
        problems = check_refinement(m) if strict else validate_morphism(m)
        if problems:
            raise InvalidRefinementError(problems)
    if m.target is not base and len(m.target.objects) != len(base.objects):
        raise ValueError("refinement does not refine this base complex")
    members: list = [[] for _ in base.objects]
    for i, (tt, mat) in enumerate(m.assignment):
        p = mat.apply(m.source.objects[i].cone.relative_interior_point())
        if not base.objects[tt].cone.relative_interior_contains(p):
            raise AssertionError("stratum bookkeeping disagrees with the assignment")
        if isinstance(base, FaceComplex):
            # the interior point must avoid every other stratum of the base monoid
            q = base.bases[tt].apply(p)
            hits = [t for t, f in enumerate(base.faces) if f.cone.relative_interior_contains(q)]
            if hits != [tt]:
                raise AssertionError("stratum bookkeeping disagrees with the assignment")
        members[tt].append(i)
    strata = [tuple(x) for x in members]
    return BlowupComplex(m.source, m, tuple(strata))


@dataclass(frozen=True, eq=False)
class ProductCheck:
    chart_index: int
    t_cone: Cone  # R ∩ S^perp, in the dual lattice of P
    maximal: bool
    units_match: Optional[bool]
    splitting: Optional[IntMatrix]
    cone_match: Optional[bool]
    covered_by: Optional[int]  # for non-maximal T: chart whose T' contains it

    def ok(self) -> bool:
        if self.maximal:
            return bool(self.units_match and self.cone_match and self.splitting is not None)
        return self.covered_by is not None


@dataclass(frozen=True, eq=False)
class LocalizedBlowup:
    face: FaceHandle
    perp: FaceHandle
    atlas: BlowupAtlas
    restriction: object
    checks: tuple

    def ok(self) -> bool:
        return all(c.ok() for c in self.checks)


def localize_blowup(p: ToricMonoid, s: FaceHandle, r: Refinement) -> LocalizedBlowup:
    """Blow-up over the open set X_{S^{-1}P}: atlas over P/S plus product checks."""
    if not p.is_sharp():
        raise ValueError("localize_blowup needs a sharp monoid")
    pd = p.dual
    if r.base != pd:
        raise InvalidRefinementError(["refinement is not a fan refinement of the dual monoid"])
    perp = annihilator(p, s)
    target = r.target
    assert isinstance(target, FaceComplex)
    sub = [i for i, f in enumerate(target.faces) if f <= perp]
    restriction = restrict_complex(r.morphism, sub)
    perp_monoid = perp.monoid
    basis = perp_monoid.group_basis  # d x k
    k = perp.dim
    local_base = ToricMonoid(k, cone=perp_monoid.local_cone)
    t_cones = [c for c in r.fan_faces if perp.cone.contains(c.relative_interior_point()) and c <= perp.cone]
    t_max = [c for c in t_cones if c.dim() == k]
    local_cones = [Cone(k, [perp_monoid.coords(x) for x in c.rays]) for c in t_max]
    w = dual_monoid(local_base)
    atlas = blowup_atlas(w, fan_refinement(local_base, local_cones))
    # rays of a face need not generate its group, so saturate
    s_group = Sublattice(p.dim, [p.coords(x) for x in s.cone.rays]).saturation()
    checks = []
    charts = [ToricMonoid(p.dim, cone=c.dual()) for c in r.cones]
    for ci, c in enumerate(r.cones):
        t = cone_intersection(c, perp.cone)
        if t.dim() == k:
            m = localize(charts[ci], _perp_face(charts[ci], t)).monoid
            units_match = m.units == s_group
            dec = m.decomposition
            e = None
            cone_match = False
            if dec.sharp.dim == k:
                cols = [m.coords(x) for x in dec.splitting.inverse.columns[: dec.sharp.dim]] if k else []
                section = IntMatrix.from_columns(cols, p.dim) if k else IntMatrix.zeros(p.dim, 0)
                e = (basis.T @ section) if k else IntMatrix.zeros(0, 0)
                if e.is_unimodular():
                    t_local = Cone(k, [perp_monoid.coords(x) for x in t.rays])
                    image = Cone(k, [e.apply(x) for x in dec.sharp.rays])
                    cone_match = image == t_local.dual()
                else:
                    e = None
            checks.append(ProductCheck(ci, t, True, units_match, e, cone_match, None))
        else:
            cover = None
            for cj, c2 in enumerate(r.cones):
                t2 = cone_intersection(c2, perp.cone)
                if t2.dim() == k and t <= t2 and cone_intersection(c, c2).contains(t.relative_interior_point()):
                    cover = cj
                    break
            checks.append(ProductCheck(ci, t, False, None, None, None, cover))
    return LocalizedBlowup(s, perp, atlas, restriction, tuple(checks))


# -- pullback --------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Pullback:
    refinement: Refinement
    induced: ComplexMorphism  # blow-up complex of the pullback -> source of R
    unique: bool
    square_commutes: bool


def _top_matrix(f_nat) -> tuple:
    """(source top monoid, matrix into the base lattice) for an interior map of face complexes."""
    if isinstance(f_nat, MonoidHom):
        return f_nat.source, f_nat.matrix
    src, tgt = f_nat.source, f_nat.target
    top = len(src.objects) - 1
    t, mat = f_nat.assignment[top]
    t_top = len(tgt.objects) - 1
    arrow = next(a for a in tgt.arrows_between(t, t_top))
    return src.objects[top], arrow.matrix @ mat


def pullback_refinement(f_nat, r: Refinement) -> Pullback:
    """Pull a fan refinement back along an interior map into its base."""
    y, ftot = _top_matrix(f_nat)
    if r.base is None or ftot.nrows != r.base.rank:
        raise ValueError("map does not land in the refinement's base")
    if not y.cone.is_full():
        y = ToricMonoid(y.dim, cone=y.local_cone)
    cones = []
    for c in r.cones:
        pre = cone_intersection(linear_preimage(ftot, c), y.cone)
        if pre.dim() == y.dim and pre not in cones:
            cones.append(pre)
    pulled = fan_refinement(y, cones)
    assignment = []
    unique = True
    square = True
    for i, fc in enumerate(pulled.fan_faces):
        b = pulled.fan_bases[i]
        img = ftot @ b
        candidates = []
        for j, rc in enumerate(r.fan_faces):
            rb = r.fan_bases[j]
            cols = []
            for col in img.columns:
                x = solve_integer(rb, col)
                if x is None:
                    break
                cols.append(x)
            else:
                h = IntMatrix.from_columns(cols, rb.ncols) if cols else IntMatrix.zeros(rb.ncols, img.ncols)
                src_obj = pulled.source.objects[i]
                tgt_obj = r.source.objects[j]
                try:
                    hom = MonoidHom(src_obj, tgt_obj, h)
                except ValueError:
                    continue
                if hom.interior:
                    candidates.append((j, h))
        if len(candidates) != 1:
            unique = False
        if not candidates:
            raise AssertionError(f"no cone of the refinement receives pulled-back cell {i}")
        j, h = candidates[0]
        assignment.append((j, h))
        # square: both routes land in the same base stratum
        tj = r.morphism.assignment[j][0]
        if isinstance(f_nat, ComplexMorphism):
            y_idx = pulled.morphism.assignment[i][0]
            square &= f_nat.assignment[y_idx][0] == tj
        else:
            base_face = r.base.face_with_interior_point(ftot.apply(fc.relative_interior_point()))
            square &= r.target.faces[tj] == base_face
    induced = ComplexMorphism(pulled.source, r.source, assignment)
    if validate_morphism(induced):
        raise AssertionError("induced morphism to the refinement is not valid")
    return Pullback(pulled, induced, unique, square)


__all__ = [
    "BlowupAtlas",
    "BlowupChart",
    "BlowupComplex",
    "GluingDatum",
    "LocalizedBlowup",
    "NumericCheck",
    "ProductCheck",
    "Pullback",
    "Refinement",
    "blowup_atlas",
    "blowup_complex",
    "check_refinement",
    "express_in_hilbert_basis",
    "fan_refinement",
    "is_smooth_cone",
    "localize_blowup",
    "nonneg_decomposition",
    "numeric_roundtrip",
    "pullback_refinement",
    "resolve",
    "stellar_subdivision",
    "trivial_refinement",
    "validate_refinement",
]
