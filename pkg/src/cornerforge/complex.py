"""Monoidal complexes: finite multigraphs of monoids with face-embedding arrows."""

from __future__ import annotations

from typing import Iterable, NamedTuple, Optional, Sequence

from .errors import NotASubcomplexError
from .lattice import IntMatrix
from .monoid import FaceHandle, MonoidHom, ToricMonoid


class Violation(NamedTuple):
    axiom: str
    object: Optional[int]
    selector: Optional[tuple]
    message: str

    def __str__(self) -> str:
        where = "" if self.object is None else f" (object {self.object}"
        if self.selector is not None:
            where += f", face {list(self.selector)}"
        if where:
            where += ")"
        return f"{self.axiom}: {self.message}{where}"


class Arrow(NamedTuple):
    source: int
    target: int
    matrix: IntMatrix

    def key(self) -> tuple:
        return (self.source, self.target, self.matrix)


class MonoidalComplex:
    """Objects (indexed monoids) plus arrows between them.

    The complex axioms are not enforced here; use :func:`validate_complex`.
    """

    def __init__(
        self,
        objects: Sequence[ToricMonoid],
        arrows: Iterable[Arrow],
        labels: Optional[Sequence[str]] = None,
    ):
        self.objects = tuple(objects)
        seen = set()
        arrs = []
        for a in arrows:
            a = Arrow(a[0], a[1], a[2] if isinstance(a[2], IntMatrix) else IntMatrix(a[2], self.objects[a[0]].rank))
            if not (0 <= a.source < len(self.objects) and 0 <= a.target < len(self.objects)):
                raise ValueError(f"arrow {a.source}->{a.target} references a missing object")
            if a.key() not in seen:
                seen.add(a.key())
                arrs.append(a)
        self.arrows = tuple(arrs)
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(len(self.objects)))

    def __len__(self) -> int:
        return len(self.objects)

    def hom(self, arrow: Arrow) -> MonoidHom:
        return MonoidHom(self.objects[arrow.source], self.objects[arrow.target], arrow.matrix)

    def arrows_into(self, target: int) -> tuple:
        return tuple(a for a in self.arrows if a.target == target)

    def arrows_between(self, source: int, target: int) -> tuple:
        return tuple(a for a in self.arrows if a.source == source and a.target == target)

    def has_arrow(self, source: int, target: int, matrix: IntMatrix) -> bool:
        return any(a.matrix == matrix for a in self.arrows_between(source, target))

    def maximal_objects(self) -> tuple:
        """Objects that are not the source of any non-identity arrow."""
        out = []
        for i, obj in enumerate(self.objects):
            if not any(a.source == i and a.target != i for a in self.arrows):
                out.append(i)
        return tuple(out)

    def with_closure(self) -> "MonoidalComplex":
        """Add identity arrows and all composites."""
        arrows = list(self.arrows)
        for i, obj in enumerate(self.objects):
            arrows.append(Arrow(i, i, IntMatrix.identity(obj.rank)))
        keys = {a.key() for a in arrows}
        changed = True
        while changed:
            changed = False
            for a in list(arrows):
                for b in list(arrows):
                    if a.target != b.source:
                        continue
                    c = Arrow(a.source, b.target, b.matrix @ a.matrix)
                    if c.key() not in keys:
                        keys.add(c.key())
                        arrows.append(c)
                        changed = True
        return MonoidalComplex(self.objects, arrows, self.labels)

    def __repr__(self) -> str:
        return f"MonoidalComplex({len(self.objects)} objects, {len(self.arrows)} arrows)"


def validate_complex(c: MonoidalComplex) -> list:
    """Violations of the complex axioms; an empty list means the complex is valid."""
    out = []
    homs = {}
    for idx, a in enumerate(c.arrows):
        try:
            h = c.hom(a)
        except ValueError as exc:
            out.append(Violation("arrow", a.target, None, f"arrow {a.source}->{a.target}: {exc}"))
            continue
        homs[idx] = h
        if not h.iso_onto_face:
            out.append(
                Violation("arrow", a.target, None, f"arrow {a.source}->{a.target} is not an isomorphism onto a face")
            )
    for p_idx, p in enumerate(c.objects):
        incoming = [(i, a) for i, a in enumerate(c.arrows) if a.target == p_idx and i in homs]
        for face in p.faces:
            hits = [a for i, a in incoming if homs[i].image_face == face]
            if len(hits) != 1:
                out.append(
                    Violation(
                        "unique object",
                        p_idx,
                        face.selector,
                        f"face is the image of {len(hits)} arrows, expected exactly 1",
                    )
                )
    keys = {a.key() for a in c.arrows}
    for a in c.arrows:
        for b in c.arrows:
            if a.target != b.source:
                continue
            comp = b.matrix @ a.matrix
            if (a.source, b.target, comp) not in keys:
                out.append(
                    Violation(
                        "composition",
                        b.target,
                        None,
                        f"composite {a.source}->{a.target}->{b.target} is not an arrow",
                    )
                )
    return out


def is_valid_complex(c: MonoidalComplex) -> bool:
    return not validate_complex(c)


class FaceComplex(MonoidalComplex):
    """Complex of faces of one monoid, remembering where each face sits."""

    def __init__(self, monoid: ToricMonoid, faces, objects, arrows, bases):
        labels = [str(list(map(list, f.cone.rays))) for f in faces]
        super().__init__(objects, arrows, labels)
        self.monoid = monoid
        self.faces = tuple(faces)
        self.bases = tuple(bases)  # object lattice -> ambient lattice of the monoid

    def index_of_face(self, face: FaceHandle) -> int:
        return self.faces.index(face)

    def index_of_cone(self, cone) -> int:
        for i, f in enumerate(self.faces):
            if f.cone == cone:
                return i
        raise ValueError(f"{cone} is not a face")


def face_complex_of_monoid(p: ToricMonoid) -> FaceComplex:
    faces = p.faces
    objects = [ToricMonoid(f.dim, cone=f.monoid.local_cone) for f in faces]
    bases = [f.monoid.group_basis for f in faces]
    arrows = []
    for i, s in enumerate(faces):
        for j, t in enumerate(faces):
            if s <= t:
                m = t.monoid._coords_matrix @ s.monoid.group_basis
                arrows.append(Arrow(i, j, m))
    return FaceComplex(p, faces, objects, arrows, bases)


def zero_complex() -> MonoidalComplex:
    return MonoidalComplex([ToricMonoid.zero()], [Arrow(0, 0, IntMatrix.zeros(0, 0))])


def teardrop_complex() -> MonoidalComplex:
    """Objects {0, N, N^2}; N embeds into N^2 along both axes."""
    z, n1, n2 = ToricMonoid.zero(), ToricMonoid.free(1), ToricMonoid.free(2)
    arrows = [
        Arrow(0, 1, IntMatrix.zeros(1, 0)),
        Arrow(1, 2, IntMatrix([[1], [0]])),
        Arrow(1, 2, IntMatrix([[0], [1]])),
        Arrow(0, 2, IntMatrix.zeros(2, 0)),
    ]
    return MonoidalComplex([z, n1, n2], arrows, ["0", "N", "N2"]).with_closure()


# -- morphisms -------------------------------------------------------------


class ComplexMorphism:
    """An assignment of a target object and an interior hom to every source object."""

    def __init__(self, source: MonoidalComplex, target: MonoidalComplex, assignment: Sequence):
        if len(assignment) != len(source.objects):
            raise ValueError("assignment must cover every source object")
        items = []
        for i, (t, m) in enumerate(assignment):
            if not isinstance(m, IntMatrix):
                m = IntMatrix(m, source.objects[i].rank)
            items.append((int(t), m))
        self.source = source
        self.target = target
        self.assignment = tuple(items)

    def hom(self, i: int) -> MonoidHom:
        t, m = self.assignment[i]
        return MonoidHom(self.source.objects[i], self.target.objects[t], m)

    @classmethod
    def identity(cls, c: MonoidalComplex) -> "ComplexMorphism":
        return cls(c, c, [(i, IntMatrix.identity(o.rank)) for i, o in enumerate(c.objects)])

    def compose(self, first: "ComplexMorphism") -> "ComplexMorphism":
        """self ∘ first."""
        out = []
        for j, f in first.assignment:
            k, g = self.assignment[j]
            out.append((k, g @ f))
        return ComplexMorphism(first.source, self.target, out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ComplexMorphism):
            return NotImplemented
        return self.assignment == other.assignment and len(self.source) == len(other.source)

    def __hash__(self) -> int:
        return hash(self.assignment)

    def __repr__(self) -> str:
        return f"ComplexMorphism({[(t, m.tolist()) for t, m in self.assignment]})"


def validate_morphism(m: ComplexMorphism) -> list:
    out = []
    homs = {}
    for i, (t, mat) in enumerate(m.assignment):
        try:
            h = m.hom(i)
        except ValueError as exc:
            out.append(Violation("morphism", i, None, str(exc)))
            continue
        homs[i] = h
        if not h.interior:
            face = m.target.objects[t].smallest_face_containing(
                mat.apply(r) for r in m.source.objects[i].rays
            )
            out.append(
                Violation("interior", i, face.selector, f"object {i} is mapped into a proper face of object {t}")
            )
    for a in m.source.arrows:
        if a.source not in homs or a.target not in homs:
            continue
        ts, fs = m.assignment[a.source]
        tt, ft = m.assignment[a.target]
        lhs = ft @ a.matrix
        if not any(b.matrix @ fs == lhs for b in m.target.arrows_between(ts, tt)):
            out.append(
                Violation("commutation", a.target, None, f"square over arrow {a.source}->{a.target} does not commute")
            )
    return out


def is_valid_morphism(m: ComplexMorphism) -> bool:
    return not validate_morphism(m)


def _check_downward_closed(c: MonoidalComplex, indices: Iterable[int]) -> tuple:
    idx = tuple(sorted(set(indices)))
    chosen = set(idx)
    for a in c.arrows:
        if a.target in chosen and a.source not in chosen:
            raise NotASubcomplexError(f"object {a.source} is a face of {a.target} but is not included")
    return idx


def subcomplex(c: MonoidalComplex, indices: Iterable[int]) -> MonoidalComplex:
    idx = _check_downward_closed(c, indices)
    where = {old: new for new, old in enumerate(idx)}
    arrows = [Arrow(where[a.source], where[a.target], a.matrix) for a in c.arrows if a.target in where]
    return MonoidalComplex([c.objects[i] for i in idx], arrows, [c.labels[i] for i in idx])


def subcomplex_inclusion(c: MonoidalComplex, indices: Iterable[int]) -> ComplexMorphism:
    idx = _check_downward_closed(c, indices)
    sub = subcomplex(c, idx)
    return ComplexMorphism(sub, c, [(i, IntMatrix.identity(c.objects[i].rank)) for i in idx])


def downward_closure(c: MonoidalComplex, indices: Iterable[int]) -> tuple:
    chosen = set(indices)
    changed = True
    while changed:
        changed = False
        for a in c.arrows:
            if a.target in chosen and a.source not in chosen:
                chosen.add(a.source)
                changed = True
    return tuple(sorted(chosen))


class Restriction(NamedTuple):
    morphism: ComplexMorphism
    source_indices: tuple
    target_indices: tuple


def restrict_complex(m: ComplexMorphism, indices: Iterable[int]) -> Restriction:
    """Restrict a morphism to the part of its source lying over a target subcomplex."""
    tgt = _check_downward_closed(m.target, indices)
    tset = set(tgt)
    src = tuple(i for i, (t, _) in enumerate(m.assignment) if t in tset)
    src = _check_downward_closed(m.source, src)
    where = {old: new for new, old in enumerate(tgt)}
    assignment = [(where[m.assignment[i][0]], m.assignment[i][1]) for i in src]
    sub_m = ComplexMorphism(subcomplex(m.source, src), subcomplex(m.target, tgt), assignment)
    return Restriction(sub_m, src, tgt)


__all__ = [
    "Arrow",
    "ComplexMorphism",
    "FaceComplex",
    "MonoidalComplex",
    "Restriction",
    "Violation",
    "downward_closure",
    "face_complex_of_monoid",
    "is_valid_complex",
    "is_valid_morphism",
    "restrict_complex",
    "subcomplex",
    "subcomplex_inclusion",
    "teardrop_complex",
    "validate_complex",
    "validate_morphism",
    "zero_complex",
]
