"""Command line front end.

Input is a JSON document::

    {"version": "1", "entities": {"P": {"monoid": {"rank": 2, "rays": [[1, 0], [0, 1]]}}}}

Entity records are one of ``monoid``, ``map``, ``complex`` or ``refinement``.
Commands pick entities with ``--entity NAME`` (repeatable) and print a report
in text or JSON. Exit status: 0 ok, 1 validation failure, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys
from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np

from . import __version__
from .blowup import (
    Refinement,
    blowup_atlas,
    check_refinement,
    fan_refinement,
    numeric_roundtrip,
    pullback_refinement,
    resolve,
)
from .bmap import (
    MonomialMap,
    evaluate,
    is_b_etale,
    lift,
    make_monomial_map,
    numeric_lift_check,
)
from .complex import (
    Arrow,
    ComplexMorphism,
    MonoidalComplex,
    face_complex_of_monoid,
    validate_complex,
)
from .cone import Cone, face_lattice_of_cone
from .errors import CornerforgeError, DocumentError, FactorizationError, InvalidRefinementError
from .lattice import IntMatrix, primitive
from .monoid import ToricMonoid

log = logging.getLogger("cornerforge")

KINDS = ("monoid", "map", "complex", "refinement")


class ValidationFailure(Exception):
    """Raised by a command whose input is well formed but fails a check."""

    def __init__(self, violations):
        self.violations = [str(v) for v in violations]
        super().__init__("; ".join(self.violations))


# -- documents ---------------------------------------------------------------


def _int_matrix_json(rows, what: str) -> list:
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise DocumentError(f"{what}: expected an array of integer arrays")
    out = []
    for r in rows:
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in r):
            raise DocumentError(f"{what}: entries must be integers")
        out.append(list(r))
    if len({len(r) for r in out}) > 1:
        raise DocumentError(f"{what}: ragged matrix")
    return out


def _name(x, what: str) -> str:
    if not isinstance(x, str):
        raise DocumentError(f"{what}: expected an entity name")
    return x


def _index(x, what: str) -> int:
    if not isinstance(x, int) or isinstance(x, bool) or x < 0:
        raise DocumentError(f"{what}: expected a non-negative integer")
    return x


def _normalize_monoid(name: str, rec) -> dict:
    if not isinstance(rec, dict) or set(rec) != {"rank", "rays"}:
        raise DocumentError(f"{name}: monoid records have exactly 'rank' and 'rays'")
    rank = _index(rec["rank"], f"{name}.rank")
    rays = _int_matrix_json(rec["rays"], f"{name}.rays")
    out = []
    for r in rays:
        if len(r) != rank:
            raise DocumentError(f"{name}.rays: ray {r} does not have length {rank}")
        if not any(r):
            raise DocumentError(f"{name}.rays: zero ray")
        p = list(primitive(tuple(r)))
        if p != r:
            log.warning("%s: ray %s is not primitive, using %s", name, r, p)
        out.append(p)
    return {"rank": rank, "rays": out}


def _normalize_map(name: str, rec) -> dict:
    if not isinstance(rec, dict) or set(rec) != {"domain", "codomain", "mu"}:
        raise DocumentError(f"{name}: map records have exactly 'domain', 'codomain' and 'mu'")
    return {
        "domain": _name(rec["domain"], f"{name}.domain"),
        "codomain": _name(rec["codomain"], f"{name}.codomain"),
        "mu": _int_matrix_json(rec["mu"], f"{name}.mu"),
    }


def _normalize_complex(name: str, rec) -> dict:
    if not isinstance(rec, dict):
        raise DocumentError(f"{name}: complex record must be an object")
    if set(rec) == {"face_complex"}:
        return {"face_complex": _name(rec["face_complex"], f"{name}.face_complex")}
    if set(rec) != {"objects", "arrows"}:
        raise DocumentError(f"{name}: complex records have 'objects' and 'arrows' (or 'face_complex')")
    if not isinstance(rec["objects"], list):
        raise DocumentError(f"{name}.objects: expected a list of names")
    objects = [_name(o, f"{name}.objects") for o in rec["objects"]]
    if not isinstance(rec["arrows"], list):
        raise DocumentError(f"{name}.arrows: expected a list")
    arrows = []
    for k, a in enumerate(rec["arrows"]):
        if not isinstance(a, dict) or set(a) != {"source", "target", "matrix"}:
            raise DocumentError(f"{name}.arrows[{k}]: expected source, target and matrix")
        arrows.append(
            {
                "source": _index(a["source"], f"{name}.arrows[{k}].source"),
                "target": _index(a["target"], f"{name}.arrows[{k}].target"),
                "matrix": _int_matrix_json(a["matrix"], f"{name}.arrows[{k}].matrix"),
            }
        )
    return {"objects": objects, "arrows": arrows}


def _normalize_refinement(name: str, rec) -> dict:
    if not isinstance(rec, dict):
        raise DocumentError(f"{name}: refinement record must be an object")
    if set(rec) == {"fan"}:
        fan = rec["fan"]
        if not isinstance(fan, dict) or not {"base", "cones"} <= set(fan) <= {"base", "cones", "dual"}:
            raise DocumentError(f"{name}.fan: expected 'base', 'cones' and optionally 'dual'")
        if not isinstance(fan["cones"], list):
            raise DocumentError(f"{name}.fan.cones: expected a list of ray lists")
        out = {
            "base": _name(fan["base"], f"{name}.fan.base"),
            "cones": [_int_matrix_json(c, f"{name}.fan.cones") for c in fan["cones"]],
        }
        if "dual" in fan:
            if not isinstance(fan["dual"], bool):
                raise DocumentError(f"{name}.fan.dual: expected a boolean")
            out["dual"] = fan["dual"]
        return {"fan": out}
    if set(rec) != {"source", "target", "assignment"}:
        raise DocumentError(f"{name}: refinement records have 'fan' or 'source', 'target', 'assignment'")
    if not isinstance(rec["assignment"], list):
        raise DocumentError(f"{name}.assignment: expected a list")
    assignment = []
    for k, a in enumerate(rec["assignment"]):
        if not isinstance(a, dict) or set(a) != {"target", "matrix"}:
            raise DocumentError(f"{name}.assignment[{k}]: expected target and matrix")
        assignment.append(
            {
                "target": _index(a["target"], f"{name}.assignment[{k}].target"),
                "matrix": _int_matrix_json(a["matrix"], f"{name}.assignment[{k}].matrix"),
            }
        )
    return {
        "source": _name(rec["source"], f"{name}.source"),
        "target": _name(rec["target"], f"{name}.target"),
        "assignment": assignment,
    }


_NORMALIZERS = {
    "monoid": _normalize_monoid,
    "map": _normalize_map,
    "complex": _normalize_complex,
    "refinement": _normalize_refinement,
}


def _references(kind: str, rec: dict) -> list:
    """(name, expected kinds) pairs referenced by a normalized record."""
    if kind == "map":
        return [(rec["domain"], ("monoid",)), (rec["codomain"], ("monoid",))]
    if kind == "complex":
        if "face_complex" in rec:
            return [(rec["face_complex"], ("monoid",))]
        return [(o, ("monoid",)) for o in rec["objects"]]
    if kind == "refinement":
        if "fan" in rec:
            return [(rec["fan"]["base"], ("monoid",))]
        return [(rec["source"], ("complex",)), (rec["target"], ("complex",))]
    return []


@dataclass
class Document:
    """A parsed, normalized document. Built objects are cached per entity."""

    entities: dict
    version: str = "1"
    _built: dict = field(default_factory=dict, repr=False, compare=False)

    def kind(self, name: str) -> str:
        if name not in self.entities:
            raise DocumentError(f"unknown entity {name!r}")
        return next(iter(self.entities[name]))

    def record(self, name: str) -> dict:
        return self.entities[name][self.kind(name)]

    def get(self, name: str, kind: Optional[str] = None):
        k = self.kind(name)
        if kind is not None and k != kind:
            raise DocumentError(f"entity {name!r} is a {k}, expected a {kind}")
        if name not in self._built:
            self._built[name] = getattr(self, f"_build_{k}")(name, self.record(name))
        return self._built[name]

    def _build_monoid(self, name, rec) -> ToricMonoid:
        return ToricMonoid(rec["rank"], rec["rays"])

    def _build_map(self, name, rec) -> MonomialMap:
        p, q = self.get(rec["domain"], "monoid"), self.get(rec["codomain"], "monoid")
        ncols = len(q.hilbert_basis)
        if len(rec["mu"]) != len(p.hilbert_basis) or any(len(r) != ncols for r in rec["mu"]):
            raise DocumentError(
                f"{name}.mu: expected a {len(p.hilbert_basis)}x{ncols} matrix "
                "(rows: domain Hilbert basis, columns: codomain Hilbert basis)"
            )
        try:
            return make_monomial_map(p, q, IntMatrix(rec["mu"], ncols))
        except CornerforgeError as exc:
            raise ValidationFailure([f"{name}: {exc}"]) from exc

    def _build_complex(self, name, rec) -> MonoidalComplex:
        if "face_complex" in rec:
            return face_complex_of_monoid(self.get(rec["face_complex"], "monoid"))
        objects = [self.get(o, "monoid") for o in rec["objects"]]
        arrows = []
        for k, a in enumerate(rec["arrows"]):
            s, t = a["source"], a["target"]
            if s >= len(objects) or t >= len(objects):
                raise DocumentError(f"{name}.arrows[{k}]: object index out of range")
            arrows.append(Arrow(s, t, _sized(a["matrix"], objects[t].rank, objects[s].rank, f"{name}.arrows[{k}]")))
        return MonoidalComplex(objects, arrows, rec["objects"])

    def _build_refinement(self, name, rec):
        """A Refinement for fan records, a bare ComplexMorphism otherwise."""
        if "fan" in rec:
            fan = rec["fan"]
            base = self.get(fan["base"], "monoid")
            if fan.get("dual"):
                base = base.decomposition.sharp.dual
            cones = []
            for c in fan["cones"]:
                if any(len(r) != base.rank for r in c):
                    raise DocumentError(f"{name}: cone rays must have length {base.rank}")
                cones.append(Cone(base.rank, c))
            try:
                return fan_refinement(base, cones)
            except InvalidRefinementError as exc:
                raise ValidationFailure(exc.violations) from exc
            except ValueError as exc:
                raise DocumentError(f"{name}: {exc}") from exc
        src, tgt = self.get(rec["source"], "complex"), self.get(rec["target"], "complex")
        if len(rec["assignment"]) != len(src.objects):
            raise DocumentError(f"{name}.assignment: one entry per source object is required")
        assignment = []
        for k, a in enumerate(rec["assignment"]):
            t = a["target"]
            if t >= len(tgt.objects):
                raise DocumentError(f"{name}.assignment[{k}]: target index out of range")
            m = _sized(a["matrix"], tgt.objects[t].rank, src.objects[k].rank, f"{name}.assignment[{k}]")
            assignment.append((t, m))
        return ComplexMorphism(src, tgt, assignment)


def _sized(rows: list, nrows: int, ncols: int, what: str) -> IntMatrix:
    if not rows and ncols == 0:
        rows = [[] for _ in range(nrows)]
    if len(rows) != nrows or any(len(r) != ncols for r in rows):
        raise DocumentError(f"{what}: expected a {nrows}x{ncols} matrix")
    return IntMatrix(rows, ncols)


def parse_document(text: str) -> Document:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"malformed JSON: {exc}") from exc
    if not isinstance(raw, dict) or set(raw) != {"version", "entities"}:
        raise DocumentError("a document has exactly 'version' and 'entities'")
    if raw["version"] != "1":
        raise DocumentError(f"unsupported document version {raw['version']!r}")
    if not isinstance(raw["entities"], dict):
        raise DocumentError("'entities' must be an object")
    entities = {}
    for name, body in raw["entities"].items():
        if not isinstance(body, dict) or len(body) != 1 or next(iter(body)) not in KINDS:
            raise DocumentError(f"{name}: an entity is a single record of kind {', '.join(KINDS)}")
        kind = next(iter(body))
        entities[name] = {kind: _NORMALIZERS[kind](name, body[kind])}
    doc = Document(entities)
    for name in entities:
        kind = doc.kind(name)
        for ref, expected in _references(kind, doc.record(name)):
            if ref not in entities:
                raise DocumentError(f"{name}: reference to unknown entity {ref!r}")
            if doc.kind(ref) not in expected:
                raise DocumentError(f"{name}: {ref!r} is a {doc.kind(ref)}, expected {' or '.join(expected)}")
    return doc


def serialize_document(doc: Document) -> str:
    return json.dumps({"version": doc.version, "entities": doc.entities}, sort_keys=True, indent=2) + "\n"


# -- report helpers ----------------------------------------------------------


def _m(mat: IntMatrix) -> list:
    return [list(r) for r in mat.rows]


def _vs(vectors) -> list:
    return [list(v) for v in vectors]


def _monoid_report(p: ToricMonoid) -> dict:
    return {
        "rank": p.rank,
        "rays": _vs(p.rays),
        "hilbert_basis": _vs(p.hilbert_basis),
        "dim": p.dim,
        "sharp": p.is_sharp(),
        "smooth": p.is_smooth(),
    }


_LETTERS = "uvwxyz"


def _var_names(n: int, prime: str = "") -> list:
    if n <= len(_LETTERS):
        return [c + prime for c in _LETTERS[:n]]
    return [f"u{i + 1}{prime}" for i in range(n)]


def _monomial(names, exps) -> str:
    parts = []
    for v, e in zip(names, exps):
        if e == 1:
            parts.append(v)
        elif e:
            parts.append(f"{v}^{e}")
    return "*".join(parts) if parts else "1"


def _columns_as_monomials(mat: IntMatrix, names) -> list:
    return [_monomial(names, col) for col in mat.columns]


def _monoid_entity(p: ToricMonoid) -> dict:
    return {"monoid": {"rank": p.rank, "rays": _vs(p.rays)}}


def _complex_fragment(c: MonoidalComplex, prefix: str) -> dict:
    """A document embedding ``c`` (one monoid entity per object) under ``prefix``."""
    entities = {}
    names = []
    for i, obj in enumerate(c.objects):
        n = f"{prefix}{i}"
        entities[n] = _monoid_entity(obj)
        names.append(n)
    entities[prefix] = {
        "complex": {
            "objects": names,
            "arrows": [{"source": a.source, "target": a.target, "matrix": _m(a.matrix)} for a in c.arrows],
        }
    }
    return {"version": "1", "entities": entities}


# -- commands ----------------------------------------------------------------


def _need(args, n: int) -> list:
    if len(args.entity) < n:
        raise DocumentError(f"{args.command} needs {n} --entity argument(s)")
    return args.entity


def cmd_dual(doc: Document, args) -> dict:
    p = doc.get(_need(args, 1)[0], "monoid")
    d = p.dual
    return {"monoid": _monoid_report(p), "dual": _monoid_report(d)}


def cmd_hilbert(doc: Document, args) -> dict:
    p = doc.get(_need(args, 1)[0], "monoid")
    pres = p._presentation
    return {
        "hilbert_basis": _vs(p.hilbert_basis),
        "units_rank": p.units.rank,
        "smooth": p.is_smooth(),
        "relations": [{"lhs": list(a), "rhs": list(b)} for a, b in pres.relations],
    }


def cmd_faces(doc: Document, args) -> dict:
    p = doc.get(_need(args, 1)[0], "monoid")
    faces, order = face_lattice_of_cone(p.cone)
    return {
        "faces": [
            {"index": i, "rays": _vs(f.cone.rays), "dim": f.cone.dim(), "codim": f.codim, "selector": list(f.selector)}
            for i, f in enumerate(faces)
        ],
        "order": [list(o) for o in order],
    }


def cmd_check_complex(doc: Document, args) -> dict:
    name = _need(args, 1)[0]
    if doc.kind(name) == "monoid":
        c = face_complex_of_monoid(doc.get(name))
    else:
        c = doc.get(name, "complex")
    violations = validate_complex(c)
    if violations:
        raise ValidationFailure(violations)
    return {"valid": True, "objects": len(c.objects), "arrows": len(c.arrows), "maximal": list(c.maximal_objects())}


def cmd_check_refinement(doc: Document, args) -> dict:
    r = doc.get(_need(args, 1)[0], "refinement")
    m = r.morphism if isinstance(r, Refinement) else r
    violations = check_refinement(m)
    if violations:
        raise ValidationFailure(violations)
    return {
        "valid": True,
        "source_objects": len(m.source.objects),
        "target_objects": len(m.target.objects),
        "assignment": [a[0] for a in m.assignment],
    }


def _fan_refinement(doc: Document, name: str) -> Refinement:
    r = doc.get(name, "refinement")
    if not isinstance(r, Refinement):
        raise DocumentError(f"{name}: this command needs a fan refinement")
    return r


def _atlas_report(atlas, seed: int) -> dict:
    base_names = _var_names(len(atlas.base.hilbert_basis), "")
    charts = []
    for k, ch in enumerate(atlas.charts):
        names = _var_names(len(ch.monoid.hilbert_basis), "'" * k)
        charts.append(
            {
                "index": k,
                "object": ch.index,
                "cone": _vs(ch.cone.rays),
                "hilbert_basis": _vs(ch.monoid.hilbert_basis),
                "blowdown": _m(ch.blowdown),
                "blowdown_formula": _columns_as_monomials(ch.blowdown, names),
                "group_det": ch.group_det,
                "smooth": ch.monoid.is_smooth(),
            }
        )
    gluings = []
    for g in atlas.gluings:
        a, b = g.charts
        na = _var_names(len(atlas.charts[a].monoid.hilbert_basis), "'" * a)
        nb = _var_names(len(atlas.charts[b].monoid.hilbert_basis), "'" * b)
        gluings.append(
            {
                "charts": [a, b],
                "intersection": _vs(g.intersection.rays),
                "localized_generators": _vs(g.localized.hilbert_basis),
                "localized_agree": g.localized_agree,
                "transition": _m(g.transition),
                "transition_formula": [
                    f"{v} = {e}" for v, e in zip(nb, _columns_as_monomials(g.transition, na))
                ],
                "unimodular": g.transition_unimodular,
                "separating": list(g.separating) if g.separating is not None else None,
            }
        )
    check = numeric_roundtrip(atlas, samples=100, seed=seed)
    return {
        "base": _monoid_report(atlas.base),
        "base_variables": base_names,
        "charts": charts,
        "gluings": gluings,
        "blowup_complex": _complex_fragment(atlas.blowup_complex, "B"),
        "beta": [{"target": t, "matrix": _m(mat)} for t, mat in atlas.beta.assignment],
        "numeric": {"samples": check.samples, "max_rel_error": check.max_rel_error, "ok": check.ok()},
    }


def _blowup_inputs(doc: Document, args):
    names = _need(args, 2)
    p = doc.get(names[0], "monoid")
    r = _fan_refinement(doc, names[1])
    return p, r


def cmd_blowup(doc: Document, args) -> dict:
    p, r = _blowup_inputs(doc, args)
    try:
        atlas = blowup_atlas(p, r)
    except InvalidRefinementError as exc:
        raise ValidationFailure(exc.violations) from exc
    return _atlas_report(atlas, args.seed)


def cmd_resolve(doc: Document, args) -> dict:
    p = doc.get(_need(args, 1)[0], "monoid")
    if not p.is_sharp() or not p.cone.is_full():
        raise DocumentError("resolve needs a sharp, full-dimensional monoid")
    r = resolve(p)
    atlas = blowup_atlas(p.dual, r)
    return {
        "cones": [_vs(c.rays) for c in r.cones],
        "charts": [
            {"cone": _vs(ch.cone.rays), "hilbert_basis": _vs(ch.monoid.hilbert_basis), "smooth": ch.monoid.is_smooth()}
            for ch in atlas.charts
        ],
        "all_smooth": all(ch.monoid.is_smooth() for ch in atlas.charts),
    }


def _map_and_refinement(doc: Document, args):
    names = _need(args, 2)
    f = doc.get(names[0], "map")
    r = _fan_refinement(doc, names[1])
    if r.base != f.codomain.dual:
        raise DocumentError("the refinement must refine the dual of the map's codomain")
    return f, r


def cmd_lift(doc: Document, args) -> dict:
    f, r = _map_and_refinement(doc, args)
    try:
        lf = lift(f, r)
    except FactorizationError as exc:
        raise ValidationFailure([str(exc)]) from exc
    err = numeric_lift_check(lf, f, samples=100, seed=args.seed)
    ch = lf.atlas.charts[lf.chart]
    return {
        "chart": lf.chart,
        "chart_cone": _vs(ch.cone.rays),
        "chart_hilbert_basis": _vs(ch.monoid.hilbert_basis),
        "cell": _vs(r.fan_faces[lf.cell].rays),
        "mu": _m(lf.mu),
        "numeric": {"max_rel_error": err, "ok": err <= 1e-12},
    }


def cmd_pullback(doc: Document, args) -> dict:
    f, r = _map_and_refinement(doc, args)
    pb = pullback_refinement(f.dual_hom, r)
    return {
        "cones": [_vs(c.rays) for c in pb.refinement.cones],
        "trivial": pb.refinement.is_trivial(),
        "unique": pb.unique,
        "square_commutes": pb.square_commutes,
        "induced": [{"target": t, "matrix": _m(m)} for t, m in pb.induced.assignment],
    }


def _parse_point(text: str, n: int) -> list:
    try:
        vals = [float(x) for x in text.replace(",", " ").split()]
    except ValueError as exc:
        raise DocumentError(f"--point: {exc}") from exc
    if len(vals) != n:
        raise DocumentError(f"--point: expected {n} coordinates")
    return vals


def cmd_eval(doc: Document, args) -> dict:
    f = doc.get(_need(args, 1)[0], "map")
    p = f.domain
    n = len(p.hilbert_basis)
    if args.point is not None:
        points = [_parse_point(args.point, n)]
    else:
        rng = np.random.default_rng(args.seed)
        h = np.array(p.hilbert_basis, float).reshape(n, p.rank)
        points = [list(np.exp(h @ rng.normal(scale=0.5, size=p.rank))) for _ in range(3)]
    out = []
    for x in points:
        try:
            y = evaluate(f, x)
        except ValueError as exc:
            raise ValidationFailure([str(exc)]) from exc
        out.append({"x": [float(v) for v in x], "y": [float(v) for v in y]})
    return {"points": out, "b_etale": is_b_etale(f)}


COMMANDS = {
    "dual": cmd_dual,
    "hilbert": cmd_hilbert,
    "faces": cmd_faces,
    "check-complex": cmd_check_complex,
    "check-refinement": cmd_check_refinement,
    "blowup": cmd_blowup,
    "lift": cmd_lift,
    "pullback": cmd_pullback,
    "resolve": cmd_resolve,
    "eval": cmd_eval,
}


# -- rendering ---------------------------------------------------------------


def _scalar(x) -> str:
    if isinstance(x, float) and not math.isfinite(x):
        raise ValueError("non-finite number in report")
    return json.dumps(x)


def _is_flat(x) -> bool:
    if isinstance(x, list):
        return all(_is_flat(y) for y in x) and not any(isinstance(y, dict) for y in x)
    return not isinstance(x, dict)


def render_text(obj: Any, indent: int = 0) -> str:
    """Indented key/value view; keys sorted as in the JSON output."""
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            if _is_flat(v):
                lines.append(f"{pad}{k}: {json.dumps(v)}")
            else:
                lines.append(f"{pad}{k}:")
                lines.append(render_text(v, indent + 1))
    elif isinstance(obj, list):
        for v in obj:
            if _is_flat(v):
                lines.append(f"{pad}- {json.dumps(v)}")
            else:
                lines.append(f"{pad}-")
                lines.append(render_text(v, indent + 1))
    else:
        lines.append(pad + _scalar(obj))
    return "\n".join(line for line in lines if line)


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    return render_text(report) + "\n"


# -- entry point -------------------------------------------------------------


def _configure_logging() -> None:
    level = os.environ.get("CORNERFORGE_LOG", "").strip().lower()
    levels = {"off": logging.CRITICAL + 1, "info": logging.INFO, "debug": logging.DEBUG}
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("cornerforge: %(levelname)s: %(message)s"))
    root = logging.getLogger("cornerforge")
    root.handlers[:] = [handler]
    root.setLevel(levels.get(level, logging.WARNING))
    root.propagate = False


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cornerforge", description="Toric monoids, monoidal complexes and blow-ups.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("--input", "-i", help="input document (default: standard input)")
    ap.add_argument("--output", "-o", help="output file (default: standard output)")
    ap.add_argument("--format", choices=("text", "json"), default="text")
    ap.add_argument("--entity", "-e", action="append", default=[], help="entity name; repeat as needed")
    ap.add_argument("--seed", type=int, default=0, help="seed for numeric sampling")
    ap.add_argument("--point", help="evaluation point for eval, e.g. '2,3'")
    return ap


class _ArgError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _ArgError(message)


def _run(argv) -> tuple:
    ap = build_parser()
    ap.__class__ = _Parser
    try:
        args = ap.parse_args(argv)
    except _ArgError as exc:
        return 2, f"error: {exc}\n", None
    try:
        if args.input:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        else:
            text = sys.stdin.read()
        doc = parse_document(text)
        report = COMMANDS[args.command](doc, args)
    except ValidationFailure as exc:
        payload = {"valid": False, "violations": exc.violations}
        return 1, render(payload, args.format), args.output
    except (CornerforgeError, OSError, UnicodeDecodeError) as exc:
        return 2, f"error: {exc}\n", None
    return 0, render(report, args.format), args.output


def run_command(argv) -> tuple:
    """Run one command; returns (exit code, output text)."""
    code, out, _ = _run(argv)
    return code, out


def main(argv=None) -> int:
    _configure_logging()
    code, out, dest = _run(sys.argv[1:] if argv is None else argv)
    if code == 2:
        sys.stderr.write(out)
    elif dest:
        with open(dest, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
