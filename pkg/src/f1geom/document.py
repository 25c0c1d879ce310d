"""JSON presentation documents: strict parsing, canonical serialization.

A document is a JSON object with a ``kind`` of ``monoid``, ``blueprint``,
``scheme``, ``f1swr`` or ``bobject``.  Examples::

    {"kind": "monoid", "generators": ["T"], "relations": []}
    {"kind": "blueprint", "generators": ["T1", "T2", "T3", "T4"],
     "relations": ["T1 + T2 = T3 + T4"], "coefficient_ring": "Z"}

Schema violations and relation syntax errors are reported as ``ParseError``
with the line and column of the offending value in the source text.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path

import jsonschema

from .blueprint import INTEGERS, NATURALS, Blueprint, RingPresentation
from .category import FiniteBObject
from .errors import InputError, ParseError, ValidationError
from .finite import FiniteMonoid
from .monoid import DEFAULT_DEGREE_BOUND, MonoidPresentation, PrimeIdeal, format_monomial, localize
from .schemes import AffinePiece, F1SchemeWithRelations, GluedScheme, Gluing
from .syntax import format_side, parse_monomial, parse_monomial_relation, parse_poly_relation, parse_side

KINDS = ("monoid", "blueprint", "scheme", "f1swr", "bobject")

_NAME = {"type": "string", "pattern": r"^[A-Za-z_][A-Za-z0-9_]*$"}
_NAMES = {"type": "array", "items": _NAME}
_STRINGS = {"type": "array", "items": {"type": "string"}}
_BOUND = {"type": "integer", "minimum": 1}

_BLUEPRINT_FIELDS = {
    "generators": _NAMES,
    "monoid_relations": _STRINGS,
    "relations": _STRINGS,
    "coefficient_ring": {"enum": [NATURALS, INTEGERS]},
    "degree_bound": _BOUND,
}

_CHART = {
    "type": "object",
    "properties": {"name": _NAME, **_BLUEPRINT_FIELDS},
    "required": ["name", "generators"],
    "additionalProperties": False,
}

_GLUING = {
    "type": "object",
    "properties": {
        "charts": {"type": "array", "items": _NAME, "minItems": 2, "maxItems": 2},
        "prime_i": _NAMES,
        "prime_j": _NAMES,
        "forward": {"type": "object", "additionalProperties": {"type": "string"}},
        "backward": {"type": "object", "additionalProperties": {"type": "string"}},
    },
    "required": ["charts", "forward", "backward"],
    "additionalProperties": False,
}

_SCHEME_FIELDS = {
    "charts": {"type": "array", "items": _CHART, "minItems": 1},
    "gluings": {"type": "array", "items": _GLUING},
}

SCHEMAS = {
    "monoid": {
        "properties": {"generators": _NAMES, "relations": _STRINGS, "degree_bound": _BOUND},
        "required": ["generators"],
    },
    "blueprint": {"properties": dict(_BLUEPRINT_FIELDS), "required": ["generators"]},
    "scheme": {"properties": dict(_SCHEME_FIELDS), "required": ["charts"]},
    "f1swr": {
        "properties": {
            **_SCHEME_FIELDS,
            "ring": {
                "type": "object",
                "properties": {"generators": _NAMES, "relations": _STRINGS},
                "required": ["generators"],
                "additionalProperties": False,
            },
            "phi": {
                "type": "object",
                "additionalProperties": {"type": "object", "additionalProperties": {"type": "string"}},
            },
        },
        "required": ["charts"],
    },
    "bobject": {
        "properties": {
            "carrier": {"type": "array", "items": {"type": "string"}, "minItems": 1},
            "elements": {"type": "array", "items": {"type": "string"}},
            "table": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
            "images": {"type": "array", "items": {"type": "integer"}},
        },
        "required": ["carrier", "table", "images"],
    },
}
for _kind, _schema in SCHEMAS.items():
    _schema["type"] = "object"
    _schema["properties"] = {"kind": {"const": _kind}, "name": {"type": "string"}, **_schema["properties"]}
    _schema["additionalProperties"] = False


@dataclass(frozen=True)
class PresentationDocument:
    kind: str
    value: object
    name: str = ""

    def to_dict(self) -> dict:
        return serialize(self)

    def dumps(self) -> str:
        return dumps(self)


# -- locating positions in the source ----------------------------------------------


def _position(text: str, offset: int) -> tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


def _locate(text: str, path, leaf=None) -> tuple[int | None, int | None]:
    """Best-effort (line, column) of the JSON value at ``path``; ``leaf`` is a string to find inside it."""
    if text is None:
        return None, None
    offset = 0
    for key in path:
        if isinstance(key, str):
            m = re.compile(re.escape(json.dumps(key)) + r"\s*:\s*").search(text, offset)
            if m is None:
                break
            offset = m.end()
    if leaf is not None:
        hit = text.find(json.dumps(leaf)[1:-1], offset)
        if hit >= 0:
            offset = hit
    return _position(text, offset)


class _Context:
    def __init__(self, text, source):
        self.text = text
        self.source = source

    def fail(self, message, path=(), leaf=None, column_in_leaf=None):
        line, col = _locate(self.text, path, leaf)
        if col is not None and column_in_leaf is not None:
            col += column_in_leaf - 1
        where = "/".join(str(p) for p in path)
        raise ParseError(f"{where}: {message}" if where else message, line, col, self.source)

    def parse(self, fn, text, gens, path, *args):
        try:
            return fn(text, gens, *args)
        except ParseError as exc:
            self.fail(exc.message, path, text, exc.column)
        except InputError as exc:
            self.fail(str(exc), path, text)


# -- parsing ---------------------------------------------------------------------------


def loads(text: str, source: str | None = None) -> PresentationDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno, source) from None
    return from_dict(data, text=text, source=source)


def load(path) -> PresentationDocument:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror}", path=str(path)) from None
    return loads(text, str(path))


def from_dict(data, text: str | None = None, source: str | None = None) -> PresentationDocument:
    ctx = _Context(text, source)
    if not isinstance(data, dict):
        ctx.fail("a presentation document must be a JSON object")
    kind = data.get("kind")
    if kind not in SCHEMAS:
        ctx.fail(f"kind must be one of {', '.join(KINDS)}", ("kind",))
    errors = sorted(jsonschema.Draft202012Validator(SCHEMAS[kind]).iter_errors(data), key=lambda e: [str(p) for p in e.path])
    if errors:
        err = errors[0]
        path = tuple(err.path)
        if err.validator == "additionalProperties":
            extra = sorted(set(err.instance) - set(err.schema.get("properties", {})))
            if extra:
                ctx.fail(f"unknown key {extra[0]!r}", path + (extra[0],))
        ctx.fail(err.message, path)
    name = data.get("name", "")
    try:
        value = _BUILDERS[kind](data, ctx)
    except ParseError:
        raise
    except InputError as exc:
        ctx.fail(str(exc))
    return PresentationDocument(kind, value, name)


def _monoid(data, ctx, path=()):
    gens = tuple(data["generators"])
    rels = tuple(
        ctx.parse(parse_monomial_relation, r, gens, path + ("relations",)) for r in data.get("relations", ())
    )
    return MonoidPresentation(gens, rels, data.get("degree_bound", DEFAULT_DEGREE_BOUND))


def _blueprint(data, ctx, path=()):
    gens = tuple(data["generators"])
    ring = data.get("coefficient_ring", INTEGERS)
    mrels = tuple(
        ctx.parse(parse_monomial_relation, r, gens, path + ("monoid_relations",))
        for r in data.get("monoid_relations", ())
    )
    prels = tuple(
        ctx.parse(parse_poly_relation, r, gens, path + ("relations",), ring == INTEGERS)
        for r in data.get("relations", ())
    )
    monoid = MonoidPresentation(gens, mrels, data.get("degree_bound", DEFAULT_DEGREE_BOUND))
    return Blueprint(monoid, prels, ring)


def _prime(names, pres, ctx, path):
    for g in names:
        if g not in pres.generators:
            ctx.fail(f"unknown generator {g!r} in prime", path, g)
    return PrimeIdeal(tuple(sorted(names, key=pres.index)))


def _scheme(data, ctx):
    charts, index = [], {}
    for k, c in enumerate(data["charts"]):
        if c["name"] in index:
            ctx.fail(f"duplicate chart name {c['name']!r}", ("charts",), c["name"])
        index[c["name"]] = k
        charts.append(AffinePiece(_blueprint(c, ctx, ("charts",)), c["name"]))
    gluings = []
    for g in data.get("gluings", ()):
        for c in g["charts"]:
            if c not in index:
                ctx.fail(f"unknown chart {c!r}", ("gluings", "charts"), c)
        i, j = (index[c] for c in g["charts"])
        pi = _prime(g.get("prime_i", ()), charts[i].monoid, ctx, ("gluings", "prime_i"))
        pj = _prime(g.get("prime_j", ()), charts[j].monoid, ctx, ("gluings", "prime_j"))
        li, lj = localize(charts[i].monoid, pi), localize(charts[j].monoid, pj)

        def side(mapping, src, dst, key):
            out = []
            for gen, img in sorted(mapping.items(), key=lambda kv: src.index(kv[0]) if kv[0] in src.generators else -1):
                if gen not in src.generators:
                    ctx.fail(f"unknown generator {gen!r}", ("gluings", key, gen))
                out.append((gen, ctx.parse(parse_monomial, img, dst.generators, ("gluings", key, gen))))
            return tuple(out)

        gluings.append(Gluing(i, j, pi, pj, side(g["forward"], li, lj, "forward"), side(g["backward"], lj, li, "backward")))
    return GluedScheme(tuple(charts), tuple(gluings), data.get("name", ""))


def _f1swr(data, ctx):
    scheme = _scheme(data, ctx)
    ring = None
    if "ring" in data:
        rgens = tuple(data["ring"]["generators"])
        polys = []
        for r in data["ring"].get("relations", ()):
            lhs, rhs = ctx.parse(parse_poly_relation, r, rgens, ("ring", "relations"))
            diff = {}
            for c, m in lhs:
                diff[m] = diff.get(m, 0) + c
            for c, m in rhs:
                diff[m] = diff.get(m, 0) - c
            polys.append(tuple((c, m) for m, c in diff.items() if c))
        ring = RingPresentation(rgens, tuple(polys))
    phi = None
    if "phi" in data:
        if ring is None:
            ctx.fail("phi needs a ring", ("phi",))
        names = [c.name for c in scheme.charts]
        per_chart = []
        for k, chart in enumerate(scheme.charts):
            images = data["phi"].get(chart.name)
            if images is None:
                ctx.fail(f"phi has no entry for chart {chart.name!r}", ("phi",))
            if set(images) != set(ring.generators):
                ctx.fail("phi must give exactly one image per ring generator", ("phi", chart.name))
            per_chart.append(
                tuple(
                    tuple(ctx.parse(parse_side, images[g], chart.monoid.generators, ("phi", chart.name, g)))
                    for g in ring.generators
                )
            )
        extra = sorted(set(data["phi"]) - set(names))
        if extra:
            ctx.fail(f"phi names unknown chart {extra[0]!r}", ("phi", extra[0]))
        phi = tuple(per_chart)
    f = F1SchemeWithRelations(scheme, ring, phi)
    if phi is not None:
        for k in range(len(scheme.charts)):
            f.check_phi(k)
    return f


def _bobject(data, ctx):
    names = tuple(data["elements"]) if "elements" in data else None
    try:
        monoid = FiniteMonoid(tuple(tuple(r) for r in data["table"]), names)
    except ValidationError as exc:
        ctx.fail(str(exc), ("table",))
    if any(not 0 <= i < monoid.size for i in data["images"]):
        ctx.fail("image index out of range", ("images",))
    return FiniteBObject(tuple(data["carrier"]), monoid, tuple(data["images"]))


_BUILDERS = {"monoid": _monoid, "blueprint": _blueprint, "scheme": _scheme, "f1swr": _f1swr, "bobject": _bobject}


# -- serialization -----------------------------------------------------------------------


def _format_rel(l, r, gens):
    return f"{format_monomial(l, gens)} = {format_monomial(r, gens)}"


def _monoid_dict(m: MonoidPresentation) -> dict:
    out = {"generators": list(m.generators), "relations": [_format_rel(l, r, m.generators) for l, r in m.relations]}
    if m.degree_bound != DEFAULT_DEGREE_BOUND:
        out["degree_bound"] = m.degree_bound
    return out


def _blueprint_dict(bp: Blueprint) -> dict:
    m = bp.monoid
    out = {
        "generators": list(m.generators),
        "monoid_relations": [_format_rel(l, r, m.generators) for l, r in m.relations],
        "relations": bp.format_relations(),
        "coefficient_ring": bp.coefficient_ring,
    }
    if m.degree_bound != DEFAULT_DEGREE_BOUND:
        out["degree_bound"] = m.degree_bound
    return out


def _chart_name(s: GluedScheme, k: int) -> str:
    return s.charts[k].name or f"U{k}"


def _scheme_dict(s: GluedScheme) -> dict:
    charts = [{"name": _chart_name(s, k), **_blueprint_dict(c.blueprint)} for k, c in enumerate(s.charts)]
    gluings = []
    for g in s.gluings:
        li = localize(s.charts[g.i].monoid, g.prime_i)
        lj = localize(s.charts[g.j].monoid, g.prime_j)
        gluings.append(
            {
                "charts": [_chart_name(s, g.i), _chart_name(s, g.j)],
                "prime_i": list(g.prime_i.generator_subset),
                "prime_j": list(g.prime_j.generator_subset),
                "forward": {gen: format_monomial(m, lj.generators) for gen, m in g.forward},
                "backward": {gen: format_monomial(m, li.generators) for gen, m in g.backward},
            }
        )
    return {"charts": charts, "gluings": gluings}


def _f1swr_dict(f: F1SchemeWithRelations) -> dict:
    out = _scheme_dict(f.scheme)
    if f.cc_ring is not None:
        ring = f.cc_ring
        out["ring"] = {
            "generators": list(ring.generators),
            "relations": [f"{format_side(p, ring.generators)} = 0" for p in ring.relations],
        }
    if f.phi is not None:
        out["phi"] = {
            _chart_name(f.scheme, k): {
                g: format_side(poly, f.scheme.charts[k].monoid.generators)
                for g, poly in zip(f.cc_ring.generators, chart)
            }
            for k, chart in enumerate(f.phi)
        }
    return out


def _bobject_dict(b: FiniteBObject) -> dict:
    out = {"carrier": list(b.carrier), "table": [list(r) for r in b.monoid.table], "images": list(b.images)}
    if b.monoid.names is not None:
        out["elements"] = list(b.monoid.names)
    return out


_SERIALIZERS = {
    "monoid": _monoid_dict,
    "blueprint": _blueprint_dict,
    "scheme": _scheme_dict,
    "f1swr": _f1swr_dict,
    "bobject": _bobject_dict,
}


def serialize(doc: PresentationDocument) -> dict:
    out = {"kind": doc.kind}
    if doc.name:
        out["name"] = doc.name
    out.update(_SERIALIZERS[doc.kind](doc.value))
    return out


def dumps(doc: PresentationDocument) -> str:
    return json.dumps(serialize(doc), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def bundled() -> list[Path]:
    """Paths of the example presentations shipped with the package."""
    return sorted((Path(__file__).parent / "presentations").glob("*.json"))


def as_blueprint(doc: PresentationDocument) -> Blueprint:
    if doc.kind == "monoid":
        return Blueprint(doc.value)
    if doc.kind == "blueprint":
        return doc.value
    raise ValidationError(f"expected a monoid or blueprint document, got {doc.kind}")


def as_scheme(doc: PresentationDocument) -> GluedScheme:
    if doc.kind in ("monoid", "blueprint"):
        return GluedScheme.affine(as_blueprint(doc), doc.name)
    if doc.kind == "scheme":
        return doc.value
    if doc.kind == "f1swr":
        return doc.value.scheme
    raise ValidationError(f"expected a presentation of a scheme, got {doc.kind}")


def as_f1swr(doc: PresentationDocument) -> F1SchemeWithRelations:
    if doc.kind == "f1swr":
        return doc.value
    return F1SchemeWithRelations(as_scheme(doc))


__all__ = [
    "KINDS",
    "PresentationDocument",
    "as_blueprint",
    "as_f1swr",
    "as_scheme",
    "bundled",
    "dumps",
    "from_dict",
    "load",
    "loads",
    "serialize",
]
