"""Command line interface.

    f1geom spec FILE
    f1geom count FILE --mode Q --n 1..4
    f1geom zeta FILE --p 3 --order 8
    f1geom hom FILE --n 3
    f1geom adjoint-check --suite small
    f1geom tensor FILE1 FILE2
    f1geom psi FILE --q 2

Every command prints aligned text by default and canonical JSON with
``--json``.  Exit status: 0 when every checked property holds, 1 on an
assertion failure, 2 on bad input, 3 when a bound or cap is exceeded.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import document
from .blueprint import format_assignment, hom_B, validate_blueprint
from .category import check_tensor_hom, find_isomorphism, small_objects, tensor_B, unit_for
from .counting import zeta_report
from .errors import F1Error, InputError, NotTorsionFree, ParseError
from .functors import adjunction_suite_F_G, adjunction_suite_rho_sigma, random_rho_sigma_pairs
from .monoid import enumerate_primes, unit_group
from .schemes import P_polynomial, check_Q_le_P, is_torsion_free, points, psi1_injectivity, psi2_point_sets

OK, FAILED, BAD_INPUT, BOUND = 0, 1, 2, 3


class Result:
    def __init__(self, payload: dict, lines: list[str], ok: bool = True):
        self.payload = payload
        self.lines = lines
        self.ok = ok


def _group(g) -> dict:
    return {"rank": g.rank, "torsion": list(g.invariant_factors)}


def _group_text(g) -> str:
    parts = ["Z" if g.rank == 1 else f"Z^{g.rank}"] if g.rank else []
    parts += [f"Z/{d}" for d in g.invariant_factors]
    return " x ".join(parts) or "1"


def _parse_range(text: str) -> list[int]:
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError:
        raise InputError(f"--n expects a..b or a single integer, got {text!r}") from None
    if lo < 1 or hi < lo:
        raise InputError(f"--n range {text!r} must satisfy 1 <= a <= b")
    return list(range(lo, hi + 1))


def _load(path: str, degree_bound: int | None):
    if degree_bound is None:
        return document.load(path)
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
        data = json.loads(text)
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror}", path=path) from None
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno, path) from None
    if isinstance(data, dict):
        if data.get("kind") in ("monoid", "blueprint"):
            data["degree_bound"] = degree_bound
        for chart in data.get("charts", ()) if isinstance(data.get("charts"), list) else ():
            if isinstance(chart, dict):
                chart["degree_bound"] = degree_bound
    return document.from_dict(data, text=text, source=path)


# -- commands ---------------------------------------------------------------------


def cmd_spec(args) -> Result:
    doc = _load(args.file, args.degree_bound)
    if doc.kind in ("monoid", "blueprint"):
        pres = document.as_blueprint(doc).monoid
        rows = []
        for p in enumerate_primes(pres):
            rows.append({"prime": list(p.generator_subset), "face": list(p.face(pres)), "units": _group(unit_group(pres, p))})
        lines = [f"{len(rows)} primes"]
        width = max(len(p.label()) for p in enumerate_primes(pres))
        for p in enumerate_primes(pres):
            lines.append(f"  {p.label():<{width}}  units {_group_text(unit_group(pres, p))}")
        return Result({"primes": rows}, lines)
    s = document.as_scheme(doc)
    pts = points(s)
    rows = [{"point": pt.label(), "units": _group(pt.unit_structure)} for pt in pts]
    width = max(len(r["point"]) for r in rows)
    lines = [f"{len(rows)} points"] + [f"  {pt.label():<{width}}  units {_group_text(pt.unit_structure)}" for pt in pts]
    return Result({"points": rows}, lines)


def cmd_count(args) -> Result:
    doc = _load(args.file, args.degree_bound)
    s = document.as_scheme(doc)
    ns = _parse_range(args.n)
    table = check_Q_le_P(s, ns)
    labels = [pt.label() for pt in points(s)] + ["total"]
    get = {(r.point, r.n): r for r in table.rows}
    payload = {"mode": args.mode, "n": ns}
    ok = True
    lines = []
    width = max(len(lab) for lab in labels)
    if args.mode == "P":
        try:
            fit = P_polynomial(s)
            payload["polynomial"] = list(fit.polynomial.coefficients)
            lines.append(f"P(n) = {fit.polynomial}")
        except NotTorsionFree as exc:
            payload["polynomial"] = None
            payload["not_polynomial"] = {"witness": exc.witness, "reason": str(exc)}
            lines.append(f"P is not polynomial: {exc} (witness n = {exc.witness})")
            ok = False
        payload["rows"] = [{"point": lab, "P": [get[lab, n].P for n in ns]} for lab in labels]
        lines.append(f"{'point':<{width}}  " + "  ".join(f"n={n:<6}" for n in ns))
        for lab in labels:
            lines.append(f"{lab:<{width}}  " + "  ".join(f"{get[lab, n].P:<8}" for n in ns))
    else:
        rep = is_torsion_free(s)
        rows = []
        for lab in labels:
            poly = rep.b_level.get(lab) if lab != "total" else None
            row = {
                "point": lab,
                "P": [get[lab, n].P for n in ns],
                "Q": [get[lab, n].Q for n in ns],
                "margin": [get[lab, n].margin for n in ns],
            }
            if lab != "total":
                row["Q_polynomial"] = list(poly.coefficients) if poly else None
            rows.append(row)
        payload["rows"] = rows
        payload["Q_le_P"] = table.ok
        ok = table.ok
        lines.append(f"{'point':<{width}}  " + "  ".join(f"n={n:<10}" for n in ns) + "  Q(n)")
        for lab in labels:
            cells = "  ".join(f"{get[lab, n].Q:>4}/{get[lab, n].P:<7}" for n in ns)
            poly = rep.b_level.get(lab)
            lines.append(f"{lab:<{width}}  {cells}  {poly if poly else ('' if lab == 'total' else 'not polynomial')}")
        lines.append("cells are Q/P; Q <= P " + ("holds" if table.ok else f"FAILS at {len(table.failures())} cells"))
    return Result(payload, lines, ok)


def _frac(c: Fraction):
    return int(c) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def cmd_zeta(args) -> Result:
    doc = _load(args.file, args.degree_bound)
    s = document.as_scheme(doc)
    rep = zeta_report(s, args.p, args.order, args.mode)
    coeffs = [_frac(c) for c in rep.series.coefficients]
    payload = {"p": args.p, "order": args.order, "mode": args.mode, "counts": rep.counts, "coefficients": coeffs}
    lines = [f"N_n for n = 1..{args.order}: {', '.join(map(str, rep.counts))}"]
    lines.append(f"Z(T) = {' + '.join(f'{c}T^{k}' if k else str(c) for k, c in enumerate(coeffs))} + O(T^{args.order + 1})")
    if rep.guess is not None:
        payload["rational_guess"] = {"numerator": [_frac(c) for c in rep.guess.numerator],
                                     "denominator": [_frac(c) for c in rep.guess.denominator],
                                     "label": rep.guess.label}
        lines.append(f"rational guess ({rep.guess.label}): {rep.guess}")
    if rep.experimental:
        payload["experimental"] = True
        lines.append("Q-mode is experimental")
    return Result(payload, lines)


def cmd_hom(args) -> Result:
    doc = _load(args.file, args.degree_bound)
    bp = document.as_blueprint(doc)
    if args.n < 1:
        raise InputError("--n must be positive")
    buckets = hom_B(bp, args.n)
    rows = []
    for p in sorted(buckets):
        rows.append({
            "prime": list(p.generator_subset),
            "count": len(buckets[p]),
            "morphisms": [format_assignment(bp.monoid, a) for a in buckets[p]],
        })
    total = sum(r["count"] for r in rows)
    width = max((len(p.label()) for p in buckets), default=2)
    lines = [f"{total} morphisms into F_1^{args.n} compatible with the relations"]
    lines += [f"  {p.label():<{width}}  {len(buckets[p])}" for p in sorted(buckets)]
    report = validate_blueprint(bp)
    lines.append(f"blueprint validation: {report.status}")
    return Result({"n": args.n, "total": total, "by_prime": rows, "validation": report.status}, lines)


def _rate(results) -> tuple[int, int]:
    return sum(1 for r in results if r.ok), len(results)


def cmd_adjoint_check(args) -> Result:
    full = args.suite == "full"
    fg = adjunction_suite_F_G(4)
    rs = adjunction_suite_rho_sigma() + random_rho_sigma_pairs(20 if not full else 100, seed=args.seed)
    objs = small_objects() if full else tuple(o for o in small_objects() if o.size <= 2)
    th = [check_tensor_hom(a, b, c) for a, b, c in itertools.product(objs, repeat=3)]
    stats = {"F_G": _rate(fg), "rho_sigma": _rate(rs), "tensor_hom": _rate(th)}

    def pct(k):
        good, total = stats[k]
        return f"{100 * good / total:g}%"

    lines = [
        f"F⊣G: {pct('F_G')} hom-count matches; ρ⊣σ: {pct('rho_sigma')}; ⊗⊣Hom: {pct('tensor_hom')}",
        "  " + ", ".join(f"{k} {g}/{t}" for k, (g, t) in stats.items()),
    ]
    ok = all(g == t for g, t in stats.values())
    payload = {"suite": args.suite, "seed": args.seed,
               **{k: {"matches": g, "total": t} for k, (g, t) in stats.items()}}
    return Result(payload, lines, ok)


def cmd_tensor(args) -> Result:
    docs = [_load(f, args.degree_bound) for f in (args.file1, args.file2)]
    for d, f in zip(docs, (args.file1, args.file2)):
        if d.kind != "bobject":
            raise InputError(f"{f}: tensor needs bobject documents, got {d.kind}")
    a, b = (d.value for d in docs)
    t = tensor_B(a, b)
    out = document.PresentationDocument("bobject", t.obj, "tensor")
    unit = unit_for(a, b)
    iso = {
        "first": find_isomorphism(t.obj, a) is not None,
        "second": find_isomorphism(t.obj, b) is not None,
        "unit": find_isomorphism(t.obj, unit) is not None,
    }
    payload = {"tensor": document.serialize(out), "raw_size": t.raw_size, "isomorphic_to": iso}
    lines = [f"tensor: {t.obj.describe()}"]
    lines += [f"  isomorphic to {k}: {'yes' if v else 'no'}" for k, v in iso.items()]
    lines += document.dumps(out).rstrip().splitlines()
    return Result(payload, lines)


def cmd_psi(args) -> Result:
    doc = _load(args.file, args.degree_bound)
    f = document.as_f1swr(doc)
    rows, lines, ok = [], [], True
    for c, chart in enumerate(f.scheme.charts):
        r1 = psi1_injectivity(f, args.q, c)
        r2 = psi2_point_sets(f, args.q, c)
        ok = ok and r1.injective and r2.bijective
        name = chart.name or f"U{c}"
        rows.append({
            "chart": name,
            "psi1": {"source": r1.source, "target": r1.target, "image": r1.image, "injective": r1.injective},
            "psi2": {"left": len(r2.left), "right": len(r2.right), "bijective": r2.bijective},
        })
        mark1 = "injective" if r1.injective else "NOT injective"
        mark2 = "bijective" if r2.bijective else "NOT bijective"
        lines.append(f"{name}: Ψ₁ {mark1}: {r1.source} ↪ {r1.target}; Ψ₂ {mark2}: {len(r2.left)} ↔ {len(r2.right)}")
    return Result({"q": args.q, "charts": rows}, lines, ok)


# -- entry point --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit canonical JSON")
    common.add_argument("--degree-bound", type=int, default=None, help="override the saturation degree bound")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized suites")

    parser = argparse.ArgumentParser(prog="f1geom", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spec", parents=[common], help="primes and unit groups")
    p.add_argument("file")
    p.set_defaults(func=cmd_spec)

    p = sub.add_parser("count", parents=[common], help="P and Q point counts with margins")
    p.add_argument("file")
    p.add_argument("--mode", choices=("P", "Q"), default="Q")
    p.add_argument("--n", default="1..6")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("zeta", parents=[common], help="truncated zeta series")
    p.add_argument("file")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--order", type=int, default=8)
    p.add_argument("--mode", choices=("P", "Q"), default="P")
    p.set_defaults(func=cmd_zeta)

    p = sub.add_parser("hom", parents=[common], help="relation-compatible morphisms into F_1^n")
    p.add_argument("file")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_hom)

    p = sub.add_parser("adjoint-check", parents=[common], help="exhaustive adjunction checks")
    p.add_argument("--suite", choices=("small", "full"), default="small")
    p.set_defaults(func=cmd_adjoint_check)

    p = sub.add_parser("tensor", parents=[common], help="tensor product of two bobject documents")
    p.add_argument("file1")
    p.add_argument("file2")
    p.set_defaults(func=cmd_tensor)

    p = sub.add_parser("psi", parents=[common], help="transferring map checks over F_q")
    p.add_argument("file")
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(func=cmd_psi)
    return parser


def _emit_error(exc: F1Error, as_json: bool):
    if as_json:
        body = {"error": exc.code, "message": str(exc)}
        for attr in ("line", "column", "path", "witness"):
            if getattr(exc, attr, None) is not None:
                body[attr] = getattr(exc, attr)
        print(json.dumps(body, sort_keys=True), file=sys.stderr)
    else:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        result = args.func(args)
    except F1Error as exc:
        _emit_error(exc, args.json)
        return exc.exit_status
    if args.json:
        print(json.dumps({**result.payload, "ok": result.ok}, sort_keys=True, ensure_ascii=False, indent=2))
    else:
        print("\n".join(result.lines))
    return OK if result.ok else FAILED


if __name__ == "__main__":
    sys.exit(main())
