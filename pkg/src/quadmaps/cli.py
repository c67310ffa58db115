"""Command-line interface: ``quadmaps {check,classify,factorize,catalog,verify}``.

One JSON document is written to stdout per invocation; ``--verbose`` adds a
human-readable summary on stderr.  Exit codes: 0 ok, 2 not spherical,
3 parse/validation error, 4 classification paths disagree, 5 wrong verdict
class for the command, 6 unknown catalog name, 7 oracle failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any

from . import catalog
from . import matrix as mx
from .errors import (
    ConstantMap,
    DimensionMismatch,
    InexactValue,
    LambdaOutOfRange,
    NotProperBiharmonic,
    NotSpherical,
    NotSymmetric,
    PathDisagreement,
    UnknownName,
)
from .mapfile import ParseError, dump_map, format_scalar, load_map_file
from .oracle import SamplePlan, energy_spot_check, spot_check_bitension, tension_check
from .quadmap import (
    QuadraticSphericalMap,
    Verdict,
    check_spherical_gray_toth,
    check_spherical_polynomial,
    classify,
    format_monomial,
)
from .scalar import EXACT, Backend
from .structure import factorize, verify_trace_identity

EXIT_OK = 0
EXIT_NOT_SPHERICAL = 2
EXIT_PARSE = 3
EXIT_DISAGREEMENT = 4
EXIT_WRONG_CLASS = 5
EXIT_UNKNOWN_NAME = 6
EXIT_ORACLE = 7


def _scalar(value) -> Any:
    if value is None:
        return None
    if isinstance(value, float):
        return value
    return format_scalar(value)


def _vector(values) -> list:
    return [_scalar(v) for v in values]


def _matrix(a) -> list:
    return [_vector(row) for row in a]


def map_report(qmap: QuadraticSphericalMap, path: str = "both") -> dict:
    """Structured classification report of a validated map."""
    cls = classify(qmap, path)
    lap = qmap.laplacian
    report: dict[str, Any] = {
        "name": qmap.name,
        "m": qmap.m,
        "n": qmap.n,
        "backend": qmap.backend.name,
        "certified": cls.certified,
        "verdict": cls.verdict.value,
        "path": cls.path.value,
        "energy_density": _scalar(cls.energy_density) if cls.energy_density is not None
        else "non-constant",
        "S": _matrix(qmap.s),
        "S_is_scalar": cls.s_is_scalar,
        "alpha": _scalar(cls.s_scalar),
        "laplacian": _vector(lap),
        "laplacian_norm_sq": _scalar(mx.dot(lap, lap)),
        "trace_identity_residual": _scalar(verify_trace_identity(qmap)),
        "evidence": cls.evidence,
    }
    if cls.verdict is Verdict.PROPER_BIHARMONIC:
        fac = factorize(qmap)
        report["factorization"] = {
            "radius_sq": _scalar(fac.radius_sq),
            "last_component_constant": _scalar(fac.last_component_constant),
            "psi_harmonic": fac.psi_harmonic,
            "psi_energy_density": _scalar(fac.psi_energy_density),
            "rotation": _matrix(fac.rotation),
        }
    return report


def _energy_text(report: dict) -> str:
    e = report["energy_density"]
    if e == "non-constant":
        return "e non-constant"
    if report["verdict"] == "Harmonic":
        return f"e = {e} = m+1"
    if report["verdict"] == "ProperBiharmonic":
        return f"e = {e} = (m+1)/2"
    return f"e = {e}"


def report_text(report: dict) -> str:
    lines = [f"{report['name'] or 'map'}: S^{report['m']} -> S^{report['n']}",
             f"{report['verdict']}, {_energy_text(report)}"]
    if not report["certified"]:
        lines[-1] += " (non-certified, float backend)"
    lines.append(f"S scalar: {report['S_is_scalar']}"
                 + (f" (alpha = {report['alpha']})" if report["S_is_scalar"] else ""))
    lines.append(f"lap F = {report['laplacian']}, |lap F|^2 = {report['laplacian_norm_sq']}")
    lines.append(f"trace identity residual: {report['trace_identity_residual']}")
    fac = report.get("factorization")
    if fac:
        lines.append(f"factorization: r^2 = {fac['radius_sq']}, psi harmonic: {fac['psi_harmonic']}")
    for note in report["evidence"]:
        lines.append(f"  - {note}")
    return "\n".join(lines)


class _Ctx:
    def __init__(self, args):
        self.verbose = getattr(args, "verbose", False)
        self.out = sys.stdout
        self.err = sys.stderr

    def emit(self, doc: dict, text: str | None = None) -> None:
        self.out.write(json.dumps(doc, indent=2, ensure_ascii=False) + "\n")
        if self.verbose and text:
            self.err.write(text + "\n")


def _backend(args) -> Backend:
    if getattr(args, "backend", "exact") == "float":
        return Backend(exact=False, tol=args.tol)
    return EXACT


def _load(path, backend: Backend, symmetrize: bool = False) -> QuadraticSphericalMap:
    mf = load_map_file(path)
    mats = mf.matrices
    if symmetrize:
        mats = [mx.symmetrize(mx.as_matrix(a)) for a in mats]
        mf.matrices = mats
    try:
        return mf.to_map(backend)
    except (NotSymmetric, ConstantMap, DimensionMismatch) as exc:
        raise ParseError(f"{type(exc).__name__}: {exc}") from None


def _error(ctx: _Ctx, code: int, kind: str, message: str, **extra) -> int:
    ctx.emit({"ok": False, "error": kind, "message": message, **extra}, f"error: {message}")
    return code


def cmd_check(args) -> int:
    ctx = _Ctx(args)
    try:
        mf = load_map_file(args.file)
    except ParseError as exc:
        return _error(ctx, EXIT_PARSE, "ParseError", str(exc))
    mats = mf.matrices
    if args.symmetrize:
        mats = [mx.symmetrize(mx.as_matrix(a)) for a in mats]
    radius_sq = mf.radius_sq if mf.radius_sq is not None else 1
    try:
        poly_cert = check_spherical_polynomial(mats, radius_sq)
        gt = check_spherical_gray_toth(mats)
    except NotSymmetric as exc:
        return _error(ctx, EXIT_PARSE, "NotSymmetric", str(exc))
    gt_ok = gt.ok if radius_sq == 1 else poly_cert.spherical
    doc: dict[str, Any] = {
        "ok": poly_cert.spherical and gt_ok,
        "polynomial_certificate": poly_cert.spherical,
        "gray_toth_certificate": gt_ok,
    }
    if not poly_cert.spherical:
        doc["monomial"] = format_monomial(poly_cert.monomial)
        doc["exponents"] = list(poly_cert.monomial)
        doc["coefficient"] = _scalar(poly_cert.coefficient)
    if radius_sq == 1 and gt.violations:
        bad = gt.violations[0]
        doc["failing_relation"] = bad.relation
        doc["failing_indices"] = [i + 1 for i in bad.indices]
        doc["violation_count"] = len(gt.violations)
    if doc["ok"]:
        text = "spherical: |F|^2 = |x|^4 and all Gray-Toth relations hold"
    else:
        text = (f"not spherical: coefficient {doc.get('coefficient')} at "
                f"{doc.get('monomial')}; relation {doc.get('failing_relation')} fails")
    ctx.emit(doc, text)
    return EXIT_OK if doc["ok"] else EXIT_NOT_SPHERICAL


def cmd_classify(args) -> int:
    ctx = _Ctx(args)
    backend = _backend(args)
    try:
        qmap = _load(args.file, backend, args.symmetrize)
    except ParseError as exc:
        return _error(ctx, EXIT_PARSE, "ParseError", str(exc))
    except NotSpherical as exc:
        return _error(ctx, EXIT_NOT_SPHERICAL, "NotSpherical", str(exc),
                      monomial=format_monomial(exc.monomial))
    try:
        report = map_report(qmap, args.path)
    except PathDisagreement as exc:
        return _error(ctx, EXIT_DISAGREEMENT, "PathDisagreement", str(exc))
    ctx.emit(report, report_text(report))
    return EXIT_OK


def cmd_factorize(args) -> int:
    ctx = _Ctx(args)
    try:
        qmap = _load(args.file, EXACT)
    except ParseError as exc:
        return _error(ctx, EXIT_PARSE, "ParseError", str(exc))
    except NotSpherical as exc:
        return _error(ctx, EXIT_NOT_SPHERICAL, "NotSpherical", str(exc))
    try:
        fac = factorize(qmap)
    except NotProperBiharmonic as exc:
        return _error(ctx, EXIT_WRONG_CLASS, "NotProperBiharmonic", str(exc))
    doc = {
        "ok": True,
        "radius_sq": _scalar(fac.radius_sq),
        "last_component_constant": _scalar(fac.last_component_constant),
        "psi_harmonic": fac.psi_harmonic,
        "psi_energy_density": _scalar(fac.psi_energy_density),
        "psi_m": fac.psi.m,
        "psi_n": fac.psi.n,
        "rotation": _matrix(fac.rotation),
        "psi_matrices": [_matrix(a) for a in fac.psi_matrices],
        "notes": fac.notes,
    }
    if args.out:
        dump_map(fac.psi, args.out, description="harmonic part of a proper biharmonic map",
                 rotation=fac.rotation)
        doc["out"] = args.out
    text = (f"psi: S^{fac.psi.m} -> S^{fac.psi.n}(r), r^2 = {fac.radius_sq}, "
            f"harmonic certificate: {fac.psi_harmonic}")
    ctx.emit(doc, text)
    return EXIT_OK


def cmd_catalog(args) -> int:
    ctx = _Ctx(args)
    if args.action == "list":
        rows = []
        for name in catalog.names():
            entry = catalog.get(name)
            rows.append({"name": entry.name, "m": entry.map.m, "n": entry.map.n,
                         "verdict": entry.expected.value})
        ctx.emit({"ok": True, "entries": rows},
                 "\n".join(f"{r['name']}: S^{r['m']} -> S^{r['n']}, {r['verdict']}" for r in rows))
        return EXIT_OK
    if not args.name:
        return _error(ctx, EXIT_UNKNOWN_NAME, "UnknownName", f"{args.action} needs a name")
    try:
        entry = catalog.get(args.name, _backend(args))
    except UnknownName as exc:
        return _error(ctx, EXIT_UNKNOWN_NAME, "UnknownName", str(exc))
    except (LambdaOutOfRange, InexactValue) as exc:
        return _error(ctx, EXIT_PARSE, type(exc).__name__, str(exc))
    if args.action == "show":
        report = map_report(entry.map)
        report["expected"] = entry.expected.value
        report["provenance"] = entry.provenance
        ctx.emit(report, report_text(report))
        return EXIT_OK
    if not args.file:
        return _error(ctx, EXIT_PARSE, "UsageError", "emit needs an output file")
    if not entry.map.backend.exact:
        return _error(ctx, EXIT_PARSE, "UsageError", "only exact maps can be emitted")
    dump_map(entry.map, args.file, description=entry.provenance)
    ctx.emit({"ok": True, "name": entry.name, "file": args.file}, f"wrote {args.file}")
    return EXIT_OK


def verify_map(qmap: QuadraticSphericalMap, plan: SamplePlan) -> tuple[int, dict]:
    tension = tension_check(qmap, plan)
    bitension = spot_check_bitension(qmap, plan)
    energy = energy_spot_check(qmap, plan)
    ok = tension.passed and bitension.passed and energy.passed
    doc = {
        "ok": ok,
        "samples": plan.count,
        "seed": plan.seed,
        "step": plan.step,
        "tolerance": plan.tolerance,
        "tension": {"max_rel_error": tension.max_rel_error,
                    "max_normal_defect": tension.max_normal_defect,
                    "passed": tension.passed},
        "bitension": {"max_abs": bitension.max_abs_bitension,
                      "max_closed_form_discrepancy": bitension.max_closed_form_discrepancy,
                      "passed": bitension.passed},
        "energy": {"max_rel_error": energy.max_rel_error, "passed": energy.passed},
    }
    return (EXIT_OK if ok else EXIT_ORACLE), doc


def cmd_verify(args) -> int:
    ctx = _Ctx(args)
    try:
        qmap = _load(args.file, EXACT)
    except ParseError as exc:
        return _error(ctx, EXIT_PARSE, "ParseError", str(exc))
    except NotSpherical as exc:
        return _error(ctx, EXIT_NOT_SPHERICAL, "NotSpherical", str(exc))
    try:
        plan = SamplePlan(count=args.samples, seed=args.seed, step=args.step, tolerance=args.tol)
    except ValueError as exc:
        return _error(ctx, EXIT_PARSE, "UsageError", str(exc))
    code, doc = verify_map(qmap, plan)
    text = (f"oracle {'passed' if doc['ok'] else 'FAILED'}: tension err "
            f"{doc['tension']['max_rel_error']:.2e}, energy err {doc['energy']['max_rel_error']:.2e}")
    ctx.emit(doc, text)
    return code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quadmaps",
        description="Certify and classify quadratic maps between unit spheres.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--verbose", action="store_true", help="human-readable summary on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="certify |F|^2 = |x|^4")
    p.add_argument("file")
    p.add_argument("--symmetrize", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("classify", parents=[common], help="harmonic / proper biharmonic / neither")
    p.add_argument("file")
    p.add_argument("--path", choices=["criterion", "direct", "both"], default="both")
    p.add_argument("--backend", choices=["exact", "float"], default="exact")
    p.add_argument("--tol", type=float, default=1e-9, help="float-backend tolerance")
    p.add_argument("--symmetrize", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("factorize", parents=[common], help="split off the harmonic part")
    p.add_argument("file")
    p.add_argument("--out", help="write psi (with radius_sq and rotation) to this file")
    p.set_defaults(func=cmd_factorize)

    p = sub.add_parser("catalog", parents=[common], help="list, show or emit named maps")
    p.add_argument("action", choices=["list", "show", "emit"])
    p.add_argument("name", nargs="?")
    p.add_argument("file", nargs="?")
    p.add_argument("--backend", choices=["exact", "float"], default="exact")
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("verify", parents=[common], help="finite-difference cross-checks")
    p.add_argument("file")
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--step", type=float, default=1e-4)
    p.add_argument("--tol", type=float, default=1e-5)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
