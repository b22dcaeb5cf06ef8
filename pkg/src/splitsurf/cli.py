"""Command-line front end: generate meshes, canonicalize, verify, classify,
transform.

Exit codes: 0 ok, 1 verification gates failed, 2 domain/numeric error,
3 usage or expression-parse error.  All reports are JSON with a schema
version field; every command is deterministic given its arguments.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .algebra import NoSquareRoot, SplitComplex, ZeroDivisor, splitc
from . import holofn
from .holofn import DomainError, ExprSyntaxError
from .weierstrass import GeneratingData, Part, SurfacePatch, TimelikeViolation, evaluate_surface
from .geometry import DegenerateNormal, forms_grid
from .canonical import (
    BranchError,
    InconclusiveOverlap,
    StepFailure,
    canonical_pde_residual,
    canonicalize,
    verify_canonical_coefficients,
)
from .equivalence import (
    InvalidParams,
    MoebiusForm,
    MoebiusParams,
    moebius_transform,
    motion_witness,
    witness_discrepancy,
)
from .classify import CubicParametrization, classify_cubic

SCHEMA_VERSION = 1

_NUMERIC_ERRORS = (
    DomainError,
    ZeroDivisor,
    NoSquareRoot,
    BranchError,
    StepFailure,
    TimelikeViolation,
    DegenerateNormal,
    InconclusiveOverlap,
)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _parse_domain(text: str):
    parts = text.split(":")
    if len(parts) != 4:
        raise _UsageError("domain must be umin:umax:vmin:vmax")
    try:
        u0, u1, v0, v1 = map(float, parts)
    except ValueError as exc:
        raise _UsageError("bad domain %r" % text) from exc
    if not (u0 < u1 and v0 < v1):
        raise _UsageError("domain must satisfy min < max per axis")
    return u0, u1, v0, v1


def _parse_grid(text: str):
    try:
        n, m = text.lower().split("x")
        n, m = int(n), int(m)
    except ValueError as exc:
        raise _UsageError("grid must look like 41x41") from exc
    if n < 3 or m < 3:
        raise _UsageError("grid must be at least 3x3")
    return n, m


def _parse_const(text: str) -> SplitComplex:
    try:
        return holofn.parse_constant(text)
    except ExprSyntaxError:
        raise
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc


def _jsonable(value):
    if isinstance(value, float):
        return None if not np.isfinite(value) else value
    if isinstance(value, np.floating):
        return _jsonable(float(value))
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.ndarray):
        return [_jsonable(v) for v in value.tolist()]
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def _emit(report: dict, stream=None):
    stream = stream or sys.stdout
    json.dump(_jsonable(report), stream, indent=2, sort_keys=True)
    stream.write("\n")


def _load_data(args) -> GeneratingData:
    part = Part.REAL if args.part == "real" else Part.IMAGINARY
    base = _parse_const(args.base) if args.base else splitc(0.0)
    g = holofn.parse(args.g)
    if getattr(args, "canonical", False):
        return GeneratingData.canonical(g, part=part, base_point=base)
    if args.f is None:
        raise _UsageError("provide --f EXPR or --canonical")
    return GeneratingData.general(holofn.parse(args.f), g, part=part, base_point=base)


# ---------------------------------------------------------------------------
# mesh / table writers
# ---------------------------------------------------------------------------


def write_obj(path: str, patch: SurfacePatch):
    n, m = patch.shape
    index = np.zeros((n, m), int)
    count = 0
    with open(path, "w") as fh:
        for i in range(n):
            for j in range(m):
                if patch.valid[i, j]:
                    count += 1
                    index[i, j] = count
                    x, y, z = patch.points[i, j]
                    fh.write("v %.17g %.17g %.17g\n" % (x, y, z))
        faces = 0
        for i in range(n - 1):
            for j in range(m - 1):
                corners = index[i, j], index[i + 1, j], index[i + 1, j + 1], index[i, j + 1]
                if all(c > 0 for c in corners):
                    a, b, c, d = corners
                    fh.write("f %d %d %d\n" % (a, b, c))
                    fh.write("f %d %d %d\n" % (a, c, d))
                    faces += 2
    return count, faces


def read_obj_vertices(path: str) -> np.ndarray:
    verts = []
    with open(path) as fh:
        for line in fh:
            if line.startswith("v "):
                verts.append([float(tok) for tok in line.split()[1:4]])
    return np.array(verts)


_CSV_HEADER = "u,v,x1,x2,x3,E,F,G,L,M,N,K,H"


def write_csv(path: str, patch: SurfacePatch, grid=None):
    grid = grid if grid is not None else forms_grid(patch)
    with open(path, "w") as fh:
        fh.write(_CSV_HEADER + "\n")
        for i in range(len(patch.us)):
            for j in range(len(patch.vs)):
                row = [patch.us[i], patch.vs[j], *patch.points[i, j]]
                row += [arr[i, j] for arr in (grid.E, grid.F, grid.G, grid.L, grid.M, grid.N, grid.K, grid.H)]
                fh.write(",".join("%.17g" % r for r in row) + "\n")


def read_csv_patch(path: str) -> SurfacePatch:
    rows = []
    with open(path) as fh:
        header = fh.readline().strip().split(",")
        iu, iv = header.index("u"), header.index("v")
        ix = [header.index(k) for k in ("x1", "x2", "x3")]
        for line in fh:
            if line.strip():
                vals = [float(t) for t in line.strip().split(",")]
                rows.append((vals[iu], vals[iv], [vals[k] for k in ix]))
    us = np.unique([r[0] for r in rows])
    vs = np.unique([r[1] for r in rows])
    points = np.full((len(us), len(vs), 3), np.nan)
    ui = {u: i for i, u in enumerate(us)}
    vi = {v: j for j, v in enumerate(vs)}
    for u, v, xyz in rows:
        points[ui[u], vi[v]] = xyz
    return SurfacePatch.from_points(us, vs, points)


def write_json_mesh(path: str, patch: SurfacePatch):
    with open(path, "w") as fh:
        _emit(
            {
                "schema_version": SCHEMA_VERSION,
                "us": patch.us,
                "vs": patch.vs,
                "points": patch.points,
                "valid": patch.valid.astype(int),
            },
            fh,
        )


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_generate(args) -> int:
    data = _load_data(args)
    patch = evaluate_surface(data, _parse_domain(args.domain), _parse_grid(args.grid), tol=args.tol)
    grid = forms_grid(patch)
    if args.format == "obj":
        verts, faces = write_obj(args.out, patch)
    elif args.format == "csv":
        write_csv(args.out, patch, grid)
        verts, faces = int(patch.valid.sum()), 0
    else:
        write_json_mesh(args.out, patch)
        verts, faces = int(patch.valid.sum()), 0
    with np.errstate(invalid="ignore"):
        summary = {
            "schema_version": SCHEMA_VERSION,
            "command": "generate",
            "out": args.out,
            "format": args.format,
            "vertices": verts,
            "faces": faces,
            "invalid_samples": int((~patch.valid).sum()),
            "max_abs_H": float(np.nanmax(np.abs(grid.H))) if np.any(grid.valid) else None,
            "k_min": float(np.nanmin(grid.K)) if np.any(grid.valid) else None,
            "k_max": float(np.nanmax(grid.K)) if np.any(grid.valid) else None,
        }
    _emit(summary)
    return 0


def cmd_canonicalize(args) -> int:
    f = holofn.parse(args.f)
    g = holofn.parse(args.g)
    w0 = _parse_const(args.w0) if args.w0 else splitc(0.0)
    z0 = _parse_const(args.z0) if args.z0 else w0
    result = canonicalize(
        f, g, w0=w0, z0=z0, domain=_parse_domain(args.domain),
        grid=_parse_grid(args.grid), sign=+1 if args.sign == "+" else -1,
    )
    g_tilde = None
    if result.g_tilde_expr is not None:
        poly = holofn.expr_to_poly(result.g_tilde_expr)
        g_tilde = str(holofn.poly_to_expr(poly.chop())) if poly is not None else str(result.g_tilde_expr)
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "canonicalize",
        "affine": result.affine,
        "g_tilde": g_tilde,
        "sign": args.sign,
        "w0": str(result.w0),
        "z0": str(result.z0),
        "residual_max": result.max_residual,
        "residual_mean": float(np.nanmean(result.residual)),
    }
    if args.samples:
        with open(args.samples, "w") as fh:
            fh.write("u,v,z_re,z_im,g_tilde_re,g_tilde_im\n")
            for i, u in enumerate(result.us):
                for j, v in enumerate(result.vs):
                    fh.write(
                        ",".join(
                            "%.17g" % val
                            for val in (
                                u, v,
                                result.z_values.re[i, j], result.z_values.im[i, j],
                                result.g_tilde_values.re[i, j], result.g_tilde_values.im[i, j],
                            )
                        )
                        + "\n"
                    )
        report["samples"] = args.samples
    _emit(report)
    return 0


def _curvature_callable(data: GeneratingData, gate: float):
    g = data.g
    gp = g.derivative()
    f = data.f

    def K(U, V):
        z = SplitComplex(np.asarray(U, float), np.asarray(V, float))
        out = np.full(z.shape, np.nan)
        try:
            gv = g.eval(z)
            gpv = gp.eval(z)
            gap = 1.0 - gv.modulus2
            with np.errstate(invalid="ignore", divide="ignore"):
                if f is None:
                    k = -16.0 * gpv.modulus2**2 / gap**4
                else:
                    k = -16.0 * gpv.modulus2 / (f.eval(z).modulus2 * gap**4)
                out = np.where(np.abs(gap) > gate, k, np.nan)
        except (ZeroDivisor, NoSquareRoot):
            pass
        return out

    return K


def cmd_verify(args) -> int:
    gates = {}
    data = None
    if args.from_csv:
        patch = read_csv_patch(args.from_csv)
        method = "fd"
    else:
        if args.g is None:
            raise _UsageError("provide --g (with --f or --canonical) or --from-csv")
        data = _load_data(args)
        patch = evaluate_surface(data, _parse_domain(args.domain), _parse_grid(args.grid))
        method = "auto"
    grid = forms_grid(patch, method)
    if not np.any(grid.valid):
        raise DomainError("no valid interior nodes to verify")
    max_h = float(np.nanmax(np.abs(grid.H)))
    gates["minimality"] = {"max_abs_H": max_h, "tol": args.tol_h, "pass": max_h < args.tol_h}
    gates["timelike"] = {
        "violations": grid.metric_violations,
        "pass": grid.metric_violations == 0,
    }
    if data is not None and data.is_canonical:
        rep = verify_canonical_coefficients(patch, method)
        gates["canonical_coefficients"] = dict(
            rep.summary(), tol=args.tol_coeff, **{"pass": rep.max_residual < args.tol_coeff}
        )
        u0, u1, v0, v1 = _parse_domain(args.domain)
        n, m = _parse_grid(args.grid)
        resid = canonical_pde_residual(
            _curvature_callable(data, args.pde_gate),
            sign="auto", h=1e-3,
            us=np.linspace(u0, u1, n), vs=np.linspace(v0, v1, m),
        )
        if np.any(np.isfinite(resid.values)):
            max_resid = float(np.nanmax(np.abs(resid.values)))
            gates["curvature_pde"] = {
                "max_residual": max_resid,
                "tol": args.tol_pde,
                "pass": max_resid < args.tol_pde,
            }
    if args.compare_parts and data is not None:
        flipped = GeneratingData(
            g=data.g, f=data.f, base_point=data.base_point,
            part=Part.IMAGINARY if data.part == Part.REAL else Part.REAL,
        )
        other = evaluate_surface(flipped, _parse_domain(args.domain), _parse_grid(args.grid))
        kg1 = grid.K
        kg2 = forms_grid(other, method).K
        both = np.isfinite(kg1) & np.isfinite(kg2)
        opposition = bool(np.all(kg1[both] * kg2[both] < 0.0)) if np.any(both) else False
        with np.errstate(invalid="ignore", divide="ignore"):
            ratio = np.abs(kg2[both]) / np.abs(kg1[both])
        gates["part_curvature_signs"] = {
            "pass": opposition,
            "nodes": int(np.sum(both)),
            "magnitude_ratio_min": float(np.min(ratio)) if np.any(both) else None,
            "magnitude_ratio_max": float(np.max(ratio)) if np.any(both) else None,
        }
    ok = all(g["pass"] for g in gates.values())
    _emit({"schema_version": SCHEMA_VERSION, "command": "verify", "gates": gates, "pass": ok})
    return 0 if ok else 1


def cmd_classify(args) -> int:
    if args.coeffs == "-":
        obj = json.load(sys.stdin)
    else:
        with open(args.coeffs) as fh:
            obj = json.load(fh)
    verdict = classify_cubic(CubicParametrization.from_json(obj))
    _emit(dict({"schema_version": SCHEMA_VERSION, "command": "classify"}, **verdict.to_dict()))
    return 0


def cmd_transform(args) -> int:
    g = holofn.parse(args.g)
    params = MoebiusParams(
        phi=args.phi,
        alpha=_parse_const(args.alpha) if args.alpha else splitc(0.0),
        sign=-1 if args.minus else +1,
        form=MoebiusForm.INVERSION if args.form == "inversion" else MoebiusForm.FRACTIONAL,
    )
    g_tilde = moebius_transform(g, params, inversion_reading=args.inversion_reading)
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "transform",
        "g_tilde": str(g_tilde),
        "form": params.form.value,
    }
    if params.form == MoebiusForm.FRACTIONAL:
        witness = motion_witness(params)
        disc = witness_discrepancy(g, params, _parse_domain(args.domain), _parse_grid(args.grid))
        report["witness"] = {
            "A": witness.A,
            "B": witness.B,
            "matrix": witness.matrix,
            "metric_preserved": witness.preserves_metric(),
            "max_discrepancy": disc,
            "tol": args.tol,
            "pass": disc < args.tol,
        }
        _emit(report)
        return 0 if disc < args.tol else 1
    _emit(report)
    return 0


# ---------------------------------------------------------------------------
# argument wiring
# ---------------------------------------------------------------------------


def _add_data_args(p):
    p.add_argument("--f", help="generating function f(z)")
    p.add_argument("--g", help="generating function g(z)")
    p.add_argument("--canonical", action="store_true", help="use the special form with f = 1/g'")
    p.add_argument("--part", choices=("real", "imag"), default="real")
    p.add_argument("--base", help="base point z0, split-complex literal", default=None)
    p.add_argument("--domain", default="-1:1:-1:1", help="umin:umax:vmin:vmax")
    p.add_argument("--grid", default="41x41")


def build_parser() -> _Parser:
    parser = _Parser(prog="splitsurf", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="sample a surface patch and export a mesh")
    _add_data_args(p)
    p.add_argument("--tol", type=float, default=1e-10, help="quadrature tolerance")
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=("obj", "csv", "json"), default="obj")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("canonicalize", help="transform isothermal data to canonical parameters")
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--w0", default=None)
    p.add_argument("--z0", default=None)
    p.add_argument("--domain", default="-1:1:-1:1")
    p.add_argument("--grid", default="33x33")
    p.add_argument("--sign", choices=("+", "-"), default="+")
    p.add_argument("--samples", default=None, help="write sampled z(w), g~(w) as CSV")
    p.set_defaults(func=cmd_canonicalize)

    p = sub.add_parser("verify", help="run residual gates on a patch")
    _add_data_args(p)
    p.add_argument("--from-csv", default=None, help="verify an imported patch instead")
    p.add_argument("--tol-h", type=float, default=1e-6)
    p.add_argument("--tol-coeff", type=float, default=1e-4)
    p.add_argument("--tol-pde", type=float, default=1e-5)
    p.add_argument("--pde-gate", type=float, default=0.3)
    p.add_argument("--compare-parts", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("classify", help="classify a cubic isothermal parametrization")
    p.add_argument("coeffs", help="JSON coefficient file, or - for stdin")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("transform", help="apply a canonical-function transformation")
    p.add_argument("--g", required=True)
    p.add_argument("--phi", type=float, default=0.0)
    p.add_argument("--alpha", default=None)
    p.add_argument("--minus", action="store_true", help="use the - sign choice")
    p.add_argument("--form", choices=("fractional", "inversion"), default="fractional")
    p.add_argument("--inversion-reading", choices=("g", "f"), default="g")
    p.add_argument("--domain", default="-0.4:0.4:-0.4:0.4")
    p.add_argument("--grid", default="5x5")
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_transform)
    return parser


_VALUE_FLAGS = {"--domain", "--base", "--w0", "--z0", "--alpha", "--phi", "--tol",
                "--tol-h", "--tol-coeff", "--tol-pde", "--pde-gate"}


def _join_negative_values(argv):
    """Let value flags accept arguments that begin with a minus sign."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        nxt = argv[i + 1] if i + 1 < len(argv) else None
        if (
            tok in _VALUE_FLAGS
            and nxt is not None
            and len(nxt) > 1
            and nxt[0] == "-"
            and (nxt[1].isdigit() or nxt[1] == ".")
        ):
            out.append(tok + "=" + nxt)
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    argv = _join_negative_values(list(argv))
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except ExprSyntaxError as exc:
        print(
            "expression error: %s (expected: %s)"
            % (exc, ", ".join(sorted(exc.expected)) or "n/a"),
            file=sys.stderr,
        )
        return 3
    except (_UsageError, InvalidParams, ValueError) as exc:
        print("usage error: %s" % exc, file=sys.stderr)
        return 3
    except _NUMERIC_ERRORS as exc:
        print("numeric/domain error: %s" % exc, file=sys.stderr)
        return 2
    except OSError as exc:
        print("io error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
