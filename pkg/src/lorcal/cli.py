"""
Batch command line: compute, classify, verify and export.

Operators are exchanged as ``{"E": [x, y, z], "B": [x, y, z]}`` JSON and
reports are printed as JSON (or CSV for cone sweeps).  Exit codes: 0 on
success, 1 when a verification fails, 2 on malformed input.

``LORCAL_TOL`` overrides the residual tolerances of the verify commands.
"""

import argparse
import csv
import json
import os
import sys

import numpy as np

from . import basis16, expmap, verify
from .emfield import ChargeState, fibonacci_sphere, field_at, sample_cone
from .errors import LorcalError
from .minkowski import vec_to_json
from .skew import OpClass, SkewOp, c_map, classify, eigenvalue, lambda_sq, null_eigenvectors


class InputError(Exception):
    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field


def _json_arg(text, field):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(field, f"not valid JSON ({exc.msg})") from None


def _op(d, field):
    if not isinstance(d, dict):
        raise InputError(field, 'expected an object {"E": [..], "B": [..]}')
    try:
        F = SkewOp.from_json(d)
    except (ValueError, TypeError) as exc:
        raise InputError(field, str(exc)) from None
    if not np.all(np.isfinite(F.coords())):
        raise InputError(field, "components must be finite")
    return F


def parse_op(text, field="--op"):
    return _op(_json_arg(text, field), field)


def parse_ops(text, field="--ops"):
    d = _json_arg(text, field)
    if not isinstance(d, list) or not d:
        raise InputError(field, "expected a non-empty JSON list of operators")
    return [_op(x, f"{field}[{i}]") for i, x in enumerate(d)]


def parse_matrix(text, field="--matrix"):
    """A 4x4 real matrix, either bare or as the ``matrix`` entry of an ``exp`` report."""
    d = _json_arg(text, field)
    if isinstance(d, dict):
        if "matrix" not in d:
            raise InputError(field, "object input needs a 'matrix' entry")
        d = d["matrix"]
    try:
        m = np.asarray(d, dtype=float)
    except (ValueError, TypeError):
        raise InputError(field, "entries must be real numbers") from None
    if m.shape != (4, 4):
        raise InputError(field, f"expected a 4x4 matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise InputError(field, "entries must be finite")
    return m


def parse_vec3(text, field):
    try:
        v = np.array([float(x) for x in text.split(",")])
    except ValueError:
        raise InputError(field, "expected three comma-separated numbers") from None
    if v.shape != (3,) or not np.all(np.isfinite(v)):
        raise InputError(field, "expected three finite comma-separated numbers")
    return v


def parse_floats(text, field):
    try:
        v = [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError(field, "expected comma-separated numbers") from None
    if not v:
        raise InputError(field, "expected at least one value")
    return v


def env_tol():
    raw = os.environ.get("LORCAL_TOL")
    if raw is None:
        return None
    try:
        tol = float(raw)
    except ValueError:
        raise InputError("LORCAL_TOL", "must be a positive number") from None
    if not tol > 0:
        raise InputError("LORCAL_TOL", "must be a positive number")
    return tol


def _complex(z):
    return [float(np.real(z)), float(np.imag(z))]


def _emit(payload, out):
    json.dump(payload, out, indent=2)
    out.write("\n")


# ---------------------------------------------------------------- commands

def cmd_exp(args, out):
    F = parse_op(args.op)
    payload = {"matrix": expmap.exp_real(F).tolist()}
    if classify(F) is not OpClass.ZERO:
        rep = expmap.singularity(F)
        if rep.is_singular:
            payload["warning"] = {"singular": True, "n": rep.n,
                                  "message": f"exp is singular here: lambda = 2*pi*{rep.n}*i"}
            print(f"warning: exp is singular at this operator (n={rep.n})", file=sys.stderr)
    _emit(payload, out)
    return 0


def cmd_log(args, out):
    L = parse_matrix(args.matrix)
    try:
        K = expmap.log(L)
    except (LorcalError, ValueError) as exc:
        raise InputError("--matrix", str(exc)) from None
    _emit(K.to_json(), out)
    return 0


def cmd_dexp(args, out):
    F, G = parse_op(args.op), parse_op(args.dir, "--dir")
    res = expmap.dexp(F, G, args.route)
    _emit({"route": res.route.value, "matrix": np.real(res.value).tolist()}, out)
    return 0


def cmd_singularity(args, out):
    F = parse_op(args.op)
    try:
        rep = expmap.singularity(F)
    except LorcalError as exc:
        raise InputError("--op", str(exc)) from None
    _emit({
        "is_singular": bool(rep.is_singular),
        "n": rep.n,
        "lambda": _complex(rep.lam),
        "rank": rep.rank,
        "kernel_basis": [G.to_json() for G in rep.kernel_basis],
        "complement_basis": [G.to_json() for G in rep.complement_basis],
    }, out)
    return 0


def cmd_compose(args, out):
    Fs = parse_ops(args.ops)
    _emit({"matrix": expmap.compose_map(Fs).tolist(),
           "jacobian_rank": expmap.compose_jacobian_rank(Fs)}, out)
    return 0


def cmd_classify(args, out):
    F = parse_op(args.op)
    kind = classify(F)
    payload = {
        "class": kind.value,
        "lambda": _complex(eigenvalue(F)),
        "lambda_sq": _complex(lambda_sq(c_map(F))),
    }
    if kind is not OpClass.ZERO:
        payload["null_eigenvectors"] = [vec_to_json(s) for s in null_eigenvectors(F)]
    _emit(payload, out)
    return 0


def cmd_basis_table(args, out):
    payload = basis16.table_json()
    payload["relation_failures"] = basis16.verify_mult_table()
    payload["alpha_normalization"] = basis16.clifford_normalization()
    _emit(payload, out)
    return 1 if payload["relation_failures"] else 0


def cmd_verify_identities(args, out):
    tol = env_tol()
    res = verify.identity_suite(samples=args.seeds, seed=args.seed, tol_override=tol)
    summary = res.details["identities"]
    if args.json:
        _emit({"pass": bool(res.passed), "seed": args.seed, "samples": args.seeds,
               "identities": summary,
               "t_operator_normalization": res.details["t_operator_normalization"]}, out)
    else:
        for name, v in summary.items():
            status = "PASS" if v["pass"] else "FAIL"
            out.write(f"[{status}] {name}: max_residual={v['max_residual']:.3e} "
                      f"tol={v['tol']:.1e} samples={v['samples']}\n")
        report = res.details["t_operator_normalization"]
        out.write(f"T_F normalization: closed forms need {report['closed_forms_need']}, "
                  f"null-square remark needs {report['null_remark_needs']}\n")
    return 0 if res.passed else 1


def cmd_em_field(args, out):
    a = parse_vec3(args.a, "--a")
    if args.grid is None:
        if args.r is None or args.w is None:
            raise InputError("--r" if args.r is None else "--w", "required unless --grid is given")
        w = parse_vec3(args.w, "--w")
        if np.linalg.norm(w) == 0:
            raise InputError("--w", "must be nonzero")
        try:
            state = ChargeState(args.q, args.r, w / np.linalg.norm(w), a)
        except LorcalError as exc:
            raise InputError("--r", str(exc)) from None
        d = field_at(state)
        _emit({
            "F_a": d.F_a.to_json(),
            "E_coul": d.E_coul.to_json(),
            "N_a": d.N_a.to_json(),
            "shared_eigenvector": vec_to_json(d.shared_eigenvector),
            "lambda_sq": _complex(lambda_sq(c_map(d.F_a))),
            "class": classify(d.F_a).value,
        }, out)
        return 0
    radii = parse_floats(args.grid, "--grid")
    if min(radii) <= 0:
        raise InputError("--grid", "radii must be positive")
    if args.directions < 1:
        raise InputError("--directions", "must be at least 1")
    rows = sample_cone(args.q, a, radii, fibonacci_sphere(args.directions))
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["r", "wx", "wy", "wz", "Ex", "Ey", "Ez", "Bx", "By", "Bz",
                     "lambda_sq_re", "lambda_sq_im", "class"])
    for row in rows:
        writer.writerow([repr(float(x)) for x in (row["r"], *row["w"], *row["E"], *row["B"],
                                                  row["lambda_sq"].real, row["lambda_sq"].imag)]
                        + [row["class"]])
    return 0


def cmd_verify_all(args, out):
    only = None
    if args.only:
        try:
            only = {int(x) for x in args.only.split(",")}
        except ValueError:
            raise InputError("--only", "expected comma-separated sweep numbers") from None
        if not only <= set(verify.SWEEPS):
            raise InputError("--only", f"sweep numbers are {sorted(verify.SWEEPS)}")
    results = verify.run_all(seed=args.seed, only=only, tol_override=env_tol())
    ok = all(r.passed for r in results.values())
    if args.json:
        _emit({"pass": ok, "seed": args.seed,
               "sweeps": {f"{k}:{r.name}": r.to_json() for k, r in results.items()}}, out)
    else:
        for k, r in results.items():
            out.write(f"{k}. {r.line()}\n")
    return 0 if ok else 1


# ---------------------------------------------------------------- parser

def build_parser():
    p = argparse.ArgumentParser(prog="lorcal", description=__doc__.strip().splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("exp", help="closed-form exp of an operator")
    s.add_argument("--op", required=True, help='operator JSON {"E":[..],"B":[..]}')
    s.set_defaults(func=cmd_exp)

    s = sub.add_parser("log", help="principal logarithm of a Lorentz matrix")
    s.add_argument("--matrix", required=True, help="4x4 JSON matrix, or the output of `exp`")
    s.set_defaults(func=cmd_log)

    s = sub.add_parser("dexp", help="directional derivative of exp")
    s.add_argument("--op", required=True)
    s.add_argument("--dir", required=True, help="direction operator JSON")
    s.add_argument("--route", default="closed_form", choices=[r.value for r in expmap.Route])
    s.set_defaults(func=cmd_dexp)

    s = sub.add_parser("singularity", help="singularity report for exp at an operator")
    s.add_argument("--op", required=True)
    s.set_defaults(func=cmd_singularity)

    s = sub.add_parser("compose", help="product of exponentials and its Jacobian rank")
    s.add_argument("--ops", required=True, help="JSON list of operators")
    s.set_defaults(func=cmd_compose)

    s = sub.add_parser("classify", help="zero / null / generic, eigenvalue and null eigenvectors")
    s.add_argument("--op", required=True)
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("basis-table", help="16-element basis and its multiplication table")
    s.set_defaults(func=cmd_basis_table)

    s = sub.add_parser("verify-identities", help="seeded identity sweep")
    s.add_argument("--seeds", type=int, default=500, help="number of random instances")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_verify_identities)

    s = sub.add_parser("em-field", help="field of an accelerated charge on its light cone")
    s.add_argument("--q", type=float, required=True)
    s.add_argument("--r", type=float)
    s.add_argument("--w", help="direction x,y,z (normalized)")
    s.add_argument("--a", required=True, help="acceleration x,y,z")
    s.add_argument("--grid", help="comma-separated radii; emits CSV over --directions cone directions")
    s.add_argument("--directions", type=int, default=12)
    s.set_defaults(func=cmd_em_field)

    s = sub.add_parser("verify-all", help="every verification sweep")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--only", help="comma-separated sweep numbers (1-9)")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_verify_all)
    return p


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        if getattr(args, "seeds", 1) < 1:
            raise InputError("--seeds", "must be at least 1")
        return args.func(args, out)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
