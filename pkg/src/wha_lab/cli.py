"""Command-line driver: ``wha build|build-module|report|check-all|class-equation|modalg``."""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import builders, modalg
from .core import WeakHopfAlgebra, connectivity, direct_sum, dual, is_hopf, s2_eigenvalues, solve_antipode, verify_axioms
from .errors import (
    Decomposable,
    InputError,
    InternalInconsistency,
    InvalidParams,
    NotBiconnected,
    NotConnected,
    NotPseudoUnitary,
    NotSemisimple,
    NotSemisimpleM,
    SizeLimitExceeded,
    VerificationFailure,
    WHAError,
)
from .integrals import counitals_of_lambda_check, semisimplicity_battery, trace_formula_1, verify_radford
from .numerics import DEFAULT_SEED, Tolerances, q_str
from .repcat import (
    canonical_pivotal,
    dimension_data,
    fp_element,
    fp_dimensions,
    fusion_ring,
    inclusion_matrix,
    is_pseudounitary,
    v_vector,
    verify_LL,
    verify_pivotal,
    w_colinearity,
)
from .theorems import class_equation, positivity_criterion, second_trace_formula

EXIT_PASS, EXIT_FAIL, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3

# preconditions that make a verifier inapplicable rather than failed
NOT_APPLICABLE = (NotSemisimple, NotConnected, NotBiconnected, NotPseudoUnitary)


# ------------------------------------------------------------------ helpers

def jsonable(x, digits: int = 10):
    """Deterministic JSON view: Fractions as strings, floats rounded."""
    if isinstance(x, Fraction):
        return q_str(x)
    if isinstance(x, dict):
        return {str(k): jsonable(v, digits) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v, digits) for v in x]
    if isinstance(x, np.ndarray):
        return [jsonable(v, digits) for v in x.tolist()] if x.ndim else jsonable(x.item(), digits)
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        return round(float(x), digits) + 0.0
    if isinstance(x, (complex, np.complexfloating)):
        z = complex(x)
        if abs(z.imag) <= 10.0 ** -digits:
            return round(z.real, digits) + 0.0
        return [round(z.real, digits) + 0.0, round(z.imag, digits) + 0.0]
    return x


def _dump(obj) -> str:
    return json.dumps(jsonable(obj), indent=2, sort_keys=False) + "\n"


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("WHA_SEED")
    if env:
        try:
            return int(env, 0)
        except ValueError:
            raise InputError(f"WHA_SEED={env!r} is not an integer") from None
    return DEFAULT_SEED


def _tol(args) -> Tolerances:
    base = Tolerances()
    try:
        return Tolerances(
            eig_cluster=args.tol_eig if args.tol_eig is not None else base.eig_cluster,
            int_round=args.tol_int if args.tol_int is not None else base.int_round,
            zero=base.zero,
        )
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# -------------------------------------------------------------------- build

def cmd_build(args) -> int:
    cap = args.dim_cap
    p = args.params
    kind = args.kind

    def need(k):
        if len(p) != k:
            raise InvalidParams(f"build {kind} expects {k} argument(s), got {len(p)}")

    if kind == "pair":
        need(1)
        A = builders.pair(_int(p[0]), cap)
    elif kind == "group":
        need(1)
        A = builders.grp(p[0], cap)
    elif kind == "groupoid":
        if len(p) == 1:
            G = builders.groupoid_load(p[0], cap)
            A = builders.groupoid_algebra(G, Path(p[0]).stem, cap)
        else:
            need(2)
            A = builders.gpd(_int(p[0]), p[1], cap)
    elif kind == "dual":
        need(1)
        B = builders.load(p[0], cap)
        D = dual(B)
        A = WeakHopfAlgebra(D.n, D.mult, D.unit, D.comult, D.counit, D.antipode, f"dual({B.label})")
    elif kind == "direct-sum":
        need(2)
        B, C = builders.load(p[0], cap), builders.load(p[1], cap)
        if B.n + C.n > cap:
            raise SizeLimitExceeded(f"direct sum of dimension {B.n + C.n} exceeds the cap {cap}")
        A = direct_sum(B, C, f"ds({B.label},{C.label})")
    elif kind == "example":
        need(1)
        A = builders.from_expression(p[0], cap)
    else:  # pragma: no cover - argparse restricts choices
        raise InvalidParams(f"unknown kind {kind!r}")
    report = verify_axioms(A)
    if not report.passed:
        raise InternalInconsistency(f"built algebra fails {report.first_failure}")
    _emit(builders.dumps(A), args.output)
    if args.output:
        print(f"wrote {A.label} (dim {A.n}) to {args.output}", file=sys.stderr)
    return EXIT_PASS


def _int(s: str) -> int:
    try:
        return int(s)
    except ValueError:
        raise InvalidParams(f"{s!r} is not an integer") from None


def cmd_build_module(args) -> int:
    p = args.params
    kind = args.kind
    if kind == "dual-numbers":
        M = modalg.dual_numbers(p[0] if p else "Z2")
    elif kind == "std-rep":
        M = modalg.standard_rep_module(_int(p[0]) if p else 3)
    elif kind in ("target", "target-comodule"):
        if len(p) != 1:
            raise InvalidParams(f"build-module {kind} expects an algebra file")
        A = builders.load(p[0], args.dim_cap)
        M = modalg.target_module(A) if kind == "target" else modalg.target_comodule(A)
    elif kind in ("subgroup", "cosets"):
        if len(p) < 2:
            raise InvalidParams(f"build-module {kind} expects a group and generators")
        fn = modalg.subgroup_algebra if kind == "subgroup" else modalg.coset_algebra
        M = fn(p[0], p[1:])
    else:  # pragma: no cover
        raise InvalidParams(f"unknown module kind {kind!r}")
    _emit(modalg.module_dumps(M), args.output)
    return EXIT_PASS


# ------------------------------------------------------------------- report

def _dims_section(A, seed, tol) -> dict:
    D = dimension_data(A, seed, tol)
    inc = inclusion_matrix(A, seed, tol)
    out = {
        "d": D.d,
        "dimA": D.dimA,
        "FPdimA": D.FPdimA,
        "mu": D.mu,
        "f": D.f,
        "Lambda": inc.Lam,
        "v": v_vector(A, seed, tol),
        "S2_spectrum": s2_eigenvalues(A),
        "pseudo_unitary": is_pseudounitary(A, seed, tol),
    }
    if out["pseudo_unitary"]:
        out["pivotal_G"] = canonical_pivotal(A, seed, tol).element
    return out


def _fusion_section(A, seed, tol) -> dict:
    F = fusion_ring(A, seed, tol)
    out = F.to_dict()
    out["FPdim"] = fp_dimensions(F, tol)
    return out


def cmd_report(args) -> int:
    if len(args.items) == 1:
        section, path = "all", args.items[0]
    elif len(args.items) == 2 and args.items[0] in ("fusion", "dims"):
        section, path = args.items
    else:
        raise InvalidParams("usage: wha report [fusion|dims] FILE")
    seed, tol = _seed(args), _tol(args)
    A = builders.load(path, args.dim_cap)
    out = {"algebra": A.label, "dim": A.n, "connectivity": connectivity(A).to_dict(), "hopf": is_hopf(A)}
    if section in ("all", "dims"):
        out["dims"] = _dims_section(A, seed, tol)
    if section in ("all", "fusion"):
        out["fusion"] = _fusion_section(A, seed, tol)
    if args.json:
        _emit(_dump(out), args.output)
    else:
        _emit(_format_report(out), args.output)
    return EXIT_PASS


def _format_report(out: dict) -> str:
    j = jsonable(out)
    lines = [f"algebra {j['algebra']} (dim {j['dim']}, hopf={j['hopf']})",
             f"connectivity: {j['connectivity']}"]
    if "dims" in j:
        d = j["dims"]
        lines.append(f"d = {d['d']}  dim(A) = {d['dimA']}  FPdim(A) = {d['FPdimA']}  mu(A) = {d['mu']}")
        lines.append(f"f = {d['f']}")
        lines.append(f"Lambda = {d['Lambda']}")
        lines.append(f"v = {d['v']}")
        lines.append(f"S^2 spectrum = {d['S2_spectrum']}")
        lines.append(f"pseudo-unitary: {d['pseudo_unitary']}")
        if "pivotal_G" in d:
            lines.append(f"pivotal G = {d['pivotal_G']}")
    if "fusion" in j:
        fr = j["fusion"]
        lines.append(f"fusion ring of rank {fr['rank']}, unit {fr['unit']}, star {fr['star']}")
        lines.append(f"FPdim = {fr['FPdim']}")
        for i, row in enumerate(fr["N"]):
            lines.append(f"  N[{i}] = {row}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- check-all

def _entry(name, anchor, verdict, details=None) -> dict:
    e = {"name": name, "anchor": anchor, "verdict": verdict}
    if details is not None:
        e["details"] = details
    return e


def _run(name, anchor, fn):
    """Run one verifier; precondition errors mark it n/a, VerificationFailure marks it failed."""
    try:
        ok, details = fn()
    except NOT_APPLICABLE as exc:
        return _entry(name, anchor, "n/a", f"{type(exc).__name__}: {exc}")
    except InternalInconsistency:
        raise
    except VerificationFailure as exc:
        return _entry(name, anchor, "fail", f"{type(exc).__name__}: {exc}")
    except WHAError as exc:
        return _entry(name, anchor, "fail", f"{type(exc).__name__}: {exc}")
    return _entry(name, anchor, "pass" if ok else "fail", details)


def check_all(A, seed: int, tol: Tolerances) -> dict:
    conn = connectivity(A)
    checks = []
    axioms = verify_axioms(A)
    checks.append(_entry("verify_axioms", "Weak Hopf algebra axioms", "pass" if axioms.passed else "fail",
                         axioms.to_dict() if not axioms.passed else None))
    plan = []

    def rep(r):
        return r.verdict, r.to_dict()

    def battery():
        r = semisimplicity_battery(A, require_biconnected=False)
        d = r.to_dict()
        if not conn.biconnected:
            d["note"] = "not biconnected; conditions compared without the biconnectedness hypothesis"
        return r.verdict, d

    def counitals():
        if not conn.biconnected:
            raise NotBiconnected("the counital formula for lambda needs a biconnected algebra")
        return rep(counitals_of_lambda_check(A, True, seed, tol))

    def fp_checks():
        if not is_pseudounitary(A, seed, tol):
            raise NotPseudoUnitary(f"{A.label or 'algebra'} is not pseudo-unitary")
        w = fp_element(A, seed, tol)
        G = canonical_pivotal(A, seed, tol)
        r = verify_pivotal(A, G, seed, tol)
        d = r.to_dict()
        d["w"] = w.w
        d["G"] = G.element
        return r.verdict, d

    def wcol():
        if not conn.biconnected:
            raise NotBiconnected("w_{A*} needs a connected dual")
        return w_colinearity(A, seed, tol), None

    def positivity():
        return positivity_criterion(A, seed, tol), None

    def classeq():
        r = class_equation(A, seed, tol)
        return True, r.to_dict()

    plan = [
        ("semisimplicity_battery", "Equivalent characterizations of semisimplicity", battery),
        ("counitals_of_lambda_check", "Counital images of the canonical integral", counitals),
        ("verify_radford", "Radford S^4 formula", lambda: (verify_radford(A), None)),
        ("trace_formula_1", "First trace formula", lambda: rep(trace_formula_1(A, seed))),
        ("verify_LL", "Inclusion matrix eigenvector identities", lambda: rep(verify_LL(A, seed, tol))),
        ("fp_element", "Frobenius-Perron element and canonical pivotal structure", fp_checks),
        ("w_colinearity", "Colinearity of Frobenius-Perron elements of A and A*", wcol),
        ("positivity_criterion", "Pseudo-unitarity iff positive S^2 spectrum", positivity),
        ("class_equation", "Class equation", classeq),
        ("second_trace_formula", "Second trace formula", lambda: rep(second_trace_formula(A, seed, tol))),
    ]
    for name, anchor, fn in plan:
        if not axioms.passed:
            checks.append(_entry(name, anchor, "skipped", "axioms fail"))
            continue
        checks.append(_run(name, anchor, fn))
    verdict = "fail" if any(c["verdict"] == "fail" for c in checks) else "pass"
    return {
        "algebra": A.label,
        "dim": A.n,
        "seed": seed,
        "tolerances": {"eig_cluster": tol.eig_cluster, "int_round": tol.int_round, "zero": tol.zero},
        "connectivity": conn.to_dict(),
        "checks": checks,
        "verdict": verdict,
    }


def cmd_check_all(args) -> int:
    seed, tol = _seed(args), _tol(args)
    A = builders.load(args.file, args.dim_cap, validate=False)
    if A.antipode is None:
        A = A.with_antipode(solve_antipode(A))
    start = time.perf_counter()
    out = check_all(A, seed, tol)
    elapsed = time.perf_counter() - start
    if args.json:
        _emit(_dump(out), args.output)
    else:
        lines = [f"check-all {out['algebra']} (dim {out['dim']}, seed {seed})"]
        for c in jsonable(out["checks"]):
            line = f"  [{c['verdict']:>7}] {c['anchor']} ({c['name']})"
            if c["verdict"] != "pass" and isinstance(c.get("details"), str):
                line += f": {c['details']}"
            lines.append(line)
        first = next((c for c in out["checks"] if c["verdict"] == "fail"), None)
        if first is not None:
            lines.append(f"first failure: {first['anchor']}")
        lines.append(f"verdict: {out['verdict']}  ({elapsed:.2f} s)")
        _emit("\n".join(lines) + "\n", args.output)
    return EXIT_PASS if out["verdict"] == "pass" else EXIT_FAIL


# ----------------------------------------------------------- class-equation

def cmd_class_equation(args) -> int:
    seed, tol = _seed(args), _tol(args)
    A = builders.load(args.file, args.dim_cap)
    r = class_equation(A, seed, tol)
    out = {"algebra": A.label, **r.to_dict()}
    if args.json:
        _emit(_dump(out), args.output)
        return EXIT_PASS
    lines = [f"class equation for {A.label}: dim(A) = {out['dimA']}"]
    lines.append(f"{'i':>3}  {'n_i':>14}  {'dim(A)/n_i':>14}  verdict  e_i")
    for i, (t, ratio, v, e) in enumerate(zip(out["terms"], out["ratios"], out["verdicts"], out["idempotents"])):
        lines.append(f"{i + 1:>3}  {_c(t):>14}  {_c(ratio):>14}  {v}  {[_c(c) for c in e]}")
    lines.append(f"sum n_i = {_c(r.sum)}")
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_PASS


def _c(z) -> str:
    if isinstance(z, list):
        z = complex(z[0], z[1])
    z = complex(z)
    if abs(z.imag) < 1e-10:
        return f"{z.real:.10g}"
    return f"{z.real:.6g}{z.imag:+.6g}i"


# ------------------------------------------------------------------- modalg

def modalg_report(A, M, mode: str, seed: int, tol: Tolerances) -> dict:
    out = {"algebra": A.label, "module": M.label, "mode": mode, "checks": []}
    checks = out["checks"]
    if mode == "module":
        if not isinstance(M, modalg.ModuleAlgebra):
            raise InputError("module mode needs a file with an 'action' tensor")
        r = modalg.verify_module_algebra(A, M)
        checks.append(_entry("verify_module_algebra", "Module algebra axioms", _pf(r.verdict), r.to_dict()))
        if r.verdict:
            s = modalg.radical_stability(A, M, seed, tol)
            checks.append(_entry("verify_radical_stability", "Stability of the Jacobson radical",
                                 _pf(s.verdict), s.to_dict()))
    else:
        if not isinstance(M, modalg.ComoduleAlgebra):
            raise InputError("comodule mode needs a file with a 'coaction' tensor")
        r = modalg.verify_comodule_algebra(A, M)
        checks.append(_entry("verify_comodule_algebra", "Comodule algebra axioms", _pf(r.verdict), r.to_dict()))
        if r.verdict:
            rm = modalg.verify_right_module_algebra(dual(A), modalg.comodule_to_module(A, M))
            checks.append(_entry("comodule_to_module", "Right A*-module algebra from the coaction",
                                 _pf(rm.verdict), rm.to_dict()))
            K = modalg.k0_module(A, M, seed, tol)
            checks.append(_entry("k0_module", "Frobenius-Perron character of M", "pass", K.to_dict()))
            o = modalg.orbit_theorem_check(A, M, seed, tol)
            checks.append(_entry("orbit_theorem_check", "Frobenius-Perron divisibility for comodule algebras",
                                 _pf(o.verdict), o.to_dict()))
    out["verdict"] = "fail" if any(c["verdict"] == "fail" for c in checks) else "pass"
    return out


def _pf(ok: bool) -> str:
    return "pass" if ok else "fail"


def cmd_modalg(args) -> int:
    seed, tol = _seed(args), _tol(args)
    A = builders.load(args.algebra, args.dim_cap)
    M = modalg.module_load(args.module, A, args.dim_cap)
    out = modalg_report(A, M, args.mode, seed, tol)
    if args.json:
        _emit(_dump(out), args.output)
    else:
        lines = [f"{args.mode} algebra {out['module']} over {out['algebra']}"]
        for c in out["checks"]:
            lines.append(f"  [{c['verdict']:>4}] {c['anchor']} ({c['name']})")
            det = c.get("details") or {}
            for e in det.get("entries", []):
                lines.append(f"      {'ok ' if e['verdict'] else 'BAD'} {e['condition']}")
            if "verdicts" in det:
                lines.append(f"      ratios: {jsonable(det['ratios'])}")
                lines.append(f"      verdicts: {det['verdicts']}")
        lines.append(f"verdict: {out['verdict']}")
        _emit("\n".join(lines) + "\n", args.output)
    return EXIT_PASS if out["verdict"] == "pass" else EXIT_FAIL


# ------------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--output", help="write output to PATH instead of stdout")
    common.add_argument("--json", action="store_true", help="machine-readable JSON output")
    common.add_argument("--seed", type=lambda s: int(s, 0), default=None,
                        help="random seed (default: $WHA_SEED or a fixed constant)")
    common.add_argument("--tol-eig", type=float, default=None, help="eigenvalue clustering tolerance")
    common.add_argument("--tol-int", type=float, default=None, help="integer rounding tolerance")
    common.add_argument("--dim-cap", type=int, default=builders.DEFAULT_DIM_CAP, help="maximum dimension")

    p = argparse.ArgumentParser(prog="wha", description="Weak Hopf algebra laboratory.")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", parents=[common], help="build an example algebra file")
    b.add_argument("kind", choices=["pair", "group", "groupoid", "dual", "direct-sum", "example"])
    b.add_argument("params", nargs="*")
    b.set_defaults(func=cmd_build)

    bm = sub.add_parser("build-module", parents=[common], help="build an example (co)module algebra file")
    bm.add_argument("kind", choices=["dual-numbers", "std-rep", "target", "target-comodule", "subgroup", "cosets"])
    bm.add_argument("params", nargs="*")
    bm.set_defaults(func=cmd_build_module)

    r = sub.add_parser("report", parents=[common], help="dimensions and fusion data")
    r.add_argument("items", nargs="+", metavar="[fusion|dims] FILE")
    r.set_defaults(func=cmd_report)

    c = sub.add_parser("check-all", parents=[common], help="run every verifier")
    c.add_argument("file")
    c.set_defaults(func=cmd_check_all)

    ce = sub.add_parser("class-equation", parents=[common], help="class equation table")
    ce.add_argument("file")
    ce.set_defaults(func=cmd_class_equation)

    m = sub.add_parser("modalg", parents=[common], help="verify a module or comodule algebra")
    m.add_argument("algebra")
    m.add_argument("module")
    m.add_argument("--mode", choices=["module", "comodule"], default="module")
    m.set_defaults(func=cmd_modalg)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "dim_cap", 1) < 1:
        parser.error("--dim-cap must be at least 1")
    try:
        return args.func(args)
    except InternalInconsistency as exc:
        print(f"internal inconsistency: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except VerificationFailure as exc:
        print(f"verification failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (InputError, Decomposable, NotSemisimpleM) + NOT_APPLICABLE as exc:
        print(f"input error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except WHAError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
