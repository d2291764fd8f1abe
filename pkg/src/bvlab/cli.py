"""``bvlab`` command-line front end.

Commands
--------
diagonalize  Hamiltonian JSON → normal form, spectrum, quasi-spin forms
convert      one representation of an SU(4)/SO(6) element → another
verify       transformation coefficients (λ JSON) → CAR report
jw           Jordan-Wigner dictionaries, optionally applied to a Hamiltonian
selftest     seeded battery of identity checks

Every report is deterministic JSON (sorted keys, no timestamp) holding the
result, all residuals checked on the way and the tool version.  Exit
status: 0 all residuals within tolerance, 1 some residual out of
tolerance, 2 unreadable input, 3 a mathematical precondition failed.
"""

import argparse
import json
import sys
from collections import deque

import numpy as np
import scipy.linalg

from . import bv_transform as bv
from . import exterior_algebra as ea
from . import group_maps as gm
from . import hamiltonian_lab as hl
from . import spin_maps as sm
from ._version import __version__
from .errors import (
    BVLabError, CanonicalViolation, CayleySingular, DegenerateFactorization,
    DegenerateT0, NotAntisymmetric, NotHermitian, NotOrthogonal,
    NotSpecialUnitary, OneModeConstraintViolation, ParamConstraintViolation,
    ZeroL00,
)
from .selftest import run_selftest
from .tolerances import env_tolerance

ENDPOINTS = ("su4-matrix", "su4-params", "so6", "cayley", "chi", "ostlund", "lambda")
JW_TARGETS = ("spin-half", "spin-three-half")

EXIT_OK, EXIT_RESIDUAL, EXIT_PARSE, EXIT_MATH = 0, 1, 2, 3

#: which condition each precondition error stands for (named in reports)
VIOLATED = {
    CayleySingular: "cayley_regularity: det(1 - A) != 0, L has no eigenvalue -1",
    CanonicalViolation: "car_preservation: {d_k, d_l} = -2 delta_kl",
    DegenerateFactorization: "simple_bivector: rank-2 factorization",
    DegenerateT0: "t0_modulus: |T0| > 0 for the trace route",
    NotAntisymmetric: "antisymmetry",
    NotHermitian: "hermiticity_relations",
    NotOrthogonal: "special_orthogonality: L L^T = 1, det L = 1",
    NotSpecialUnitary: "special_unitarity: U U^dagger = 1, det U = 1",
    OneModeConstraintViolation: "one_mode_normalization",
    ParamConstraintViolation: "su4_parameter_constraints",
    ZeroL00: "reference_entry: L00 != 0",
}


class InputError(Exception):
    """Input file does not match the expected schema."""


# ---------------------------------------------------------------------------
# JSON helpers
# ---------------------------------------------------------------------------

def cplx(z):
    z = complex(z)
    return [float(z.real), float(z.imag)]


def cmat(M):
    M = np.asarray(M)
    if np.iscomplexobj(M):
        return [[cplx(z) for z in row] for row in M]
    return [[float(x) for x in row] for row in M]


def _num(x):
    if isinstance(x, (list, tuple)):
        if len(x) != 2:
            raise InputError("complex numbers must be [re, im]")
        return complex(float(x[0]), float(x[1]))
    if isinstance(x, (int, float)):
        return complex(x)
    raise InputError(f"not a number: {x!r}")


def read_matrix(obj, key, n, antisymmetric=False):
    """Nested row-major matrix, or strict upper triangle with ``"packed": true``."""
    if key not in obj:
        raise InputError(f"missing key {key!r}")
    raw = obj[key]
    if obj.get("packed", False) and antisymmetric:
        vals = [_num(x) for x in raw]
        if len(vals) != n * (n - 1) // 2:
            raise InputError(f"packed {key!r} needs {n * (n - 1) // 2} entries")
        M = np.zeros((n, n), dtype=complex)
        M[np.triu_indices(n, 1)] = vals
        M = M - M.T
    else:
        if len(raw) != n or any(len(r) != n for r in raw):
            raise InputError(f"{key!r} must be {n}×{n}")
        M = np.array([[_num(x) for x in row] for row in raw], dtype=complex)
    if np.max(np.abs(M.imag)) == 0.0:
        return M.real
    return M


def _real(M, what):
    M = np.asarray(M)
    if np.iscomplexobj(M):
        if np.max(np.abs(M.imag)) > 0:
            raise InputError(f"{what} must be real")
        M = M.real
    return np.asarray(M, dtype=float)


def load_endpoint(kind, obj):
    if kind == "su4-matrix":
        return np.asarray(read_matrix(obj, "U", 4), dtype=complex)
    if kind == "su4-params":
        if "t0" not in obj:
            raise InputError("missing key 't0'")
        return gm.SU4Params(_num(obj["t0"]),
                            np.asarray(read_matrix(obj, "t", 6, True), dtype=complex))
    if kind == "so6":
        return _real(read_matrix(obj, "L", 6), "L")
    if kind == "cayley":
        return _real(read_matrix(obj, "A", 6, True), "A")
    if kind == "chi":
        return _real(read_matrix(obj, "chi", 15), "chi")
    if kind == "ostlund":
        return np.asarray(read_matrix(obj, "X", 4), dtype=complex)
    if kind == "lambda":
        raw = obj.get("lambda", obj)
        try:
            return bv.LambdaCoeffs.from_json(raw)
        except (KeyError, TypeError, IndexError) as exc:
            raise InputError(f"bad lambda coefficients: {exc}") from exc
    raise InputError(f"unknown endpoint {kind!r}")


def dump_endpoint(kind, value):
    if kind == "su4-matrix":
        return {"U": cmat(value)}
    if kind == "su4-params":
        return {"t0": cplx(value.t0), "t": cmat(np.asarray(value.t, dtype=complex))}
    if kind == "so6":
        return {"L": cmat(value)}
    if kind == "cayley":
        return {"A": cmat(value)}
    if kind == "chi":
        return {"chi": cmat(value)}
    if kind == "ostlund":
        return {"X": cmat(value)}
    if kind == "lambda":
        return {"lambda": value.to_json()}
    raise InputError(f"unknown endpoint {kind!r}")


def _maxabs(X):
    return float(np.max(np.abs(np.asarray(X))))


# ---------------------------------------------------------------------------
# Conversion web
# ---------------------------------------------------------------------------

def _orth_res(L):
    return {"orthogonality": _maxabs(L @ L.T - np.eye(6)),
            "determinant": float(abs(np.linalg.det(L) - 1.0))}


def _u_to_p(U):
    p = gm.params_from_matrix(U)
    return p, {"expansion_roundtrip": _maxabs(gm.matrix_from_params(p) - U)}, None


def _p_to_u(p):
    U = gm.matrix_from_params(p)
    norm, anti = gm.param_constraint_residuals(p)
    return U, {"parameter_normalization": norm, "parameter_consistency": anti,
               "unitarity": _maxabs(U @ U.conj().T - np.eye(4)),
               "unit_determinant": float(abs(np.linalg.det(U) - 1.0))}, None


def _u_to_l(U):
    L = gm.so6_from_su4(U)
    res = _orth_res(L)
    res["adjoint_equals_compound"] = _maxabs(gm.adjoint_rep(U) - ea.compound(L.T, 2))
    res["sign_invariance"] = _maxabs(gm.so6_from_su4(-U) - L)
    return L, res, None


def _p_to_l(p):
    Lc = gm.so6_from_params(p)
    r1, r2, r3 = gm.so6_imaginary_residuals(p)
    L = Lc.real
    res = _orth_res(L)
    res.update({"imaginary_part": _maxabs(Lc.imag), "imaginary_cancellation_1": r1,
                "imaginary_cancellation_2": r2, "imaginary_cancellation_trace": r3})
    return L, res, None


def _l_to_p(L):
    res = {"trace_identity": gm.trace_identity_residual(L)}
    if gm.t0_modulus_squared(L) >= 1e-6:
        kr = gm.su4_candidates_from_L(L)
        cands = [{"params": dump_endpoint("su4-params", p), "valid": bool(v),
                  "residual": float(r)}
                 for p, v, r in zip(kr.candidates, kr.valid, kr.residuals)]
        valid = [p for p, v in zip(kr.candidates, kr.valid) if v]
        p = valid[0]
        res["lift_reproduces_L"] = min(r for r, v in zip(kr.residuals, kr.valid) if v)
        res["t0_modulus"] = float(abs(abs(p.t0) ** 2 - kr.t0_abs2))
        return p, res, {"route": "trace", "candidates": cands}
    U = gm.su4_from_L(L)
    p = gm.params_from_matrix(U)
    res["lift_reproduces_L"] = _maxabs(gm.so6_from_su4(U) - L)
    cands = [{"params": dump_endpoint("su4-params", q), "valid": True} for q in (p, -p)]
    return p, res, {"route": "logarithm", "candidates": cands}


def _l_to_u(L):
    U = gm.su4_from_L(L)
    res = {"lift_reproduces_L": _maxabs(gm.so6_from_su4(U) - L)}
    return U, res, {"candidates": [cmat(U), cmat(-U)]}


def _l_to_a(L):
    A = gm.cayley_A_from_L(L)
    return A, {"cayley_roundtrip": _maxabs(gm.cayley_L_from_A(A) - L)}, None


def _a_to_l(A):
    L = gm.cayley_L_from_A(A)
    res = _orth_res(L)
    res["cayley_polynomial_form"] = _maxabs(gm.cayley_L_from_A_poly(A) - L)
    return L, res, None


def _a_to_p(A):
    p = gm.su4_from_A(A, 1)
    L = gm.cayley_L_from_A(A)
    res = {"cayley_lift_reproduces_L": _maxabs(gm.so6_from_params(p) - L),
           "plane_product_form": _maxabs(gm.su4_from_A_planes(A, 1)
                                         - gm.matrix_from_params(p))}
    cands = [dump_endpoint("su4-params", q) for q in (p, -p)]
    return p, res, {"candidates": cands}


def _p_to_a(p):
    A = gm.A_from_params(p)
    res = {"cayley_parameter_consistency":
           _maxabs(gm.cayley_L_from_A(A) - gm.so6_from_params(p).real)}
    return A, res, None


def _l_to_chi(L):
    C = gm.chi_from_L(L)
    return C, {"chi_orthogonality": _maxabs(C @ C.T - np.eye(15)),
               "chi_determinant": float(abs(np.linalg.det(C) - 1.0)),
               "chi_self_duality": gm.chi_self_duality_residual(C)}, None


def _chi_to_l(C):
    L = gm.L_from_chi(C)
    res = _orth_res(L)
    res["compound_reproduces_chi"] = _maxabs(ea.compound(L, 2) - C)
    return L, res, {"candidates": [cmat(L), cmat(-L)], "representative": "L00 > 0"}


def _u_to_x(U):
    X = gm.ostlund_from_matrix(U)
    return X, {"ostlund_roundtrip": _maxabs(gm.ostlund_matrix(X) - U)}, None


def _x_to_u(X):
    U = gm.ostlund_matrix(X)
    return U, {"unitarity": _maxabs(U @ U.conj().T - np.eye(4)),
               "unit_determinant": float(abs(np.linalg.det(U) - 1.0))}, None


def _p_to_x(p):
    X = gm.ostlund_from_params(p)
    ref = gm.ostlund_from_matrix(gm.matrix_from_params(p))
    return X, {"ostlund_table_vs_states": _maxabs(X - ref)}, None


def _x_to_p(X):
    p = gm.params_from_ostlund(X)
    ref = gm.params_from_matrix(gm.ostlund_matrix(X))
    return p, {"ostlund_table_vs_states": max(abs(p.t0 - ref.t0), _maxabs(p.t - ref.t))}, None


def _l_to_lam(L):
    lam = bv.lambda_from_L(L)
    ref = bv.lambda_from_L_projection(L)
    rep = bv.verify_car(bv.chi_tensors_from_kappa(bv.kappa_from_lambda(lam)))
    return lam, {"lambda_routes_agree": _maxabs(lam.values - ref.values),
                 "car_matrix": rep.matrix_residual,
                 "trace_condition": _maxabs(lam.trace_residuals())}, None


def _lam_to_l(lam):
    L = bv.so6_from_lambda(lam)
    back = bv.lambda_from_L(L)
    res = _orth_res(L)
    res["structural_solve_reproduces_lambda"] = _maxabs(back.values - lam.values)
    return L, res, {"candidates": [cmat(L), cmat(-L)]}


ARROWS = {
    ("su4-matrix", "su4-params"): _u_to_p,
    ("su4-params", "su4-matrix"): _p_to_u,
    ("su4-matrix", "so6"): _u_to_l,
    ("su4-params", "so6"): _p_to_l,
    ("so6", "su4-params"): _l_to_p,
    ("so6", "su4-matrix"): _l_to_u,
    ("so6", "cayley"): _l_to_a,
    ("cayley", "so6"): _a_to_l,
    ("cayley", "su4-params"): _a_to_p,
    ("su4-params", "cayley"): _p_to_a,
    ("so6", "chi"): _l_to_chi,
    ("chi", "so6"): _chi_to_l,
    ("su4-matrix", "ostlund"): _u_to_x,
    ("ostlund", "su4-matrix"): _x_to_u,
    ("su4-params", "ostlund"): _p_to_x,
    ("ostlund", "su4-params"): _x_to_p,
    ("so6", "lambda"): _l_to_lam,
    ("lambda", "so6"): _lam_to_l,
}


def conversion_path(src, dst):
    """Shortest chain of arrows from `src` to `dst` (breadth first)."""
    if src == dst:
        return [src]
    prev = {src: None}
    queue = deque([src])
    while queue:
        node = queue.popleft()
        for a, b in ARROWS:
            if a == node and b not in prev:
                prev[b] = a
                if b == dst:
                    path = [b]
                    while prev[path[-1]] is not None:
                        path.append(prev[path[-1]])
                    return path[::-1]
                queue.append(b)
    raise InputError(f"no conversion from {src} to {dst}")


def convert(src, dst, value):
    """Follow the arrow chain; returns (value, per-arrow steps)."""
    path = conversion_path(src, dst)
    steps = []
    for a, b in zip(path, path[1:]):
        value, res, extra = ARROWS[(a, b)](value)
        step = {"arrow": f"{a} -> {b}", "residuals": res}
        if extra:
            step.update(extra)
        steps.append(step)
    return value, steps


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def _gate(residuals, tol):
    return all(np.isfinite(v) and v <= tol for v in residuals.values())


def cmd_convert(args, obj, tol):
    if args.from_ is None or args.to is None:
        raise InputError("convert needs --from and --to")
    for e in (args.from_, args.to):
        if e not in ENDPOINTS:
            raise InputError(f"unknown endpoint {e!r}; choose from {ENDPOINTS}")
    value = load_endpoint(args.from_, obj)
    out, steps = convert(args.from_, args.to, value)
    residuals = {f"{s['arrow']}: {k}": v for s in steps for k, v in s["residuals"].items()}
    result = {"from": args.from_, "to": args.to, "value": dump_endpoint(args.to, out),
              "steps": steps}
    return result, residuals


def _hamiltonian(obj):
    try:
        return hl.HamiltonianCoeffs.from_json(obj)
    except (KeyError, TypeError, IndexError) as exc:
        raise InputError(f"bad Hamiltonian coefficients: {exc}") from exc


def cmd_diagonalize(args, obj, tol):
    h = _hamiltonian(obj)
    ok, herm = hl.validate_hermiticity(h)
    if not ok:
        worst = max(herm, key=herm.get)
        raise NotHermitian(f"hermiticity violated: {worst} off by {herm[worst]:.2e}")
    q = hl.quasiparticle_form(h)
    sd = q.spectral
    H = hl.hamiltonian_matrix(h)
    Y, c0 = hl.y_matrix(h)
    ci = hl.characteristic_invariants(Y)
    forms = sm.quasi_spin_forms(sd, q.V, H, variant=args.variant)
    Yp, _, imag = hl.y_from_matrix(H)
    scale = max(1.0, float(np.max(np.abs(np.linalg.eigvalsh(H)))))
    nu2 = np.sort(sd.nu ** 2)
    residuals = {k: v / scale for k, v in q.residuals.items()}
    residuals.update({
        "y_matrix_closed_vs_projection": _maxabs(Y - Yp) / scale,
        "characteristic_cubic": _maxabs(np.sort(-ci.roots) - nu2) / max(1.0, nu2.max()),
        "quasi_spin_half_form": forms.residuals["spin_half_matrix"] / scale,
        "quasi_spin_three_half_form": forms.residuals["spin_three_half_matrix"] / scale,
    })
    for k, v in hl.invariant_identities(sd).items():
        residuals[f"invariant {k}"] = v / scale ** 4 if "det" in k or "^4" in k else v / scale ** 2
    result = {
        "hermiticity": herm,
        "spectral": sd.to_json(),
        "number_form": q.number_coefficients,
        "eigenvalues": np.sort(np.linalg.eigvalsh(H)).tolist(),
        "reference_levels": q.stated_levels().tolist(),
        "characteristic": {
            "tr_Y2": ci.tr2, "tr_Y4": ci.tr4, "det_Y": ci.det, "pf_Y": ci.pf,
            "cubic_coefficients": list(ci.coefficients),
            "roots": ci.roots.tolist(), "discriminant": ci.discriminant,
            "degenerate_pair": None if ci.degenerate_pair is None else list(ci.degenerate_pair),
        },
        "quasi_spin": {
            "variant": args.variant,
            "spin_half": forms.spin_half,
            "spin_three_half": forms.spin_three_half,
            "reference_spin_half": forms.reference_spin_half,
            "reference_spin_three_half": forms.reference_spin_three_half,
            "reference_discrepancy": forms.reference_discrepancy(),
        },
        "projection_imaginary_part": imag,
    }
    return result, residuals


def cmd_verify(args, obj, tol):
    lam = load_endpoint("lambda", obj)
    t = bv.chi_tensors_from_kappa(bv.kappa_from_lambda(lam))
    rep = bv.verify_car(t, tol=tol)
    trace = lam.trace_residuals()
    residuals = {
        "car_scalar": rep.scalar_residual, "car_vector": rep.vector_residual,
        "car_bivector": rep.bivector_residual, "car_trivector": rep.trivector_residual,
        "car_quadrivector": rep.quadrivector_residual, "car_matrix": rep.matrix_residual,
        "trace_condition": _maxabs(trace),
    }
    result = {"car": rep.as_dict(), "canonical": bool(_gate(residuals, tol))}
    if result["canonical"]:
        # already gated at the caller's tolerance: factor without re-checking
        L_raw = bv.so6_from_zero_rows(t.zero_rows(), max(bv.EPS_REC, tol))
        L = scipy.linalg.polar(L_raw)[0]
        residuals["so6_projection"] = _maxabs(L - L_raw)
        result["so6_candidates"] = [cmat(L), cmat(-L)]
        residuals["structural_solve_reproduces_lambda"] = _maxabs(
            bv.lambda_from_L(L).values - lam.values)
    return result, residuals


def _fock_ops():
    from .clifford_core import default_basis
    b = default_basis()
    return b, (b.a[0], b.adag[0], b.a[1], b.adag[1])


def cmd_jw(args, obj, tol):
    target = args.target or "spin-half"
    if target not in JW_TARGETS:
        raise InputError(f"unknown jw target {target!r}; choose from {JW_TARGETS}")
    b, ferm = _fock_ops()
    result, residuals = {"target": target}, {}
    if target == "spin-half":
        s = sm.jw_spin_half(b, args.variant)
        residuals.update(sm.spin_half_residuals(s))
        back = sm.fermion_from_spin_half(s)
        result["variant"] = args.variant
        result["operators"] = {f"S{k + 1}{n}": cmat(M) for k in range(2)
                               for n, M in (("+", s.plus[k]), ("-", s.minus[k]), ("z", s.z[k]))}
    else:
        J = sm.jw_spin_three_half(b)
        residuals.update(sm.spin_three_half_residuals(J))
        back = sm.fermion_from_spin_three_half(J)
        result["operators"] = {"I+": cmat(J.plus), "I-": cmat(J.minus), "Iz": cmat(J.z)}
        result["Iz_spectrum"] = np.linalg.eigvalsh(J.z).tolist()
    residuals["fermion_roundtrip"] = max(_maxabs(x - y) for x, y in zip(back, ferm))
    if obj is not None:
        h = _hamiltonian(obj)
        q = hl.quasiparticle_form(h)
        H = hl.hamiltonian_matrix(h)
        f = sm.quasi_spin_forms(q.spectral, q.V, H, variant=args.variant)
        scale = max(1.0, float(np.max(np.abs(np.linalg.eigvalsh(H)))))
        if target == "spin-half":
            result["quasi_spin_form"] = f.spin_half
            result["reference_form"] = f.reference_spin_half
            residuals["quasi_spin_form"] = f.residuals["spin_half_matrix"] / scale
        else:
            result["quasi_spin_form"] = f.spin_three_half
            result["reference_form"] = f.reference_spin_three_half
            residuals["quasi_spin_form"] = f.residuals["spin_three_half_matrix"] / scale
        result["reference_discrepancy"] = f.reference_discrepancy()
    return result, residuals


def cmd_selftest(args, obj, tol):
    checks = run_selftest(seed=args.seed)
    result = {"checks": [c.as_dict() for c in checks], "count": len(checks),
              "passed": sum(c.passed for c in checks)}
    # each check carries its own tolerance; gate on the normalized ratio
    residuals = {c.tag: (c.residual / c.tol if c.passed else float("inf")) for c in checks}
    return result, residuals


COMMANDS = {
    "diagonalize": cmd_diagonalize,
    "convert": cmd_convert,
    "verify": cmd_verify,
    "jw": cmd_jw,
    "selftest": cmd_selftest,
}

DEFAULT_TOL = {"diagonalize": 1e-9, "convert": 1e-8, "verify": 1e-10, "jw": 1e-12,
               "selftest": 1.0}


def build_parser():
    p = argparse.ArgumentParser(prog="bvlab", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"bvlab {__version__}")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("--input", "-i", help="input JSON file")
    p.add_argument("--output", "-o", help="report file (default: stdout)")
    p.add_argument("--tol", type=float, default=None,
                   help="gating tolerance (default per command, or BVLAB_TOL)")
    p.add_argument("--from", dest="from_", choices=ENDPOINTS, help="convert: source")
    p.add_argument("--to", choices=ENDPOINTS, help="convert: target")
    p.add_argument("--target", choices=JW_TARGETS, help="jw: spin system")
    p.add_argument("--variant", choices=sm.SPIN_HALF_VARIANTS, default="hole",
                   help="spin-1/2 convention")
    p.add_argument("--seed", type=int, default=0, help="selftest: RNG seed")
    return p


def _write(report, path):
    text = json.dumps(report, indent=2, sort_keys=True, allow_nan=True) + "\n"
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _read(path):
    if path is None:
        return None
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def run(args):
    """Execute one job; returns (exit status, report dict)."""
    tol = args.tol if args.tol is not None else env_tolerance(DEFAULT_TOL[args.command])
    report = {"tool": "bvlab", "version": __version__, "command": args.command,
              "tolerance": tol}
    try:
        obj = _read(args.input)
        if obj is None and args.command in ("diagonalize", "convert", "verify"):
            raise InputError(f"{args.command} needs --input")
        result, residuals = COMMANDS[args.command](args, obj, tol)
    except BVLabError as exc:
        violated = next((v for cls, v in VIOLATED.items() if isinstance(exc, cls)),
                        "precondition")
        report["error"] = {"kind": "precondition", "type": type(exc).__name__,
                           "violated": violated, "message": str(exc)}
        return EXIT_MATH, report
    except (InputError, OSError, json.JSONDecodeError, ValueError, KeyError, TypeError) as exc:
        report["error"] = {"kind": "input", "type": type(exc).__name__, "message": str(exc)}
        return EXIT_PARSE, report
    report["result"] = result
    report["residuals"] = {k: float(v) for k, v in sorted(residuals.items())}
    report["within_tolerance"] = bool(_gate(residuals, tol))
    return (EXIT_OK if report["within_tolerance"] else EXIT_RESIDUAL), report


def main(argv=None):
    args = build_parser().parse_args(argv)
    status, report = run(args)
    try:
        _write(report, args.output)
    except OSError as exc:
        sys.stderr.write(f"bvlab: cannot write report: {exc}\n")
        return EXIT_PARSE
    if status != EXIT_OK and "error" in report:
        sys.stderr.write(f"bvlab: {report['error']['type']}: {report['error']['message']}\n")
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
