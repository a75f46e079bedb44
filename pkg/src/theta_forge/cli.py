"""Command-line entry point: JSON in, JSON out.

Exit codes: 0 success, 1 malformed input, 2 domain error, 3 precision or
numerical basis failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

import numpy as np
import sympy as sp
from sympy.parsing.sympy_parser import parse_expr

from . import __version__
from .charspace import HalfChar, all_even_gopel_groups, enumerate_gopel_groups, gopel_systems, system_census
from .classify import classify_curve
from .cyclic import (
    PARSE_TRANSFORMS,
    PARTITIONS,
    algorithm1_scaffold,
    case2_constraint,
    case2_inverse,
    genus4_case2_reduction,
    picard_params,
)
from .errors import BasisFailure, DomainError, PrecisionUnreachable, ThetaForgeError
from .identities import (
    generate_identities,
    genus2_suite,
    genus3_suite,
    random_siegel,
    verify_identities,
)
from .igusa import D8_POLY, D12_POLYS, L2_POLY, BinarySextic, absolute_invariants, absolute_invariants_numeric, igusa, igusa_numeric, locus_membership
from .periods import HyperellipticCurve, period_matrix
from .theta import EvalParams, RatChar, SiegelPoint, theta, truncation_check
from .thomae import genus3_branch_points, picard_branch_points, verify_thomae


class InputError(Exception):
    """Malformed command-line input (exit code 1)."""


def cj(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def _load_json(text_or_path: str, what: str):
    s = text_or_path.strip()
    if s.startswith(("{", "[")):
        src, name = s, f"inline {what}"
    else:
        try:
            with open(text_or_path, encoding="utf-8") as fh:
                src = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {what} file {text_or_path!r}: {exc.strerror}") from None
        name = text_or_path
    try:
        return json.loads(src)
    except json.JSONDecodeError as exc:
        raise InputError(
            f"malformed JSON in {name}: {exc.msg} at line {exc.lineno} column {exc.colno} (char {exc.pos})"
        ) from None


def _field(data, key, what):
    if not isinstance(data, dict) or key not in data:
        raise InputError(f"{what} JSON needs a {key!r} field")
    return data[key]


def load_tau(arg: str) -> SiegelPoint:
    data = _load_json(arg, "tau")
    _field(data, "re", "tau")
    _field(data, "im", "tau")
    try:
        return SiegelPoint.from_json(data)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, DomainError):
            raise
        raise InputError(f"tau JSON has the wrong shape: {exc}") from None


def load_curve(arg: str) -> HyperellipticCurve:
    data = _load_json(arg, "curve")
    _field(data, "branch_points", "curve")
    _field(data, "genus", "curve")
    return HyperellipticCurve.from_json(data)


def load_char(arg: str):
    data = _load_json(arg, "characteristic")
    if not isinstance(data, dict) or "g" not in data:
        raise InputError("characteristic JSON needs 'g'")
    if "top_num" in data:
        return RatChar.from_json(data)
    return HalfChar.from_json(data)


def _params(args) -> EvalParams:
    return EvalParams(target_abs_tol=args.tol, max_radius=args.max_radius)


def _threads() -> int | None:
    raw = os.environ.get("THETA_FORGE_THREADS")
    if raw is None:
        return None
    try:
        n = int(raw)
    except ValueError:
        raise InputError(f"THETA_FORGE_THREADS must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise InputError("THETA_FORGE_THREADS must be positive")
    return n


def _config(args) -> dict:
    return {
        "tolerance": args.tol,
        "quad_order": args.quad_order,
        "max_radius": args.max_radius,
        "out": args.out,
        "seed": args.seed,
        "threads": _threads(),
        "version": __version__,
    }


# ---------------------------------------------------------------------------
# subcommands


def cmd_gopel(args) -> dict:
    if args.even_only:
        groups = all_even_gopel_groups(args.genus, args.rank)
    else:
        groups = enumerate_gopel_groups(args.genus, args.rank)
    out = []
    for G in groups:
        d = G.to_json()
        d["all_even"] = G.is_all_even()
        if args.systems:
            d["systems"] = [
                {"coset_rep": s.coset_rep.to_json(), "census": list(s.census())} for s in gopel_systems(G)
            ]
            d["census"] = {f"{e}/{o}": n for (e, o), n in sorted(system_census(G).items())}
        out.append(d)
    return {"genus": args.genus, "rank": args.rank, "even_only": args.even_only, "count": len(out), "groups": out}


def cmd_thetanull(args) -> dict:
    tau = load_tau(args.tau)
    ch = load_char(args.char)
    p = _params(args)
    if args.z is None:
        z = np.zeros(tau.g, dtype=complex)
    else:
        raw = _load_json(args.z, "z")
        try:
            z = np.array([complex(*v) if isinstance(v, list) else complex(v) for v in raw])
        except TypeError:
            raise InputError("z must be a list of numbers or [re, im] pairs") from None
    val = theta(z, tau, ch, p)
    return {
        "value": cj(val),
        "abs": abs(val),
        "truncation_change": truncation_check(z, tau, ch, p),
        "characteristic": ch.to_json(),
        "z": [cj(v) for v in z],
    }


def cmd_periods(args) -> dict:
    curve = load_curve(args.curve)
    pd = period_matrix(curve, args.quad_order)
    out = pd.tau.to_json()
    out.update({"curve": curve.to_json(), "basis": pd.basis_tag, "sym_residual": pd.sym_residual})
    return out


def cmd_verify_thomae(args) -> dict:
    curve = load_curve(args.curve)
    pd = period_matrix(curve, args.quad_order)
    rep = verify_thomae(curve, pd, _params(args), args.sign)
    out = rep.to_json()
    out["curve"] = curve.to_json()
    out["tau"] = pd.tau.to_json()
    return out


def cmd_invert(args) -> dict:
    tau = load_tau(args.tau)
    if args.genus != tau.g:
        raise DomainError(f"--genus {args.genus} but tau is {tau.g}x{tau.g}")
    p = _params(args)
    if tau.g == 2:
        sol = picard_branch_points(tau, p)
        lam, mu, nu = sol.values
        return {
            "lambda": cj(lam),
            "mu": cj(mu),
            "nu": cj(nu),
            "residual": sol.diagnostics["thomae_residual"],
            "method": sol.method,
            "diagnostics": sol.diagnostics,
        }
    if tau.g == 3:
        sol = genus3_branch_points(tau, p)
        return {
            "a": [cj(v) for v in sol.values],
            "residual": sol.diagnostics["thomae_residual"],
            "method": sol.method,
            "diagnostics": sol.diagnostics,
        }
    raise DomainError("inversion is implemented for genus 2 and 3")


def _suites(genus: int, all_groups: bool) -> dict:
    if genus == 2:
        return genus2_suite()
    if genus == 3:
        if all_groups:
            return {f"group{i + 1}": generate_identities(G) for i, G in enumerate(all_even_gopel_groups(3, 3))}
        return {"printed": genus3_suite()}
    raise DomainError("identity suites exist for genus 2 and 3")


def cmd_identities(args) -> dict:
    suites = _suites(args.genus, args.all_groups)
    if args.emit:
        return {
            "genus": args.genus,
            "suites": {k: [inst.to_json() for inst in v] for k, v in suites.items()},
            "count": sum(len(v) for v in suites.values()),
        }
    taus = []
    if args.tau is not None:
        taus.append(load_tau(args.tau))
    if args.random:
        rng = np.random.default_rng(args.seed)
        taus += [SiegelPoint.from_json({"re": t.real.tolist(), "im": t.imag.tolist()})
                 for t in (random_siegel(args.genus, rng) for _ in range(args.random))]
    if not taus:
        raise InputError("identities needs --tau, --random N or --emit")
    p = _params(args)
    report = {}
    worst = 0.0
    for name, insts in suites.items():
        vals = [verify_identities(insts, t, p) for t in taus]
        report[name] = {"count": len(insts), "max_residual": max(vals), "per_tau": vals}
        worst = max(worst, max(vals))
    return {"genus": args.genus, "taus": len(taus), "suites": report, "max_residual": worst}


def cmd_classify(args) -> dict:
    curve = load_curve(args.curve)
    res = classify_curve(curve, args.quad_order, _params(args), args.threshold)
    out = res.to_json()
    out["curve"] = curve.to_json()
    return out


def _sextic_from_text(text: str):
    x = sp.Symbol("x")
    try:
        expr = parse_expr(text, transformations=PARSE_TRANSFORMS, local_dict={"x": x})
        poly = sp.Poly(sp.nsimplify(sp.expand(expr), rational=True), x)
    except (SyntaxError, TypeError, sp.SympifyError, sp.PolynomialError) as exc:
        raise InputError(f"cannot read sextic {text!r}: {exc}") from None
    if poly.free_symbols - {x}:
        raise InputError("the sextic may only involve x")
    return [poly.coeff_monomial(x**i) for i in range(poly.degree() + 1)]


def _coeff(v):
    if isinstance(v, list):
        if len(v) != 2:
            raise InputError("complex coefficients are [re, im] pairs")
        return complex(float(v[0]), float(v[1])) if v[1] else Fraction(str(v[0]))
    if isinstance(v, float):
        return Fraction(str(v))
    try:
        return Fraction(v)
    except (TypeError, ValueError):
        raise InputError(f"bad coefficient {v!r}") from None


def cmd_classify_invariants(args) -> dict:
    if (args.sextic is None) == (args.coeffs is None):
        raise InputError("give exactly one of --sextic and --coeffs")
    if args.sextic is not None:
        raw = _sextic_from_text(args.sextic)
        coeffs = []
        for c in raw:
            if c.is_Rational:
                coeffs.append(Fraction(int(c.p), int(c.q)))
            else:
                coeffs.append(complex(c))
    else:
        data = _load_json(args.coeffs, "coefficients")
        if isinstance(data, dict):
            data = _field(data, "coeffs", "coefficients")
        if not isinstance(data, list):
            raise InputError("coefficients must be a list, x^0 first")
        coeffs = [_coeff(v) for v in data]
    if len(coeffs) > 7:
        raise DomainError("degree exceeds 6")
    if all(isinstance(c, Fraction) for c in coeffs):
        f = BinarySextic(tuple(coeffs))
        J = igusa(f)
        flags = locus_membership(J)
        try:
            i = [str(v) for v in absolute_invariants(J)]
        except DomainError:
            i = None
        out = {**J.to_json(), "exact": True}
    else:
        J = igusa_numeric([complex(c) for c in coeffs])
        try:
            i = [cj(v) for v in absolute_invariants_numeric([complex(c) for c in coeffs])]
        except DomainError:
            i = None
        def small(poly):
            terms = [c * J[0] ** a * J[1] ** b * J[2] ** c6 * J[3] ** d for (a, b, c6, d), c in poly.items()]
            scale = sum(abs(t) for t in terms)
            return scale == 0 or abs(sum(terms)) <= args.locus_tol * scale

        l2 = small(L2_POLY)
        flags = {"L2": l2, "D8": l2 and small(D8_POLY), "D12": l2 and all(small(q) for q in D12_POLYS)}
        flags["generic"] = not l2
        out = {k: cj(v) for k, v in zip(("J2", "J4", "J6", "J10"), J)}
        out["exact"] = False
    out["i1"], out["i2"], out["i3"] = i if i is not None else (None, None, None)
    out["loci"] = [k for k in ("L2", "D8", "D12") if flags[k]]
    out["flags"] = flags
    return out


def cmd_cyclic(args) -> dict:
    if args.action == "picard-params":
        tau = load_tau(args.tau)
        s, t = picard_params(tau, _params(args), args.convention, args.degenerate_tol)
        return {"s": cj(s), "t": cj(t), "convention": args.convention}
    if args.action == "plan":
        return algorithm1_scaffold(args.equation, args.group_order, args.m).to_json()
    if args.action == "case2":
        red = genus4_case2_reduction(args.alpha1, args.alpha2)
        out = red.to_json()
        back = case2_inverse(red.betas, args.formula)
        out["inverse"] = [str(v) for v in back]
        out["round_trip"] = bool(sp.simplify(back[0] - red.alpha1) == 0 and sp.simplify(back[1] - red.alpha2) == 0)
        out["constraint"] = str(case2_constraint(red.betas, args.formula))
        out["formula"] = args.formula
        return out
    if args.action == "partitions":
        return {"partitions": PARTITIONS.to_json(), "count": len(PARTITIONS)}
    raise InputError(f"unknown cyclic action {args.action!r}")


# ---------------------------------------------------------------------------


def _positive_float(s: str) -> float:
    try:
        v = float(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {s!r}") from None
    if not v > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _positive_int(s: str) -> int:
    try:
        v = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {s!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=_positive_float, default=1e-12, help="absolute theta tolerance")
    common.add_argument("--quad-order", type=_positive_int, default=128)
    common.add_argument("--max-radius", type=_positive_int, default=60)
    common.add_argument("--out", default=None, help="write JSON here instead of stdout")
    common.add_argument("--seed", type=int, default=0)

    ap = argparse.ArgumentParser(prog="theta-forge", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gopel", parents=[common], help="enumerate Goepel groups")
    p.add_argument("--genus", type=_positive_int, required=True)
    p.add_argument("--rank", type=_positive_int, required=True)
    p.add_argument("--even-only", action="store_true")
    p.add_argument("--systems", action="store_true", help="include cosets and their even/odd census")
    p.set_defaults(func=cmd_gopel)

    p = sub.add_parser("thetanull", parents=[common], help="theta with characteristic")
    p.add_argument("--tau", required=True, help="tau JSON file or inline JSON")
    p.add_argument("--char", required=True, help="characteristic JSON")
    p.add_argument("--z", default=None, help="argument vector, default 0")
    p.set_defaults(func=cmd_thetanull)

    p = sub.add_parser("periods", parents=[common], help="period matrix of a hyperelliptic curve")
    p.add_argument("--curve", required=True)
    p.set_defaults(func=cmd_periods)

    p = sub.add_parser("verify-thomae", parents=[common], help="Thomae fit at the computed tau")
    p.add_argument("--curve", required=True)
    p.add_argument("--sign", choices=("none", "mumford"), default="none")
    p.set_defaults(func=cmd_verify_thomae)

    p = sub.add_parser("invert", parents=[common], help="branch points from thetanulls")
    p.add_argument("--tau", required=True)
    p.add_argument("--genus", type=int, choices=(2, 3), required=True)
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("identities", parents=[common], help="thetanull identity suites")
    p.add_argument("--genus", type=int, choices=(2, 3), required=True)
    p.add_argument("--tau", default=None)
    p.add_argument("--random", type=int, default=0, help="also test N random tau drawn with --seed")
    p.add_argument("--emit", action="store_true", help="dump the identity instances")
    p.add_argument("--all-groups", action="store_true", help="genus 3: every all-even group")
    p.set_defaults(func=cmd_identities)

    p = sub.add_parser("classify", parents=[common], help="automorphism estimate of a genus-2 curve")
    p.add_argument("--curve", required=True)
    p.add_argument("--threshold", type=_positive_float, default=1e-6)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("classify-invariants", parents=[common], help="Igusa invariants and loci")
    p.add_argument("--sextic", default=None, help='polynomial in x, e.g. "x^6-1"')
    p.add_argument("--coeffs", default=None, help="JSON coefficient list, x^0 first")
    p.add_argument("--locus-tol", type=_positive_float, default=1e-8, help="relative test for inexact input")
    p.set_defaults(func=cmd_classify_invariants)

    p = sub.add_parser("cyclic", parents=[common], help="cyclic-cover formulas")
    p.add_argument("action", choices=("picard-params", "plan", "case2", "partitions"))
    p.add_argument("--tau", default=None)
    p.add_argument("--convention", choices=("lambda", "labels"), default="lambda")
    p.add_argument("--degenerate-tol", type=_positive_float, default=1e-12)
    p.add_argument("--equation", default=None)
    p.add_argument("--group-order", type=int, default=None)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--alpha1", default=None)
    p.add_argument("--alpha2", default=None)
    p.add_argument("--formula", choices=("derived", "printed"), default="derived")
    p.set_defaults(func=cmd_cyclic)
    return ap


_REQUIRED = {
    "picard-params": ("tau",),
    "plan": ("equation",),
    "case2": ("alpha1", "alpha2"),
    "partitions": (),
}


def _emit(payload: dict, out: str | None) -> None:
    text = json.dumps(payload, sort_keys=True, indent=2, default=str) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        if args.command == "cyclic":
            missing = [k for k in _REQUIRED[args.action] if getattr(args, k) is None]
            if missing:
                raise InputError(f"cyclic {args.action} needs --{missing[0].replace('_', '-')}")
        payload = args.func(args)
        payload["config"] = _config(args)
        payload["command"] = args.command
        _emit(payload, args.out)
        return 0
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (PrecisionUnreachable, BasisFailure) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except (DomainError, ThetaForgeError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
