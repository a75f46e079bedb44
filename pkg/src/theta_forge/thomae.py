"""Thomae's formula, Picard's inversion (genus 2) and the genus-3 inversion.

Conventions fixed here (see the basis tag in ``periods``):

* genus 2 branch points are ordered (nu, mu, lambda, 1, 0, inf);
* genus 3 branch points are ordered (a1, a2, a3, a4, a5, 1, 0, inf), which
  puts {a1, a3, a5, 0} on the odd positions.

With these orderings theta[eta_T]^4 = A * prod_{i<j in T^U} (b_i - b_j)
* prod_{i<j not in T^U} (b_i - b_j), with no extra sign; the optional
``sign="mumford"`` variant multiplies by (-1)^#(T cap U) for comparison with
printed tables.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

import numpy as np

from .charspace import INF, eta_assignment, eta_preimages
from .errors import DimensionError, DomainError
from .periods import HyperellipticCurve, PeriodData
from .tables import GENUS2, GENUS3, index_of, table
from .theta import DEFAULT, EvalParams, as_siegel, theta, theta_raw, thetanulls

SIGN_CONVENTIONS = ("none", "mumford")


@dataclass(frozen=True)
class ThomaeReport:
    A: complex
    residuals: dict  # HalfChar -> relative residual
    max_residual: float
    vanishing: dict = field(default_factory=dict)  # HalfChar -> |theta|
    sign: str = "none"

    def to_json(self) -> dict:
        def label(m):
            try:
                return f"theta{index_of(m)}"
            except KeyError:
                return str(m)

        return {
            "A": [self.A.real, self.A.imag],
            "max_residual": self.max_residual,
            "residuals": {label(m): r for m, r in sorted(self.residuals.items(), key=lambda kv: kv[0].key)},
            "vanishing": {label(m): v for m, v in self.vanishing.items()},
            "sign_convention": self.sign,
        }


@dataclass(frozen=True)
class BranchSolution:
    values: tuple
    method: str
    diagnostics: dict

    def to_json(self) -> dict:
        return {
            "values": [[complex(v).real, complex(v).imag] for v in self.values],
            "method": self.method,
            "diagnostics": self.diagnostics,
        }


def genus2_curve(lam, mu, nu) -> HyperellipticCurve:
    """Y^2 = X(X-1)(X-lam)(X-mu)(X-nu), ordered (nu, mu, lam, 1, 0)."""
    return HyperellipticCurve.from_points([nu, mu, lam, 1, 0], genus=2, infinity_branch=True)


def genus3_curve(a) -> HyperellipticCurve:
    a = list(a)
    if len(a) != 5:
        raise DomainError("genus 3 needs a1..a5")
    return HyperellipticCurve.from_points(a + [1, 0], genus=3, infinity_branch=True)


def _check_T(T, g: int) -> frozenset:
    T = frozenset(T)
    if INF in T:
        T = frozenset(range(1, 2 * g + 2)) - (T - {INF})
    if len(T) % 2:
        raise DomainError("#T must be even")
    if not T <= set(range(1, 2 * g + 2)):
        raise DomainError(f"T must be a subset of 1..{2 * g + 1}")
    return T


def thomae_rhs(T: Iterable, curve: HyperellipticCurve, sign: str = "none") -> complex:
    """Branch-point product attached to eta_T; the constant A is left out."""
    if sign not in SIGN_CONVENTIONS:
        raise DomainError(f"sign must be one of {SIGN_CONVENTIONS}")
    if not curve.infinity_branch:
        raise DomainError("thomae_rhs expects a curve with a branch point at infinity")
    g = curve.genus
    T = _check_T(T, g)
    U = frozenset(range(1, 2 * g + 2, 2))
    D = T ^ U
    b = curve.branch_points
    if curve.exact is not None:
        b = curve.exact
    idx = range(1, 2 * g + 2)
    prod = 1
    for i, j in itertools.combinations(idx, 2):
        if (i in D) == (j in D):
            prod *= b[i - 1] - b[j - 1]
    if sign == "mumford" and len(T & U) % 2:
        prod = -prod
    return prod


def thomae_rhs_exact(T, points, sign: str = "none"):
    """Same product for an arbitrary sequence of (symbolic or exact) values."""
    g = (len(points) - 1) // 2
    T = _check_T(T, g)
    U = frozenset(range(1, 2 * g + 2, 2))
    D = T ^ U
    prod = 1
    for i, j in itertools.combinations(range(1, 2 * g + 2), 2):
        if (i in D) == (j in D):
            prod *= points[i - 1] - points[j - 1]
    if sign == "mumford" and len(T & U) % 2:
        prod = -prod
    return prod


def _even_targets(g: int):
    """(characteristic, T) pairs for even characteristics, index-table order when available."""
    pre = eta_preimages(g)
    chars = [m for m in pre if m.is_even]
    try:
        chars.sort(key=index_of)
    except KeyError:
        chars.sort(key=lambda m: m.key)
    return [(m, pre[m]) for m in chars]


def _thomae_fit(fourth: dict, rhs: dict):
    """Fit A on the first nonvanishing entry; return A and relative residuals."""
    keys = [m for m in fourth if rhs[m] != 0]
    A = fourth[keys[0]] / rhs[keys[0]]
    res = {}
    for m in keys:
        denom = max(abs(fourth[m]), abs(A * rhs[m]))
        res[m] = float(abs(fourth[m] - A * rhs[m]) / denom) if denom > 0 else 0.0
    return A, res


def verify_thomae(curve: HyperellipticCurve, pd: PeriodData, p: EvalParams = DEFAULT, sign: str = "none") -> ThomaeReport:
    g = curve.genus
    if g not in (2, 3):
        raise DomainError("verify_thomae supports genus 2 and 3")
    if pd.tau.g != g:
        raise DimensionError("period data genus does not match the curve")
    targets = _even_targets(g)
    vals = thetanulls(pd.tau, [m for m, _ in targets], p)
    fourth, rhs, vanishing = {}, {}, {}
    U = frozenset(range(1, 2 * g + 2, 2))
    for (m, T), v in zip(targets, vals):
        if len(T ^ U) != g + 1:
            vanishing[m] = float(abs(v))
            continue
        fourth[m] = complex(v) ** 4
        rhs[m] = complex(thomae_rhs(T, curve, sign))
    A, res = _thomae_fit(fourth, rhs)
    return ThomaeReport(complex(A), res, max(res.values()), vanishing, sign)


def thomae_residual_from_thetas(fourth_by_char: dict, points, sign: str = "none") -> float:
    """Max relative residual of given fourth powers against a branch set."""
    g = (len(points) - 1) // 2
    pre = eta_preimages(g)
    U = frozenset(range(1, 2 * g + 2, 2))
    rhs = {}
    fourth = {}
    for m, v in fourth_by_char.items():
        T = pre[m]
        if len(T ^ U) != g + 1:
            continue
        rhs[m] = complex(thomae_rhs_exact(T, list(points), sign))
        fourth[m] = complex(v)
    if any(abs(r) == 0 for r in rhs.values()):
        return float("inf")
    _, res = _thomae_fit(fourth, rhs)
    return max(res.values())


# ---------------------------------------------------------------------------
# inversion


def _nulls_by_index(tau, g: int, p: EvalParams, indices) -> dict:
    tab = table(g)
    vals = thetanulls(tau, [tab[k] for k in indices], p)
    return dict(zip(indices, vals))


def _guard(th: dict, keys, p: EvalParams):
    for k in keys:
        if abs(th[k]) < 10 * p.target_abs_tol:
            raise DomainError(f"thetanull theta{k} is numerically zero; the ratio is degenerate")


def picard_branch_points(tau, p: EvalParams = DEFAULT) -> BranchSolution:
    sp = as_siegel(tau)
    if sp.g != 2:
        raise DimensionError("Picard's formulas need genus 2")
    th = _nulls_by_index(sp, 2, p, range(1, 11))
    _guard(th, (2, 4, 10), p)
    t2 = {k: v**2 for k, v in th.items()}
    direct = (
        t2[1] * t2[3] / (t2[2] * t2[4]),
        t2[3] * t2[8] / (t2[4] * t2[10]),
        t2[1] * t2[8] / (t2[2] * t2[10]),
    )
    squares = tuple(d * d for d in direct)
    roots = [np.sqrt(complex(s)) for s in squares]
    fourth = {GENUS2[k]: th[k] ** 4 for k in range(1, 11)}
    best = None
    cands = []
    for signs in itertools.product((1, -1), repeat=3):
        lam, mu, nu = (s * r for s, r in zip(signs, roots))
        pts = [nu, mu, lam, 1, 0]
        if min(abs(x - y) for x, y in itertools.combinations(pts, 2)) < 1e-12:
            continue
        r = thomae_residual_from_thetas(fourth, pts)
        cands.append((r, signs, (lam, mu, nu)))
        if best is None or r < best[0] - 1e-12:
            best = (r, signs, (lam, mu, nu))
    if best is None:
        raise DomainError("no admissible root choice")
    r, _, vals = best
    diag = {
        "thomae_residual": r,
        "squared": [[complex(s).real, complex(s).imag] for s in squares],
        "direct": [[complex(d).real, complex(d).imag] for d in direct],
        "candidates": [
            {"signs": list(s), "residual": rr} for rr, s, _ in sorted(cands, key=lambda c: (c[0], c[1]))
        ],
    }
    return BranchSolution(tuple(complex(v) for v in vals), "picard-g2", diag)


# displayed branch-point ratios: numerator pair / denominator pair of squared thetas
G3_RATIOS = {
    1: [(36, 22, 33, 19), (31, 21, 34, 24), (29, 1, 26, 2)],
    2: [(4, 29, 2, 17), (36, 7, 15, 19), (31, 13, 9, 24)],
    3: [(4, 22, 33, 17), (11, 31, 24, 6), (7, 1, 26, 15)],
    4: [(11, 29, 2, 6), (21, 7, 15, 34), (22, 13, 9, 33)],
    5: [(4, 21, 34, 17), (11, 36, 19, 6), (13, 1, 26, 9)],
}
# the column used in the theorem statement for each a_k
G3_PRIMARY = {1: 1, 2: 2, 3: 1, 4: 1, 5: 2}


def genus3_ratio_table(th: dict) -> dict:
    """a_k^2 from each of the three ratio columns."""
    out = {}
    for k, cols in G3_RATIOS.items():
        out[k] = [(th[p] ** 2 * th[q] ** 2 / (th[r] ** 2 * th[s] ** 2)) ** 2 for p, q, r, s in cols]
    return out


def genus3_branch_points(tau, p: EvalParams = DEFAULT) -> BranchSolution:
    sp = as_siegel(tau)
    if sp.g != 3:
        raise DimensionError("the genus-3 inversion needs a 3x3 period matrix")
    th = _nulls_by_index(sp, 3, p, range(1, 37))
    used = {i for cols in G3_RATIOS.values() for c in cols for i in c}
    assert 12 not in used
    _guard(th, {c[2] for cols in G3_RATIOS.values() for c in cols} | {c[3] for cols in G3_RATIOS.values() for c in cols}, p)
    tab = genus3_ratio_table(th)
    squares = [tab[k][G3_PRIMARY[k]] for k in range(1, 6)]
    roots = [np.sqrt(complex(s)) for s in squares]
    fourth = {GENUS3[k]: th[k] ** 4 for k in range(1, 37) if k != 12}
    best = None
    for signs in itertools.product((1, -1), repeat=5):
        a = [s * r for s, r in zip(signs, roots)]
        pts = a + [1, 0]
        if min(abs(x - y) for x, y in itertools.combinations(pts, 2)) < 1e-12:
            continue
        r = thomae_residual_from_thetas(fourth, pts)
        if best is None or r < best[0] - 1e-12:
            best = (r, signs, a)
    if best is None:
        raise DomainError("no admissible root choice")
    spread = 0.0
    for k in range(1, 6):
        for x, y in itertools.combinations(tab[k], 2):
            spread = max(spread, abs(x - y) / max(abs(x), abs(y)))
    diag = {
        "thomae_residual": best[0],
        "signs": list(best[1]),
        "column_disagreement": spread,
        "theta12_abs": float(abs(theta(np.zeros(3), sp, GENUS3[12], p))),
        "ordering": "a1,a2,a3,a4,a5,1,0,inf",
    }
    return BranchSolution(tuple(complex(v) for v in best[2]), "thm-g3", diag)


# ---------------------------------------------------------------------------
# Frobenius


def frobenius_residual(tau, z, b, assignment=None, p: EvalParams = DEFAULT) -> complex:
    """sum over j in S + {inf} of eps_U(j) prod_i theta[b_i + eta(j)](z_i).

    ``b`` holds four rational 2g-vectors (top entries then bottom entries);
    they are added to eta(j) without reduction mod 1.
    """
    sp = as_siegel(tau)
    g = sp.g
    ea = assignment if assignment is not None else eta_assignment(g)
    if ea.genus != g:
        raise DimensionError("assignment genus does not match tau")
    z = [np.asarray(v, dtype=complex).reshape(-1) for v in z]
    if len(z) != 4 or len(b) != 4:
        raise DomainError("need four z vectors and four characteristics")
    if any(v.shape[0] != g for v in z):
        raise DimensionError("z vectors must have length g")
    zs = sum(z)
    if np.max(np.abs(zs)) > 1e-12 * max(1.0, max(float(np.max(np.abs(v))) for v in z)):
        raise DomainError("z_1 + ... + z_4 must vanish")
    bb = []
    for v in b:
        v = [Fraction(x) for x in v]
        if len(v) != 2 * g:
            raise DimensionError("characteristics must have 2g entries")
        bb.append(v)
    if any(sum(col) != 0 for col in zip(*bb)):
        raise DomainError("b_1 + ... + b_4 must vanish")
    total = 0j
    for j in list(range(1, 2 * g + 2)) + [INF]:
        e = ea[j]
        eps = 1 if j in ea.U else -1
        vec = [Fraction(x, 2) for x in e.top] + [Fraction(x, 2) for x in e.bottom]
        prod = 1 + 0j
        for zi, bi in zip(z, bb):
            c = [x + y for x, y in zip(bi, vec)]
            prod *= theta_raw(zi, sp, [float(x) for x in c[:g]], [float(x) for x in c[g:]], p)
        total += eps * prod
    return complex(total)
