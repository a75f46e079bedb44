"""Formulas for cyclic covers y^n = f(x) with n > 2.

Thetanull labels here live in their own namespace (``cyclic.theta1`` and so
on) and have nothing to do with the hyperelliptic index tables.

Nothing in this module computes superelliptic period matrices. Period
matrices are supplied by the caller, and Abel-map images for the divisor
formula are supplied as plain vectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce

import numpy as np
import sympy as sp
from sympy.parsing.sympy_parser import (
    convert_xor,
    implicit_multiplication_application,
    parse_expr,
    standard_transformations,
)

from .errors import DimensionError, DomainError, Unsupported
from .theta import DEFAULT, EvalParams, RatChar, as_siegel, quasi_periodicity_residual, theta, theta_raw

# ---------------------------------------------------------------------------
# Picard curves y^3 = x(x-1)(x-s)(x-t)

_SIXTH = Fraction(1, 6)
_TOP = (0, _SIXTH, 0)

SIXTH_CHARS = {
    "0": RatChar(3, _TOP, (0, _SIXTH, 0)),
    "1/3": RatChar(3, _TOP, (Fraction(1, 3), _SIXTH, Fraction(1, 3))),
    "2/3": RatChar(3, _TOP, (Fraction(2, 3), _SIXTH, Fraction(2, 3))),
}

# Which characteristic sits in slot t1, t2, t3.
#   "lambda": t_k carries lambda_k of the branch-point theorem, so t1 is the
#             [0,1/6,0; 0,1/6,0] value (the default).
#   "labels": t1, t2, t3 follow the labels of the three-theta definition used
#             for the Picard cases, where theta_1 is the 2/3 characteristic.
CONVENTIONS = {
    "lambda": ("0", "1/3", "2/3"),
    "labels": ("2/3", "1/3", "0"),
}


@dataclass(frozen=True)
class SixthThetaTriple:
    t1: complex
    t2: complex
    t3: complex
    convention: str = "lambda"

    @classmethod
    def at(cls, tau, p: EvalParams = DEFAULT, convention: str = "lambda") -> "SixthThetaTriple":
        sp_ = as_siegel(tau)
        if sp_.g != 3:
            raise DimensionError(f"sixth-characteristic thetanulls need genus 3, got {sp_.g}")
        try:
            keys = CONVENTIONS[convention]
        except KeyError:
            raise DomainError(f"unknown convention {convention!r}; use one of {sorted(CONVENTIONS)}") from None
        zero = np.zeros(3)
        vals = [theta(zero, sp_, SIXTH_CHARS[k], p) for k in keys]
        return cls(*vals, convention=convention)

    def scaled(self, c: complex) -> "SixthThetaTriple":
        return SixthThetaTriple(c * self.t1, c * self.t2, c * self.t3, self.convention)

    def labels(self) -> dict:
        keys = CONVENTIONS[self.convention]
        return {f"cyclic.theta{i + 1}": SIXTH_CHARS[k] for i, k in enumerate(keys)}

    def cubes(self) -> tuple:
        return self.t1**3, self.t2**3, self.t3**3


def picard_ratios(triple: SixthThetaTriple, tol: float = 1e-12) -> tuple[complex, complex]:
    """(s, t) = (t2^3 / t1^3, t3^3 / t1^3)."""
    scale = max(abs(triple.t1), abs(triple.t2), abs(triple.t3))
    if scale == 0 or abs(triple.t1) <= tol * scale:
        raise DomainError(f"t1 = {triple.t1} is degenerate (|t1| below {tol} relative)")
    c1, c2, c3 = triple.cubes()
    return c2 / c1, c3 / c1


def picard_params(tau, p: EvalParams = DEFAULT, convention: str = "lambda", tol: float = 1e-12):
    """Picard-curve parameters (s, t) from a user-supplied genus-3 period matrix.

    The second value is called r in one display of the source; it is the t of
    y^3 = x(x-1)(x-s)(x-t).
    """
    return picard_ratios(SixthThetaTriple.at(tau, p, convention), tol)


def c6_residual(triple: SixthThetaTriple) -> complex:
    """t2^3 - t1^3 + t3^3; zero on the C6 locus."""
    c1, c2, c3 = triple.cubes()
    return c2 - c1 + c3


def sixth_char_quasi_periodicity(tau, z, m, n, p: EvalParams = DEFAULT) -> float:
    """Worst quasi-periodicity residual over the three sixth characteristics."""
    return max(quasi_periodicity_residual(z, tau, ch, m, n, p) for ch in SIXTH_CHARS.values())


# ---------------------------------------------------------------------------
# genus 4: y^3 = x(x-1)(x-a1)(x-a2)(x-a3)


def perfect_matchings(points) -> list[tuple]:
    """All partitions of an even set into pairs, lexicographically ordered."""
    points = sorted(points)
    if not points:
        return [()]
    first, rest = points[0], points[1:]
    out = []
    for i, other in enumerate(rest):
        remaining = rest[:i] + rest[i + 1 :]
        for m in perfect_matchings(remaining):
            out.append(((first, other),) + m)
    return out


@dataclass(frozen=True)
class PartitionTable:
    entries: tuple  # entries[i] is the matching labelled theta_{i+1}

    @classmethod
    def standard(cls) -> "PartitionTable":
        return cls(tuple(perfect_matchings(range(1, 7))))

    def __len__(self):
        return len(self.entries)

    def partition(self, label: int) -> tuple:
        if not 1 <= label <= len(self.entries):
            raise DomainError(f"no theta_{label} in the partition table")
        return self.entries[label - 1]

    def label(self, matching) -> int:
        key = tuple(sorted(tuple(sorted(pair)) for pair in matching))
        for i, m in enumerate(self.entries):
            if m == key:
                return i + 1
        raise DomainError(f"{matching} is not a perfect matching of 1..6")

    def to_json(self) -> dict:
        return {f"cyclic.theta{i + 1}": [list(p) for p in m] for i, m in enumerate(self.entries)}


PARTITIONS = PartitionTable.standard()

# Exponents of the factors
#   (a1-a2), (a1-a3), (a2-a3), a1, a2, a3, (a1-1), (a2-1), (a3-1)
# in theta_i^6 = c_i * prod.
G4_EXPONENTS = {
    1: (3, 1, 1, 1, 1, 1, 1, 1, 3),
    2: (3, 1, 1, 1, 1, 3, 1, 1, 1),
    3: (3, 1, 1, 1, 1, 1, 1, 1, 1),
    4: (1, 3, 1, 1, 1, 1, 1, 3, 1),
    5: (1, 3, 1, 1, 3, 1, 1, 1, 1),
    6: (1, 3, 1, 1, 1, 1, 1, 1, 1),
    7: (1, 1, 3, 1, 1, 1, 3, 1, 1),
    8: (1, 1, 1, 1, 3, 1, 3, 1, 1),
    9: (1, 1, 1, 1, 1, 3, 3, 1, 1),
    10: (1, 1, 3, 3, 1, 1, 1, 1, 1),
    11: (1, 1, 1, 3, 1, 1, 1, 3, 1),
    12: (1, 1, 1, 3, 1, 1, 1, 1, 3),
    13: (1, 1, 3, 1, 1, 1, 1, 1, 1),
    14: (1, 1, 1, 1, 1, 3, 1, 3, 1),
    15: (1, 1, 1, 1, 3, 1, 1, 1, 3),
}

# a_k^2 = delta_k * (theta_num / theta_den)^6 with delta_k = c_num / c_den
G4_RATIO_LABELS = ((10, 13), (5, 6), (2, 3))


def _g4_factors(a1, a2, a3) -> tuple:
    return (a1 - a2, a1 - a3, a2 - a3, a1, a2, a3, a1 - 1, a2 - 1, a3 - 1)


def genus4_thomae_products(a1, a2, a3) -> dict:
    """label -> the branch-point product multiplying c_label (exact for exact input)."""
    fac = _g4_factors(a1, a2, a3)
    out = {}
    for i, ex in G4_EXPONENTS.items():
        out[i] = reduce(lambda acc, fe: acc * fe[0] ** fe[1], zip(fac, ex), 1)
    return out


@dataclass
class TrigonalRatios:
    """a_k^2 / delta_k for k = 1, 2, 3; the delta_k are never fixed here."""

    ratios: tuple
    labels: tuple = G4_RATIO_LABELS
    multipliers: tuple = ("delta1 = c10/c13", "delta2 = c5/c6", "delta3 = c2/c3")

    def squares(self, deltas) -> tuple:
        """a_k^2 once the caller supplies the delta_k."""
        if len(deltas) != 3:
            raise DimensionError("need three delta multipliers")
        return tuple(d * r for d, r in zip(deltas, self.ratios))


def genus4_trigonal_ratios(thetas: dict, tol: float = 1e-14) -> TrigonalRatios:
    """Sixth-power ratios (theta10/theta13)^6, (theta5/theta6)^6, (theta2/theta3)^6.

    ``thetas`` maps partition labels (1..15, or ``cyclic.thetaN``) to values.
    """
    vals = _label_map(thetas)
    out = []
    for num, den in G4_RATIO_LABELS:
        if num not in vals or den not in vals:
            raise DomainError(f"need theta_{num} and theta_{den}")
        d = vals[den]
        if abs(d) <= tol * max(1.0, abs(vals[num])):
            raise DomainError(f"theta_{den} vanishes")
        out.append((vals[num] / d) ** 6)
    return TrigonalRatios(tuple(out))


def _label_map(thetas: dict) -> dict:
    out = {}
    for k, v in thetas.items():
        if isinstance(k, str):
            k = int(k.removeprefix("cyclic.theta").removeprefix("theta"))
        out[int(k)] = complex(v)
    return out


@dataclass
class Genus4Fit:
    constant: complex
    residuals: dict  # label -> |theta^6 - c P| / |theta^6|
    per_label: dict  # label -> theta^6 / P
    sixth_power_spread: float  # max |c_i^6 / c_1^6 - 1|

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values())

    def to_json(self) -> dict:
        return {
            "constant": [self.constant.real, self.constant.imag],
            "max_residual": self.max_residual,
            "residuals": {str(k): v for k, v in sorted(self.residuals.items())},
            "sixth_power_spread": self.sixth_power_spread,
        }


def genus4_constant_fit(thetas: dict, branch) -> Genus4Fit:
    """Fit one constant to all 15 sixth-power equations at branch points (a1, a2, a3).

    ``per_label`` keeps the individual c_i; ``sixth_power_spread`` checks that
    their sixth powers agree, as the partition constants of the generalized
    Thomae formula should. Both are reported, neither is assumed.
    """
    vals = _label_map(thetas)
    missing = sorted(set(G4_EXPONENTS) - set(vals))
    if missing:
        raise DomainError(f"missing thetanulls for labels {missing}")
    a1, a2, a3 = (complex(a) for a in branch)
    prods = genus4_thomae_products(a1, a2, a3)
    if any(abs(P) == 0 for P in prods.values()):
        raise DomainError("branch points collide or hit 0, 1")
    sixth = {i: vals[i] ** 6 for i in prods}
    num = sum(np.conj(prods[i]) * sixth[i] for i in prods)
    den = sum(abs(prods[i]) ** 2 for i in prods)
    c = complex(num / den)
    res = {i: abs(sixth[i] - c * prods[i]) / max(abs(sixth[i]), 1e-300) for i in prods}
    per = {i: sixth[i] / prods[i] for i in prods}
    ref = per[1] ** 6
    spread = max(abs(v**6 / ref - 1) for v in per.values()) if ref != 0 else math.inf
    return Genus4Fit(c, res, per, float(spread))


# ---------------------------------------------------------------------------
# genus 4, y^3 = (x^2-1)(x^2-alpha1)(x^2-alpha2)


def _exact(v):
    if isinstance(v, sp.Basic):
        return v
    if isinstance(v, Fraction):
        return sp.Rational(v.numerator, v.denominator)
    if isinstance(v, float):
        return sp.Rational(Fraction(v))
    return sp.sympify(v, rational=True)


def _div(num, den, name: str):
    den = sp.simplify(den)
    if den == 0:
        raise DomainError(f"denominator {name} vanishes")
    return sp.simplify(num / den)


def exact_sqrt(a):
    """Exact square root; rational squares come back rational."""
    return sp.sqrt(_exact(a))


@dataclass
class Case2Reduction:
    alpha1: sp.Expr
    alpha2: sp.Expr
    r1: sp.Expr
    r2: sp.Expr
    gammas: tuple
    deltas: tuple
    betas: tuple

    def to_json(self) -> dict:
        s = lambda v: str(v)  # noqa: E731
        return {
            "alpha": [s(self.alpha1), s(self.alpha2)],
            "sqrt_alpha": [s(self.r1), s(self.r2)],
            "gamma": [s(x) for x in self.gammas],
            "delta": [s(x) for x in self.deltas],
            "beta": [s(x) for x in self.betas],
        }


def genus4_case2_reduction(alpha1, alpha2, roots=None) -> Case2Reduction:
    """Move the branch points +-1, +-sqrt(alpha1), +-sqrt(alpha2) to 0, 1, infinity, beta1..3.

    Three Moebius steps in turn: x -> (x-1)/(2x-1) gives gamma_i,
    x -> (-2x+1)/(3x-2) gives delta_i, and the last step gives
    beta_i = (delta1+1)(delta_{i+1}+1) / (delta1 delta_{i+1} + 2 delta1 + 1).
    ``roots`` picks the square roots; by default the principal ones.
    """
    a1, a2 = _exact(alpha1), _exact(alpha2)
    if roots is None:
        r1, r2 = exact_sqrt(a1), exact_sqrt(a2)
    else:
        r1, r2 = (_exact(r) for r in roots)
        if sp.simplify(r1**2 - a1) != 0 or sp.simplify(r2**2 - a2) != 0:
            raise DomainError("supplied roots do not square to alpha1, alpha2")
    for name, v in (("alpha1", a1), ("alpha2", a2)):
        if v == 0 or v == 1:
            raise DomainError(f"{name} = {v} makes branch points collide")
    if sp.simplify(a1 - a2) == 0:
        raise DomainError("alpha1 = alpha2 makes branch points collide")

    gammas = (
        _div(r1 - 1, 2 * r1 - 1, "2 sqrt(alpha1) - 1"),
        _div(-r1 - 1, -2 * r1 - 1, "-2 sqrt(alpha1) - 1"),
        _div(r2 - 1, 2 * r2 - 1, "2 sqrt(alpha2) - 1"),
        _div(-r2 - 1, -2 * r2 - 1, "-2 sqrt(alpha2) - 1"),
    )
    deltas = tuple(_div(-2 * g + 1, 3 * g - 2, f"3 gamma{i + 1} - 2") for i, g in enumerate(gammas))
    d1 = deltas[0]
    betas = tuple(
        _div((d1 + 1) * (d + 1), d1 * d + 2 * d1 + 1, f"delta1 delta{i + 2} + 2 delta1 + 1")
        for i, d in enumerate(deltas[1:])
    )
    return Case2Reduction(a1, a2, r1, r2, gammas, deltas, betas)


def case2_betas_direct(r1, r2) -> tuple:
    """The closed forms in sqrt(alpha1), sqrt(alpha2) that the chain collapses to."""
    r1, r2 = _exact(r1), _exact(r2)
    return (
        _div(r1**2, r1**2 - 2 - 2 * (r1 - 1), "alpha1 - 2 sqrt(alpha1)"),
        _div(r1 * r2, r1 * r2 + r1 - r2, "sqrt(alpha1 alpha2) + sqrt(alpha1) - sqrt(alpha2)"),
        _div(r1 * r2, r1 * r2 - r1 - r2, "sqrt(alpha1 alpha2) - sqrt(alpha1) - sqrt(alpha2)"),
    )


def case2_inverse(betas, formula: str = "derived") -> tuple:
    """(alpha1, alpha2) from (beta1, beta2, beta3).

    ``derived``: sqrt(alpha1) = 2 beta1 / (beta1 - 1) and
    1/sqrt(alpha2) = 1/beta2 - 1 + 1/sqrt(alpha1), squared. Only beta1 and
    beta2 are used; beta3 is then fixed by ``case2_constraint``.

    ``printed``: the rational expressions as they appear in the source. They
    do not invert the forward map (see the decisions ledger).
    """
    b1, b2, b3 = (_exact(b) for b in betas)
    if formula == "derived":
        r1 = _div(2 * b1, b1 - 1, "beta1 - 1")
        if b2 == 0 or r1 == 0:
            raise DomainError("denominator beta2 vanishes" if b2 == 0 else "denominator beta1 vanishes")
        inv_r2 = 1 / b2 - 1 + 1 / r1
        r2 = _div(sp.Integer(1), inv_r2, "1/beta2 - 1 + (beta1 - 1)/(2 beta1)")
        return sp.simplify(r1**2), sp.simplify(r2**2)
    if formula == "printed":
        a1 = _div(
            2 * b1 * b2 * (-b3 + b2),
            2 * b1 * b3 + 2 * b1 * b2 + b2**2 * b3 - 6 * b1 * b2 * b3 - 2 * b1 * b2**2 + 3 * b1 * b2**2 * b3,
            "printed alpha1 denominator",
        )
        a2 = _div(
            2 * b1 * (b3 - b2),
            -4 * b1 - b2 * b3 + 4 * b1 * b3 + 4 * b1 * b2 - 3 * b1 * b2 * b3,
            "printed alpha2 denominator",
        )
        return a1, a2
    raise DomainError(f"unknown formula {formula!r}; use 'derived' or 'printed'")


def case2_constraint(betas, formula: str = "derived"):
    """Polynomial in the betas that should vanish on forward images."""
    b1, b2, b3 = (_exact(b) for b in betas)
    if formula == "derived":
        val = b1 * b2 + b1 * b3 - b2 * b3 - b1 * b2 * b3
    elif formula == "printed":
        val = (
            b1 * b3**2 + 2 * b1 * b2 * b3 + b1 * b2**2 + b2**2 * b3**2
            - 4 * b1 * b2 * b3**2 - 4 * b1 * b2**2 * b3 + 3 * b1 * b2**2 * b3**2
        ) * (-b3 - b2 + 2 * b2 * b3)
    else:
        raise DomainError(f"unknown formula {formula!r}; use 'derived' or 'printed'")
    return sp.simplify(val)


def case4_parameter(alpha1, alpha2):
    """alpha = alpha1 + alpha2 when alpha1 alpha2 = 1.

    Then (x^2-alpha1)(x^2-alpha2) = x^4 - alpha x^2 + 1.
    """
    a1, a2 = _exact(alpha1), _exact(alpha2)
    if sp.simplify(a1 * a2 - 1) != 0:
        raise DomainError(f"alpha1 alpha2 = {sp.simplify(a1 * a2)}, not 1")
    return sp.simplify(a1 + a2)


# ---------------------------------------------------------------------------
# divisor formula


def shiga_product(tau, divisor_sum, zeros, poles, riemann_constant, p: EvalParams = DEFAULT) -> complex:
    """prod_k theta(S - B_k - D) / theta(S - C_k - D), which equals E f(P1)...f(Pg).

    S is the Abel image of P1 + ... + Pg, B_k and C_k the images of the zeros
    and poles of f, D the Riemann constant, all measured from the same base
    point along the same paths. The caller computes every image.
    """
    sp_ = as_siegel(tau)
    g = sp_.g
    S = np.asarray(divisor_sum, dtype=complex).reshape(-1)
    D = np.asarray(riemann_constant, dtype=complex).reshape(-1)
    B = [np.asarray(b, dtype=complex).reshape(-1) for b in zeros]
    C = [np.asarray(c, dtype=complex).reshape(-1) for c in poles]
    if len(B) != len(C):
        raise DimensionError("f needs as many zeros as poles")
    if any(v.shape[0] != g for v in [S, D, *B, *C]):
        raise DimensionError(f"Abel images must have length {g}")
    zero = np.zeros(g)
    out = complex(1)
    for b, c in zip(B, C):
        den = theta_raw(S - c - D, sp_, zero, zero, p)
        if den == 0:
            raise DomainError("a denominator theta vanishes")
        out *= theta_raw(S - b - D, sp_, zero, zero, p) / den
    return out


# ---------------------------------------------------------------------------
# steps 1-3 of the inversion recipe for cyclic curves

PARSE_TRANSFORMS = standard_transformations + (implicit_multiplication_application, convert_xor)


@dataclass
class Plan:
    equation: str
    n: int
    degree: int
    genus: int
    m: int
    normal_form: str
    squarefree: bool
    gamma: dict
    case: str
    dispatch: str
    notes: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "equation": self.equation,
            "n": self.n,
            "degree": self.degree,
            "genus": self.genus,
            "m": self.m,
            "normal_form": self.normal_form,
            "squarefree": self.squarefree,
            "gamma": self.gamma,
            "case": self.case,
            "dispatch": self.dispatch,
            "notes": list(self.notes),
            "steps": [1, 2, 3],
        }


def parse_cyclic(equation: str):
    """'y^n = f(x)' -> (n, f) with f a sympy polynomial in x."""
    x, y = sp.symbols("x y")
    if equation.count("=") != 1:
        raise DomainError("equation must look like 'y^n = f(x)'")
    lhs_s, rhs_s = equation.split("=")
    try:
        lhs = parse_expr(lhs_s, transformations=PARSE_TRANSFORMS, local_dict={"x": x, "y": y})
        rhs = parse_expr(rhs_s, transformations=PARSE_TRANSFORMS, local_dict={"x": x, "y": y})
    except (SyntaxError, TypeError, sp.SympifyError) as exc:
        raise DomainError(f"cannot parse {equation!r}: {exc}") from None
    if lhs == y:
        n = 1
    elif lhs.is_Pow and lhs.base == y and lhs.exp.is_Integer:
        n = int(lhs.exp)
    else:
        raise DomainError("left-hand side must be y^n")
    if y in rhs.free_symbols or x not in rhs.free_symbols:
        raise DomainError("right-hand side must be a polynomial in x alone")
    try:
        f = sp.Poly(sp.expand(rhs), x)
    except sp.PolynomialError:
        raise DomainError("right-hand side is not a polynomial in x") from None
    return n, f


def _normal_form(f: sp.Poly, m_hint: int | None):
    exps = [e[0] for e in f.monoms()]
    plain = reduce(math.gcd, exps, 0)
    shifted = reduce(math.gcd, [e - 1 for e in exps], 0) if all(e >= 1 for e in exps) else 0
    if m_hint is not None:
        if m_hint < 1:
            raise DomainError("m must be positive")
        if plain % m_hint == 0:
            return m_hint, "y^n = f(x^m)"
        if shifted and shifted % m_hint == 0:
            return m_hint, "y^n = x f(x^m)"
        raise Unsupported(f"equation is not of the form y^n = f(x^{m_hint}) or x f(x^{m_hint})")
    best = (1, "y^n = f(x^m)")
    if plain > best[0]:
        best = (plain, "y^n = f(x^m)")
    if shifted > best[0]:
        best = (shifted, "y^n = x f(x^m)")
    return best


def _genus(n: int, mults: list, degree: int) -> int:
    twice = -2 * n + sum(n - math.gcd(n, d) for d in mults) + (n - math.gcd(n, degree))
    return twice // 2 + 1


def algorithm1_scaffold(equation: str, group_order: int | None = None, m: int | None = None) -> Plan:
    """Steps 1-3 for y^n = f(x): quotient data, normal form, inversion route.

    The last step (relations by elimination) is not attempted.
    """
    n, f = parse_cyclic(equation)
    if n < 2:
        raise Unsupported("need n >= 2")
    k = f.degree()
    _, factors = f.sqf_list()
    mults = []
    for fac, d in factors:
        mults += [d] * fac.degree()
    if reduce(math.gcd, mults + [n]) != 1:
        raise Unsupported("y^n = f(x) is reducible: f is a power dividing n")
    squarefree = all(d == 1 for d in mults)
    g = _genus(n, mults, k)
    m_found, form = _normal_form(f, m)

    gamma = {"sigma_order": n, "reduced_element_order": m_found}
    if group_order is not None:
        if group_order % n:
            raise DomainError(f"|G| = {group_order} is not divisible by n = {n}")
        gamma["order"] = group_order // n
        if gamma["order"] % m_found:
            raise DomainError(f"m = {m_found} does not divide |Gamma| = {gamma['order']}")
    else:
        gamma["order"] = None

    notes = []
    if g < 2:
        raise Unsupported(f"(n, m) = ({n}, {m_found}) gives genus {g}; nothing to invert")
    if not squarefree:
        if set(mults) <= {1, n - 1} and n > 2:
            case, target = "theorem case 2", "singular Z_N Thomae formula (not implemented)"
            notes.append("formula listed for reference; no evaluator")
        else:
            raise Unsupported(f"(n, m) = ({n}, {m_found}) with root multiplicities {sorted(set(mults))}")
    elif n == 2:
        case = "thomae"
        target = {2: "thomae.picard_branch_points", 3: "thomae.genus3_branch_points"}.get(
            g, "thomae.thomae_rhs"
        )
    elif n == 3 and k == 4 and m_found == 1:
        case, target = "theorem case 1(ii)", "cyclic.picard_params"
    elif n == 3 and k == 6 and m_found % 2 == 0 and form == "y^n = f(x^m)":
        case, target = "theorem case 1(i)", "cyclic.genus4_case2_reduction -> cyclic.genus4_trigonal_ratios"
        notes.append("reduce +-1, +-sqrt(alpha1), +-sqrt(alpha2) to 0, 1, inf, beta1..3 first")
    elif n == 3 and k == 5:
        case, target = "theorem case 1(i)", "cyclic.genus4_trigonal_ratios"
        notes.append("constants delta_k are left as fit parameters")
    elif k % n == 0:
        case, target = "theorem case 1(i)", "generalized Thomae over partitions (no evaluator)"
    else:
        case, target = "lemma (divisor formula)", "cyclic.shiga_product"
        notes.append("integrals not evaluated: Abel images must be supplied")
    return Plan(equation.strip(), n, k, g, m_found, form, squarefree, gamma, case, target, notes)


__all__ = [
    "CONVENTIONS",
    "Case2Reduction",
    "G4_EXPONENTS",
    "G4_RATIO_LABELS",
    "Genus4Fit",
    "PARTITIONS",
    "PartitionTable",
    "Plan",
    "SIXTH_CHARS",
    "SixthThetaTriple",
    "TrigonalRatios",
    "algorithm1_scaffold",
    "c6_residual",
    "case2_betas_direct",
    "case2_constraint",
    "case2_inverse",
    "case4_parameter",
    "exact_sqrt",
    "genus4_case2_reduction",
    "genus4_constant_fit",
    "genus4_thomae_products",
    "genus4_trigonal_ratios",
    "parse_cyclic",
    "perfect_matchings",
    "picard_params",
    "picard_ratios",
    "shiga_product",
    "sixth_char_quasi_periodicity",
]
