"""Genus-2 automorphism loci seen through thetanulls.

Conventions: thetas are indexed as in ``tables.GENUS2`` and the curve is
Y^2 = X(X-1)(X-a1)(X-a2)(X-a3) with (a1, a2, a3) = (nu, mu, lambda), so that
Picard's ratios read

    a3 = t1^2 t3^2 / (t2^2 t4^2),  a2 = t3^2 t8^2 / (t4^2 t10^2),
    a1 = t1^2 t8^2 / (t2^2 t10^2).

Every theta polynomial here has even exponents only and is stored as a
polynomial in the squares s_k = t_k^2. A locus is a union of factor varieties,
so residuals are the minimum over factors of |factor| / sum |monomials|.
"""

from __future__ import annotations

import cmath
import functools
from dataclasses import dataclass, field
from fractions import Fraction

import sympy

from .errors import DomainError
from .identities import FOURTH, SQUARED, genus2_suite
from .igusa import (
    BinarySextic,
    L2_FACTORS,
    absolute_invariants_numeric,
    D8_POLY,
    D12_POLYS,
    L2_POLY,
    igusa,
    igusa_numeric,
    locus_membership,
)
from .periods import HyperellipticCurve, period_matrix
from .tables import GENUS2, index_of
from .theta import DEFAULT, EvalParams, thetanulls

# ---------------------------------------------------------------------------
# polynomial plumbing

_SYMS = {f"t{k}": sympy.Symbol(f"t{k}") for k in (1, 2, 3, 4, 8, 10)}
_SYMS.update({k: sympy.Symbol(k) for k in "ABCDE"})


@dataclass(frozen=True)
class ThetaPoly:
    """Sparse polynomial: ``terms`` is ((coeff, ((var, exp), ...)), ...)."""

    text: str
    terms: tuple

    def monomials(self, env: dict) -> list:
        out = []
        for c, mono in self.terms:
            v = complex(c)
            for name, e in mono:
                v *= env[name] ** e
            out.append(v)
        return out

    def value(self, env: dict) -> complex:
        return sum(self.monomials(env), 0j)

    def normalized(self, env: dict) -> float:
        mons = self.monomials(env)
        scale = sum(abs(m) for m in mons)
        return abs(sum(mons)) / scale if scale > 0 else 0.0


def _parse(text: str, squares: bool = True) -> ThetaPoly:
    expr = sympy.sympify(text.replace("^", "**"), locals=_SYMS)
    gens = sorted(expr.free_symbols, key=lambda s: s.name)
    poly = sympy.Poly(sympy.expand(expr), *gens)
    terms = []
    for exps, c in poly.terms():
        mono = []
        for s, e in zip(gens, exps):
            if not e:
                continue
            if squares:
                if e % 2:
                    raise ValueError(f"odd theta exponent in {text!r}")
                e //= 2
            mono.append((s.name, e))
        terms.append((int(c), tuple(mono)))
    return ThetaPoly(text, tuple(terms))


def _squares_env(thetas: dict) -> dict:
    return {f"t{k}": complex(v) ** 2 for k, v in thetas.items()}


# ---------------------------------------------------------------------------
# Table 2.1: cross-ratio factor f(a1, a2, a3) and its theta expression

_TABLE21_TAGS = (
    "-t1^2*t3^2*t8^2*t2^2 - t1^2*t2^2*t4^2*t10^2 + t1^4*t3^2*t10^2 + t3^2*t2^4*t10^2",
    "t3^2*t8^2*t2^2*t4^2 - t2^2*t4^4*t10^2 + t1^2*t3^2*t4^2*t10^2 - t3^4*t2^2*t10^2",
    "-t8^4*t3^2*t2^2 + t8^2*t2^2*t10^2*t4^2 + t1^2*t3^2*t8^2*t10^2 - t3^2*t2^2*t10^4",
    "-t1^2*t8^4*t4^2 - t1^2*t10^4*t4^2 + t8^2*t2^2*t10^2*t4^2 + t1^2*t3^2*t8^2*t10^2",
    "-t1^2*t8^2*t3^2*t4^2 + t1^2*t10^2*t4^4 + t1^2*t3^4*t10^2 - t3^2*t2^2*t10^2*t4^2",
    "-t1^2*t8^2*t2^2*t4^2 + t1^4*t10^2*t4^2 - t1^2*t3^2*t2^2*t10^2 + t2^4*t4^2*t10^2",
    "-t8^4*t2^2*t4^2 + t1^2*t8^2*t10^2*t4^2 - t2^2*t10^4*t4^2 + t3^2*t8^2*t2^2*t10^2",
    # the printed tag for this row repeats row 13; this is the expression that
    # Picard's ratios turn the row's factor into
    "t1^2*t3^2*t4^2*t8^2 - t2^2*t4^4*t8^2 - t2^2*t3^4*t8^2 + t2^2*t3^2*t4^2*t10^2",
    "t1^4*t8^2*t4^2 - t1^2*t2^2*t4^2*t10^2 - t1^2*t3^2*t8^2*t2^2 + t8^2*t2^4*t4^2",
    "t1^4*t3^2*t8^2 - t1^2*t8^2*t2^2*t4^2 - t1^2*t3^2*t2^2*t10^2 + t3^2*t8^2*t2^4",
    "t1^2*t8^4*t3^2 - t1^2*t8^2*t10^2*t4^2 + t1^2*t3^2*t10^4 - t3^2*t8^2*t2^2*t10^2",
    "t1^2*t8^2*t4^4 - t1^2*t3^2*t4^2*t10^2 + t1^2*t3^4*t8^2 - t3^2*t8^2*t2^2*t4^2",
    "t8^4 - t10^4",
    "t3^4 - t4^4",
    "t1^4 - t2^4",
)
PRINTED_ROW8_TAG = "t8^4 - t10^4"

_TABLE21_FACTOR_TEXT = (
    "a1*a2 + a1 - a3*a1 - a2",
    "a1*a2 - a1 + a3*a1 - a3*a2",
    "a1*a2 - a1 - a3*a1 + a3",
    "a1*a2 - a2 - a3*a2 + a3",
    "a1*a2 - a1 + a2 - a3*a2",
    "a1*a2 - a3*a1 - a2 + a3*a2",
    "a1*a2 - a3*a1 - a3*a2 + a3",
    "a3*a1 - a1 - a3*a2 + a3",
    "a3*a1 + a2 - a3 - a3*a2",
    "-a1 + a3*a1 + a2 - a3",
    "a1*a2 - a1 - a2 + a3",
    "a1 - a2 + a3*a2 - a3",
    "a1*a2 - a3",
    "a1 - a3*a2",
    "a3*a1 - a2",
)


@functools.cache
def table21_tags() -> tuple:
    return tuple(_parse(t) for t in _TABLE21_TAGS)


@dataclass(frozen=True)
class Table21Row:
    row: int
    factor: str
    value: Fraction
    tag: str

    def to_json(self) -> dict:
        return {"row": self.row, "factor": self.factor, "value": str(self.value), "tag": self.tag}


def table21_factors(a1, a2, a3) -> list:
    """The fifteen cross-ratio factors at an exact point, with their theta tags."""
    a = [Fraction(x) if not isinstance(x, float) else None for x in (a1, a2, a3)]
    if None in a:
        raise DomainError("table21_factors works in exact arithmetic; pass ints, Fractions or strings")
    if len({Fraction(0), Fraction(1), *a}) != 5:
        raise DomainError("a1, a2, a3 must be distinct and avoid 0 and 1")
    return [
        Table21Row(k + 1, txt, fac(*a), tag)
        for k, (txt, fac, tag) in enumerate(zip(_TABLE21_FACTOR_TEXT, L2_FACTORS, _TABLE21_TAGS))
    ]


def table21_theta_residuals(thetas: dict) -> list:
    """Normalized magnitude of each row's theta expression."""
    env = _squares_env(thetas)
    return [p.normalized(env) for p in table21_tags()]


# ---------------------------------------------------------------------------
# V4 loci

_V4_LOCUS2 = (
    "t3^4 - t4^4",
    "t1^4 - t3^4",
    "t2^4 - t4^4",
    "t1^4 - t4^4",
    "t3^4 - t2^4",
    "t1^4 - t2^4",
    "-t4^2 + t3^2 + t1^2 - t2^2",
    "t4^2 - t3^2 + t1^2 - t2^2",
    "-t4^2 - t3^2 + t2^2 + t1^2",
    "t4^2 + t3^2 + t2^2 + t1^2",
    "t1^4*t2^4 + t3^4*t2^4 + t1^4*t3^4 - 2*t1^2*t2^2*t3^2*t4^2",
    "-t3^4*t2^4 - t2^4*t4^4 - t3^4*t4^4 + 2*t1^2*t2^2*t3^2*t4^2",
    "t2^4*t4^4 + t1^4*t2^4 + t1^4*t4^4 - 2*t1^2*t2^2*t3^2*t4^2",
    "t1^4*t4^4 + t3^4*t4^4 + t1^4*t3^4 - 2*t1^2*t2^2*t3^2*t4^2",
)

_ABCDE_RELATIONS = (
    "1 + A - B - C - D - E",
    # printed with +2*B*C*A; only -2*A*B*C holds at actual thetanulls
    "A^2 - 2*D*E*A - 2*A*B*C + C^2*B^2 - 2*D*E*C*B + D^2*E^2",
)

_ABCDE_LEMMA = (
    "B - A",
    "A - C",
    "B - C",
    "1 - A",
    "1 - B",
    "1 - C",
    "1 - 2*C + 2*A + A^2*C^2 - 4*D*E - A*C - 2*A^2*B*C + 2*A*D*E*B*C + A*B^2 + D*E*B*C"
    " + A*D*E*B - A^2 + 4*A*B*C - 2*A*B^2*C^2 - A^2*B + A*D*E - B^2*C^2 - 2*B*C^2 + B^2*C",
    "-D*E*B*C - 4*A*B*C + B^2*C^2 + A*C + A*B^2*C - A*D*E*B + A^2 + A^2*C + A*B*C^2"
    " - D*E*C - 2*A*D*E*C - A^2*C^2 - A^2*B*C - A*C^2 - A*D*E",
)


@functools.cache
def v4_locus1_factors(include_row8: bool = True) -> tuple:
    """Factors of the V4 theta locus in t1, t2, t3, t4, t8, t10.

    The displayed product has the fourteen distinct Table 2.1 tags; row 8's
    real tag is missing from it because the table repeats row 13 there.
    ``include_row8`` adds it back.
    """
    tags = table21_tags()
    rows = [12, 13, 14] + [k for k in range(12) if include_row8 or k != 7]
    return tuple(tags[k] for k in rows)


@functools.cache
def v4_locus2_factors() -> tuple:
    return tuple(_parse(t) for t in _V4_LOCUS2)


@functools.cache
def _abcde_relations() -> tuple:
    return tuple(_parse(t, squares=False) for t in _ABCDE_RELATIONS)


@functools.cache
def _abcde_lemma() -> tuple:
    return tuple(_parse(t, squares=False) for t in _ABCDE_LEMMA)


def _min_factor(factors, env) -> tuple[float, int]:
    vals = [f.normalized(env) for f in factors]
    k = min(range(len(vals)), key=vals.__getitem__)
    return vals[k], k


def v4_theta_test(thetas: dict, include_row8: bool = True) -> float:
    """Minimum normalized factor of the V4 locus in t1..t4, t8, t10."""
    return _min_factor(v4_locus1_factors(include_row8), _squares_env(thetas))[0]


# ---------------------------------------------------------------------------
# fundamental thetanulls


@dataclass(frozen=True)
class FundamentalThetas:
    t1: complex
    t2: complex
    t3: complex
    t4: complex

    def __post_init__(self):
        for k in ("t1", "t2", "t3", "t4"):
            object.__setattr__(self, k, complex(getattr(self, k)))

    @classmethod
    def from_thetas(cls, thetas: dict) -> "FundamentalThetas":
        return cls(thetas[1], thetas[2], thetas[3], thetas[4])

    def squares(self) -> dict:
        return {1: self.t1**2, 2: self.t2**2, 3: self.t3**2, 4: self.t4**2}


def v4_fundamental_test(ft: FundamentalThetas) -> float:
    """Minimum normalized factor of the V4 locus in the fundamental thetanulls."""
    env = {f"t{k}": v for k, v in ft.squares().items()}
    return _min_factor(v4_locus2_factors(), env)[0]


DERIVE_CONVENTION = (
    "for each pair (p, q) in ((5, 6), (7, 9), (8, 10)): tp^4 = (S + sqrt(S^2 - 4 P^2)) / 2 with the "
    "principal square root, tq^4 = S - tp^4, tp^2 = principal sqrt(tp^4), tq^2 = P / tp^2, where "
    "P = tp^2 tq^2 and S = tp^4 + tq^4 come from the identities of the group {t1, t2, t3, t4}"
)


@dataclass(frozen=True)
class DerivedThetas:
    squares: dict  # index -> theta^2
    fourth: dict  # index -> theta^4
    convention: str = DERIVE_CONVENTION

    def to_json(self) -> dict:
        def enc(d):
            return {str(k): [v.real, v.imag] for k, v in sorted(d.items())}

        return {"squares": enc(self.squares), "fourth": enc(self.fourth), "convention": self.convention}


@functools.cache
def _group_i_relations() -> dict:
    """(p, q) -> (squared-product instance, fourth-power instance)."""
    out: dict = {}
    for inst in genus2_suite()["i"]:
        pair = tuple(sorted(index_of(ch) for ch, _ in inst.lhs[0].factors)) if inst.kind == SQUARED else None
        if inst.kind == FOURTH:
            pair = tuple(sorted(index_of(t.factors[0][0]) for t in inst.lhs))
        out.setdefault(pair, {})[inst.kind] = inst
    return {k: (v[SQUARED], v[FOURTH]) for k, v in sorted(out.items())}


def derive_even_thetanulls(ft: FundamentalThetas, tol: float = 1e-10) -> DerivedThetas:
    sq = ft.squares()
    if any(abs(v) == 0 for v in sq.values()):
        raise DomainError("fundamental thetanulls must be nonzero")
    vals = {GENUS2[k]: v for k, v in zip((1, 2, 3, 4), (ft.t1, ft.t2, ft.t3, ft.t4))}
    squares = dict(sq)
    fourth = {k: v * v for k, v in sq.items()}
    real = all(abs(v.imag) == 0 for v in sq.values())
    for (p, q), (isq, ifo) in _group_i_relations().items():
        P = sum(t.value(vals) for t in isq.rhs)
        S = sum(t.value(vals) for t in ifo.rhs)
        disc = S * S - 4 * P * P
        scale = abs(S) ** 2 + 4 * abs(P) ** 2
        if real and disc.real < -tol * scale:
            raise DomainError(f"inconsistent fundamentals: negative discriminant for the pair ({p}, {q})")
        fp = (S + cmath.sqrt(disc)) / 2
        fq = S - fp
        if abs(fp) == 0:
            raise DomainError(f"theta{p} and theta{q} both vanish")
        sp = cmath.sqrt(fp)
        squares[p], squares[q] = sp, P / sp
        fourth[p], fourth[q] = fp, fq
    return DerivedThetas(squares, fourth)


@dataclass(frozen=True)
class CurveCandidate:
    alpha: complex
    lam: complex
    mu: complex
    nu: complex
    coeffs: tuple  # x^0..x^6 of x(x-1)(x-lam)(x^2 - (mu+nu) x + mu nu)
    v4: bool

    def to_json(self) -> dict:
        c = lambda z: [z.real, z.imag]  # noqa: E731
        return {
            "alpha": c(self.alpha),
            "lambda": c(self.lam),
            "mu": c(self.mu),
            "nu": c(self.nu),
            "coeffs": [c(z) for z in self.coeffs],
            "V4": self.v4,
        }


def _poly_from_roots(roots) -> list:
    """Ascending coefficients of prod (x - r)."""
    c = [1 + 0j]
    for r in roots:
        c = [(c[i - 1] if i > 0 else 0) - r * (c[i] if i < len(c) else 0) for i in range(len(c) + 1)]
    return c


def alpha_roots(ft: FundamentalThetas, tol: float = 1e-10) -> tuple:
    s = ft.squares()
    den = s[3] * s[4] - s[1] * s[2]
    if abs(den) <= tol * (abs(s[3] * s[4]) + abs(s[1] * s[2])):
        raise DomainError("t3^2 t4^2 = t1^2 t2^2: the alpha equation degenerates")
    K = (s[1] ** 2 + s[2] ** 2 - s[3] ** 2 - s[4] ** 2) / den
    # alpha^2 + K alpha + 1: near K = -+2 the roots are a double root at +-1 and
    # the square root would amplify rounding, so snap
    if abs(K * K - 4) <= tol * max(1.0, abs(K) ** 2):
        a = complex(-1 if K.real > 0 else 1)
        return a, a
    r = cmath.sqrt(K * K - 4)
    a = (-K - r) / 2 if abs(-K - r) >= abs(-K + r) else (-K + r) / 2
    return a, 1 / a


def curve_from_fundamentals(ft: FundamentalThetas, tol: float = 1e-10) -> tuple:
    """Both candidate curves, one per root of the alpha quadratic."""
    s = ft.squares()
    if abs(s[2] * s[4]) == 0:
        raise DomainError("t2^2 t4^2 must be nonzero")
    lam = s[1] * s[3] / (s[2] * s[4])
    out = []
    for a in alpha_roots(ft, tol):
        mu = s[3] / s[4] * a
        nu = s[1] / s[2] * a
        # x (x - 1) (x - lam) (x^2 - (mu + nu) x + mu nu), ascending powers
        coeffs = tuple(_poly_from_roots([0, 1, lam, mu, nu])) + (0j,)
        v4 = a in (1, -1)
        out.append(CurveCandidate(a, lam, mu, nu, coeffs, v4))
    return tuple(out)


# ---------------------------------------------------------------------------
# A..E


def abcde(thetas: dict) -> dict:
    t1 = complex(thetas[1])
    if t1 == 0:
        raise DomainError("theta1 must be nonzero")
    return {n: (complex(thetas[k]) / t1) ** 4 for n, k in zip("ABCDE", (2, 3, 4, 8, 10))}


@dataclass(frozen=True)
class ABCDEReport:
    linear: float
    quadratic: float
    lemma_min_factor: float
    lemma_product: complex

    def to_json(self) -> dict:
        return {
            "linear": self.linear,
            "quadratic": self.quadratic,
            "lemma_min_factor": self.lemma_min_factor,
            "lemma_product": [self.lemma_product.real, self.lemma_product.imag],
        }


def abcde_residuals(thetas: dict) -> ABCDEReport:
    env = abcde(thetas)
    lin, quad = (p.normalized(env) for p in _abcde_relations())
    facs = _abcde_lemma()
    prod = 1 + 0j
    for f in facs:
        prod *= f.value(env)
    return ABCDEReport(lin, quad, _min_factor(facs, env)[0], prod)


# ---------------------------------------------------------------------------
# D8 locus restricted to t4^2 = t3^2 (sign +1) or t4^2 = -t3^2 (sign -1).
# Weakly verified: only the internal consistency checks in the tests.

_D8_PLUS = (
    "t1^4 - t2^4",
    "t1^2*t2^2 - t3^4",
    "t2^2 + t1^2 + 2*t3^2",
    "t2^2 + t1^2 - 2*t3^2",
    "2*t1^4 - 2*t1^2*t2^2 + t3^4",
    "-2*t2^4 - t3^4 + 2*t1^2*t2^2",
    "-10*t1^4*t2^12*t3^8 + 206*t1^4*t2^4*t3^16 + 8*t1^8*t2^16 - 34*t1^4*t2^8*t3^12"
    " - 126*t1^2*t2^6*t3^16 + 18*t1^2*t2^10*t3^12 + 27*t1^8*t3^16 - 132*t1^8*t2^8*t3^8"
    " - 34*t1^8*t2^4*t3^12 - 16*t1^8*t3^4*t2^12 - 16*t1^6*t2^14*t3^4 - 126*t1^6*t2^2*t3^16"
    " + 24*t1^6*t2^6*t3^12 + 68*t1^6*t2^10*t3^8 - 24*t1^12*t2^12 + 8*t2^8*t1^16"
    " - 10*t1^12*t3^8*t2^4 - 16*t1^12*t3^4*t2^8 + 88*t1^10*t3^4*t2^10 + 18*t1^10*t2^2*t3^12"
    " + 68*t1^10*t3^8*t2^6 + 27*t2^8*t3^16 - 16*t1^14*t2^6*t3^4",
)

_D8_MINUS = (
    "t1^4 - t2^4",
    "t3^4 + t1^2*t2^2",
    "-t2^2 + t1^2 - 2*t3^2",
    "-t2^2 + t1^2 + 2*t3^2",
    "t3^4 + 2*t1^2*t2^2 + 2*t1^4",
    "2*t2^4 + t3^4 + 2*t1^2*t2^2",
    "206*t1^4*t2^4*t3^16 - 10*t1^4*t2^12*t3^8 + 27*t2^8*t3^16 - 34*t1^4*t2^8*t3^12"
    " + 126*t1^2*t2^6*t3^16 - 18*t1^2*t2^10*t3^12 - 68*t1^10*t3^8*t2^6 + 8*t1^8*t2^16"
    " + 27*t1^8*t3^16 - 132*t1^8*t2^8*t3^8 - 34*t1^8*t2^4*t3^12 - 16*t1^8*t3^4*t2^12"
    " + 16*t1^6*t2^14*t3^4 + 126*t1^6*t2^2*t3^16 - 24*t1^6*t2^6*t3^12 - 68*t1^6*t2^10*t3^8"
    " - 24*t1^12*t2^12 + 16*t1^14*t2^6*t3^4 - 10*t1^12*t3^8*t2^4 - 16*t1^12*t3^4*t2^8"
    " - 88*t1^10*t3^4*t2^10 - 18*t1^10*t2^2*t3^12 + 8*t2^8*t1^16",
)


@functools.cache
def d8_simplified_factors(sign: int) -> tuple:
    if sign not in (1, -1):
        raise DomainError("sign must be +1 or -1")
    return tuple(_parse(t) for t in (_D8_PLUS if sign == 1 else _D8_MINUS))


@dataclass(frozen=True)
class D8Report:
    sign: int
    constraint: float  # |t4^2 - sign t3^2| / (|t4^2| + |t3^2|)
    min_factor: float
    factor_index: int

    def to_json(self) -> dict:
        return {
            "sign": self.sign,
            "constraint": self.constraint,
            "min_factor": self.min_factor,
            "factor_index": self.factor_index,
            "weakly_verified": True,
        }


def d8_simplified_residual(thetas: dict, sign: int) -> D8Report:
    env = _squares_env({k: thetas[k] for k in (1, 2, 3, 4)})
    s3, s4 = env["t3"], env["t4"]
    cons = abs(s4 - sign * s3) / (abs(s4) + abs(s3))
    r, k = _min_factor(d8_simplified_factors(sign), env)
    return D8Report(sign, cons, r, k)


# ---------------------------------------------------------------------------
# end to end


def thetanulls_g2(tau, p: EvalParams = DEFAULT) -> dict:
    return dict(zip(range(1, 11), (complex(v) for v in thetanulls(tau, [GENUS2[k] for k in range(1, 11)], p))))


def curve_sextic(curve: HyperellipticCurve) -> list:
    """Coefficients x^0..x^6 of the product over the finite branch points."""
    if curve.genus != 2:
        raise DomainError("classification is for genus 2")
    if curve.exact is not None:
        return list(BinarySextic.from_roots(curve.exact).coeffs)
    return _poly_from_roots(curve.branch_points) + [0j]


def igusa_loci(curve: HyperellipticCurve, tol: float = 1e-8) -> dict:
    """Locus flags: exact for rational branch points, else a relative test."""
    coeffs = curve_sextic(curve)
    if curve.exact is not None:
        J = igusa(BinarySextic(tuple(coeffs)))
        out = locus_membership(J)
        out["exact"] = True
        return out
    J = igusa_numeric(coeffs)

    def small(poly):
        terms = [c * J[0] ** a * J[1] ** b * J[2] ** c6 * J[3] ** d for (a, b, c6, d), c in poly.items()]
        scale = sum(abs(t) for t in terms)
        return scale == 0 or abs(sum(terms)) <= tol * scale

    l2 = small(L2_POLY)
    d8 = l2 and small(D8_POLY)
    d12 = l2 and all(small(q) for q in D12_POLYS)
    return {"generic": not l2, "L2": l2, "D8": d8, "D12": d12, "exact": False}


@dataclass(frozen=True)
class Classification:
    aut_group_estimate: str
    v4_theta_residual: float
    v4_fundamental_residual: float
    igusa_loci: dict
    alpha_roots: tuple
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "aut_group_estimate": self.aut_group_estimate,
            "v4_theta_residual": self.v4_theta_residual,
            "v4_fundamental_residual": self.v4_fundamental_residual,
            "igusa_loci": self.igusa_loci,
            "alpha_roots": [[a.real, a.imag] for a in self.alpha_roots],
            "details": self.details,
        }


def classify_curve(
    curve: HyperellipticCurve,
    quad_order: int = 128,
    p: EvalParams = DEFAULT,
    threshold: float = 1e-6,
) -> Classification:
    """Theta-side V4 test next to the Igusa loci for a genus-2 curve.

    The group label names the largest of V4, D8, D12 detected as a subgroup
    (C2 when none is); the special curves with larger groups are not separated.
    """
    if curve.genus != 2:
        raise DomainError("classification is for genus 2")
    pd = period_matrix(curve, quad_order)
    th = thetanulls_g2(pd.tau, p)
    ft = FundamentalThetas.from_thetas(th)
    r1 = v4_theta_test(th)
    r2 = v4_fundamental_test(ft)
    loci = igusa_loci(curve)
    if loci["D12"]:
        est = "D12"
    elif loci["D8"]:
        est = "D8"
    elif loci["L2"] or r1 < threshold:
        est = "V4"
    else:
        est = "C2"
    try:
        roots = alpha_roots(ft)
    except DomainError:
        roots = ()
    details = {
        "threshold": threshold,
        "abcde": abcde_residuals(th).to_json(),
        "theta_igusa_agree": (r1 < threshold) == loci["L2"],
    }
    return Classification(est, r1, r2, loci, roots, details)


def same_moduli(c1, c2) -> float:
    """Largest relative difference of absolute invariants of two sextics."""
    i = absolute_invariants_numeric(c1)
    j = absolute_invariants_numeric(c2)
    return max(abs(x - y) / max(1.0, abs(x), abs(y)) for x, y in zip(i, j))


__all__ = [
    "ABCDEReport",
    "Classification",
    "CurveCandidate",
    "D8Report",
    "DERIVE_CONVENTION",
    "DerivedThetas",
    "FundamentalThetas",
    "PRINTED_ROW8_TAG",
    "Table21Row",
    "abcde",
    "abcde_residuals",
    "alpha_roots",
    "classify_curve",
    "curve_from_fundamentals",
    "curve_sextic",
    "d8_simplified_factors",
    "d8_simplified_residual",
    "derive_even_thetanulls",
    "igusa_loci",
    "same_moduli",
    "table21_factors",
    "table21_tags",
    "table21_theta_residuals",
    "thetanulls_g2",
    "v4_fundamental_test",
    "v4_locus1_factors",
    "v4_locus2_factors",
    "v4_theta_test",
]
