"""Riemann theta functions with rational characteristics.

    theta[a;b](z, tau) = sum_u exp(pi i (u+a)^t tau (u+a) + 2 pi i (u+a)^t (z+b))

The lattice sum is truncated on an ellipsoid adapted to Im(tau); the radius
comes from the tail bound of Deconinck, Heil, Bobenko, van Hoeij and Schmies
(Math. Comp. 73, 2004).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.special import gammaincc, gamma

from .charspace import HalfChar
from .errors import DimensionError, DomainError, PrecisionUnreachable


@dataclass(frozen=True)
class RatChar:
    genus: int
    top: tuple
    bottom: tuple

    def __post_init__(self):
        top = tuple(Fraction(x) % 1 for x in self.top)
        bottom = tuple(Fraction(x) % 1 for x in self.bottom)
        if len(top) != self.genus or len(bottom) != self.genus:
            raise DimensionError("characteristic rows must have length genus")
        object.__setattr__(self, "top", top)
        object.__setattr__(self, "bottom", bottom)

    @classmethod
    def from_half(cls, m: HalfChar) -> "RatChar":
        return cls(m.genus, tuple(Fraction(x, 2) for x in m.top), tuple(Fraction(x, 2) for x in m.bottom))

    def to_half(self) -> HalfChar:
        if any(x not in (0, Fraction(1, 2)) for x in self.top + self.bottom):
            raise DomainError("not a half-integer characteristic")
        return HalfChar(self.genus, tuple(int(2 * x) for x in self.top), tuple(int(2 * x) for x in self.bottom))

    def to_json(self) -> dict:
        return {
            "g": self.genus,
            "top_num": [x.numerator for x in self.top],
            "top_den": [x.denominator for x in self.top],
            "bottom_num": [x.numerator for x in self.bottom],
            "bottom_den": [x.denominator for x in self.bottom],
        }

    @classmethod
    def from_json(cls, data: dict) -> "RatChar":
        if "top_num" in data:
            top = [Fraction(n, d) for n, d in zip(data["top_num"], data["top_den"])]
            bot = [Fraction(n, d) for n, d in zip(data["bottom_num"], data["bottom_den"])]
            return cls(int(data["g"]), tuple(top), tuple(bot))
        return cls.from_half(HalfChar.from_json(data))


def as_ratchar(ch) -> RatChar:
    if isinstance(ch, RatChar):
        return ch
    if isinstance(ch, HalfChar):
        return RatChar.from_half(ch)
    raise DomainError(f"not a characteristic: {ch!r}")


@dataclass(frozen=True)
class SiegelPoint:
    g: int
    tau: np.ndarray
    sym_residual: float
    pd_certificate: tuple  # Cholesky pivots of Im(tau)

    def __post_init__(self):
        self.tau.setflags(write=False)

    def to_json(self) -> dict:
        return {"g": self.g, "re": self.tau.real.tolist(), "im": self.tau.imag.tolist()}

    @classmethod
    def from_json(cls, data: dict) -> "SiegelPoint":
        tau = np.array(data["re"], dtype=float) + 1j * np.array(data["im"], dtype=float)
        sp = validate_siegel(tau)
        if "g" in data and int(data["g"]) != sp.g:
            raise DimensionError("g does not match the matrix size")
        return sp


def validate_siegel(tau_raw, sym_tol: float = 1e-6) -> SiegelPoint:
    tau = np.array(tau_raw, dtype=complex)
    if tau.ndim != 2 or tau.shape[0] != tau.shape[1] or tau.shape[0] == 0:
        raise DimensionError(f"tau must be a square matrix, got shape {tau.shape}")
    asym = float(np.max(np.abs(tau - tau.T)))
    scale = max(1.0, float(np.max(np.abs(tau))))
    if asym > sym_tol * scale:
        raise DomainError(f"tau is not symmetric (residual {asym:.3e})")
    tau = (tau + tau.T) / 2
    try:
        L = np.linalg.cholesky(tau.imag)
    except np.linalg.LinAlgError:
        ev = np.linalg.eigvalsh(tau.imag)
        raise DomainError(f"Im(tau) is not positive definite (eigenvalues {ev.tolist()})") from None
    pivots = tuple(float(x) for x in np.diag(L) ** 2)
    if min(pivots) <= 0:
        raise DomainError("Im(tau) is not positive definite")
    return SiegelPoint(tau.shape[0], tau, asym, pivots)


def as_siegel(tau) -> SiegelPoint:
    return tau if isinstance(tau, SiegelPoint) else validate_siegel(tau)


@dataclass(frozen=True)
class EvalParams:
    target_abs_tol: float = 1e-12
    max_radius: int = 60

    def __post_init__(self):
        if not self.target_abs_tol > 0:
            raise DomainError("target_abs_tol must be positive")
        if self.max_radius < 1:
            raise DomainError("max_radius must be positive")


DEFAULT = EvalParams()


def _shortest_vector(T: np.ndarray) -> float:
    """Length of the shortest nonzero vector of the lattice T Z^g (small g)."""
    g = T.shape[0]
    best = min(np.linalg.norm(T[:, i]) for i in range(g))
    # any shorter vector has coordinates bounded through the Gram inverse
    G = T.T @ T
    bound = np.sqrt(np.diag(np.linalg.inv(G))) * best
    rng = [range(-int(b), int(b) + 1) for b in np.floor(bound + 1e-9)]
    for u in itertools.product(*rng):
        if any(u):
            n = np.linalg.norm(T @ np.array(u, dtype=float))
            if 0 < n < best:
                best = n
    return float(best)


def _radius(g: int, rho: float, tol: float) -> float:
    """Smallest R with (g/2)(2/rho)^g Gamma(g/2, (R - rho/2)^2) <= tol."""

    def err(R):
        x = (R - rho / 2) ** 2
        return (g / 2) * (2 / rho) ** g * gammaincc(g / 2, x) * gamma(g / 2)

    R = max(rho, 1.0)
    lo = rho / 2
    while err(R) > tol:
        lo, R = R, R * 2
    hi = R
    for _ in range(60):
        mid = (lo + hi) / 2
        if err(mid) > tol:
            lo = mid
        else:
            hi = mid
    return max(hi, math.sqrt(g) / 2)


class _Lattice:
    """Cached truncation data for one tau and tolerance."""

    def __init__(self, sp: SiegelPoint, p: EvalParams):
        self.sp = sp
        self.p = p
        Y = sp.tau.imag
        self.Y = Y
        self.L = np.linalg.cholesky(Y)  # Y = L L^t
        T = math.sqrt(math.pi) * self.L.T
        self.T = T
        self.rho = _shortest_vector(T)
        self.R = _radius(sp.g, self.rho, p.target_abs_tol)
        self.Tinv = np.linalg.inv(T)

    def points(self, center: np.ndarray, extra: float = 0.0) -> np.ndarray:
        """Integer u with ||T (u + center)|| <= R + extra, in a fixed order."""
        g = self.sp.g
        R = self.R + extra
        half = R * np.linalg.norm(self.Tinv, axis=1)
        need = int(math.ceil(np.max(half) + 1))
        if need > self.p.max_radius:
            raise PrecisionUnreachable(
                f"enumeration radius {need} exceeds max_radius {self.p.max_radius}", required=need
            )
        axes = [
            np.arange(math.floor(-center[i] - half[i]), math.ceil(-center[i] + half[i]) + 1)
            for i in range(g)
        ]
        grid = np.array(np.meshgrid(*axes, indexing="ij")).reshape(g, -1).T
        w = (grid + center) @ self.T.T
        keep = np.einsum("ij,ij->i", w, w) <= R * R
        return grid[keep].astype(float)


_CACHE: dict = {}


def _lattice(sp: SiegelPoint, p: EvalParams) -> _Lattice:
    key = (sp.tau.tobytes(), p)
    lat = _CACHE.get(key)
    if lat is None:
        if len(_CACHE) > 64:
            _CACHE.clear()
        lat = _CACHE[key] = _Lattice(sp, p)
    return lat


def _fsum_complex(vals: np.ndarray) -> complex:
    return complex(math.fsum(vals.real), math.fsum(vals.imag))


def theta_raw(z, tau, a, b, p: EvalParams = DEFAULT, extra_radius: float = 0.0) -> complex:
    """Theta with unreduced float characteristic vectors a, b."""
    sp = as_siegel(tau)
    g = sp.g
    z = np.asarray(z, dtype=complex).reshape(-1)
    a = np.asarray([float(x) for x in a])
    b = np.asarray([float(x) for x in b])
    if z.shape[0] != g or a.shape[0] != g or b.shape[0] != g:
        raise DimensionError("z and the characteristic must have length g")
    lat = _lattice(sp, p)
    # the Gaussian weight of u is centred at -(a + Y^{-1} Im z)
    c = np.linalg.solve(lat.Y, z.imag)
    center = a + c
    # the terms carry an extra factor exp(pi c^t Y c); widen R to keep the
    # absolute tolerance
    boost = math.pi * float(c @ lat.Y @ c)
    extra = extra_radius
    if boost > 0:
        extra += math.sqrt(boost) + 1.0
    U = lat.points(center, extra)
    V = U + a
    quad = np.einsum("ni,ij,nj->n", V, sp.tau, V)
    lin = V @ (z + b)
    terms = np.exp(1j * math.pi * quad + 2j * math.pi * lin)
    return _fsum_complex(terms)


def theta(z, tau, ch, p: EvalParams = DEFAULT) -> complex:
    r = as_ratchar(ch)
    sp = as_siegel(tau)
    if r.genus != sp.g:
        raise DimensionError(f"characteristic genus {r.genus} but tau is {sp.g}x{sp.g}")
    return theta_raw(z, sp, r.top, r.bottom, p)


def thetanulls(tau, chars, p: EvalParams = DEFAULT) -> list:
    sp = as_siegel(tau)
    zero = np.zeros(sp.g)
    return [theta(zero, sp, ch, p) for ch in chars]


def truncation_check(z, tau, ch, p: EvalParams = DEFAULT) -> float:
    """Change in the value when the enumeration radius is doubled."""
    sp = as_siegel(tau)
    r = as_ratchar(ch)
    lat = _lattice(sp, p)
    v1 = theta_raw(z, sp, r.top, r.bottom, p)
    v2 = theta_raw(z, sp, r.top, r.bottom, p, extra_radius=lat.R)
    return abs(v1 - v2)


def quasi_periodicity_residual(z, tau, ch, m, n, p: EvalParams = DEFAULT) -> float:
    sp = as_siegel(tau)
    r = as_ratchar(ch)
    z = np.asarray(z, dtype=complex)
    m = np.asarray(m, dtype=int)
    n = np.asarray(n, dtype=int)
    a = np.array([float(x) for x in r.top])
    b = np.array([float(x) for x in r.bottom])
    base = theta_raw(z, sp, a, b, p)
    ph = np.exp(2j * math.pi * float(a @ m))
    r1 = abs(theta_raw(z, sp, a + n, b + m, p) - ph * base)
    r2 = abs(theta_raw(z + m, sp, a, b, p) - ph * base)
    expo = 1j * math.pi * (-2 * (b @ m) - m @ sp.tau @ m - 2 * (m @ z))
    r3 = abs(theta_raw(z + sp.tau @ m, sp, a, b, p) - np.exp(expo) * base)
    # the third identity multiplies by |exp(-2 pi i m^t z)|, which can be
    # large; compare relative to the size of the shifted value
    r3 /= max(1.0, abs(np.exp(expo)))
    return float(max(r1, r2, r3))


def parity_residual(z, tau, m: HalfChar, p: EvalParams = DEFAULT) -> float:
    sign = 1 if m.is_even else -1
    z = np.asarray(z, dtype=complex)
    return abs(theta(-z, tau, m, p) - sign * theta(z, tau, m, p))


def theta_closed_form(g: int) -> float:
    """theta(0, i I_g) = (pi^(1/4) / Gamma(3/4))^g."""
    return (math.pi**0.25 / math.gamma(0.75)) ** g
