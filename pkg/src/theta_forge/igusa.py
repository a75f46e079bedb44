"""Exact Igusa-Clebsch invariants of binary sextics and the genus-2 loci.

Invariants come from Clebsch's transvectant construction and are converted to
the Igusa-Clebsch normalization J2, J4, J6, J10 (J10 is the discriminant up to
a constant). Everything is exact rational arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .errors import DomainError


def _fr(x) -> Fraction:
    if isinstance(x, float):
        raise DomainError("igusa works in exact arithmetic; pass ints, Fractions or strings")
    return Fraction(x)


@dataclass(frozen=True)
class BinarySextic:
    """a0 Z^6 + a1 X Z^5 + ... + a6 X^6; ``coeffs[i]`` multiplies X^i."""

    coeffs: tuple

    def __post_init__(self):
        c = tuple(_fr(x) for x in self.coeffs)
        if len(c) > 7:
            if any(c[7:]):
                raise DomainError("degree exceeds 6")
            c = c[:7]
        c = c + (Fraction(0),) * (7 - len(c))
        if not any(c):
            raise DomainError("zero polynomial")
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_roots(cls, roots, lead=1) -> "BinarySextic":
        """Product of (X - r Z); fewer than six roots puts the rest at infinity."""
        if len(roots) > 6:
            raise DomainError("at most six roots")
        c = [_fr(lead)]
        for r in roots:
            c = _mul(c, [-_fr(r), Fraction(1)])
        return cls(tuple(c))

    @property
    def degree(self) -> int:
        return max(i for i, x in enumerate(self.coeffs) if x)

    def substitute(self, u, v=1) -> "BinarySextic":
        """f(uX, vZ)."""
        u, v = _fr(u), _fr(v)
        return BinarySextic(tuple(c * u**i * v ** (6 - i) for i, c in enumerate(self.coeffs)))

    def swap(self) -> "BinarySextic":
        return BinarySextic(tuple(reversed(self.coeffs)))

    def scale(self, c) -> "BinarySextic":
        c = _fr(c)
        return BinarySextic(tuple(c * x for x in self.coeffs))


# ---------------------------------------------------------------------------
# binary forms as coefficient lists, entry i multiplying x^i z^(n-i)


def _mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _dx(c):
    return [i * c[i] for i in range(1, len(c))]


def _dz(c):
    n = len(c) - 1
    return [(n - i) * c[i] for i in range(n)]


def _partial(c, kx, kz):
    for _ in range(kx):
        c = _dx(c)
    for _ in range(kz):
        c = _dz(c)
    return c


def transvectant(f, g, k):
    """k-th transvectant (f, g)_k, normalized by (m-k)!(n-k)!/(m!n!)."""
    m, n = len(f) - 1, len(g) - 1
    acc = [Fraction(0)] * (m + n - 2 * k + 1)
    for j in range(k + 1):
        t = _mul(_partial(f, k - j, j), _partial(g, j, k - j))
        s = (-1) ** j * comb(k, j)
        for i, x in enumerate(t):
            acc[i] += s * x
    w = Fraction(factorial(m - k) * factorial(n - k), factorial(m) * factorial(n))
    return [w * x for x in acc]


def _clebsch(c) -> tuple:
    i = transvectant(c, c, 4)
    delta = transvectant(i, i, 2)
    y1 = transvectant(c, i, 4)
    y2 = transvectant(i, y1, 2)
    y3 = transvectant(i, y2, 2)
    A = transvectant(c, c, 6)[0]
    B = transvectant(i, i, 4)[0]
    C = transvectant(i, delta, 4)[0]
    D = transvectant(y3, y1, 2)[0]
    return A, B, C, D


def clebsch_invariants(f: BinarySextic) -> tuple:
    return _clebsch(list(f.coeffs))


def _ic(A, B, C, D) -> tuple:
    J2 = -120 * A
    J4 = -720 * A**2 + 6750 * B
    J6 = 8640 * A**3 - 108000 * A * B + 202500 * C
    J10 = (
        -62208 * A**5
        + 972000 * A**3 * B
        + 1620000 * A**2 * C
        - 3037500 * A * B**2
        - 6075000 * B * C
        - 4556250 * D
    )
    return J2, J4, J6, J10


def _absolute(J2, J4, J6, J10) -> tuple:
    i1 = 144 * J4 / J2**2
    i2 = -1728 * (J2 * J4 - 3 * J6) / J2**3
    i3 = 486 * J10 / J2**5
    return i1, i2, i3


@dataclass(frozen=True)
class IgusaInvariants:
    J2: Fraction
    J4: Fraction
    J6: Fraction
    J10: Fraction

    def __post_init__(self):
        for name in ("J2", "J4", "J6", "J10"):
            object.__setattr__(self, name, _fr(getattr(self, name)))

    def as_tuple(self) -> tuple:
        return (self.J2, self.J4, self.J6, self.J10)

    def to_json(self) -> dict:
        return {k: str(v) for k, v in zip(("J2", "J4", "J6", "J10"), self.as_tuple())}


def igusa(f: BinarySextic) -> IgusaInvariants:
    return IgusaInvariants(*_ic(*clebsch_invariants(f)))


def absolute_invariants(J: IgusaInvariants) -> tuple:
    if J.J2 == 0:
        raise DomainError("absolute invariants are undefined on J2 = 0")
    return _absolute(*J.as_tuple())


def igusa_numeric(coeffs) -> tuple:
    """Floating-point (complex) J2, J4, J6, J10 of a sextic given by coefficients.

    Same construction as ``igusa``; meant for sextics whose coefficients come
    out of a numerical computation.
    """
    c = [complex(x) for x in coeffs]
    if len(c) > 7 or not any(c):
        raise DomainError("need a nonzero sextic with at most 7 coefficients")
    c = c + [0j] * (7 - len(c))
    return _ic(*_clebsch(c))


def absolute_invariants_numeric(coeffs) -> tuple:
    J = igusa_numeric(coeffs)
    if abs(J[0]) < 1e-300:
        raise DomainError("absolute invariants are undefined on J2 = 0")
    return _absolute(*J)


# ---------------------------------------------------------------------------
# loci; keys are exponents (a, b, c, d) of J2^a J4^b J6^c J10^d

# the printed L2 equation with two corrections: the J4^3 J6 term carries J6^3
# (weight 30) and the J10^2 J4^2 J2 coefficient is +507384000
L2_POLY = {
    (7, 4, 0, 0): -1, (5, 5, 0, 0): -78, (3, 6, 0, 0): 159, (1, 7, 0, 0): -80,
    (6, 3, 1, 0): 12, (4, 4, 1, 0): 1332, (2, 5, 1, 0): -1728, (0, 6, 1, 0): 384,
    (5, 2, 2, 0): -54, (3, 3, 2, 0): -8910, (1, 4, 2, 0): 6048, (4, 1, 3, 0): 108,
    (2, 2, 3, 0): 29376, (0, 3, 3, 0): -6912, (3, 0, 4, 0): -81, (1, 1, 4, 0): -47952,
    (0, 0, 5, 0): 31104, (6, 2, 0, 1): 972, (4, 3, 0, 1): 77436, (2, 4, 0, 1): -592272,
    (0, 5, 0, 1): 41472, (5, 1, 1, 1): -5832, (3, 2, 1, 1): -870912, (1, 3, 1, 1): 4743360,
    (4, 0, 2, 1): 8748, (2, 1, 2, 1): 3090960, (0, 2, 2, 1): -9331200, (1, 0, 3, 1): -3499200,
    (5, 0, 0, 2): -236196, (3, 1, 0, 2): -19245600, (1, 2, 0, 2): 507384000,
    (2, 0, 1, 2): 104976000, (0, 1, 1, 2): -2099520000, (0, 0, 0, 3): -125971200000,
}

D8_POLY = {
    (2, 2, 0, 0): 1706, (0, 3, 0, 0): 2560, (4, 1, 0, 0): 27, (3, 0, 1, 0): -81,
    (1, 1, 1, 0): -14880, (0, 0, 2, 0): 28800,
}

D12_POLYS = (
    {
        (4, 1, 0, 0): -1, (3, 0, 1, 0): 12, (2, 2, 0, 0): -52, (0, 3, 0, 0): 80,
        (1, 1, 1, 0): 960, (0, 0, 2, 0): -3600,
    },
    {
        (5, 0, 0, 1): 864, (1, 2, 0, 1): 3456000, (3, 1, 0, 1): -43200, (0, 0, 0, 2): -2332800000,
        (6, 2, 0, 0): -1, (2, 4, 0, 0): -768, (4, 3, 0, 0): 48, (0, 5, 0, 0): 4096,
    },
)


def weight(poly: dict) -> set:
    return {2 * a + 4 * b + 6 * c + 10 * d for a, b, c, d in poly}


def evaluate(poly: dict, J: IgusaInvariants) -> Fraction:
    J2, J4, J6, J10 = J.as_tuple()
    return sum(
        (c * J2**a * J4**b * J6**c6 * J10**d for (a, b, c6, d), c in poly.items()),
        Fraction(0),
    )


def locus_membership(J: IgusaInvariants) -> dict:
    l2 = evaluate(L2_POLY, J) == 0
    d8 = l2 and evaluate(D8_POLY, J) == 0
    d12 = l2 and all(evaluate(p, J) == 0 for p in D12_POLYS)
    return {"generic": not (l2 or d8 or d12), "L2": l2, "D8": d8, "D12": d12}


# the fifteen factors of the L2 equation restricted to
# y^2 = x(x-1)(x-a1)(x-a2)(x-a3), in table order
L2_FACTORS = (
    lambda a1, a2, a3: a1 * a2 + a1 - a3 * a1 - a2,
    lambda a1, a2, a3: a1 * a2 - a1 + a3 * a1 - a3 * a2,
    lambda a1, a2, a3: a1 * a2 - a1 - a3 * a1 + a3,
    lambda a1, a2, a3: a1 * a2 - a2 - a3 * a2 + a3,
    lambda a1, a2, a3: a1 * a2 - a1 + a2 - a3 * a2,
    lambda a1, a2, a3: a1 * a2 - a3 * a1 - a2 + a3 * a2,
    lambda a1, a2, a3: a1 * a2 - a3 * a1 - a3 * a2 + a3,
    lambda a1, a2, a3: a3 * a1 - a1 - a3 * a2 + a3,
    lambda a1, a2, a3: a3 * a1 + a2 - a3 - a3 * a2,
    lambda a1, a2, a3: -a1 + a3 * a1 + a2 - a3,
    lambda a1, a2, a3: a1 * a2 - a1 - a2 + a3,
    lambda a1, a2, a3: a1 - a2 + a3 * a2 - a3,
    lambda a1, a2, a3: a1 * a2 - a3,
    lambda a1, a2, a3: a1 - a3 * a2,
    lambda a1, a2, a3: a3 * a1 - a2,
)

# L2_POLY(J(f)) / prod(factor^2), fixed by exact evaluation at (2, 3, 7)
L2_FACTOR_CONSTANT = Fraction(-40310784)  # -2^11 3^9


def _check_a(a1, a2, a3):
    pts = [Fraction(0), Fraction(1), a1, a2, a3]
    if len(set(pts)) != 5:
        raise DomainError("a1, a2, a3 must be distinct and avoid 0 and 1")


def quintic_curve(a1, a2, a3) -> BinarySextic:
    return BinarySextic.from_roots([0, 1, a1, a2, a3])


def l2_factor_product(a1, a2, a3) -> Fraction:
    a1, a2, a3 = _fr(a1), _fr(a2), _fr(a3)
    p = Fraction(1)
    for fac in L2_FACTORS:
        p *= fac(a1, a2, a3) ** 2
    return p


def l2_factorization_ratio(a1, a2, a3):
    """L2 at J(f) over the factor product, or None when both vanish."""
    a1, a2, a3 = _fr(a1), _fr(a2), _fr(a3)
    _check_a(a1, a2, a3)
    lhs = evaluate(L2_POLY, igusa(quintic_curve(a1, a2, a3)))
    rhs = l2_factor_product(a1, a2, a3)
    if rhs == 0:
        if lhs != 0:
            raise AssertionError("L2 polynomial nonzero on a factor zero")
        return None
    return lhs / rhs


def l2_factorization_check(a1, a2, a3) -> bool:
    r = l2_factorization_ratio(a1, a2, a3)
    return r is None or r == L2_FACTOR_CONSTANT


def discriminant(f: BinarySextic) -> Fraction:
    """Discriminant of the degree-6 form (roots at infinity included)."""
    # resultant of f_x and f_z via Sylvester matrix, exact
    fx = _dx(list(f.coeffs))
    fz = _dz(list(f.coeffs))
    return _resultant(fx, fz)


def _resultant(p, q):
    m, n = len(p) - 1, len(q) - 1
    size = m + n
    rows = []
    for i in range(n):
        rows.append([Fraction(0)] * i + list(reversed(p)) + [Fraction(0)] * (size - m - 1 - i))
    for i in range(m):
        rows.append([Fraction(0)] * i + list(reversed(q)) + [Fraction(0)] * (size - n - 1 - i))
    return _det(rows)


def _det(M):
    M = [row[:] for row in M]
    n = len(M)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det *= M[c][c]
        for r in range(c + 1, n):
            if M[r][c]:
                k = M[r][c] / M[c][c]
                M[r] = [x - k * y for x, y in zip(M[r], M[c])]
    return det


def has_repeated_root(f: BinarySextic) -> bool:
    return discriminant(f) == 0
