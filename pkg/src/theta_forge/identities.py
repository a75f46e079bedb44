"""Identities among half-integer thetanulls generated from a Goepel group.

For an all-even group G, a nonzero h in G and a characteristic a with
|a,h| + |h| even, the addition formula gives

    theta^2[a] theta^2[ah] = 2^(1-g) sum_e e^{pi i |ae|} (h over ae) theta^2[e] theta^2[eh]
    theta^4[a] + s theta^4[ah] = 2^(1-g) sum_e e^{pi i |ae|} (theta^4[e] + s theta^4[eh])

with s = e^{pi i |a,h|}, where e runs over one representative of each pair
{e, eh} of even characteristics meeting the syzygy condition. Instances are
stored as integer linear relations (scaled by 2^(g-1)); terms built only from
members of G go to the right-hand side.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .charspace import GopelGroup, HalfChar, all_chars, gopel_group_from_generators, pairing
from .errors import DimensionError, DomainError
from .tables import index_of, table
from .theta import DEFAULT, EvalParams, as_siegel, thetanulls

SQUARED = "squared-product"
FOURTH = "fourth-power"


def _odd(m: HalfChar) -> int:
    return sum(x * y for x, y in zip(m.top, m.bottom)) % 2


def _bracket(h: HalfChar, x: HalfChar) -> int:
    """(h over x) = exp(pi i sum h'_j x''_j) for half-integer entries."""
    return -1 if sum(a * b for a, b in zip(h.top, x.bottom)) % 2 else 1


def _sign(bit: int) -> int:
    return -1 if bit % 2 else 1


@dataclass(frozen=True)
class Term:
    coeff: int
    factors: tuple  # ((HalfChar, exponent), ...)

    def value(self, vals: dict) -> complex:
        out = complex(self.coeff)
        for ch, k in self.factors:
            out *= vals[ch] ** k
        return out

    def label(self) -> str:
        parts = []
        for ch, k in self.factors:
            try:
                name = f"t{index_of(ch)}"
            except KeyError:
                name = f"t{ch}"
            parts.append(f"{name}^{k}")
        return "*".join(parts)


@dataclass(frozen=True)
class IdentityInstance:
    kind: str
    h: HalfChar
    a: HalfChar
    lhs: tuple
    rhs: tuple

    @property
    def genus(self) -> int:
        return self.h.genus

    def chars(self) -> set:
        return {ch for t in self.lhs + self.rhs for ch, _ in t.factors}

    def sides(self, vals: dict) -> tuple[complex, complex]:
        return sum(t.value(vals) for t in self.lhs), sum(t.value(vals) for t in self.rhs)

    def residual(self, vals: dict) -> float:
        L, R = self.sides(vals)
        return abs(L - R) / (1 + abs(L) + abs(R))

    def relation(self) -> dict:
        """The identity as {factor key: coefficient} of LHS - RHS = 0."""
        out: dict = {}
        for sgn, side in ((1, self.lhs), (-1, self.rhs)):
            for t in side:
                key = frozenset(ch for ch, _ in t.factors)
                out[key] = out.get(key, 0) + sgn * t.coeff
        return {k: v for k, v in out.items() if v}

    def indexed(self) -> dict:
        """relation() keyed by sorted theta indices (needs an index table)."""
        return {tuple(sorted(index_of(ch) for ch in k)): v for k, v in self.relation().items()}

    def __str__(self):
        def side(ts):
            s = ""
            for t in ts:
                c = t.coeff
                sg = "-" if c < 0 else "+"
                mag = "" if abs(c) == 1 else f"{abs(c)} "
                s += f" {sg} {mag}{t.label()}"
            s = s.strip()
            return s[2:] if s.startswith("+ ") else s

        return f"{side(self.lhs)} = {side(self.rhs)}"

    def to_json(self) -> dict:
        def terms(ts):
            return [
                {"coeff": t.coeff, "factors": [[ch.to_json(), k] for ch, k in t.factors]}
                for t in ts
            ]

        return {
            "kind": self.kind,
            "h": self.h.to_json(),
            "a": self.a.to_json(),
            "lhs": terms(self.lhs),
            "rhs": terms(self.rhs),
            "text": str(self),
        }


def _order_key(ch: HalfChar):
    try:
        return (0, index_of(ch))
    except KeyError:
        return (1, ch.key)


def _split(G: GopelGroup, coeffs: dict, exponent: int, ka: frozenset) -> tuple:
    """Integer relation -> (lhs, rhs) with the a-terms leading the lhs."""
    lhs, rhs = [], []
    for key in sorted(coeffs, key=lambda k: (not k <= ka, sorted(map(_order_key, k)))):
        c = coeffs[key]
        if c == 0:
            continue
        factors = tuple((ch, exponent) for ch in sorted(key, key=_order_key))
        if all(ch in G.elements for ch in key):
            rhs.append(Term(-c, factors))
        else:
            lhs.append(Term(c, factors))
    return tuple(lhs), tuple(rhs)


def _admissible(h: HalfChar, cond) -> list[tuple[HalfChar, HalfChar]]:
    reps, seen = [], set()
    for e in all_chars(h.genus):
        eh = e * h
        if e == eh or _odd(e) or _odd(eh) or not cond(e):
            continue
        pair = frozenset((e, eh))
        if pair in seen:
            continue
        seen.add(pair)
        reps.append((e, eh))
    return reps


def default_a(G: GopelGroup, h: HalfChar) -> HalfChar:
    """Smallest-key even a outside G with a*h even and |a,h| + |h| even."""
    for a in all_chars(G.genus):
        if a in G.elements or _odd(a) or _odd(a * h):
            continue
        if (pairing(a, h) + _odd(h)) % 2 == 0:
            return a
    raise DomainError(f"no admissible a for h = {h}")


def _eq1(G, h, a) -> IdentityInstance:
    g = G.genus
    reps = _admissible(h, lambda e: pairing(a * e, h) == 0)
    scale = Fraction(1, 2 ** (g - 1))
    coeffs: dict = {}
    for e, eh in reps:
        c = _sign(_odd(a * e)) * _bracket(h, a * e)
        c2 = _sign(_odd(a * eh)) * _bracket(h, a * eh)
        # both members of a pair must give the same coefficient for the
        # representative choice to be harmless
        assert c == c2, "pair coefficient depends on the representative"
        key = frozenset((e, eh))
        coeffs[key] = coeffs.get(key, 0) + scale * c
    ka = frozenset((a, a * h))
    coeffs[ka] = coeffs.get(ka, 0) - 1
    # multiply through by -2^(g-1) so the a-pair coefficient is 2^(g-1) - 1
    ints = {k: int(-v * 2 ** (g - 1)) for k, v in coeffs.items()}
    lhs, rhs = _split(G, ints, 2, ka)
    return IdentityInstance(SQUARED, h, a, lhs, rhs)


def _eq2(G, h, a) -> IdentityInstance:
    g = G.genus
    s = _sign(pairing(a, h))
    reps = _admissible(h, lambda e: (_odd(h) + pairing(e, h)) % 2 == 0)
    scale = Fraction(1, 2 ** (g - 1))
    coeffs: dict = {}

    def add(ch, v):
        k = frozenset((ch,))
        coeffs[k] = coeffs.get(k, 0) + v

    for e, eh in reps:
        c = _sign(_odd(a * e))
        c2 = _sign(_odd(a * eh))
        assert c * s == c2, "pair summand depends on the representative"
        add(e, scale * c)
        add(eh, scale * c * s)
    add(a, -1)
    add(a * h, -s)
    ints = {k: int(-v * 2 ** (g - 1)) for k, v in coeffs.items()}
    lhs, rhs = _split(G, ints, 4, frozenset((a, a * h)))
    return IdentityInstance(FOURTH, h, a, lhs, rhs)


def generate_identities(G: GopelGroup, a_choices: dict | None = None) -> list[IdentityInstance]:
    """One squared-product and one fourth-power identity per nonzero h in G.

    ``a_choices`` maps h to a; missing entries fall back to ``default_a``.
    """
    if not G.is_all_even():
        raise DomainError("identity generation needs an all-even Goepel group")
    a_choices = a_choices or {}
    out: list[IdentityInstance] = []
    seen = set()
    for h in G.sorted_elements():
        if h.is_zero():
            continue
        a = a_choices.get(h) or default_a(G, h)
        if a.genus != G.genus:
            raise DimensionError("a has the wrong genus")
        ok = (pairing(a, h) + _odd(h)) % 2 == 0
        # the remark: an e passing the filters forces the precondition
        if _admissible(h, lambda e: pairing(a * e, h) == 0):
            assert ok, "filters admit e although |a,h| + |h| is odd"
        if not ok:
            raise DomainError(f"|a,h| + |h| is odd for a = {a}, h = {h}")
        for inst in (_eq1(G, h, a), _eq2(G, h, a)):
            key = (inst.kind, frozenset(inst.relation().items()))
            if key not in seen:
                seen.add(key)
                out.append(inst)
    return out


def verify_identities(instances, tau, p: EvalParams = DEFAULT) -> float:
    """Worst relative residual |L - R| / (1 + |L| + |R|) over the instances."""
    instances = list(instances)
    if not instances:
        return 0.0
    sp = as_siegel(tau)
    chars = sorted(set().union(*(inst.chars() for inst in instances)), key=lambda c: c.key)
    if any(c.genus != sp.g for c in chars):
        raise DimensionError("identity genus does not match tau")
    vals = dict(zip(chars, thetanulls(sp, chars, p)))
    return max(inst.residual(vals) for inst in instances)


# ---------------------------------------------------------------------------
# suites with the a-choices used for the printed tables. Each entry lists the
# index pairs (a, ah) of the left-hand sides; h is their product.

GENUS2_PAIRS = {
    "i": [(5, 6), (7, 9), (8, 10)],
    "ii": [(3, 4), (6, 9), (5, 7)],
    "iii": [(2, 4), (8, 5), (6, 10)],
    "iv": [(2, 3), (8, 7), (9, 10)],
    "v": [(4, 6), (3, 9), (2, 10)],
    "vi": [(5, 4), (7, 3), (8, 2)],
}

GENUS3_PAIRS = [(13, 23), (21, 5), (34, 16), (4, 32), (17, 15), (26, 2), (9, 6)]


def suite_from_pairs(g: int, pairs) -> tuple[GopelGroup, dict]:
    tab = table(g)
    choices = {}
    for i, j in pairs:
        a = tab[i]
        choices[a * tab[j]] = a
    G = gopel_group_from_generators(list(choices))
    return G, choices


def genus2_suite() -> dict:
    out = {}
    for name, pairs in GENUS2_PAIRS.items():
        G, choices = suite_from_pairs(2, pairs)
        out[name] = generate_identities(G, choices)
    return out


def genus3_suite() -> list[IdentityInstance]:
    G, choices = suite_from_pairs(3, GENUS3_PAIRS)
    return generate_identities(G, choices)


def random_siegel(g: int, rng: np.random.Generator, spread: float = 0.3) -> np.ndarray:
    X = rng.normal(size=(g, g)) * spread
    Y = rng.normal(size=(g, g)) * spread
    return (X + X.T) / 2 + 1j * (np.eye(g) + Y @ Y.T)
