"""Half-integer theta characteristics as bit vectors.

A characteristic [m'; m''] with entries in {0, 1/2} is stored through the
numerators only, so ``HalfChar(2, (1, 0), (0, 1))`` is [1/2 0; 0 1/2].
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable

from .errors import DimensionError, DomainError

INF = "inf"


@dataclass(frozen=True, order=True)
class HalfChar:
    genus: int
    top: tuple
    bottom: tuple

    def __post_init__(self):
        top = tuple(int(x) for x in self.top)
        bottom = tuple(int(x) for x in self.bottom)
        if self.genus < 1:
            raise DomainError("genus must be positive")
        if len(top) != self.genus or len(bottom) != self.genus:
            raise DimensionError(
                f"rows must have length {self.genus}, got {len(top)} and {len(bottom)}"
            )
        if any(x not in (0, 1) for x in top + bottom):
            raise DomainError("entries must be 0 or 1 (numerators of halves)")
        object.__setattr__(self, "top", top)
        object.__setattr__(self, "bottom", bottom)

    @classmethod
    def zero(cls, g: int) -> "HalfChar":
        return cls(g, (0,) * g, (0,) * g)

    @classmethod
    def from_key(cls, g: int, key: int) -> "HalfChar":
        top = tuple((key >> i) & 1 for i in range(g))
        bottom = tuple((key >> (g + i)) & 1 for i in range(g))
        return cls(g, top, bottom)

    @property
    def key(self) -> int:
        k = 0
        for i, bit in enumerate(self.top):
            k |= bit << i
        for i, bit in enumerate(self.bottom):
            k |= bit << (self.genus + i)
        return k

    def __mul__(self, other: "HalfChar") -> "HalfChar":
        return char_product(self, other)

    @property
    def is_even(self) -> bool:
        return parity(self) == "even"

    def is_zero(self) -> bool:
        return not any(self.top) and not any(self.bottom)

    def to_json(self) -> dict:
        return {"g": self.genus, "top": list(self.top), "bottom": list(self.bottom)}

    @classmethod
    def from_json(cls, data: dict) -> "HalfChar":
        return cls(int(data["g"]), tuple(data["top"]), tuple(data["bottom"]))

    def __str__(self):
        t = "".join(map(str, self.top))
        b = "".join(map(str, self.bottom))
        return f"[{t};{b}]"


def _check_genus(*chars: HalfChar):
    g = chars[0].genus
    for c in chars[1:]:
        if c.genus != g:
            raise DimensionError(f"genus mismatch: {g} vs {c.genus}")


def char_product(a: HalfChar, b: HalfChar) -> HalfChar:
    _check_genus(a, b)
    return HalfChar(
        a.genus,
        tuple(x ^ y for x, y in zip(a.top, b.top)),
        tuple(x ^ y for x, y in zip(a.bottom, b.bottom)),
    )


def parity(m: HalfChar) -> str:
    s = sum(x * y for x, y in zip(m.top, m.bottom))
    return "even" if s % 2 == 0 else "odd"


def pairing(m: HalfChar, a: HalfChar) -> int:
    """|m, a| reduced mod 2; zero means syzygetic."""
    _check_genus(m, a)
    s = sum(mt * ab + mb * at for mt, mb, at, ab in zip(m.top, m.bottom, a.top, a.bottom))
    return s % 2


def triple_syzygy(m: HalfChar, a: HalfChar, b: HalfChar) -> int:
    _check_genus(m, a, b)
    return (pairing(a, b) + pairing(b, m) + pairing(m, a)) % 2


def all_chars(g: int) -> list[HalfChar]:
    return [HalfChar.from_key(g, k) for k in range(1 << (2 * g))]


def even_chars(g: int) -> list[HalfChar]:
    return [c for c in all_chars(g) if c.is_even]


def odd_chars(g: int) -> list[HalfChar]:
    return [c for c in all_chars(g) if not c.is_even]


# ---------------------------------------------------------------------------
# Goepel groups and systems


def _pair_bits(g: int, v: int, w: int) -> int:
    mask = (1 << g) - 1
    x = ((v & mask) & (w >> g)) ^ ((v >> g) & (w & mask))
    return bin(x).count("1") & 1


def _echelon(vectors: Iterable[int], nbits: int) -> list[int]:
    """Reduced row echelon basis over GF(2), pivots on the highest bit."""
    basis: list[int] = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis = [min(b, b ^ v) for b in basis]
            basis.append(v)
    return sorted(basis, reverse=True)


@dataclass(frozen=True)
class GopelGroup:
    genus: int
    rank: int
    elements: frozenset
    generators: tuple

    def __post_init__(self):
        if len(self.elements) != 1 << self.rank:
            raise DomainError("a Goepel group of rank r has 2^r elements")

    def sorted_elements(self) -> list[HalfChar]:
        return sorted(self.elements, key=lambda c: c.key)

    def contains(self, m: HalfChar) -> bool:
        return m in self.elements

    def is_all_even(self) -> bool:
        return all(c.is_even for c in self.elements)

    def to_json(self) -> dict:
        return {
            "g": self.genus,
            "rank": self.rank,
            "generators": [c.to_json() for c in self.generators],
            "elements": [c.to_json() for c in self.sorted_elements()],
        }


@dataclass(frozen=True)
class GopelSystem:
    coset_rep: HalfChar
    members: frozenset

    def census(self) -> tuple[int, int]:
        even = sum(1 for c in self.members if c.is_even)
        return even, len(self.members) - even


def _group_from_keys(g: int, r: int, keys: frozenset) -> GopelGroup:
    gens = _echelon(sorted(keys), 2 * g)
    return GopelGroup(
        genus=g,
        rank=r,
        elements=frozenset(HalfChar.from_key(g, k) for k in keys),
        generators=tuple(HalfChar.from_key(g, k) for k in gens),
    )


def gopel_group_from_generators(gens: list[HalfChar]) -> GopelGroup:
    if not gens:
        raise DomainError("need at least one generator")
    _check_genus(*gens)
    g = gens[0].genus
    keys = {0}
    for c in gens:
        keys |= {k ^ c.key for k in keys}
    r = len(_echelon([c.key for c in gens], 2 * g))
    for a in keys:
        for b in keys:
            if _pair_bits(g, a, b):
                raise DomainError("generators are not pairwise syzygetic")
    return _group_from_keys(g, r, frozenset(keys))


def expected_gopel_count(g: int, r: int) -> int:
    num = 1
    for k in range(r):
        num *= 2 ** (2 * g - 2 * k) - 1
    den = 1
    for k in range(1, r + 1):
        den *= 2**k - 1
    return num // den


def enumerate_gopel_groups(g: int, r: int) -> list[GopelGroup]:
    if not 1 <= r <= g:
        raise DomainError(f"need 1 <= r <= g, got g={g}, r={r}")
    if g > 4:
        raise DomainError("enumeration is limited to g <= 4")
    n = 1 << (2 * g)
    level = {frozenset((0, v)) for v in range(1, n)}
    for _ in range(r - 1):
        nxt = set()
        for space in level:
            gens = _echelon(space, 2 * g)
            for v in range(1, n):
                if v in space or any(_pair_bits(g, v, b) for b in gens):
                    continue
                nxt.add(space | frozenset(s ^ v for s in space))
        level = nxt
    groups = [_group_from_keys(g, r, s) for s in level]
    groups.sort(key=lambda G: tuple(c.key for c in G.generators))
    return groups


def all_even_gopel_groups(g: int, r: int) -> list[GopelGroup]:
    return [G for G in enumerate_gopel_groups(g, r) if G.is_all_even()]


def gopel_systems(G: GopelGroup) -> list[GopelSystem]:
    seen: set = set()
    out = []
    for c in all_chars(G.genus):
        if c in seen:
            continue
        members = frozenset(c * h for h in G.elements)
        seen |= members
        rep = min(members, key=lambda m: m.key)
        out.append(GopelSystem(rep, members))
    return out


def system_census(G: GopelGroup) -> dict:
    """Counts of all-even, all-odd and mixed cosets of G."""
    res = {"all_even": 0, "all_odd": 0, "mixed": 0}
    for s in gopel_systems(G):
        even, odd = s.census()
        if odd == 0:
            res["all_even"] += 1
        elif even == 0:
            res["all_odd"] += 1
        else:
            res["mixed"] += 1
    return res


def expected_system_census(g: int, r: int) -> dict:
    s = g - r
    total = 2 ** (2 * g - r)
    if s == 0:
        ev, od = 1, 0
    else:
        ev = 2 ** (s - 1) * (2**s + 1)
        od = 2 ** (s - 1) * (2**s - 1)
    return {"all_even": ev, "all_odd": od, "mixed": total - ev - od}


# ---------------------------------------------------------------------------
# eta map of a hyperelliptic curve


@dataclass(frozen=True)
class EtaAssignment:
    genus: int
    ordering: tuple
    map: dict = field(compare=False)

    @property
    def S(self) -> tuple:
        return tuple(range(1, 2 * self.genus + 2))

    @property
    def U(self) -> frozenset:
        return frozenset(k for k in self.S if k % 2 == 1)

    def __getitem__(self, k) -> HalfChar:
        try:
            return self.map[k]
        except KeyError:
            raise DomainError(f"index {k!r} outside 1..{2 * self.genus + 1} or 'inf'") from None


def eta(g: int, k) -> HalfChar:
    if k == INF:
        return HalfChar.zero(g)
    if not isinstance(k, int) or not 1 <= k <= 2 * g + 1:
        raise DomainError(f"index {k!r} outside 1..{2 * g + 1} or 'inf'")
    if k == 2 * g + 1:
        return HalfChar(g, (0,) * g, (1,) * g)
    i = (k + 1) // 2
    top = tuple(1 if c == i else 0 for c in range(1, g + 1))
    last = i if k % 2 == 0 else i - 1
    bottom = tuple(1 if c <= last else 0 for c in range(1, g + 1))
    return HalfChar(g, top, bottom)


def eta_assignment(g: int, ordering=None) -> EtaAssignment:
    if g < 1:
        raise DomainError("genus must be positive")
    labels = tuple(ordering) if ordering is not None else tuple(range(1, 2 * g + 2)) + (INF,)
    if len(labels) != 2 * g + 2:
        raise DomainError(f"ordering needs {2 * g + 2} labels")
    mp = {k: eta(g, k) for k in range(1, 2 * g + 2)}
    mp[INF] = HalfChar.zero(g)
    return EtaAssignment(g, labels, mp)


def eta_T(assignment: EtaAssignment, T: Iterable) -> HalfChar:
    out = HalfChar.zero(assignment.genus)
    for k in T:
        out = out * assignment[k]
    return out


def even_subsets(S) -> Iterable[frozenset]:
    S = tuple(S)
    for n in range(0, len(S) + 1, 2):
        for T in itertools.combinations(S, n):
            yield frozenset(T)


def eta_preimages(g: int) -> dict:
    """Characteristic -> the unique even-size T inside S with eta_T equal to it."""
    ea = eta_assignment(g)
    return {eta_T(ea, T): T for T in even_subsets(ea.S)}


def vanishing_even_set(g: int) -> set:
    if g < 1:
        raise DomainError("genus must be positive")
    ea = eta_assignment(g)
    out = set()
    for T in even_subsets(ea.S):
        c = eta_T(ea, T)
        if c.is_even and len(T ^ ea.U) != g + 1:
            out.add(c)
    return out
