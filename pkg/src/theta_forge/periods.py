"""Period matrices of hyperelliptic curves y^2 = prod (x - b_k).

The homology basis comes from the chain of lifted segments
gamma_k = [b_k, b_{k+1}] (taken on one sheet and back on the other):

    A_i = gamma_{2i-1},    B_i = gamma_{2i} + gamma_{2i+2} + ... + gamma_{2g}

which for real increasing branch points is Mumford's basis (A_i around the
cut [b_{2i-1}, b_{2i}], B_i from that cut to the cut through infinity). The
square root is continued along the path b_1 -> b_2 -> ... -> b_{2g+1}, passing
each intermediate branch point on the left. Segments that would run into a
third branch point or an earlier part of the path are replaced by a bent
detour (two or three straight pieces), searched depth first over the chain;
when no such detour fits, a shortest polygonal path through a waypoint grid
is used instead.
"""

from __future__ import annotations

import cmath
import heapq
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import BasisFailure, DomainError, IllConditioned
from .theta import SiegelPoint, validate_siegel

__all__ = [
    "HyperellipticCurve",
    "PeriodData",
    "period_matrix",
    "validate_siegel",
]


def _to_complex(v) -> complex:
    if isinstance(v, (list, tuple)) and len(v) == 2:
        return complex(float(Fraction(v[0])), float(Fraction(v[1])))
    if isinstance(v, Fraction):
        return complex(float(v))
    return complex(v)


def _to_exact(v):
    if isinstance(v, (list, tuple)) and len(v) == 2:
        re, im = Fraction(v[0]), Fraction(v[1])
        return re if im == 0 else None
    if isinstance(v, (int, Fraction)):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v)
    return None


@dataclass(frozen=True)
class HyperellipticCurve:
    genus: int
    branch_points: tuple  # complex
    infinity_branch: bool
    exact: tuple | None = field(default=None, compare=False)  # Fractions when all rational

    @classmethod
    def from_points(cls, points, genus: int | None = None, infinity_branch: bool | None = None):
        pts = list(points)
        n = len(pts)
        if genus is None:
            genus = (n - 1) // 2
        if infinity_branch is None:
            infinity_branch = n % 2 == 1
        if genus < 1:
            raise DomainError("genus must be at least 1")
        want = 2 * genus + 1 if infinity_branch else 2 * genus + 2
        if n != want:
            raise DomainError(f"genus {genus} with infinity_branch={infinity_branch} needs {want} points, got {n}")
        cpx = tuple(_to_complex(v) for v in pts)
        ex = [_to_exact(v) for v in pts]
        exact = tuple(ex) if all(e is not None for e in ex) else None
        scale = max(1.0, max(abs(a - b) for a in cpx for b in cpx))
        dmin = min(abs(cpx[i] - cpx[j]) for i in range(n) for j in range(i + 1, n))
        if dmin <= 1e-10 * scale:
            raise IllConditioned(f"branch points nearly coincide (min distance {dmin:.3e})")
        return cls(genus, cpx, bool(infinity_branch), exact)

    def to_json(self) -> dict:
        if self.exact is not None:
            pts = [[str(x), "0"] for x in self.exact]
        else:
            pts = [[z.real, z.imag] for z in self.branch_points]
        return {"genus": self.genus, "branch_points": pts, "infinity_branch": self.infinity_branch}

    @classmethod
    def from_json(cls, data: dict) -> "HyperellipticCurve":
        return cls.from_points(data["branch_points"], int(data["genus"]), bool(data.get("infinity_branch", True)))


@dataclass(frozen=True)
class PeriodData:
    curve: HyperellipticCurve
    A: np.ndarray  # A[j, i] = integral of x^j dx / y over A_i
    B: np.ndarray
    tau: SiegelPoint
    basis_tag: str
    sym_residual: float


# ---------------------------------------------------------------------------
# path construction


def _seg_point_dist(p, a, b) -> float:
    d = b - a
    t = ((p - a) * d.conjugate()).real / abs(d) ** 2
    t = min(1.0, max(0.0, t))
    return abs(p - (a + t * d))


def _seg_seg_dist(a, b, c, d) -> float:
    def cross(u, v):
        return (u.conjugate() * v).imag

    d1 = cross(b - a, c - a)
    d2 = cross(b - a, d - a)
    d3 = cross(d - c, a - c)
    d4 = cross(d - c, b - c)
    if d1 * d2 < 0 and d3 * d4 < 0:
        return 0.0
    return min(
        _seg_point_dist(a, c, d),
        _seg_point_dist(b, c, d),
        _seg_point_dist(c, a, b),
        _seg_point_dist(d, a, b),
    )


@dataclass
class _Piece:
    u0: complex
    u1: complex
    sing0: int | None  # index of the branch point at u0, if any
    sing1: int | None


def _detours(P: complex, Q: complex, k: int):
    """Candidate bent paths from P to Q: triangles first, then boxes."""
    d = Q - P
    for h in (0.5, 0.75, 1.0, 1.5, 2.0, 3.0, 5.0):
        for t in (0.5, 0.25, 0.75):
            for s in (1, -1):
                M = P + t * d + s * h * 1j * d / 2
                yield [_Piece(P, M, k, None), _Piece(M, Q, None, k + 1)]
    for h in (0.25, 0.5, 1.0, 2.0, 4.0):
        for s in (1, -1):
            M0, M1 = P + s * h * 1j * d, Q + s * h * 1j * d
            yield [_Piece(P, M0, k, None), _Piece(M0, M1, None, None), _Piece(M1, Q, None, k + 1)]


def _visibility_path(P: complex, Q: complex, k: int, pts: tuple, ok) -> list[_Piece] | None:
    """Shortest polygonal path P -> Q whose pieces all pass ``ok``.

    Waypoints are a shifted grid over the enlarged bounding box plus small
    rings around the branch points; edges are tested lazily during Dijkstra.
    """
    xs = [z.real for z in pts]
    ys = [z.imag for z in pts]
    span = max(max(xs) - min(xs), max(ys) - min(ys))
    dmin = min(abs(a - b) for a, b in itertools.combinations(pts, 2))
    n = 16
    step = 2 * span / (n - 1)
    # the shift keeps waypoints of different segments from coinciding
    shift = (0.137 + 0.071 * k) * step * (1 + 1j)
    corner = complex(min(xs) - span / 2, min(ys) - span / 2) + shift
    nodes = [P, Q]
    nodes += [corner + step * (i + 1j * j) for i in range(n) for j in range(n)]
    for b in pts:
        for r in (0.3, 0.6):
            for t in range(8):
                nodes.append(b + r * dmin * cmath.exp(1j * (math.pi * t / 4 + 0.1 * k + 0.05)))

    def piece(i, j):
        return _Piece(nodes[i], nodes[j], k if i == 0 else None, k + 1 if j == 1 else None)

    def roomy(pc):
        # the quadrature loses accuracy on pieces grazing a branch point
        return all(
            _seg_point_dist(b, pc.u0, pc.u1) >= 0.2 * dmin
            for m, b in enumerate(pts)
            if m not in (pc.sing0, pc.sing1)
        )

    dist = {0: 0.0}
    prev: dict = {}
    heap = [(0.0, 0)]
    done = set()
    while heap:
        d, i = heapq.heappop(heap)
        if i in done:
            continue
        done.add(i)
        if i == 1:
            break
        for j in range(1, len(nodes)):
            if j in done:
                continue
            nd = d + abs(nodes[j] - nodes[i])
            pc = piece(i, j)
            if nd >= dist.get(j, math.inf) or not roomy(pc) or not ok(pc):
                continue
            dist[j] = nd
            prev[j] = i
            heapq.heappush(heap, (nd, j))
    if 1 not in done:
        return None
    chain = [1]
    while chain[-1] != 0:
        chain.append(prev[chain[-1]])
    chain.reverse()
    return [piece(i, j) for i, j in zip(chain, chain[1:])]


def _route(pts: tuple, chain: int, tol: float, budget: int = 20000) -> list[list[_Piece]]:
    """Pieces for each chain segment [b_k, b_{k+1}], k = 0..chain-1.

    Depth-first over the candidate paths of each segment, so an early detour
    that blocks a later segment gets revised.
    """
    placed: list[_Piece] = []

    def clear(piece: _Piece) -> bool:
        for j, p in enumerate(pts):
            if j in (piece.sing0, piece.sing1):
                continue
            if _seg_point_dist(p, piece.u0, piece.u1) < tol:
                return False
        for q in placed:
            shared = {piece.u0, piece.u1} & {q.u0, q.u1}
            if shared:
                # adjacent pieces only meet at the shared point; reject a
                # fold-back onto the previous piece
                v = shared.pop()
                a = piece.u1 if piece.u0 == v else piece.u0
                b = q.u1 if q.u0 == v else q.u0
                ang = abs(cmath.phase((a - v) / (b - v)))
                if ang < 1e-6:
                    return False
                continue
            if _seg_seg_dist(piece.u0, piece.u1, q.u0, q.u1) < tol:
                return False
        return True

    def fits(cand) -> bool:
        n = len(placed)
        ok = True
        for c in cand:
            if not clear(c):
                ok = False
                break
            placed.append(c)
        del placed[n:]
        return ok

    out: list = []
    tries = 0
    deepest = 0

    def search(k: int) -> bool:
        nonlocal tries, deepest
        if k == chain:
            return True
        deepest = max(deepest, k)
        P, Q = pts[k], pts[k + 1]
        def fallback():
            path = _visibility_path(P, Q, k, pts, clear)
            if path is not None:
                yield path

        for cand in itertools.chain([[_Piece(P, Q, k, k + 1)]], _detours(P, Q, k), fallback()):
            tries += 1
            if tries > budget:
                return False
            if not fits(cand):
                continue
            placed.extend(cand)
            out.append(cand)
            if search(k + 1):
                return True
            out.pop()
            del placed[len(placed) - len(cand):]
        return False

    if not search(0):
        raise IllConditioned(f"no admissible path for segment {deepest + 1} -> {deepest + 2}")
    return out


# ---------------------------------------------------------------------------
# square root continuation along a straight piece


def _branch_rot(piece: _Piece, b: complex) -> complex:
    """Rotation w with w*(x - b) away from the negative axis on the piece."""
    d0 = piece.u0 - b
    d1 = piece.u1 - b
    s = d0 / abs(d0) + d1 / abs(d1) if abs(d0) > 0 and abs(d1) > 0 else (d0 if abs(d0) > 0 else d1)
    if abs(s) < 1e-300:
        s = 1j * (d1 - d0)
    return abs(s) / s


class _PieceEval:
    def __init__(self, piece: _Piece, pts: tuple):
        self.piece = piece
        self.others = [(b, _branch_rot(piece, b)) for j, b in enumerate(pts) if j not in (piece.sing0, piece.sing1)]
        L = piece.u1 - piece.u0
        self.L = L
        self.c0 = cmath.sqrt(L)
        self.c1 = cmath.sqrt(-L)

    def x(self, th):
        p = self.piece
        return p.u0 + self.L * (1 - np.cos(th)) / 2

    def R(self, x):
        out = np.ones_like(x, dtype=complex)
        for b, w in self.others:
            out = out * np.sqrt(w * (x - b)) / np.sqrt(w)
        return out

    def Y(self, th):
        """y up to the sign fixed by continuation, as a function of theta."""
        th = np.asarray(th, dtype=float)
        val = self.R(self.x(th))
        if self.piece.sing0 is not None:
            val = val * self.c0 * np.sin(th / 2)
        if self.piece.sing1 is not None:
            val = val * self.c1 * np.cos(th / 2)
        return val

    def integrals(self, g: int, n: int) -> np.ndarray:
        """Integral of x^j dx / Y along the piece, j = 0..g-1."""
        p = self.piece
        if p.sing0 is not None and p.sing1 is not None:
            # dx / Y = (L/2) sin(th) dth / (c0 c1 sin(th/2) cos(th/2) R)
            #        = L dth / (c0 c1 R): Gauss-Chebyshev in t = -cos(th)
            th = (2 * np.arange(1, n + 1) - 1) * math.pi / (2 * n)
            x = self.x(th)
            f = self.L / (self.c0 * self.c1 * self.R(x))
            w = math.pi / n
        else:
            t, wl = np.polynomial.legendre.leggauss(n)
            th = (t + 1) * math.pi / 2
            x = self.x(th)
            dx = self.L * np.sin(th) / 2
            if p.sing0 is not None:
                f = self.L * np.cos(th / 2) / (self.c0 * self.R(x))
            elif p.sing1 is not None:
                f = self.L * np.sin(th / 2) / (self.c1 * self.R(x))
            else:
                f = dx / self.R(x)
            w = wl * math.pi / 2
        return np.array([np.sum(w * f * x**j) for j in range(g)])


def _left_turn(d_in: complex, d_out: complex) -> float:
    """Angle swept around a vertex when passing it on the left."""
    phi1 = cmath.phase(-d_in)
    phi2 = cmath.phase(d_out)
    return -((phi1 - phi2) % (2 * math.pi))


def _chain_integrals(pts: tuple, g: int, n: int, tol: float):
    chain = 2 * g
    routes = _route(pts, chain, tol)
    seg_int = []
    sign = 1.0 + 0j
    prev = None  # (evaluator, sign) of the last piece
    for pieces in routes:
        total = np.zeros(g, dtype=complex)
        for piece in pieces:
            ev = _PieceEval(piece, pts)
            if prev is not None:
                pev, psign = prev
                if piece.sing0 is None:
                    # regular junction: y is continuous
                    ya = psign * pev.Y(math.pi)
                    yb = ev.Y(0.0)
                    sign = 1 if (ya / yb).real > 0 else -1
                else:
                    delta = 1e-3
                    ya = psign * pev.Y(math.pi - delta)
                    eps = abs(pev.L) * (1 - math.cos(delta)) / 2
                    thb = math.acos(1 - 2 * eps / abs(ev.L))
                    yb = ev.Y(thb)
                    turn = _left_turn(pev.L, ev.L)
                    expect = ya * cmath.exp(0.5j * turn)
                    sign = 1 if (expect / yb).real > 0 else -1
            total += sign * ev.integrals(g, n)
            prev = (ev, sign)
        seg_int.append(total)
    return seg_int


def _raw_periods(pts: tuple, g: int, n: int, tol: float):
    seg = _chain_integrals(pts, g, n, tol)
    gam = [2 * s for s in seg]  # gam[k] is gamma_{k+1}
    A = np.zeros((g, g), dtype=complex)
    B = np.zeros((g, g), dtype=complex)
    for i in range(g):
        A[:, i] = gam[2 * i]
        for k in range(i, g):
            B[:, i] += gam[2 * k + 1]
    return A, B


BASIS_TAG = (
    "chain: A_i = gamma_(2i-1), B_i = sum_(k>=i) gamma_(2k); "
    "gamma_k = lift of [b_k, b_(k+1)], left-side continuation past branch points"
)


def period_matrix(curve: HyperellipticCurve, quad_order: int = 128) -> PeriodData:
    if quad_order < 32:
        raise DomainError("quad_order must be at least 32")
    g = curve.genus
    pts = curve.branch_points
    scale = max(abs(a - b) for a in pts for b in pts)
    A, B = _raw_periods(pts, g, quad_order, 1e-3 * scale)
    try:
        tau = np.linalg.solve(A, B)
    except np.linalg.LinAlgError:
        raise BasisFailure("A-period matrix is singular") from None
    sym = float(np.max(np.abs(tau - tau.T)) / max(1.0, np.max(np.abs(tau))))
    if sym > 1e-8:
        raise BasisFailure(f"tau is not symmetric (residual {sym:.3e})", residual=sym)
    try:
        sp = validate_siegel(tau)
    except DomainError as exc:
        raise BasisFailure(f"Im(tau) is not positive definite: {exc}") from None
    return PeriodData(curve, A, B, sp, BASIS_TAG, sym)
