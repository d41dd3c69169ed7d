"""Classical group laws used to cross-check the determinant arithmetic.

Chord-tangent addition on genus-1 (2,3) curves and Cantor's algorithm on
hyperelliptic curves y^2 = f(x).  Nothing here calls into :mod:`nsjac.jacobian`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .curve import NsCurve, Point
from .divisor import Divisor, divisor_from_points, mumford_u
from .poly import UniPoly, roots, xgcd


class NotSemiReduced(ValueError):
    pass


class OracleNonSplit(ArithmeticError):
    pass


# -- chord and tangent --------------------------------------------------------------

def _weierstrass(curve: NsCurve):
    """(a1, a2, a3, a4, a6) for y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6."""
    if (curve.n, curve.s) != (2, 3):
        raise ValueError("chord-tangent needs a (2,3) curve")
    F = curve.field
    c = lambda i, j: curve.tail.get((i, j), F.zero)
    return F.neg(c(1, 1)), c(2, 0), F.neg(c(0, 1)), c(1, 0), c(0, 0)


def chord_tangent_neg(curve: NsCurve, P: Optional[Point]) -> Optional[Point]:
    if P is None:
        return None
    F = curve.field
    a1, _, a3, _, _ = _weierstrass(curve)
    return Point(P.x, F.sub(F.neg(P.y), F.add(F.mul(a1, P.x), a3)))


def chord_tangent_add(curve: NsCurve, P: Optional[Point], Q: Optional[Point]) -> Optional[Point]:
    """P + Q with None as the identity."""
    if P is None:
        return Q
    if Q is None:
        return P
    F = curve.field
    a1, a2, a3, a4, _ = _weierstrass(curve)
    if P.x == Q.x:
        if chord_tangent_neg(curve, P) == Q:
            return None
        num = F.sub(F.add(F.add(F.mul(F.from_int(3), F.mul(P.x, P.x)),
                                F.mul(F.from_int(2), F.mul(a2, P.x))), a4), F.mul(a1, P.y))
        den = F.add(F.add(F.mul(F.from_int(2), P.y), F.mul(a1, P.x)), a3)
    else:
        num, den = F.sub(Q.y, P.y), F.sub(Q.x, P.x)
    lam = F.div(num, den)
    nu = F.sub(P.y, F.mul(lam, P.x))
    x3 = F.sub(F.sub(F.sub(F.add(F.mul(lam, lam), F.mul(a1, lam)), a2), P.x), Q.x)
    y3 = F.sub(F.sub(F.neg(F.mul(F.add(lam, a1), x3)), nu), a3)
    return Point(x3, y3)


def chord_tangent_mul(curve: NsCurve, k: int, P: Optional[Point]) -> Optional[Point]:
    if k < 0:
        return chord_tangent_mul(curve, -k, chord_tangent_neg(curve, P))
    acc, base = None, P
    while k:
        if k & 1:
            acc = chord_tangent_add(curve, acc, base)
        base = chord_tangent_add(curve, base, base)
        k >>= 1
    return acc


# -- Cantor ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MumfordPair:
    u: UniPoly
    v: UniPoly

    def is_identity(self) -> bool:
        return self.u.degree == 0


def _hyperelliptic_f(curve: NsCurve) -> UniPoly:
    if curve.n != 2 or curve.s % 2 == 0:
        raise ValueError("Cantor oracle needs y^2 = f(x) with deg f odd")
    if any(j for (_, j) in curve.tail):
        raise ValueError("Cantor oracle needs a tail without y terms")
    F = curve.field
    coeffs = [F.zero] * (curve.s + 1)
    coeffs[curve.s] = F.one
    for (i, _), c in curve.tail.items():
        coeffs[i] = c
    return UniPoly(F, coeffs)


def identity_pair(curve: NsCurve) -> MumfordPair:
    F = curve.field
    return MumfordPair(UniPoly(F, [F.one]), UniPoly(F, []))


def is_valid_pair(curve: NsCurve, a: MumfordPair) -> bool:
    f = _hyperelliptic_f(curve)
    return (a.u.lc() == curve.field.one and a.v.degree < max(a.u.degree, 1)
            and ((a.v * a.v - f) % a.u).is_zero())


def cantor_negate(curve: NsCurve, a: MumfordPair) -> MumfordPair:
    return MumfordPair(a.u, (-a.v) % a.u)


def cantor_add(curve: NsCurve, a: MumfordPair, b: MumfordPair) -> MumfordPair:
    f = _hyperelliptic_f(curve)
    g = curve.genus
    d1, e1, e2 = xgcd(a.u, b.u)
    d, c1, c2 = xgcd(d1, a.v + b.v)
    s1, s2, s3 = c1 * e1, c1 * e2, c2
    u = (a.u * b.u) // (d * d)
    v = ((s1 * a.u * b.v + s2 * b.u * a.v + s3 * (a.v * b.v + f)) // d) % u
    while u.degree > g:
        u = (f - v * v) // u
        v = (-v) % u
    return MumfordPair(u.monic(), v % u.monic())


def _sqrt_series(F, f: UniPoly, x0, y0, N: int) -> list:
    """Coefficients of the branch y(t), y(0) = y0, of y^2 = f(x0 + t), mod t^N."""
    # f(x0 + t) by Taylor shift
    c = list(f.coeffs)
    shifted = []
    while c:
        q, r = [], F.zero
        for a in reversed(c):
            r = F.add(F.mul(r, x0), a)
            q.append(r)
        shifted.append(q.pop())
        c = list(reversed(q))
    shifted = (shifted + [F.zero] * N)[:N]
    y = [y0] + [F.zero] * (N - 1)
    two_y0 = F.mul(F.from_int(2), y0)
    for k in range(1, N):
        acc = shifted[k]
        for i in range(1, k):
            acc = F.sub(acc, F.mul(y[i], y[k - i]))
        y[k] = F.div(acc, two_y0)
    return y


def divisor_to_mumford(curve: NsCurve, D: Divisor) -> MumfordPair:
    F = curve.field
    f = _hyperelliptic_f(curve)
    by_x: dict = {}
    for P, m in D.multiplicities().items():
        by_x.setdefault(P.x, []).append((P, m))
    u = mumford_u(D)
    v = UniPoly(F, [])
    modulus = UniPoly(F, [F.one])
    for x0, pts in by_x.items():
        if len(pts) > 1:
            raise NotSemiReduced(f"opposite points above x={F.format(x0)}")
        (P, m), = pts
        if P.y == F.zero and m > 1:
            raise NotSemiReduced(f"ramification point ({F.format(x0)},0) repeated")
        if m == 1:
            series = [P.y]
        else:
            series = _sqrt_series(F, f, x0, P.y, m)
        # local target r(x) = sum series[k] (x - x0)^k
        lin = UniPoly(F, [F.neg(x0), F.one])
        r = UniPoly(F, [])
        for coef in reversed(series):
            r = r * lin + UniPoly(F, [coef])
        block = lin ** m
        # CRT: v = v + modulus * ((r - v) * modulus^-1 mod block)
        _, inv, _ = xgcd(modulus % block if block.degree else modulus, block)
        step = ((r - v) * inv) % block
        v = v + modulus * step
        modulus = modulus * block
    return MumfordPair(u, v % u if u.degree else v)


def mumford_to_divisor(curve: NsCurve, a: MumfordPair) -> Divisor:
    found = roots(a.u)
    if not found.splits:
        raise OracleNonSplit(f"u does not split: {found.remainder_degrees}")
    pts = []
    for x0, m in found.roots:
        pts.extend([Point(x0, a.v(x0))] * m)
    return divisor_from_points(curve, pts)
