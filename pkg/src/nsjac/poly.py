"""Univariate and bivariate polynomials over a :mod:`nsjac.field` field.

Univariate polynomials are dense little-endian coefficient lists, trimmed so the
leading coefficient is nonzero (the zero polynomial is the empty list).  The
list-level helpers (``pmul``, ``pdivmod``, ...) are what the rest of the package
uses in hot loops; :class:`UniPoly` wraps them for the public API.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from math import gcd as igcd
from typing import Iterable, Sequence

from .field import DivisionByZero, Element, Field, PrimeField


class InternalFactorFailure(RuntimeError):
    """Equal-degree splitting exhausted its retry budget."""


SPLIT_BUDGET = 64


# -- list-level arithmetic ------------------------------------------------------

def trim(F: Field, a: list) -> list:
    z = F.zero
    while a and a[-1] == z:
        a.pop()
    return a


def padd(F: Field, a: Sequence, b: Sequence) -> list:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    add = F.add
    for i, c in enumerate(b):
        out[i] = add(out[i], c)
    return trim(F, out)


def psub(F: Field, a: Sequence, b: Sequence) -> list:
    out = list(a) + [F.zero] * (len(b) - len(a))
    sub = F.sub
    for i, c in enumerate(b):
        out[i] = sub(out[i], c)
    return trim(F, out)


def pneg(F: Field, a: Sequence) -> list:
    return [F.neg(c) for c in a]


def pscale(F: Field, a: Sequence, c: Element) -> list:
    if c == F.zero:
        return []
    mul = F.mul
    return [mul(x, c) for x in a]


def pmul(F: Field, a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    if F.degree == 1:
        p = F.p
        prod = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        return trim(F, [c % p for c in prod])
    add, mul = F.add, F.mul
    zero = F.zero
    prod = [zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x != zero:
            for j, y in enumerate(b):
                prod[i + j] = add(prod[i + j], mul(x, y))
    return trim(F, prod)


def pdivmod(F: Field, a: Sequence, b: Sequence) -> tuple[list, list]:
    if not b:
        raise DivisionByZero("polynomial division by zero")
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], list(a)
    inv_lc = F.inv(b[-1])
    if F.degree == 1:
        p = F.p
        r = list(a)
        q = [0] * (len(a) - db)
        for k in range(len(a) - 1, db - 1, -1):
            c = r[k] * inv_lc % p
            if c:
                q[k - db] = c
                base = k - db
                for i in range(db):
                    r[base + i] = (r[base + i] - c * b[i]) % p
        return trim(F, q), trim(F, r[:db])
    sub, mul = F.sub, F.mul
    zero = F.zero
    r = list(a)
    q = [zero] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = mul(r[k], inv_lc)
        if c != zero:
            q[k - db] = c
            base = k - db
            for i in range(db):
                r[base + i] = sub(r[base + i], mul(c, b[i]))
    return trim(F, q), trim(F, r[:db])


def prem(F: Field, a: Sequence, b: Sequence) -> list:
    return pdivmod(F, a, b)[1]


def pmonic(F: Field, a: Sequence) -> list:
    if not a:
        return []
    if a[-1] == F.one:
        return list(a)
    return pscale(F, a, F.inv(a[-1]))


def pgcd(F: Field, a: Sequence, b: Sequence) -> list:
    a, b = list(a), list(b)
    while b:
        a, b = b, prem(F, a, b)
    return pmonic(F, a)


def pxgcd(F: Field, a: Sequence, b: Sequence) -> tuple[list, list, list]:
    """Monic g with s*a + t*b = g."""
    r0, r1 = list(a), list(b)
    s0, s1 = [F.one], []
    t0, t1 = [], [F.one]
    while r1:
        q, r = pdivmod(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, psub(F, s0, pmul(F, q, s1))
        t0, t1 = t1, psub(F, t0, pmul(F, q, t1))
    if not r0:
        return [], s0, t0
    c = F.inv(r0[-1])
    return pscale(F, r0, c), pscale(F, s0, c), pscale(F, t0, c)


def peval(F: Field, a: Sequence, x: Element) -> Element:
    acc = F.zero
    mul, add = F.mul, F.add
    for c in reversed(a):
        acc = add(mul(acc, x), c)
    return acc


def ppowmod(F: Field, a: Sequence, e: int, m: Sequence) -> list:
    result = [F.one] if len(m) > 1 else []
    base = prem(F, a, m)
    while e:
        if e & 1:
            result = prem(F, pmul(F, result, base), m)
        e >>= 1
        if e:
            base = prem(F, pmul(F, base, base), m)
    return result


def pfrobenius(F: Field, a: Sequence, m: Sequence, xp: Sequence) -> list:
    """a^p mod m, given xp = x^p mod m.

    Raising to the p-th power acts as Frobenius on coefficients and sends x to x^p.
    """
    if F.degree == 1:
        coeffs = list(a)
    else:
        coeffs = [F.frobenius(c) for c in a]
    acc: list = []
    for c in reversed(coeffs):
        acc = prem(F, pmul(F, acc, xp), m)
        if c != F.zero:
            acc = padd(F, acc, [c])
    return acc


def _half_power(F: Field, a: Sequence, m: Sequence) -> list:
    """a^((q-1)/2) mod m, using (q-1)/2 = (p-1)/2 * (1 + p + ... + p^(d-1))."""
    b = ppowmod(F, a, (F.p - 1) // 2, m)
    if F.degree == 1:
        return b
    xp = ppowmod(F, [F.zero, F.one], F.p, m)
    acc, t = b, b
    for _ in range(F.degree - 1):
        t = pfrobenius(F, t, m, xp)
        acc = prem(F, pmul(F, acc, t), m)
    return acc


def interpolate(F: Field, xs: Sequence, ys: Sequence) -> list:
    """Newton divided differences; xs must be distinct."""
    n = len(xs)
    coef = list(ys)
    sub, div = F.sub, F.div
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = div(sub(coef[i], coef[i - 1]), sub(xs[i], xs[i - j]))
    out: list = []
    for i in range(n - 1, -1, -1):
        out = padd(F, pmul(F, out, [F.neg(xs[i]), F.one]), [coef[i]])
    return out


# -- the public univariate type --------------------------------------------------

class UniPoly:
    """Dense univariate polynomial over ``field``."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: Iterable = ()):
        self.field = field
        self.coeffs = trim(field, list(coeffs))

    @classmethod
    def from_ints(cls, field: Field, ints: Iterable[int]) -> UniPoly:
        return cls(field, [field.from_int(c) for c in ints])

    @classmethod
    def x(cls, field: Field) -> UniPoly:
        return cls(field, [field.zero, field.one])

    @classmethod
    def constant(cls, field: Field, c: Element) -> UniPoly:
        return cls(field, [c])

    @classmethod
    def from_roots(cls, field: Field, roots: Iterable[Element]) -> UniPoly:
        out = [field.one]
        for r in roots:
            out = pmul(field, out, [field.neg(r), field.one])
        return cls(field, out)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lc(self) -> Element:
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def _wrap(self, coeffs) -> UniPoly:
        out = UniPoly.__new__(UniPoly)
        out.field = self.field
        out.coeffs = coeffs
        return out

    def _other(self, other) -> list:
        if isinstance(other, UniPoly):
            if other.field != self.field:
                from .field import FieldMismatch
                raise FieldMismatch("polynomials over different fields")
            return other.coeffs
        if isinstance(other, int):
            other = self.field.from_int(other)
        return trim(self.field, [other])

    def __add__(self, other):
        return self._wrap(padd(self.field, self.coeffs, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return self._wrap(psub(self.field, self.coeffs, self._other(other)))

    def __rsub__(self, other):
        return self._wrap(psub(self.field, self._other(other), self.coeffs))

    def __neg__(self):
        return self._wrap(pneg(self.field, self.coeffs))

    def __mul__(self, other):
        return self._wrap(pmul(self.field, self.coeffs, self._other(other)))

    __rmul__ = __mul__

    def __divmod__(self, other):
        q, r = pdivmod(self.field, self.coeffs, self._other(other))
        return self._wrap(q), self._wrap(r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, e: int):
        out = [self.field.one]
        for _ in range(e):
            out = pmul(self.field, out, self.coeffs)
        return self._wrap(out)

    def __call__(self, x: Element) -> Element:
        return peval(self.field, self.coeffs, x)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.field == other.field and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.field, tuple(self.coeffs)))

    def monic(self) -> UniPoly:
        return self._wrap(pmonic(self.field, self.coeffs))

    def __repr__(self):
        return f"UniPoly({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        fmt = self.field.format
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == self.field.zero:
                continue
            s = fmt(c)
            if "," in s:
                s = f"({s})"
            terms.append(s if i == 0 else f"{s}*x" if i == 1 else f"{s}*x^{i}")
        return " + ".join(terms)


def divmod_poly(a: UniPoly, b: UniPoly) -> tuple[UniPoly, UniPoly]:
    return divmod(a, b)


def gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    return UniPoly(a.field, pgcd(a.field, a.coeffs, b.coeffs))


def xgcd(a: UniPoly, b: UniPoly) -> tuple[UniPoly, UniPoly, UniPoly]:
    g, s, t = pxgcd(a.field, a.coeffs, b.coeffs)
    F = a.field
    return UniPoly(F, g), UniPoly(F, s), UniPoly(F, t)


# -- factoring and roots ---------------------------------------------------------

@dataclass
class RootResult:
    """Roots in the working field with multiplicities, plus the degrees of the
    irreducible factors that carry no root (empty iff the polynomial splits)."""

    roots: list = dc_field(default_factory=list)
    remainder_degrees: list = dc_field(default_factory=list)

    @property
    def splits(self) -> bool:
        return not self.remainder_degrees

    def as_dict(self) -> dict:
        return dict(self.roots)


def _distinct_degree_layers(F: Field, f: list) -> list[tuple[int, list]]:
    """[(k, g)] with g the product of distinct irreducible degree-k factors.

    A factor of multiplicity e appears in e layers, so the multiset of degrees
    is recovered exactly without derivatives.
    """
    h = pmonic(F, f)
    layers = []
    x = [F.zero, F.one]
    xq = x
    k = 0
    while len(h) > 1:
        k += 1
        if 2 * k > len(h) - 1:
            layers.append((len(h) - 1, h))
            break
        xq = _frobenius_q(F, prem(F, xq, h), h)
        g = pgcd(F, h, psub(F, xq, x))
        while len(g) > 1:
            layers.append((k, g))
            h = pdivmod(F, h, g)[0]
            g = pgcd(F, h, g)
    return layers


def _frobenius_q(F: Field, a: list, m: list) -> list:
    """a^q mod m."""
    if F.degree == 1:
        return ppowmod(F, a, F.p, m)
    xp = ppowmod(F, [F.zero, F.one], F.p, m)
    acc = a
    for _ in range(F.degree):
        acc = pfrobenius(F, acc, m, xp)
    return acc


def _split_linear(F: Field, g: list, rng: random.Random) -> list:
    """Roots of a monic squarefree g that splits into distinct linear factors."""
    n = len(g) - 1
    if n == 0:
        return []
    if n == 1:
        return [F.neg(g[0])]
    if n == 2:
        # x^2 + b x + c: (-b +- sqrt(b^2 - 4c)) / 2
        b, c = g[1], g[0]
        disc = F.sub(F.mul(b, b), F.mul(F.from_int(4), c))
        s = F.sqrt(disc)
        if s is None:
            raise InternalFactorFailure("quadratic without roots passed to splitter")
        half = F.inv(F.from_int(2))
        return [F.mul(F.sub(s, b), half), F.mul(F.sub(F.neg(s), b), half)]
    for _ in range(SPLIT_BUDGET):
        a = F.random_element(rng)
        w = _half_power(F, [a, F.one], g)
        d = pgcd(F, g, psub(F, w, [F.one]))
        if 0 < len(d) - 1 < n:
            other = pdivmod(F, g, d)[0]
            return _split_linear(F, d, rng) + _split_linear(F, pmonic(F, other), rng)
    raise InternalFactorFailure(f"no split of degree-{n} polynomial after {SPLIT_BUDGET} tries")


def _roots_generic(F: Field, f: list, rng: random.Random) -> RootResult:
    layers = _distinct_degree_layers(F, f)
    roots: dict = {}
    remainder: list[int] = []
    linear_layers = [g for k, g in layers if k == 1]
    if linear_layers:
        for r in _split_linear(F, linear_layers[0], rng):
            roots[r] = sum(1 for g in linear_layers if peval(F, g, r) == F.zero)
    for k, g in layers:
        if k > 1:
            remainder.extend([k] * ((len(g) - 1) // k))
    return RootResult(sorted(roots.items()), sorted(remainder))


def _roots_via_prime_field(F: Field, f: list, rng: random.Random) -> RootResult:
    # f has coefficients in F_p: factor there, then lift the factors whose
    # degree divides [F : F_p].
    P = F.prime_field
    fp = [F.to_prime(c) for c in f]
    d = F.degree
    roots: dict = {}
    remainder: list[int] = []
    layers = _distinct_degree_layers(P, fp)
    first_layer: dict[int, list] = {}
    for k, g in layers:
        first_layer.setdefault(k, g)
    for k, g in layers:
        if d % k:
            e = igcd(k, d)
            remainder.extend([k // e] * (((len(g) - 1) // k) * e))
    candidates = []
    for k, g in first_layer.items():
        if d % k == 0:
            if k == 1:
                candidates.extend(F.embed(r) for r in _split_linear(P, g, rng))
            else:
                candidates.extend(_split_linear(F, [F.embed(c) for c in g], rng))
    for r in candidates:
        mult = 0
        for k, g in layers:
            if d % k == 0 and peval(F, [F.embed(c) for c in g], r) == F.zero:
                mult += 1
        roots[r] = mult
    return RootResult(sorted(roots.items()), sorted(remainder))


def roots(a: UniPoly, rng: random.Random | None = None) -> RootResult:
    """All roots of ``a`` in its field, with multiplicities.

    Distinct-degree factorisation peels off the linear part, which is split by
    Cantor-Zassenhaus; multiplicities come from repeated gcd layers, not from the
    derivative.
    """
    if a.is_zero():
        raise ValueError("roots of the zero polynomial")
    F = a.field
    rng = rng or random.Random(0)
    f = pmonic(F, a.coeffs)
    if len(f) == 1:
        return RootResult()
    if F.degree > 1 and all(F.in_prime_field(c) for c in f):
        return _roots_via_prime_field(F, f, rng)
    return _roots_generic(F, f, rng)


def factor_degrees(a: UniPoly) -> list[int]:
    """Degrees of the irreducible factors of ``a`` (with multiplicity), sorted."""
    F = a.field
    out = []
    for k, g in _distinct_degree_layers(F, pmonic(F, a.coeffs)):
        out.extend([k] * ((len(g) - 1) // k))
    return sorted(out)


def is_irreducible(a: UniPoly) -> bool:
    return a.degree >= 1 and factor_degrees(a) == [a.degree]


def irreducible_of_degree(field: Field, d: int, seed: int = 0) -> UniPoly:
    """A monic irreducible polynomial of degree d over ``field``.

    Binomials t^d - c and trinomials are tried first (sparse moduli make the
    extension arithmetic cheaper); a seeded random search follows.
    """
    if d < 2:
        raise ValueError("degree must be >= 2")
    F = field
    for c in range(1, min(F.p, 64)):
        cand = UniPoly(F, [F.from_int(-c)] + [F.zero] * (d - 1) + [F.one])
        if is_irreducible(cand):
            return cand
    for c0 in range(1, min(F.p, 16)):
        for c1 in range(1, min(F.p, 16)):
            cand = UniPoly(F, [F.from_int(c0), F.from_int(c1)] + [F.zero] * (d - 2) + [F.one])
            if is_irreducible(cand):
                return cand
    rng = random.Random(seed)
    while True:
        cand = UniPoly(F, [F.random_element(rng) for _ in range(d)] + [F.one])
        if is_irreducible(cand):
            return cand


# -- bivariate --------------------------------------------------------------------

class BiPoly:
    """Polynomial in x and y: ``rows[j]`` is the x-coefficient list of y^j."""

    __slots__ = ("field", "rows")

    def __init__(self, field: Field, rows: Iterable[Sequence] = ()):
        self.field = field
        rs = [trim(field, list(r)) for r in rows]
        while rs and not rs[-1]:
            rs.pop()
        self.rows = rs

    @classmethod
    def from_terms(cls, field: Field, terms: dict) -> BiPoly:
        """``terms`` maps (i, j) -> coefficient of x^i y^j."""
        if not terms:
            return cls(field)
        dy = max(j for _, j in terms)
        rows = [[] for _ in range(dy + 1)]
        for (i, j), c in terms.items():
            r = rows[j]
            if len(r) <= i:
                r.extend([field.zero] * (i + 1 - len(r)))
            r[i] = field.add(r[i], c)
        return cls(field, rows)

    def terms(self) -> dict:
        z = self.field.zero
        return {(i, j): c for j, r in enumerate(self.rows) for i, c in enumerate(r) if c != z}

    def is_zero(self) -> bool:
        return not self.rows

    @property
    def deg_y(self) -> int:
        return len(self.rows) - 1

    @property
    def deg_x(self) -> int:
        return max((len(r) - 1 for r in self.rows), default=-1)

    def __add__(self, other: BiPoly) -> BiPoly:
        F = self.field
        n = max(len(self.rows), len(other.rows))
        get = lambda rs, j: rs[j] if j < len(rs) else []
        return BiPoly(F, [padd(F, get(self.rows, j), get(other.rows, j)) for j in range(n)])

    def __neg__(self) -> BiPoly:
        return BiPoly(self.field, [pneg(self.field, r) for r in self.rows])

    def __sub__(self, other: BiPoly) -> BiPoly:
        return self + (-other)

    def __mul__(self, other) -> BiPoly:
        F = self.field
        if not isinstance(other, BiPoly):
            return BiPoly(F, [pscale(F, r, other) for r in self.rows])
        if self.is_zero() or other.is_zero():
            return BiPoly(F)
        rows: list = [[] for _ in range(len(self.rows) + len(other.rows) - 1)]
        for j, a in enumerate(self.rows):
            for k, b in enumerate(other.rows):
                rows[j + k] = padd(F, rows[j + k], pmul(F, a, b))
        return BiPoly(F, rows)

    def __eq__(self, other):
        if isinstance(other, BiPoly):
            return self.field == other.field and self.rows == other.rows
        return NotImplemented

    def __hash__(self):
        return hash((self.field, tuple(tuple(r) for r in self.rows)))

    def __call__(self, x: Element, y: Element) -> Element:
        F = self.field
        acc = F.zero
        for r in reversed(self.rows):
            acc = F.add(F.mul(acc, y), peval(F, r, x))
        return acc

    def at_x(self, x0: Element) -> UniPoly:
        """The univariate polynomial y -> self(x0, y)."""
        return UniPoly(self.field, [peval(self.field, r, x0) for r in self.rows])

    def coeffs_at_x(self, x0: Element, length: int) -> list:
        """Untrimmed y-coefficients at x = x0, padded to ``length``."""
        F = self.field
        out = [peval(F, r, x0) for r in self.rows]
        return out + [F.zero] * (length - len(out))

    def __repr__(self):
        return f"BiPoly({self.terms()})"


# -- resultants ----------------------------------------------------------------------

def _det(F: Field, m: list[list]) -> Element:
    """Determinant by Gaussian elimination (m is consumed)."""
    n = len(m)
    det = F.one
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != F.zero), None)
        if piv is None:
            return F.zero
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = F.neg(det)
        pv = m[c][c]
        det = F.mul(det, pv)
        inv = F.inv(pv)
        for r in range(c + 1, n):
            if m[r][c] != F.zero:
                f = F.mul(m[r][c], inv)
                row_r, row_c = m[r], m[c]
                for k in range(c + 1, n):
                    row_r[k] = F.sub(row_r[k], F.mul(f, row_c[k]))
    return det


def sylvester_matrix(top: Sequence, bottom: Sequence, zero) -> list[list]:
    """Sylvester matrix with ``top``'s shifted rows first.

    Coefficient lists are little-endian and untrimmed: their lengths fix the
    formal degrees.
    """
    m, n = len(top) - 1, len(bottom) - 1
    size = m + n
    rows = []
    for i in range(n):
        row = [zero] * size
        for k, c in enumerate(reversed(top)):
            row[i + k] = c
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for k, c in enumerate(reversed(bottom)):
            row[i + k] = c
        rows.append(row)
    return rows


def scalar_resultant(F: Field, f: Sequence, g: Sequence) -> Element:
    """Resultant of two univariate coefficient lists with formal degrees
    len-1, using the same orientation as :func:`resultant_y`."""
    if len(f) == 1 and len(g) == 1:
        return F.one
    return _det(F, sylvester_matrix(g, f, F.zero))


def _bareiss_det_poly(F: Field, m: list[list[list]]) -> list:
    """Fraction-free determinant of a matrix with entries in F[x]."""
    n = len(m)
    sign = False
    prev = [F.one]
    for k in range(n - 1):
        piv = next((r for r in range(k, n) if m[r][k]), None)
        if piv is None:
            return []
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            sign = not sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = psub(F, pmul(F, m[k][k], m[i][j]), pmul(F, m[i][k], m[k][j]))
                q, r = pdivmod(F, num, prev)
                assert not r, "Bareiss division must be exact"
                m[i][j] = q
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return pneg(F, det) if sign else det


def resultant_bareiss(f: BiPoly, g: BiPoly) -> UniPoly:
    """Res_y(f, g) by fraction-free elimination of the Sylvester matrix over F[x]."""
    F = f.field
    if f.deg_y < 1 and g.deg_y < 1:
        raise ValueError("resultant needs a positive y-degree")
    fr = f.rows or [[]]
    gr = g.rows or [[]]
    if len(fr) == 1 and len(gr) == 1:
        return UniPoly(F, [F.one])
    mat = sylvester_matrix(gr, fr, [])
    return UniPoly(F, _bareiss_det_poly(F, [list(r) for r in mat]))


def _descend(F: Field, *polys: BiPoly):
    if F.degree == 1:
        return None
    P = F.prime_field
    out = []
    for b in polys:
        for r in b.rows:
            if not all(F.in_prime_field(c) for c in r):
                return None
        out.append(BiPoly(P, [[F.to_prime(c) for c in r] for r in b.rows]))
    return out


def resultant_y(f: BiPoly, g: BiPoly) -> UniPoly:
    """Res_y(f, g) as a polynomial in x, by evaluation and interpolation.

    The Sylvester matrix is taken with g's shifted rows on top, so
    Res_y(y - a, y - b) = b - a.  Evaluation points come from the field itself;
    when it has too few elements the determinant is done fraction-free over F[x].
    Polynomials over an extension whose coefficients lie in F_p are handled over
    F_p and embedded back.
    """
    F = f.field
    if f.deg_y < 1 and g.deg_y < 1:
        raise ValueError("resultant needs a positive y-degree")
    down = _descend(F, f, g)
    if down is not None:
        r = resultant_y(*down)
        return UniPoly(F, [F.embed(c) for c in r.coeffs])
    bound = max(f.deg_y, 0) * max(g.deg_x, 0) + max(g.deg_y, 0) * max(f.deg_x, 0)
    if F.order < bound + 1:
        return resultant_bareiss(f, g)
    lf, lg = max(len(f.rows), 1), max(len(g.rows), 1)
    xs, vals = [], []
    for k, x0 in enumerate(F.elements()):
        if k > bound:
            break
        a = f.coeffs_at_x(x0, lf)
        b = g.coeffs_at_x(x0, lg)
        xs.append(x0)
        vals.append(scalar_resultant(F, a, b))
    return UniPoly(F, interpolate(F, xs, vals))
