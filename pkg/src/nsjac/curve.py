"""The (n,s) curve  y^n = x^s + p(x,y)  and local computations on it.

The single place at infinity ``w`` has pole orders ord(x) = n, ord(y) = s, so the
functions regular away from ``w`` have a basis of monomials x^i y^j (j < n) with
pole order n*i + s*j.  Sorting them by pole order gives the columns of every
interpolation matrix in :mod:`nsjac.jacobian`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import gcd
from typing import NamedTuple, Sequence

from .field import Element, Field, PrimeField, embed_prime, field_new, FieldError
from .poly import BiPoly, UniPoly, padd, pmul, roots, trim


class CurveError(ValueError):
    pass


class BadDegrees(CurveError):
    pass


class NotCoprime(CurveError):
    pass


class BadCharacteristic(CurveError):
    pass


class NoRationalPoint(CurveError):
    pass


class SingularPoint(ArithmeticError):
    """The plane model is singular at the point (both partials vanish)."""


class CurveFileError(CurveError):
    pass


class Point(NamedTuple):
    x: Element
    y: Element


class Monomial(NamedTuple):
    i: int
    j: int
    pole_order: int


@lru_cache(maxsize=None)
def _basis(n: int, s: int, count: int) -> tuple[Monomial, ...]:
    out = []
    bound = 0
    while len(out) < count:
        bound += n * s
        out = sorted((Monomial(i, j, n * i + s * j)
                      for j in range(n) for i in range((bound - s * j) // n + 1)
                      if n * i + s * j <= bound), key=lambda m: m.pole_order)
    return tuple(out[:count])


def semigroup_gaps(n: int, s: int) -> list[int]:
    """Positive integers not of the form n*i + s*j with i, j >= 0."""
    g = (n - 1) * (s - 1) // 2
    reachable = {n * i + s * j for i in range(2 * g + 1) for j in range(n)}
    return [k for k in range(1, 2 * g) if k not in reachable]


# -- truncated power series helpers (lists of length N) -----------------------------

def _smul(F: Field, a: Sequence, b: Sequence, N: int) -> list:
    out = [F.zero] * N
    add, mul = F.add, F.mul
    for i, x in enumerate(a[:N]):
        if x != F.zero:
            for j in range(min(len(b), N - i)):
                out[i + j] = add(out[i + j], mul(x, b[j]))
    return out


def _sinv(F: Field, a: Sequence, N: int) -> list:
    inv0 = F.inv(a[0])
    out = [inv0] + [F.zero] * (N - 1)
    for k in range(1, N):
        acc = F.zero
        for i in range(1, min(k, len(a) - 1) + 1):
            acc = F.add(acc, F.mul(a[i], out[k - i]))
        out[k] = F.neg(F.mul(acc, inv0))
    return out


def _spowers(F: Field, a: Sequence, top: int, N: int) -> list[list]:
    out = [[F.one] + [F.zero] * (N - 1)]
    for _ in range(top):
        out.append(_smul(F, out[-1], a, N))
    return out


def compose(F: Field, poly: BiPoly, xs: Sequence, ys: Sequence, N: int) -> list:
    """poly(x(t), y(t)) mod t^N."""
    xp = _spowers(F, xs, max(poly.deg_x, 0), N)
    yp = _spowers(F, ys, max(poly.deg_y, 0), N)
    out = [F.zero] * N
    for j, row in enumerate(poly.rows):
        for i, c in enumerate(row):
            if c != F.zero:
                term = _smul(F, xp[i], yp[j], N) if j else xp[i]
                for k, v in enumerate(term):
                    if v != F.zero:
                        out[k] = F.add(out[k], F.mul(c, v))
    return out


@dataclass(frozen=True)
class LocalExpansion:
    """Coordinates as power series in a uniformizer t at ``center``.

    ``parameter`` is ``"x"`` when t = x - x0 and ``"y"`` when t = y - y0.
    """

    center: Point
    parameter: str
    series_x: tuple
    series_y: tuple

    @property
    def order(self) -> int:
        return len(self.series_x) - 1


class NsCurve:
    """y^n = x^s + tail(x, y) over ``field`` with gcd(n, s) = 1."""

    def __init__(self, field: Field, n: int, s: int, tail: dict | None = None):
        if n < 2 or s <= n:
            raise BadDegrees(f"need n >= 2 and s > n, got (n,s)=({n},{s})")
        if gcd(n, s) != 1:
            raise NotCoprime(f"gcd({n},{s}) = {gcd(n, s)}")
        if (n * s) % field.p == 0:
            raise BadCharacteristic(f"characteristic {field.p} divides n*s = {n * s}")
        clean = {}
        for (i, j), c in (tail or {}).items():
            if not (0 <= i < s and 0 <= j < n):
                raise BadDegrees(f"tail monomial x^{i} y^{j} outside deg_x < {s}, deg_y < {n}")
            if not field.is_element(c):
                raise FieldError(f"tail coefficient {c!r} is not an element of {field!r}")
            if c != field.zero:
                clean[(i, j)] = c
        self.field = field
        self.n = n
        self.s = s
        self.tail = clean

    def __eq__(self, other):
        return (isinstance(other, NsCurve) and self.field == other.field and self.n == other.n
                and self.s == other.s and self.tail == other.tail)

    def __hash__(self):
        return hash((self.field, self.n, self.s, tuple(sorted(self.tail.items()))))

    def __repr__(self):
        return f"NsCurve(n={self.n}, s={self.s}, field={self.field!r}, tail={self.tail})"

    @property
    def genus(self) -> int:
        return (self.n - 1) * (self.s - 1) // 2

    def gap_sequence(self) -> list[int]:
        return semigroup_gaps(self.n, self.s)

    def basis_prefix(self, count: int) -> tuple[Monomial, ...]:
        if count < 1:
            raise ValueError("count must be >= 1")
        return _basis(self.n, self.s, count)

    @cached_property
    def equation(self) -> BiPoly:
        """f(x, y) = y^n - x^s - tail(x, y)."""
        F = self.field
        terms = {(i, j): F.neg(c) for (i, j), c in self.tail.items()}
        terms[(0, self.n)] = F.one
        terms[(self.s, 0)] = F.sub(terms.get((self.s, 0), F.zero), F.one)
        return BiPoly.from_terms(F, terms)

    @cached_property
    def dfdx(self) -> BiPoly:
        F = self.field
        return BiPoly.from_terms(F, {(i - 1, j): F.mul(F.from_int(i), c)
                                     for (i, j), c in self.equation.terms().items() if i})

    @cached_property
    def dfdy(self) -> BiPoly:
        F = self.field
        return BiPoly.from_terms(F, {(i, j - 1): F.mul(F.from_int(j), c)
                                     for (i, j), c in self.equation.terms().items() if j})

    def is_on_curve(self, x: Element, y: Element) -> bool:
        return self.equation(x, y) == self.field.zero

    def is_singular(self, x: Element, y: Element) -> bool:
        z = self.field.zero
        return self.dfdx(x, y) == z and self.dfdy(x, y) == z

    def point(self, x, y) -> Point:
        """Build a point from ints or field values, checking membership."""
        F = self.field
        x = F(x) if isinstance(x, int) else x
        y = F(y) if isinstance(y, int) else y
        if not self.is_on_curve(x, y):
            raise CurveError(f"({F.format(x)},{F.format(y)}) is not on the curve")
        return Point(x, y)

    def fiber(self, x0: Element) -> UniPoly:
        """f(x0, y) as a polynomial in y."""
        return self.equation.at_x(x0)

    def points(self) -> list[Point]:
        """All affine points (brute force; small fields only)."""
        out = []
        for x0 in self.field.elements():
            r = roots(self.fiber(x0))
            out.extend(Point(x0, y0) for y0, _ in r.roots)
        return out

    def random_point(self, rng: random.Random | int | None = None,
                     max_draws: int = 4096) -> Point:
        rng = rng if isinstance(rng, random.Random) else random.Random(rng)
        F = self.field
        for _ in range(max_draws):
            x0 = F.random_element(rng)
            ys = [y for y, _ in roots(self.fiber(x0), rng).roots]
            if not ys:
                continue
            y0 = ys[rng.randrange(len(ys))]
            if not self.is_singular(x0, y0):
                return Point(x0, y0)
        raise NoRationalPoint(f"no smooth point found in {max_draws} draws")

    # -- local analysis ---------------------------------------------------------

    def local_expansion(self, point: Point, order: int) -> LocalExpansion:
        """Power series of x and y in a uniformizer, to t^order (Newton lifting)."""
        F = self.field
        x0, y0 = point
        N = order + 1
        fy = self.dfdy(x0, y0)
        if fy != F.zero:
            param, fixed, moving, deriv = "x", [x0, F.one], y0, self.dfdy
        elif self.dfdx(x0, y0) != F.zero:
            param, fixed, moving, deriv = "y", [y0, F.one], x0, self.dfdx
        else:
            raise SingularPoint(f"curve is singular at ({F.format(x0)},{F.format(y0)})")
        fixed = (fixed + [F.zero] * N)[:N]
        series = [moving] + [F.zero] * (N - 1)
        prec = 1
        while prec < N:
            prec = min(2 * prec, N)
            cur = series[:prec]
            fx = fixed[:prec]
            if param == "x":
                val = compose(F, self.equation, fx, cur, prec)
                der = compose(F, deriv, fx, cur, prec)
            else:
                val = compose(F, self.equation, cur, fx, prec)
                der = compose(F, deriv, cur, fx, prec)
            step = _smul(F, val, _sinv(F, der, prec), prec)
            series[:prec] = [F.sub(a, b) for a, b in zip(cur, step)]
        if param == "x":
            return LocalExpansion(point, "x", tuple(fixed), tuple(series))
        return LocalExpansion(point, "y", tuple(series), tuple(fixed))

    def hasse_rows(self, point: Point, up_to_order: int,
                   basis: Sequence[Monomial]) -> list[list]:
        """Rows k = 0..up_to_order-1: the t^k coefficient of each basis monomial."""
        F = self.field
        if up_to_order < 1:
            raise ValueError("up_to_order must be >= 1")
        if up_to_order == 1:
            if self.is_singular(*point):
                raise SingularPoint("singular point")
            return [self.evaluate_monomials(point, basis)]
        N = up_to_order
        loc = self.local_expansion(point, N - 1)
        xp = _spowers(F, loc.series_x, max(m.i for m in basis), N)
        yp = _spowers(F, loc.series_y, max(m.j for m in basis), N)
        cols = [_smul(F, xp[m.i], yp[m.j], N) for m in basis]
        return [[col[k] for col in cols] for k in range(N)]

    def evaluate_monomials(self, point: Point, basis: Sequence[Monomial]) -> list:
        F = self.field
        x0, y0 = point
        xp = [F.one]
        for _ in range(max(m.i for m in basis)):
            xp.append(F.mul(xp[-1], x0))
        yp = [F.one]
        for _ in range(max(m.j for m in basis)):
            yp.append(F.mul(yp[-1], y0))
        return [F.mul(xp[m.i], yp[m.j]) for m in basis]

    def valuation_of(self, R: BiPoly, point: Point, cap: int) -> int:
        """Order of vanishing of R at a smooth point, or ``cap`` if it reaches it."""
        F = self.field
        if R(*point) != F.zero:
            if self.is_singular(*point):
                raise SingularPoint("singular point")
            return 0
        N = 2
        while True:
            N = min(N, cap)
            loc = self.local_expansion(point, N - 1)
            ser = compose(F, R, loc.series_x, loc.series_y, N)
            for k, c in enumerate(ser):
                if c != F.zero:
                    return k
            if N >= cap:
                return cap
            N *= 2

    # -- functions on the curve --------------------------------------------------

    def function(self, coeffs: Sequence, basis: Sequence[Monomial]) -> BiPoly:
        """sum(c_k * x^i_k * y^j_k) as a bivariate polynomial."""
        F = self.field
        return BiPoly.from_terms(F, {(m.i, m.j): c for c, m in zip(coeffs, basis)
                                     if c != F.zero})

    def reduce_function(self, R: BiPoly) -> BiPoly:
        """Rewrite R with y-degree < n using y^n = x^s + tail."""
        F = self.field
        n = self.n
        rows = [list(r) for r in R.rows]
        sub_rows: list = [[] for _ in range(n)]
        for (i, j), c in self.tail.items():
            r = sub_rows[j]
            r.extend([F.zero] * (i + 1 - len(r)))
            r[i] = c
        xs = [F.zero] * self.s + [F.one]
        sub_rows[0] = padd(F, sub_rows[0], xs)
        for j in range(len(rows) - 1, n - 1, -1):
            top = rows[j]
            if not top:
                continue
            rows[j] = []
            for k, r in enumerate(sub_rows):
                rows[j - n + k] = padd(F, rows[j - n + k], pmul(F, top, r))
        return BiPoly(F, rows)

    def pole_order(self, R: BiPoly) -> int:
        """Pole order at w of a function with y-degree < n."""
        if R.deg_y >= self.n:
            R = self.reduce_function(R)
        if R.is_zero():
            raise ValueError("zero function has no pole order")
        return max(self.n * i + self.s * j for (i, j) in R.terms())

    # -- changing the field ------------------------------------------------------

    def extend(self, field: Field) -> NsCurve:
        """The same curve over an extension of its prime field."""
        if field == self.field:
            return self
        tail = {k: embed_prime(c, self.field, field) for k, c in self.tail.items()}
        return NsCurve(field, self.n, self.s, tail)

    def embed_point(self, point: Point, source: Field) -> Point:
        return Point(embed_prime(point.x, source, self.field),
                     embed_prime(point.y, source, self.field))


def curve_new(field: Field, n: int, s: int, tail: dict | None = None) -> NsCurve:
    return NsCurve(field, n, s, tail)


# -- curve file format -------------------------------------------------------------

MAX_FILE_GENUS = 64

def parse_curve(text: str) -> NsCurve:
    """Parse ``p=``, ``ext=``, ``n=``, ``s=`` and ``c <i> <j> <value>`` lines."""
    keys: dict[str, str] = {}
    coeff_lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("c ") or line == "c":
            parts = line.split()
            if len(parts) != 4:
                raise CurveFileError(f"line {lineno}: expected 'c <i> <j> <value>'")
            coeff_lines.append((lineno, parts[1], parts[2], parts[3]))
            continue
        if "=" not in line:
            raise CurveFileError(f"line {lineno}: cannot parse {line!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in ("p", "ext", "n", "s"):
            raise CurveFileError(f"line {lineno}: unknown key {key!r}")
        if key in keys:
            raise CurveFileError(f"line {lineno}: duplicate key {key!r}")
        keys[key] = value
    for key in ("p", "n", "s"):
        if key not in keys:
            raise CurveFileError(f"missing key {key!r}")
    try:
        p, n, s = int(keys["p"]), int(keys["n"]), int(keys["s"])
        ext = [int(c) for c in keys["ext"].split(",")] if "ext" in keys else None
    except ValueError as exc:
        raise CurveFileError(f"bad integer: {exc}") from None
    if p > (1 << 62) or n > 64 or s > 256:
        raise CurveFileError("parameters out of supported range")
    if n >= 2 and s >= 2 and (n - 1) * (s - 1) // 2 > MAX_FILE_GENUS:
        raise CurveFileError(f"genus above {MAX_FILE_GENUS} is not supported from files")
    if ext is not None and len(ext) - 1 > 64:
        raise CurveFileError("extension degree above 64 is not supported")
    field = field_new(p, ext)
    tail: dict = {}
    for lineno, si, sj, sv in coeff_lines:
        try:
            i, j = int(si), int(sj)
        except ValueError:
            raise CurveFileError(f"line {lineno}: bad exponent") from None
        if (i, j) in tail:
            raise CurveFileError(f"line {lineno}: duplicate coefficient for x^{i} y^{j}")
        tail[(i, j)] = field.parse(sv)
    return NsCurve(field, n, s, tail)


def format_curve(curve: NsCurve) -> str:
    F = curve.field
    lines = [f"p={F.p}"]
    if F.modulus is not None:
        lines.append("ext=" + ",".join(str(c) for c in F.modulus))
    lines += [f"n={curve.n}", f"s={curve.s}"]
    for (i, j), c in sorted(curve.tail.items()):
        lines.append(f"c {i} {j} {F.format(c)}")
    return "\n".join(lines) + "\n"
