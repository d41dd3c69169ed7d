"""Exact arithmetic in prime fields F_p and single-step extensions F_p[t]/m(t).

Field elements are plain Python values owned by a field object: an ``int`` in
``[0, p)`` for a prime field and a length-``d`` tuple of such ints (little-endian
in powers of ``t``) for an extension of degree ``d``.  All arithmetic goes
through the field object, e.g. ``F.mul(a, b)``.
"""

from __future__ import annotations

import random
from functools import cached_property
from typing import Iterator, Sequence, Union

Element = Union[int, tuple]

MAX_PRIME = 1 << 62


class FieldError(ValueError):
    pass


class NotPrime(FieldError):
    pass


class ReducibleModulus(FieldError):
    pass


class FieldMismatch(FieldError):
    pass


class DivisionByZero(ZeroDivisionError):
    pass


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    q = 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


# -- dense F_p[t] helpers on int lists (little-endian, trimmed) ---------------

def _trim(a: list) -> list:
    while a and not a[-1]:
        a.pop()
    return a


def _pdivmod(a: Sequence[int], m: Sequence[int], p: int) -> tuple[list, list]:
    a = _trim([c % p for c in a])
    dm = len(m) - 1
    q = [0] * max(0, len(a) - dm)
    inv_lc = pow(m[-1], -1, p)
    while len(a) - 1 >= dm:
        c = a[-1] * inv_lc % p
        shift = len(a) - 1 - dm
        q[shift] = c
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        _trim(a)
    return q, a


def _pmod(a: Sequence[int], m: Sequence[int], p: int) -> list:
    return _pdivmod(a, m, p)[1]


def _pmul(a: Sequence[int], b: Sequence[int]) -> list:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] += ai * bj
    return prod


def _psub(a: Sequence[int], b: Sequence[int], p: int) -> list:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    for i, c in enumerate(b):
        a[i] -= c
    return _trim([c % p for c in a])


def _pmulmod(a: Sequence[int], b: Sequence[int], m: Sequence[int], p: int) -> list:
    return _pmod(_pmul(a, b), m, p)


def _ppowmod(a: Sequence[int], e: int, m: Sequence[int], p: int) -> list:
    result = [1]
    base = _pmod(a, m, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, m, p)
        e >>= 1
        if e:
            base = _pmulmod(base, base, m, p)
    return result


def _pgcd(a: Sequence[int], b: Sequence[int], p: int) -> list:
    a = _trim([c % p for c in a])
    b = _trim([c % p for c in b])
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def is_irreducible_mod_p(m: Sequence[int], p: int) -> bool:
    """Rabin's test for a polynomial over F_p given as little-endian ints.

    m of degree d is irreducible iff t^(p^d) = t mod m and
    gcd(t^(p^(d/l)) - t, m) = 1 for every prime l dividing d.
    """
    m = _trim([c % p for c in m])
    d = len(m) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    t = [0, 1]

    def frob_power(k: int) -> list:
        r = t
        for _ in range(k):
            r = _ppowmod(r, p, m, p)
        return r

    for ell in prime_factors(d):
        diff = _psub(frob_power(d // ell), t, p)
        if len(_pgcd(m, diff, p)) != 1:
            return False
    full = frob_power(d)
    return full == t


# -- fields -------------------------------------------------------------------

class Field:
    """Interface shared by :class:`PrimeField` and :class:`ExtensionField`."""

    p: int
    degree: int
    zero: Element
    one: Element

    @property
    def order(self) -> int:
        return self.p ** self.degree

    @property
    def is_prime_field(self) -> bool:
        return self.degree == 1

    def div(self, a: Element, b: Element) -> Element:
        return self.mul(a, self.inv(b))

    def pow(self, a: Element, e: int) -> Element:
        if e < 0:
            a, e = self.inv(a), -e
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return result

    def random_element(self, rng: random.Random) -> Element:
        raise NotImplementedError

    def sqrt(self, a: Element) -> Element | None:
        """A square root of ``a`` in this field, or None (Tonelli-Shanks)."""
        if self.is_zero(a):
            return self.zero
        q = self.order
        if self.pow(a, (q - 1) // 2) != self.one:
            return None
        s, r = q - 1, 0
        while s % 2 == 0:
            s //= 2
            r += 1
        z = self._nonresidue
        c = self.pow(z, s)
        x = self.pow(a, (s + 1) // 2)
        b = self.pow(a, s)
        while b != self.one:
            i, b2 = 0, b
            while b2 != self.one:
                b2 = self.mul(b2, b2)
                i += 1
            for _ in range(r - i - 1):
                c = self.mul(c, c)
            x = self.mul(x, c)
            c = self.mul(c, c)
            b = self.mul(b, c)
            r = i
        return x

    @cached_property
    def _nonresidue(self) -> Element:
        rng = random.Random(0x5EED ^ self.order)
        half = (self.order - 1) // 2
        while True:
            z = self.random_element(rng)
            if not self.is_zero(z) and self.pow(z, half) != self.one:
                return z


class PrimeField(Field):
    """The prime field F_p; elements are ints in ``[0, p)``."""

    degree = 1
    zero = 0
    one = 1
    modulus = None

    def __init__(self, p: int):
        if not isinstance(p, int) or p < 3 or not is_prime(p):
            raise NotPrime(f"{p} is not an odd prime")
        if p >= MAX_PRIME:
            raise FieldError(f"prime {p} exceeds 2^62")
        self.p = p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"

    @property
    def prime_field(self) -> PrimeField:
        return self

    def __call__(self, value: int) -> int:
        return value % self.p

    def from_int(self, value: int) -> int:
        return value % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise DivisionByZero("inverse of zero")
        return pow(a, -1, self.p)

    def pow(self, a, e):
        if e < 0:
            return pow(self.inv(a), -e, self.p)
        return pow(a, e, self.p)

    def is_zero(self, a) -> bool:
        return a == 0

    def is_element(self, a) -> bool:
        return isinstance(a, int) and 0 <= a < self.p

    def random_element(self, rng: random.Random) -> int:
        return rng.randrange(self.p)

    def elements(self) -> Iterator[int]:
        return iter(range(self.p))

    def in_prime_field(self, a) -> bool:
        return True

    def to_prime(self, a) -> int:
        return a

    def embed(self, a: int) -> int:
        return a % self.p

    def frobenius(self, a):
        return a

    def format(self, a) -> str:
        return str(a)

    def parse(self, text: str) -> int:
        text = text.strip()
        try:
            value = int(text)
        except ValueError:
            raise FieldError(f"bad field element {text!r}") from None
        if "," in text:
            raise FieldError(f"bad field element {text!r}")
        return value % self.p


class ExtensionField(Field):
    """F_p[t]/m(t) for a monic irreducible m of degree d >= 2.

    Elements are tuples of d ints, little-endian in powers of t.
    """

    def __init__(self, p: int, modulus: Sequence[int], *, check: bool = True):
        base = PrimeField(p)
        m = [int(c) % p for c in modulus]
        _trim(m)
        if len(m) < 3:
            raise ReducibleModulus("extension modulus must have degree >= 2")
        if m[-1] != 1:
            raise ReducibleModulus("extension modulus must be monic")
        if check and not is_irreducible_mod_p(m, p):
            raise ReducibleModulus(f"{m} is reducible over F_{p}")
        self.p = p
        self.prime_field = base
        self.modulus = tuple(m)
        self.degree = d = len(m) - 1
        self.zero = (0,) * d
        self.one = (1,) + (0,) * (d - 1)
        # t^d = sum(tail_j * t^j); kept sparse for cheap reduction
        self._tail = tuple((j, -c % p) for j, c in enumerate(m[:-1]) if c)

    def __eq__(self, other):
        return (isinstance(other, ExtensionField) and other.p == self.p
                and other.modulus == self.modulus)

    def __hash__(self):
        return hash(("F", self.p, self.modulus))

    def __repr__(self):
        return f"ExtensionField({self.p}, {list(self.modulus)})"

    def __call__(self, value) -> tuple:
        if isinstance(value, int):
            return self.embed(value)
        return self._canon(value)

    def _canon(self, coeffs) -> tuple:
        d, p = self.degree, self.p
        coeffs = [int(c) % p for c in coeffs]
        if len(coeffs) > d:
            coeffs = _pmod(coeffs, self.modulus, p)
        return tuple(coeffs) + (0,) * (d - len(coeffs))

    def from_int(self, value: int) -> tuple:
        return self.embed(value)

    def embed(self, a: int) -> tuple:
        return (a % self.p,) + (0,) * (self.degree - 1)

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple(-x % p for x in a)

    def mul(self, a, b):
        p, d = self.p, self.degree
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        for k in range(2 * d - 2, d - 1, -1):
            c = prod[k] % p
            if c:
                base = k - d
                for j, t in self._tail:
                    prod[base + j] += c * t
        return tuple(c % p for c in prod[:d])

    def scale(self, a, c: int):
        p = self.p
        return tuple(x * c % p for x in a)

    def inv(self, a):
        p = self.p
        r0, r1 = list(self.modulus), _trim(list(a))
        if not r1:
            raise DivisionByZero("inverse of zero")
        s0, s1 = [], [1]
        while len(r1) > 1:
            q, r = _pdivmod(r0, r1, p)
            s0, s1 = s1, _psub(s0, _pmul(q, s1), p)
            r0, r1 = r1, r
        c = pow(r1[0], -1, p)
        return self._canon([x * c for x in s1])

    def is_zero(self, a) -> bool:
        return not any(a)

    def is_element(self, a) -> bool:
        return (isinstance(a, tuple) and len(a) == self.degree
                and all(isinstance(c, int) and 0 <= c < self.p for c in a))

    def random_element(self, rng: random.Random) -> tuple:
        return tuple(rng.randrange(self.p) for _ in range(self.degree))

    def elements(self) -> Iterator[tuple]:
        from itertools import product
        for c in product(range(self.p), repeat=self.degree):
            yield tuple(reversed(c))

    def in_prime_field(self, a) -> bool:
        return not any(a[1:])

    def to_prime(self, a) -> int:
        if any(a[1:]):
            raise FieldMismatch(f"{a} is not in the prime field")
        return a[0]

    @cached_property
    def _frobenius_matrix(self) -> list:
        # column i holds (t^i)^p
        tp = self.pow((0, 1) + (0,) * (self.degree - 2), self.p)
        cols = [self.one]
        for _ in range(1, self.degree):
            cols.append(self.mul(cols[-1], tp))
        return cols

    def frobenius(self, a):
        """a^p, via the precomputed matrix of the Frobenius map."""
        p, d = self.p, self.degree
        out = [0] * d
        for ai, col in zip(a, self._frobenius_matrix):
            if ai:
                for k, c in enumerate(col):
                    out[k] += ai * c
        return tuple(c % p for c in out)

    def format(self, a) -> str:
        return ",".join(str(c) for c in a)

    def parse(self, text: str) -> tuple:
        parts = [s.strip() for s in text.strip().split(",")]
        try:
            coeffs = [int(s) for s in parts]
        except ValueError:
            raise FieldError(f"bad field element {text!r}") from None
        if len(coeffs) > self.degree:
            raise FieldError(f"{text!r} has more than {self.degree} coefficients")
        return self._canon(coeffs)


def field_new(p: int, ext_modulus: Sequence[int] | None = None) -> Field:
    """Build F_p, or F_p[t]/m(t) when ``ext_modulus`` (little-endian, monic) is given."""
    if ext_modulus is None:
        return PrimeField(p)
    return ExtensionField(p, ext_modulus)


def embed_prime(a: Element, source: Field, target: Field) -> Element:
    """Canonical inclusion F_p -> F_{p^d}; identity when source == target."""
    if source == target:
        return a
    if not source.is_prime_field or source.p != target.p:
        raise FieldMismatch(f"cannot embed {source!r} into {target!r}")
    return target.embed(a)


def random_element(field: Field, seed: int) -> Element:
    return field.random_element(random.Random(seed))
