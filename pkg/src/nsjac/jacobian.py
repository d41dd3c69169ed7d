"""Jacobian arithmetic through interpolation functions.

For an effective affine divisor D of degree k, a function R in the span of the
first basis monomials that vanishes on D has a pole only at w, of order N, so it
has N - k further zeros E with D + E ~ 0.  Taking the R of least pole order makes
E the reduced representative of -[D]; applying the step twice reduces D, and
addition is reduction of the union.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field as dc_field
from math import lcm
from typing import Sequence

from .curve import Monomial, NsCurve, Point
from .divisor import Divisor, divisor_equal, empty, union
from .linalg import minimal_kernel_vector, rank
from .poly import BiPoly, UniPoly, pdivmod, pgcd, resultant_y, roots


class SpecialDivisor(ArithmeticError):
    """The evaluation matrix lost rank, so the determinant construction degenerates."""


class NonSplitResult(ArithmeticError):
    """Some residual zero is not rational over the working field."""

    def __init__(self, degrees: Sequence[int], message: str | None = None):
        self.degrees = sorted(degrees)
        super().__init__(message or f"residual zeros need irreducible factors of degrees {self.degrees}")

    @property
    def extension_degree(self) -> int:
        return lcm(*self.degrees) if self.degrees else 1


# largest confluent matrix the torsion test builds before falling back
CONFLUENT_LIMIT = 96

# running counters, handy for diagnostics and tests
stats: Counter = Counter()


@dataclass(frozen=True)
class InterpFunction:
    """R = sum(c_j * basis_j), normalized so the last nonzero c_j is 1."""

    curve: NsCurve
    coeffs: tuple
    basis: tuple[Monomial, ...]

    @property
    def top(self) -> int:
        z = self.curve.field.zero
        return max(i for i, c in enumerate(self.coeffs) if c != z)

    @property
    def pole_order(self) -> int:
        return self.basis[self.top].pole_order

    @property
    def poly(self) -> BiPoly:
        return self.curve.function(self.coeffs, self.basis)

    def __call__(self, x, y):
        return self.poly(x, y)


@dataclass(frozen=True)
class ExtraZeros:
    divisor: Divisor
    pole_order: int
    input_degree: int
    factor_degrees: list = dc_field(default_factory=list)


def evaluation_matrix(curve: NsCurve, D: Divisor, basis: Sequence[Monomial],
                      order: int = 1) -> list[list]:
    """One row per point of ``order * D``: value rows, then Hasse rows at repeated points."""
    rows = []
    for P, m in D.multiplicities().items():
        rows.extend(curve.hasse_rows(P, m * order, basis))
    return rows


def interp_function(curve: NsCurve, D: Divisor) -> InterpFunction:
    """The interpolation determinant over the first deg(D)+1 basis monomials.

    Raises SpecialDivisor when the deg(D) x (deg(D)+1) evaluation matrix has
    rank below deg(D): then the determinant vanishes identically.
    """
    k = D.degree
    basis = curve.basis_prefix(k + 1)
    M = evaluation_matrix(curve, D, basis)
    if k and rank(curve.field, M) < k:
        raise SpecialDivisor(f"evaluation matrix has rank below {k}")
    vec, _ = minimal_kernel_vector(curve.field, M, k + 1) if k else ([curve.field.one], 0)
    return InterpFunction(curve, tuple(vec), basis)


def minimal_function(curve: NsCurve, D: Divisor) -> InterpFunction:
    """The function of least pole order vanishing on D (unique up to scaling)."""
    k = D.degree
    basis = curve.basis_prefix(k + 1)
    if not k:
        return InterpFunction(curve, (curve.field.one,), basis)
    vec, free = minimal_kernel_vector(curve.field, evaluation_matrix(curve, D, basis), k + 1)
    return InterpFunction(curve, tuple(vec[:free + 1]), basis[:free + 1])


def _quotient_by_support(F, N: list, D: Divisor) -> list:
    for P, m in D.multiplicities().items():
        lin = [F.neg(P.x), F.one]
        for _ in range(m):
            N, r = pdivmod(F, N, lin)
            if r:
                raise SpecialDivisor("function does not vanish on the divisor")
    return N


def extra_zeros(curve: NsCurve, R: InterpFunction, D: Divisor,
                rng: random.Random | None = None) -> ExtraZeros:
    """The zeros of R beyond D, with multiplicities from local valuations."""
    F = curve.field
    rng = rng or random.Random(0)
    poly = R.poly
    pole = R.pole_order
    stats["extra_zeros"] += 1
    if pole == D.degree:
        zeros = []
    else:
        N = resultant_y(poly, curve.equation).coeffs
        if len(N) - 1 != pole:
            raise SpecialDivisor(f"resultant degree {len(N) - 1} differs from pole order {pole}")
        q = _quotient_by_support(F, N, D)
        found = roots(UniPoly(F, q), rng)
        if not found.splits:
            raise NonSplitResult(found.remainder_degrees)
        mD = D.multiplicities()
        zeros = []
        for x0, mu in found.roots:
            fiber = pgcd(F, poly.at_x(x0).coeffs, curve.fiber(x0).coeffs)
            ys = roots(UniPoly(F, fiber), rng)
            if not ys.splits:
                raise NonSplitResult(ys.remainder_degrees)
            total = 0
            for y0, _ in ys.roots:
                P = Point(x0, y0)
                have = mD.get(P, 0)
                v = curve.valuation_of(poly, P, have + mu + 1)
                extra = v - have
                if extra < 0:
                    raise SpecialDivisor("function vanishes to lower order than the divisor")
                zeros.extend([P] * extra)
                total += extra
            if total != mu:
                raise SpecialDivisor(f"zero count above x={F.format(x0)} is {total}, expected {mu}")
    if len(zeros) + D.degree != pole:
        raise SpecialDivisor(f"zero count {len(zeros)} + {D.degree} differs from pole order {pole}")
    stats["conservation_checks"] += 1
    return ExtraZeros(Divisor(curve, tuple(sorted(zeros))), pole, D.degree)


def residual(curve: NsCurve, D: Divisor) -> Divisor:
    """The reduced representative of -[D], for any effective D."""
    if D.is_empty():
        return D
    R = minimal_function(curve, D)
    return extra_zeros(curve, R, D).divisor


def is_reduced(curve: NsCurve, D: Divisor) -> bool:
    """D is the unique effective divisor of least degree in its class.

    Equivalent to l(D) = 1, i.e. D imposes independent conditions on the g
    monomials of pole order at most 2g-2.
    """
    d = D.degree
    if d == 0:
        return True
    if d > curve.genus:
        return False
    M = evaluation_matrix(curve, D, curve.basis_prefix(curve.genus))
    return rank(curve.field, M) == d


def _check_curve(curve: NsCurve, D: Divisor) -> None:
    if D.curve != curve:
        raise ValueError("divisor lives on a different curve")


def negate(curve: NsCurve, D: Divisor) -> Divisor:
    """Reduced representative of -[D]."""
    _check_curve(curve, D)
    return residual(curve, D)


def reduce(curve: NsCurve, D: Divisor) -> Divisor:
    """Reduced representative of [D]; reduced input comes back unchanged."""
    _check_curve(curve, D)
    if D.degree <= curve.genus and is_reduced(curve, D):
        return D
    return residual(curve, residual(curve, D))


def add(curve: NsCurve, D1: Divisor, D2: Divisor) -> Divisor:
    _check_curve(curve, D1)
    return reduce(curve, union(D1, D2))


def scalar_mul(curve: NsCurve, k: int, D: Divisor) -> Divisor:
    """Reduced representative of k*[D] by double-and-add (k < 0 allowed)."""
    _check_curve(curve, D)
    if k < 0:
        return scalar_mul(curve, -k, negate(curve, D))
    acc = empty(curve)
    base = reduce(curve, D)
    while k:
        if k & 1:
            acc = add(curve, acc, base)
        k >>= 1
        if k:
            base = add(curve, base, base)
    return acc


def _confluent_residual(curve: NsCurve, order: int, D: Divisor) -> Divisor:
    """Residual zeros of the determinant vanishing to ``order`` at every point of D."""
    if len(set(D.points)) != D.degree:
        raise SpecialDivisor("repeated points are not supported on the confluent path")
    k = order * D.degree
    basis = curve.basis_prefix(k + 1)
    M = evaluation_matrix(curve, D, basis, order)
    r = rank(curve.field, M)
    if r < k:
        raise SpecialDivisor(f"confluent matrix has rank {r} < {k}")
    vec, free = minimal_kernel_vector(curve.field, M, k + 1)
    R = InterpFunction(curve, tuple(vec[:free + 1]), basis[:free + 1])
    target = Divisor(curve, tuple(sorted(D.points * order)))
    return extra_zeros(curve, R, target).divisor


def direct_multiple(curve: NsCurve, n: int, D: Divisor) -> Divisor:
    """n*[D] from a single confluent determinant of order n at each point of D."""
    if n < 2:
        raise ValueError("n must be at least 2")
    _check_curve(curve, D)
    if D.is_empty():
        return D
    if D.degree > curve.genus:
        raise ValueError("direct_multiple expects a divisor of degree at most g")
    return residual(curve, _confluent_residual(curve, n, D))


@dataclass(frozen=True)
class TorsionResult:
    value: bool
    path: str  # "matrix", "fallback" or "trivial"
    reason: str = ""

    def __bool__(self):
        return self.value


def torsion_test(curve: NsCurve, n: int, D: Divisor) -> TorsionResult:
    """Whether n*[D] = 0, via the residual of the (n-1)-fold confluent determinant.

    For reduced D that residual is the reduced form of -(n-1)[D], so it equals D
    exactly when n*[D] = 0.  Falls back to double-and-add when the matrix path
    does not apply.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    _check_curve(curve, D)
    if D.is_empty():
        return TorsionResult(True, "trivial")
    try:
        if not is_reduced(curve, D):
            raise SpecialDivisor("input is not reduced")
        if (n - 1) * D.degree > CONFLUENT_LIMIT:
            raise SpecialDivisor("confluent matrix too large")
        E = residual(curve, D) if n == 2 else _confluent_residual(curve, n - 1, D)
        return TorsionResult(divisor_equal(E, D), "matrix")
    except (SpecialDivisor, NonSplitResult) as exc:
        value = divisor_equal(scalar_mul(curve, n, D), empty(curve))
        return TorsionResult(value, "fallback", str(exc))


def is_n_torsion(curve: NsCurve, n: int, D: Divisor) -> bool:
    return torsion_test(curve, n, D).value
