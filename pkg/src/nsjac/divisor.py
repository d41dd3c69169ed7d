"""Effective affine divisors P_1 + ... + P_d, standing for the class of sum(P_i) - d*w."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable

from .curve import NsCurve, Point
from .field import FieldMismatch
from .poly import UniPoly


class PointNotOnCurve(ValueError):
    pass


class DivisorFileError(ValueError):
    pass


@dataclass(frozen=True)
class Divisor:
    curve: NsCurve
    points: tuple[Point, ...]

    @property
    def degree(self) -> int:
        return len(self.points)

    @property
    def field(self):
        return self.curve.field

    def is_empty(self) -> bool:
        return not self.points

    def multiplicities(self) -> dict[Point, int]:
        return dict(Counter(self.points))

    def support(self) -> list[Point]:
        return list(dict.fromkeys(self.points))

    def __add__(self, other: Divisor) -> Divisor:
        return union(self, other)

    def __str__(self):
        return format_divisor(self).strip() or "0"


def _canonical(points: Iterable[Point]) -> tuple[Point, ...]:
    return tuple(sorted(Point(*p) for p in points))


def divisor_from_points(curve: NsCurve, points: Iterable, check: bool = True) -> Divisor:
    F = curve.field
    pts = []
    for p in points:
        x, y = p
        x = F(x) if isinstance(x, int) else x
        y = F(y) if isinstance(y, int) else y
        if check and not (F.is_element(x) and F.is_element(y) and curve.is_on_curve(x, y)):
            raise PointNotOnCurve(f"({F.format(x)},{F.format(y)}) is not on the curve")
        pts.append(Point(x, y))
    return Divisor(curve, _canonical(pts))


def empty(curve: NsCurve) -> Divisor:
    return Divisor(curve, ())


def _same_curve(a: Divisor, b: Divisor) -> None:
    if a.field != b.field:
        raise FieldMismatch(f"divisors live over {a.field!r} and {b.field!r}")
    if a.curve != b.curve:
        raise ValueError("divisors live on different curves")


def union(a: Divisor, b: Divisor) -> Divisor:
    _same_curve(a, b)
    return Divisor(a.curve, _canonical(a.points + b.points))


def divisor_equal(a: Divisor, b: Divisor) -> bool:
    """Equality as multisets of points (class equality for reduced divisors)."""
    _same_curve(a, b)
    return a.points == b.points


def mumford_u(D: Divisor) -> UniPoly:
    return UniPoly.from_roots(D.field, [p.x for p in D.points])


def embed_divisor(D: Divisor, curve: NsCurve) -> Divisor:
    """Move a divisor over F_p onto the same curve over an extension."""
    src = D.curve.field
    return Divisor(curve, _canonical(curve.embed_point(p, src) for p in D.points))


def parse_divisor(curve: NsCurve, text: str) -> Divisor:
    """One ``x;y`` point per line; ``#`` starts a comment; blank means the identity."""
    F = curve.field
    pts = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split(";")
        if len(parts) != 2:
            raise DivisorFileError(f"line {lineno}: expected 'x;y'")
        try:
            pts.append((F.parse(parts[0].strip()), F.parse(parts[1].strip())))
        except ValueError as exc:
            raise DivisorFileError(f"line {lineno}: {exc}") from None
    return divisor_from_points(curve, pts)


def format_divisor(D: Divisor) -> str:
    F = D.field
    return "".join(f"{F.format(p.x)};{F.format(p.y)}\n" for p in D.points)
