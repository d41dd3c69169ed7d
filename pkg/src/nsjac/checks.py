"""Randomized property suites shared by the ``check``/``bench`` commands and the tests."""

from __future__ import annotations

import random
import statistics
import time
from dataclasses import dataclass, field
from math import lcm
from typing import Callable, Optional

from .curve import NsCurve, SingularPoint
from .divisor import Divisor, divisor_equal, divisor_from_points, embed_divisor, empty
from .field import field_new
from .jacobian import (NonSplitResult, SpecialDivisor, add, direct_multiple, negate,
                       reduce, scalar_mul, torsion_test)
from . import oracle
from .poly import irreducible_of_degree

# lcm(1..g) for g <= 4; larger genera stay on the base field and resample
# classes whose representative does not split
MAX_SPLITTING_DEGREE = 12


class SamplingFailed(ArithmeticError):
    """No usable reduced divisor turned up within the retry budget."""


RESAMPLE = (SpecialDivisor, NonSplitResult, SingularPoint, SamplingFailed)


@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    failed: int = 0
    resampled: int = 0
    seconds: float = 0.0
    exhausted: bool = False
    notes: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    @property
    def resample_rate(self) -> float:
        total = self.passed + self.failed + self.resampled
        return self.resampled / total if total else 0.0

    def line(self) -> str:
        extra = "".join(f" {k}={v}" for k, v in self.notes.items())
        status = "FAIL" if self.failed else ("INCONCLUSIVE" if self.exhausted else "PASS")
        return (f"{self.name}: {status} passed={self.passed} "
                f"failed={self.failed} resampled={self.resampled} "
                f"({self.resample_rate:.1%}) time={self.seconds:.2f}s{extra}")


def splitting_degree(curve: NsCurve) -> int:
    """lcm(1..g), over which every F_p-rational class splits; 1 if that is too large."""
    L = lcm(*range(1, curve.genus + 1))
    return L if L <= MAX_SPLITTING_DEGREE else 1


def working_curve(curve: NsCurve, seed: int = 0) -> NsCurve:
    """The curve over F_{p^L}, L = splitting_degree(curve), when it is given over a prime field."""
    L = splitting_degree(curve)
    if L == 1 or not curve.field.is_prime_field:
        return curve
    ext = irreducible_of_degree(curve.field, L, seed)
    return curve.extend(field_new(curve.field.p, ext.coeffs))


class Sampler:
    """Random reduced divisors of F_p-rational classes, living on ``work``."""

    def __init__(self, base: NsCurve, work: NsCurve, rng: random.Random):
        self.base = base
        self.work = work
        self.rng = rng
        self.resampled = 0
        self.exhausted = False

    def points(self, k: int) -> Divisor:
        pts = [self.base.random_point(self.rng) for _ in range(k)]
        D = divisor_from_points(self.base, pts)
        return D if self.work is self.base else embed_divisor(D, self.work)

    def reduced(self, degree: Optional[int] = None, distinct: bool = False,
                tries: int = 64) -> Divisor:
        k = self.base.genus if degree is None else degree
        if self.exhausted:
            raise SamplingFailed("sampler gave up earlier")
        for _ in range(tries):
            try:
                D = reduce(self.work, self.points(k))
            except RESAMPLE:
                self.resampled += 1
                continue
            if distinct and len(set(D.points)) != D.degree:
                self.resampled += 1
                continue
            if D.degree == 0 and k > 0:
                self.resampled += 1
                continue
            return D
        self.exhausted = True
        raise SamplingFailed("could not sample a reduced divisor")


def _run(name: str, trials: int, body: Callable[[SuiteResult], None]) -> SuiteResult:
    res = SuiteResult(name)
    t0 = time.perf_counter()
    attempts = 0
    while res.passed + res.failed < trials and attempts < 20 * trials + 20:
        attempts += 1
        try:
            body(res)
        except SamplingFailed:
            # the sampler already retried many times; more attempts will not help
            res.resampled += 1
            break
        except RESAMPLE:
            res.resampled += 1
    # running out of samples is not a property failure, but the run proved less than asked
    res.exhausted = res.passed + res.failed < trials
    res.seconds = time.perf_counter() - t0
    return res


def _record(res: SuiteResult, ok: bool, info) -> None:
    if ok:
        res.passed += 1
    else:
        res.failed += 1
        if len(res.failures) < 5:
            res.failures.append(info)


def group_axioms(base: NsCurve, trials: int, seed: int = 0,
                 work: Optional[NsCurve] = None) -> list[SuiteResult]:
    work = work or working_curve(base)
    rng = random.Random(seed)
    sm = Sampler(base, work, rng)
    zero = empty(work)

    def assoc(res):
        a, b, c = sm.reduced(), sm.reduced(), sm.reduced()
        lhs = add(work, add(work, a, b), c)
        rhs = add(work, a, add(work, b, c))
        _record(res, divisor_equal(lhs, rhs), (a, b, c))

    def comm(res):
        a, b = sm.reduced(), sm.reduced()
        _record(res, divisor_equal(add(work, a, b), add(work, b, a)), (a, b))

    def ident(res):
        a = sm.reduced()
        _record(res, divisor_equal(add(work, a, zero), a) and divisor_equal(add(work, zero, a), a), a)

    def inverse(res):
        a = sm.reduced()
        _record(res, divisor_equal(add(work, a, negate(work, a)), zero), a)

    out = [_run("associativity", trials, assoc), _run("commutativity", trials, comm),
           _run("identity", trials, ident), _run("inverse", trials, inverse)]
    for r in out:
        r.resampled += sm.resampled
        sm.resampled = 0
    return out


def elliptic_oracle(curve: NsCurve, trials: int, seed: int = 0,
                    max_k: int = 1000) -> list[SuiteResult]:
    """add / negate / scalar_mul against chord-tangent on a (2,3) curve."""
    rng = random.Random(seed)

    def pt():
        return curve.random_point(rng)

    def as_div(P):
        return empty(curve) if P is None else divisor_from_points(curve, [P])

    def add_case(res):
        P, Q = pt(), pt()
        got = add(curve, as_div(P), as_div(Q))
        _record(res, got == as_div(oracle.chord_tangent_add(curve, P, Q)), (P, Q))

    def neg_case(res):
        P = pt()
        got = negate(curve, as_div(P))
        _record(res, got == as_div(oracle.chord_tangent_neg(curve, P)), P)

    def mul_case(res):
        P, k = pt(), rng.randrange(max_k)
        got = scalar_mul(curve, k, as_div(P))
        _record(res, got == as_div(oracle.chord_tangent_mul(curve, k, P)), (k, P))

    return [_run("oracle-add", trials, add_case), _run("oracle-negate", trials, neg_case),
            _run("oracle-scalar_mul", trials, mul_case)]


def cantor_oracle(curve: NsCurve, trials: int, seed: int = 0) -> list[SuiteResult]:
    """add against Cantor's algorithm on y^2 = f(x), both over the given field."""
    rng = random.Random(seed)
    sm = Sampler(curve, curve, rng)

    def case(res):
        a, b = sm.reduced(), sm.reduced()
        got = add(curve, a, b)
        ref = oracle.cantor_add(curve, oracle.divisor_to_mumford(curve, a),
                                oracle.divisor_to_mumford(curve, b))
        _record(res, oracle.divisor_to_mumford(curve, got) == ref, (a, b))

    res = _run("oracle-cantor", trials, case)
    res.resampled += sm.resampled
    return [res]


def direct_vs_scalar(base: NsCurve, trials: int, seed: int = 0, ns=(2, 3),
                     work: Optional[NsCurve] = None) -> list[SuiteResult]:
    """direct_multiple(n, D) = scalar_mul(n, D); records how often the matrix path works."""
    work = work or working_curve(base)
    rng = random.Random(seed)
    sm = Sampler(base, work, rng)
    out = []
    for n in ns:
        res = SuiteResult(f"direct_multiple n={n}")
        t0 = time.perf_counter()
        matrix_ok = 0
        for _ in range(trials):
            try:
                D = sm.reduced(distinct=True)
                ref = scalar_mul(work, n, D)
            except SamplingFailed:
                res.resampled += 1
                res.exhausted = True
                break
            except RESAMPLE:
                res.resampled += 1
                continue
            try:
                got = direct_multiple(work, n, D)
            except RESAMPLE:
                res.resampled += 1
                continue
            matrix_ok += 1
            _record(res, divisor_equal(got, ref), D)
        res.seconds = time.perf_counter() - t0
        res.notes["matrix_success"] = f"{matrix_ok}/{trials}"
        res.notes["matrix_rate"] = round(matrix_ok / trials, 3) if trials else 1.0
        out.append(res)
    return out


def torsion_consistency(base: NsCurve, trials: int, seed: int = 0, ns=(2, 3),
                        work: Optional[NsCurve] = None) -> list[SuiteResult]:
    work = work or working_curve(base)
    rng = random.Random(seed)
    sm = Sampler(base, work, rng)
    zero = empty(work)
    out = []
    for n in ns:
        paths: dict = {}

        def case(res, n=n):
            D = sm.reduced(degree=rng.randint(1, base.genus))
            t = torsion_test(work, n, D)
            paths[t.path] = paths.get(t.path, 0) + 1
            _record(res, t.value == divisor_equal(scalar_mul(work, n, D), zero), D)

        res = _run(f"torsion n={n}", trials, case)
        res.notes.update({f"path_{k}": v for k, v in sorted(paths.items())})
        out.append(res)
    return out


def run_check(curve: NsCurve, trials: int, seed: int = 0) -> list[SuiteResult]:
    """Every suite that applies to the curve."""
    if trials <= 0:
        return []
    work = working_curve(curve)
    results = group_axioms(curve, trials, seed, work)
    if curve.n == 2 and curve.field.is_prime_field:
        if curve.genus == 1:
            results += elliptic_oracle(curve, trials, seed)
        elif curve.s % 2 and not any(j for (_, j) in curve.tail):
            results += cantor_oracle(curve, trials, seed)
    results += direct_vs_scalar(curve, trials, seed, work=work)
    results += torsion_consistency(curve, trials, seed, work=work)
    return results


def run_bench(curve: NsCurve, trials: int, seed: int = 0) -> list[dict]:
    """Median and 95th percentile wall time of the main operations."""
    work = working_curve(curve)
    rng = random.Random(seed)
    sm = Sampler(curve, work, rng)
    g = curve.genus

    def timed(fn):
        times = []
        attempts = 0
        while len(times) < trials and attempts < 20 * trials + 20:
            attempts += 1
            try:
                args = fn()
                t0 = time.perf_counter()
                args()
                times.append(time.perf_counter() - t0)
            except SamplingFailed:
                break
            except RESAMPLE:
                continue
        return times

    def op_add():
        a, b = sm.reduced(), sm.reduced()
        return lambda: add(work, a, b)

    def op_reduce():
        D = sm.points(2 * g)
        return lambda: reduce(work, D)

    def op_negate():
        a = sm.reduced()
        return lambda: negate(work, a)

    def op_direct():
        a = sm.reduced(distinct=True)
        return lambda: direct_multiple(work, 2, a)

    rows = []
    for name, fn in (("add", op_add), ("reduce_2g", op_reduce), ("negate", op_negate),
                     ("direct_multiple_2", op_direct)):
        times = sorted(timed(fn))
        if times:
            med = statistics.median(times)
            p95 = times[min(len(times) - 1, int(0.95 * len(times)))]
        else:
            med = p95 = float("nan")
        rows.append({"operation": name, "trials": len(times), "median_s": med, "p95_s": p95,
                     "field": repr(work.field)})
    return rows
