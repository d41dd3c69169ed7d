"""Acceptance criteria 1-9.

Each test prints one ``criterion N ...: PASS|FAIL`` line; the lines are also
collected and repeated in the terminal summary (see conftest.py).
"""

import io
import random
import time
from contextlib import contextmanager, redirect_stderr, redirect_stdout
from math import gcd

import pytest

from nsjac import jacobian as jac
from nsjac.checks import (Sampler, cantor_oracle, direct_vs_scalar, elliptic_oracle, group_axioms,
                          torsion_consistency, working_curve)
from nsjac.cli import main
from nsjac.curve import NsCurve, Point, parse_curve, semigroup_gaps
from nsjac.divisor import divisor_equal, divisor_from_points, empty
from nsjac.field import PrimeField
from nsjac.jacobian import (SpecialDivisor, add, extra_zeros, interp_function, is_n_torsion,
                            negate, reduce, scalar_mul)
from nsjac.poly import UniPoly, roots

LINES = []


@contextmanager
def criterion(num, title, budget):
    details = {}
    t0 = time.perf_counter()
    ok = False
    try:
        yield details
        ok = True
    finally:
        dt = time.perf_counter() - t0
        status = "PASS" if ok and dt < budget else "FAIL"
        extra = "".join(f" {k}={v}" for k, v in details.items())
        line = f"criterion {num} ({title}): {status} time={dt:.2f}s budget={budget}s{extra}"
        LINES.append(line)
        print(line)
    assert dt < budget, f"criterion {num} took {dt:.2f}s, budget {budget}s"


F1009 = PrimeField(1009)
F10007 = PrimeField(10007)


def c34():
    return NsCurve(F1009, 3, 4, {(0, 0): 3, (1, 1): 5, (2, 0): 7})


# -- 1 ---------------------------------------------------------------------------------------

def test_criterion_1_structure_34():
    with criterion(1, "(3,4) structure", 1.0) as info:
        C = c34()
        assert C.genus == 3
        assert C.gap_sequence() == [1, 2, 5]
        assert [(m.i, m.j) for m in C.basis_prefix(5)] == [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1)]
        W = working_curve(C)
        d = Sampler(C, W, random.Random(0)).points(4)
        R = interp_function(W, d)
        assert R.pole_order == 7
        ez = extra_zeros(W, R, d)
        assert ez.divisor.degree == 3 and ez.pole_order == 7
        info["residual_zeros"] = ez.divisor.degree


# -- 2 ---------------------------------------------------------------------------------------

NS_PAIRS = [(n, s) for n in range(2, 6) for s in range(n + 1, 10) if gcd(n, s) == 1]


def test_criterion_2_pole_order_law():
    with criterion(2, "pole-order law", 5.0) as info:
        rng = random.Random(2)
        checked = 0
        for n, s in NS_PAIRS:
            tail = {(0, 0): 1 + rng.randrange(10006), (1, 0): rng.randrange(10007)}
            C = NsCurve(F10007, n, s, tail)
            g = C.genus
            orders = [m.pole_order for m in C.basis_prefix(2 * g + 1)]
            assert all(orders[k] == g + k for k in range(g, 2 * g + 1))
            assert len(semigroup_gaps(n, s)) == g
            for m in range(g + 1):
                for _ in range(8):
                    d = divisor_from_points(C, [C.random_point(rng) for _ in range(g + m)])
                    try:
                        R = interp_function(C, d)
                    except SpecialDivisor:
                        continue
                    break
                else:
                    raise AssertionError(f"no non-special sample for {(n, s, m)}")
                assert R.pole_order == 2 * g + m
                assert R.coeffs[-1] == F10007.one
                checked += 1
        info["pairs"] = len(NS_PAIRS)
        info["determinants"] = checked


# -- 3 ---------------------------------------------------------------------------------------

def _elliptic_curves(k, seed):
    rng = random.Random(seed)
    out = []
    while len(out) < k:
        A, B = rng.randrange(10007), rng.randrange(10007)
        if (4 * A**3 + 27 * B**2) % 10007:
            out.append(NsCurve(F10007, 2, 3, {(1, 0): A, (0, 0): B}))
    return out


def test_criterion_3_elliptic_oracle():
    with criterion(3, "elliptic oracle", 60.0) as info:
        results = []
        for i, C in enumerate(_elliptic_curves(3, 3)):
            results += elliptic_oracle(C, 1000, seed=i)
        for r in results:
            print("  " + r.line())
        assert all(r.ok and r.passed == 1000 for r in results)
        total = sum(r.passed + r.resampled for r in results)
        info["cases"] = sum(r.passed for r in results)
        info["resample_rate"] = f"{sum(r.resampled for r in results) / total:.2%}"


# -- 4 ---------------------------------------------------------------------------------------

def test_criterion_4_cantor_oracle():
    with criterion(4, "genus-2 Cantor oracle", 120.0) as info:
        C = NsCurve(F10007, 2, 5, {(1, 0): 3, (0, 0): 11})
        res, = cantor_oracle(C, 500, seed=4)
        print("  " + res.line())
        assert res.ok and res.passed == 500
        info["pairs"] = res.passed
        info["resample_rate"] = f"{res.resample_rate:.2%}"


# -- 5 ---------------------------------------------------------------------------------------

def test_criterion_5_group_axioms_34():
    with criterion(5, "(3,4) group axioms", 300.0) as info:
        before = jac.stats["conservation_checks"]
        results = group_axioms(c34(), 200, seed=5)
        for r in results:
            print("  " + r.line())
        assert [r.name for r in results] == ["associativity", "commutativity", "identity", "inverse"]
        assert all(r.ok and r.passed >= 200 for r in results)
        # every extra-zero extraction asserts input + residual = pole order and bumps this counter
        checks = jac.stats["conservation_checks"] - before
        assert checks >= 4 * 200
        info["conservation_checks"] = checks


# -- 6 ---------------------------------------------------------------------------------------

def test_criterion_6_direct_multiple():
    with criterion(6, "direct vs double-and-add", 120.0) as info:
        curves = {
            "(2,3)": NsCurve(F10007, 2, 3, {(1, 0): 2, (0, 0): 3}),
            "(2,5)": NsCurve(F10007, 2, 5, {(1, 0): 3, (0, 0): 11}),
            "(3,4)": c34(),
        }
        for name, C in curves.items():
            for r in direct_vs_scalar(C, 100, seed=6):
                print(f"  {name} " + r.line())
                assert r.ok
                assert r.notes["matrix_rate"] >= 0.8
                info[f"{name}n{r.name[-1]}"] = r.notes["matrix_rate"]


# -- 7 ---------------------------------------------------------------------------------------

def _elliptic_order(C):
    p = C.field.p
    A, B = C.tail.get((1, 0), 0), C.tail.get((0, 0), 0)
    legendre = sum(1 if pow((x**3 + A * x + B) % p, (p - 1) // 2, p) == 1 else
                   (0 if (x**3 + A * x + B) % p == 0 else -1) for x in range(p))
    return p + 1 + legendre


def test_criterion_7_torsion():
    with criterion(7, "torsion criterion", 60.0) as info:
        random_cases = 0
        for C in (NsCurve(F10007, 2, 5, {(1, 0): 3, (0, 0): 11}), c34()):
            for r in torsion_consistency(C, 100, seed=7):
                print("  " + r.line())
                assert r.ok and r.passed >= 100
                random_cases += r.passed

        constructed = 0
        # every y = 0 point on a hyperelliptic curve is 2-torsion, and so are their sums
        for C in (NsCurve(F10007, 2, 5, {(1, 0): 3, (0, 0): 11}),
                  NsCurve(PrimeField(7), 2, 5, {(0, 0): 1}),
                  NsCurve(PrimeField(31), 2, 7, {(0, 0): 30}),
                  NsCurve(PrimeField(13), 2, 5, {(1, 0): 12})):  # x^5 - x splits over F_13
            f = UniPoly(C.field, C.equation.rows[0])
            ramified = [divisor_from_points(C, [(x0, 0)]) for x0, _ in roots(f).roots]
            assert ramified
            for D in ramified:
                assert is_n_torsion(C, 2, D)
                assert divisor_equal(scalar_mul(C, 2, D), empty(C))
                constructed += 1
            for D1, D2 in zip(ramified, ramified[1:]):
                S = add(C, D1, D2)
                assert is_n_torsion(C, 2, S) and not is_n_torsion(C, 3, S)
                constructed += 1

        # the flex (0,1) on y^2 = x^3 + 1 over F_7
        E7 = NsCurve(PrimeField(7), 2, 3, {(0, 0): 1})
        flex = divisor_from_points(E7, [(0, 1)])
        assert is_n_torsion(E7, 3, flex) and not is_n_torsion(E7, 2, flex)
        constructed += 1

        # (#E / n) * P is n-torsion; #E from a character sum
        rng = random.Random(7)
        for C in _elliptic_curves(6, 70):
            order = _elliptic_order(C)
            for n in (2, 3, 5):
                if order % n:
                    continue
                P = divisor_from_points(C, [C.random_point(rng)])
                D = scalar_mul(C, order // n, P)
                assert is_n_torsion(C, n, D)
                assert divisor_equal(scalar_mul(C, n, D), empty(C))
                constructed += 1
        info["random"] = random_cases
        info["constructed"] = constructed


# -- 8 ---------------------------------------------------------------------------------------

def test_criterion_8_worked_chain():
    with criterion(8, "F_7 worked chain", 1.0):
        F = PrimeField(7)
        C = NsCurve(F, 2, 3, {(0, 0): 1})
        d = divisor_from_points(C, [(0, 1), (2, 3)])
        R = interp_function(C, d)
        assert R.coeffs == (6, 6, 1)  # y - x - 1 over F_7
        assert extra_zeros(C, R, d).divisor.points == (Point(6, 0),)
        assert reduce(C, d).points == (Point(6, 0),)
        assert negate(C, divisor_from_points(C, [(0, 1)])).points == (Point(0, 6),)
        assert scalar_mul(C, 3, divisor_from_points(C, [(0, 1)])) == empty(C)


# -- 9 ---------------------------------------------------------------------------------------

CURVE_TEXTS = [
    "p=7\nn=2\ns=3\nc 0 0 1\n",
    "p=7\nn=2\ns=5\nc 0 0 1\n",
    "p=7\nn=2\ns=3\n",
    "p=11\nn=3\ns=4\nc 0 0 1\n",
    "p=13\nn=2\ns=3\nc 1 1 1\nc 0 0 5\n",
    "p=7\next=1,0,1\nn=2\ns=3\nc 0 0 1\n",
]
GARBAGE = ["", "\n", "p=\n", "p=x\nn=2\ns=3\n", "n=2\ns=3\n", "p=7\nn=0\ns=1\n", "p=4\nn=2\ns=3\n",
           "p=7\nn=2\ns=3\nc 9 9 9\n", "p=7\nn=2\ns=4\n", "p=2\nn=3\ns=5\n", "p=7\nn=-2\ns=3\n",
           "p=7\next=1,1\nn=2\ns=3\n", "p=7\next=1,0,0,2\nn=2\ns=3\n", "\x00\xff", "p=7\np=7\n",
           "p=1000000007\nn=2\ns=3\nc 0 0 1\n", "p=7\nn=70\ns=71\n", "p=7\nn=2\ns=3\nc 0 0 1 1\n"]
COMMANDS = ["info", "add", "neg", "reduce", "mul", "torsion", "check", "oracle-check", "bench", "nope"]


def _fuzz_curve(rng):
    """(file text, index into CURVE_TEXTS or None)."""
    if rng.random() < 0.25:
        return rng.choice(GARBAGE), None
    idx = rng.randrange(len(CURVE_TEXTS))
    text = CURVE_TEXTS[idx]
    if rng.random() < 0.2:
        lines = text.splitlines()
        i = rng.randrange(len(lines))
        lines[i] = lines[i][: rng.randrange(len(lines[i]) + 1)] + rng.choice(["", "1", "=", " ", "#"])
        text = "\n".join(lines) + "\n"
        idx = None
    return text, idx


def _curve_points(text):
    C = parse_curve(text)
    F = C.field
    return [f"{F.format(P.x)};{F.format(P.y)}" for P in C.points()]


CURVE_POINTS = [_curve_points(t) for t in CURVE_TEXTS]


def _fuzz_divisor(rng, idx):
    if idx is not None and CURVE_POINTS[idx] and rng.random() < 0.5:
        k = rng.randrange(0, 7)
        return "".join(rng.choice(CURVE_POINTS[idx]) + "\n" for _ in range(k))
    r = rng.random()
    if r < 0.1:
        return rng.choice(["", "x;y\n", "1\n", ";\n", "1;2;3\n", "a,b;c\n", "-1;0\n", "99999999999;1\n",
                           "# ext=1,0,1\n0;1\n", "\x00\n"])
    k = rng.randrange(0, 7)
    pts = []
    for _ in range(k):
        if rng.random() < 0.1:
            pts.append(f"{rng.randrange(7)},{rng.randrange(7)};{rng.randrange(7)}")
        else:
            pts.append(f"{rng.randrange(14)};{rng.randrange(14)}")
    return "\n".join(pts) + "\n"


def _fuzz_argv(rng, paths):
    cmd = rng.choice(COMMANDS)
    argv = [cmd, paths["curve"]]
    if cmd in ("add",):
        argv += [paths["d1"], paths["d2"]]
    elif cmd in ("neg", "reduce"):
        argv += [paths["d1"]]
    elif cmd == "mul":
        argv += [str(rng.choice([0, 1, 2, 3, -1, -5, 10**6, 2**600, rng.randrange(-100, 100)])), paths["d1"]]
        if rng.random() < 0.3:
            argv.append("--direct")
    elif cmd == "torsion":
        argv += [str(rng.choice([0, 1, 2, 3, 5, 2**21, rng.randrange(2, 50)])), paths["d1"]]
    elif cmd in ("check", "oracle-check", "bench"):
        # right after the command so truncation below keeps the run short
        argv[1:1] = ["--trials", str(rng.choice([0, 1, 2, -1, "x"]))]
    if rng.random() < 0.2:
        argv.append("--auto-extend")
    if rng.random() < 0.2:
        argv.append("--json")
    if rng.random() < 0.1:
        argv += ["--seed", str(rng.choice([0, 1, -1, 2**65, "z"]))]
    if rng.random() < 0.05:
        argv.insert(rng.randrange(len(argv) + 1), rng.choice(["--bogus", "", "-", paths["missing"]]))
    if rng.random() < 0.05:
        argv = argv[: rng.randrange(len(argv) + 1)]
    return argv


def _quiet_main(argv):
    sink = io.StringIO()
    with redirect_stdout(sink), redirect_stderr(sink):
        return main(argv)


def test_criterion_9_robustness(tmp_path, capsys):
    with criterion(9, "CLI robustness", 120.0) as info:
        curve = tmp_path / "h.txt"
        curve.write_text("p=7\nn=2\ns=5\nc 0 0 1\n")
        d1, d2 = tmp_path / "d1.txt", tmp_path / "d2.txt"

        # special input: a repeated point is rejected by the single determinant
        d1.write_text("1;3\n1;3\n")
        assert _quiet_main(["mul", str(curve), "2", str(d1), "--direct"]) == 2
        # special input: the cusp of y^2 = x^3
        cusp = tmp_path / "cusp.txt"
        cusp.write_text("p=7\nn=2\ns=3\n")
        d2.write_text("0;0\n0;0\n")
        assert _quiet_main(["reduce", str(cusp), str(d2)]) == 2
        # non-split residual zeros
        d1.write_text("1;4\n5;5\n")
        d2.write_text("5;5\n6;0\n")
        assert _quiet_main(["add", str(curve), str(d1), str(d2)]) == 3
        assert _quiet_main(["add", str(curve), str(d1), str(d2), "--auto-extend"]) == 0

        rng = random.Random(9)
        paths = {"curve": str(curve), "d1": str(d1), "d2": str(d2), "missing": str(tmp_path / "none")}
        codes = {}
        for _ in range(10**4):
            text, idx = _fuzz_curve(rng)
            curve.write_text(text)
            d1.write_text(_fuzz_divisor(rng, idx))
            d2.write_text(_fuzz_divisor(rng, idx))
            argv = _fuzz_argv(rng, paths)
            code = _quiet_main(argv)  # any uncaught exception fails the test
            assert code in (0, 1, 2, 3, 4), (argv, code)
            assert code != 1 or argv[0] in ("check", "oracle-check"), argv
            codes[code] = codes.get(code, 0) + 1
        info["fuzz_codes"] = ",".join(f"{k}:{v}" for k, v in sorted(codes.items()))
        assert codes.get(0, 0) > 100 and codes.get(4, 0) > 100
