"""Command line interface.

Exit codes: 0 success, 1 property-check failure, 2 special divisor (or a
singular point), 3 residual zeros not split over the field, 4 invalid input.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import checks, oracle
from .curve import NsCurve, SingularPoint, parse_curve
from .divisor import Divisor, embed_divisor, format_divisor, parse_divisor
from .field import field_new
from .jacobian import (NonSplitResult, SpecialDivisor, add, direct_multiple, negate,
                       reduce, scalar_mul, torsion_test)
from .poly import irreducible_of_degree

EXIT_OK, EXIT_CHECK, EXIT_SPECIAL, EXIT_NONSPLIT, EXIT_INPUT = 0, 1, 2, 3, 4
MAX_POINTS = 512
MAX_SCALAR_BITS = 512
MAX_EXTENSION = 64
# the randomized suites need split classes, which get rare as the genus grows
MAX_SUITE_GENUS = 16


class InputError(ValueError):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None


def load_curve(path: str) -> NsCurve:
    return parse_curve(_read(path))


def load_divisor(curve: NsCurve, path: str) -> Divisor:
    text = _read(path)
    if sum(1 for line in text.splitlines() if line.split("#", 1)[0].strip()) > MAX_POINTS:
        raise InputError(f"divisor has more than {MAX_POINTS} points")
    return parse_divisor(curve, text)


def _extended(curve: NsCurve, degree: int) -> NsCurve:
    base = curve.field
    ext = irreducible_of_degree(base, degree)
    return curve.extend(field_new(base.p, ext.coeffs))


def run_extending(curve: NsCurve, divisors: list[Divisor], fn, auto_extend: bool):
    """Run ``fn(curve, *divisors)``; on a non-split result optionally move to F_{p^d}."""
    if auto_extend and not curve.field.is_prime_field:
        raise InputError("--auto-extend needs a curve over a prime field")
    work, args, degree = curve, divisors, 1
    while True:
        try:
            return work, fn(work, *args)
        except NonSplitResult as exc:
            if not auto_extend:
                raise
            degree *= exc.extension_degree
            if degree > MAX_EXTENSION or exc.extension_degree == 1:
                raise
            work = _extended(curve, degree)
            args = [embed_divisor(D, work) for D in divisors]


def _field_header(field) -> str:
    if field.is_prime_field:
        return ""
    return "# ext=" + ",".join(str(c) for c in field.modulus) + "\n"


def _json_divisor(D: Divisor) -> dict:
    F = D.field
    return {"p": F.p, "ext": None if F.is_prime_field else ",".join(map(str, F.modulus)),
            "degree": D.degree, "points": [f"{F.format(p.x)};{F.format(p.y)}" for p in D.points]}


def emit_divisor(D: Divisor, as_json: bool, command: str) -> None:
    if as_json:
        click.echo(json.dumps({"command": command, **_json_divisor(D)}))
    else:
        click.echo(_field_header(D.field) + format_divisor(D), nl=False)


def common(fn):
    fn = click.option("--json", "as_json", is_flag=True, help="Machine-readable output.")(fn)
    fn = click.option("--auto-extend", is_flag=True,
                      help="Retry over F_{p^d} when residual zeros do not split.")(fn)
    fn = click.option("--seed", type=click.IntRange(0, 2**64 - 1), default=0, show_default=True)(fn)
    return fn


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
def cli():
    """Jacobian arithmetic on (n,s) curves y^n = x^s + p(x,y) over finite fields."""


@cli.command()
@click.argument("curve_file")
@common
def info(curve_file, seed, auto_extend, as_json):
    """Genus, gap sequence and the first 2g+1 basis monomials."""
    C = load_curve(curve_file)
    g = C.genus
    basis = C.basis_prefix(2 * g + 1)
    names = []
    for m in basis:
        parts = [f"x^{m.i}" if m.i > 1 else "x" * m.i, f"y^{m.j}" if m.j > 1 else "y" * m.j]
        names.append("*".join(p for p in parts if p) or "1")
    data = {"n": C.n, "s": C.s, "p": C.field.p, "field_size": C.field.order, "genus": g,
            "gaps": C.gap_sequence(),
            "basis": [{"monomial": nm, "pole_order": m.pole_order} for nm, m in zip(names, basis)]}
    if as_json:
        click.echo(json.dumps(data))
    else:
        click.echo(f"n={C.n} s={C.s} p={C.field.p} field_size={C.field.order}")
        click.echo(f"genus={g}")
        click.echo("gaps=" + ",".join(map(str, data["gaps"])))
        click.echo("basis=" + " ".join(f"{nm}:{m.pole_order}" for nm, m in zip(names, basis)))
    return EXIT_OK


def _op(command, curve_file, divisor_files, fn, auto_extend, as_json):
    C = load_curve(curve_file)
    divs = [load_divisor(C, f) for f in divisor_files]
    _, result = run_extending(C, divs, fn, auto_extend)
    emit_divisor(result, as_json, command)
    return EXIT_OK


@cli.command("add")
@click.argument("curve_file")
@click.argument("d1")
@click.argument("d2")
@common
def add_cmd(curve_file, d1, d2, seed, auto_extend, as_json):
    """Reduced representative of [D1] + [D2]."""
    return _op("add", curve_file, [d1, d2], add, auto_extend, as_json)


@cli.command("neg")
@click.argument("curve_file")
@click.argument("d")
@common
def neg_cmd(curve_file, d, seed, auto_extend, as_json):
    """Reduced representative of -[D]."""
    return _op("neg", curve_file, [d], negate, auto_extend, as_json)


@cli.command("reduce")
@click.argument("curve_file")
@click.argument("d")
@common
def reduce_cmd(curve_file, d, seed, auto_extend, as_json):
    """Reduced representative of [D]."""
    return _op("reduce", curve_file, [d], reduce, auto_extend, as_json)


@cli.command("mul")
@click.argument("curve_file")
@click.argument("k", type=int)
@click.argument("d")
@click.option("--direct", is_flag=True, help="Use the single confluent determinant (k >= 2).")
@common
def mul_cmd(curve_file, k, d, direct, seed, auto_extend, as_json):
    """Reduced representative of k*[D]."""
    if abs(k).bit_length() > MAX_SCALAR_BITS:
        raise InputError(f"|k| must be below 2^{MAX_SCALAR_BITS}")
    if direct:
        if k < 2 or k > 64:
            raise InputError("--direct needs 2 <= k <= 64")
        fn = lambda C, D: direct_multiple(C, k, D)
    else:
        fn = lambda C, D: scalar_mul(C, k, D)
    return _op("mul", curve_file, [d], fn, auto_extend, as_json)


@cli.command("torsion")
@click.argument("curve_file")
@click.argument("n", type=int)
@click.argument("d")
@common
def torsion_cmd(curve_file, n, d, seed, auto_extend, as_json):
    """Print whether n*[D] = 0."""
    if not 2 <= n <= 1 << 20:
        raise InputError("n must satisfy 2 <= n <= 2^20")
    C = load_curve(curve_file)
    D = load_divisor(C, d)
    _, res = run_extending(C, [D], lambda C, D: torsion_test(C, n, D), auto_extend)
    if as_json:
        click.echo(json.dumps({"command": "torsion", "n": n, "torsion": res.value, "path": res.path}))
    else:
        click.echo("true" if res.value else "false")
    return EXIT_OK


def load_suite_curve(path: str) -> NsCurve:
    C = load_curve(path)
    if C.genus > MAX_SUITE_GENUS:
        raise InputError(f"randomized suites support genus <= {MAX_SUITE_GENUS}, got {C.genus}")
    return C


def _report(results, as_json: bool, extra: dict) -> int:
    ok = all(r.ok for r in results)
    inconclusive = [r.name for r in results if r.exhausted]
    if as_json:
        click.echo(json.dumps({**extra, "ok": ok, "inconclusive": inconclusive, "suites": [
            {"name": r.name, "passed": r.passed, "failed": r.failed, "resampled": r.resampled,
             "exhausted": r.exhausted, "seconds": round(r.seconds, 4),
             **{k: str(v) for k, v in r.notes.items()}}
            for r in results]}))
    else:
        for k, v in extra.items():
            click.echo(f"{k}: {v}")
        for r in results:
            click.echo(r.line())
        if not ok:
            click.echo("FAILURES")
        elif inconclusive:
            click.echo("no failures; ran out of samples in: " + ", ".join(inconclusive))
        else:
            click.echo("all suites passed")
    return EXIT_OK if ok else EXIT_CHECK


@cli.command("check")
@click.argument("curve_file")
@click.option("--trials", type=click.IntRange(0, 10**6), default=50, show_default=True)
@common
def check_cmd(curve_file, trials, seed, auto_extend, as_json):
    """Run the group-law, oracle, multiplication and torsion suites."""
    C = load_suite_curve(curve_file)
    work = checks.working_curve(C)
    results = checks.run_check(C, trials, seed)
    return _report(results, as_json, {"working_field": repr(work.field), "trials": trials})


@cli.command("oracle-check")
@click.argument("curve_file")
@click.option("--trials", type=click.IntRange(0, 10**6), default=50, show_default=True)
@common
def oracle_check_cmd(curve_file, trials, seed, auto_extend, as_json):
    """Compare against chord-tangent (genus 1) or Cantor (y^2 = f(x))."""
    C = load_suite_curve(curve_file)
    if C.n != 2 or C.s % 2 == 0 or (C.genus > 1 and any(j for (_, j) in C.tail)):
        raise InputError("oracle-check needs a hyperelliptic curve y^2 = f(x) with deg f odd")
    if C.genus == 1:
        results = checks.elliptic_oracle(C, trials, seed)
    else:
        results = checks.cantor_oracle(C, trials, seed)
    return _report(results, as_json, {"trials": trials})


@cli.command("bench")
@click.argument("curve_file")
@click.option("--trials", type=click.IntRange(0, 10**5), default=20, show_default=True)
@common
def bench_cmd(curve_file, trials, seed, auto_extend, as_json):
    """Median and 95th percentile time per operation."""
    C = load_suite_curve(curve_file)
    rows = checks.run_bench(C, trials, seed)
    if as_json:
        click.echo(json.dumps({"rows": rows}))
    else:
        click.echo(f"{'operation':<20}{'trials':>8}{'median_s':>12}{'p95_s':>12}")
        for r in rows:
            click.echo(f"{r['operation']:<20}{r['trials']:>8}{r['median_s']:>12.5f}{r['p95_s']:>12.5f}")
    return EXIT_OK


def main(argv=None) -> int:
    """Entry point: maps library errors onto the documented exit codes."""
    try:
        code = cli.main(args=argv, prog_name="nsjac", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.exceptions.Abort:
        click.echo("aborted", err=True)
        return EXIT_INPUT
    except click.ClickException as exc:
        exc.show()
        return EXIT_INPUT
    except (SpecialDivisor, SingularPoint) as exc:
        click.echo(f"special divisor: {exc}", err=True)
        return EXIT_SPECIAL
    except NonSplitResult as exc:
        click.echo(f"not split: {exc} (extension degree {exc.extension_degree})", err=True)
        return EXIT_NONSPLIT
    except (ValueError, oracle.NotSemiReduced) as exc:
        click.echo(f"invalid input: {type(exc).__name__}: {exc}", err=True)
        return EXIT_INPUT
    return code if isinstance(code, int) else EXIT_OK


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
