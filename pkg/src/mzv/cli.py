"""Command-line frontend: every verification and evaluation as a subcommand
with machine-readable JSON output (human tables behind --pretty).

Exit codes: 0 all requested checks pass, 1 a check failed, 2 usage or
domain errors, 3 internal invariant violations.  Defaults can be supplied
through ASSOCIATOR_* environment variables.
"""

from __future__ import annotations

import functools
import json
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import click

CONTEXT_SETTINGS = {"auto_envvar_prefix": "ASSOCIATOR", "help_option_names": ["-h", "--help"]}

_IDENTITIES = ("dual", "hexagon", "pentagon", "netherland", "czech", "moldova", "kz", "princeton")


def _report(command: str, checks: list[dict], **extra) -> dict:
    status = "pass"
    if any(c["status"] == "fail" for c in checks):
        status = "fail"
    elif checks and all(c["status"] == "exact-zero" for c in checks):
        status = "exact-zero"
    out = {"schema": "mzv-report/1", "command": command, "status": status, "checks": checks}
    out.update(extra)
    return out


def _emit(report: dict, pretty: bool) -> None:
    if pretty:
        click.echo(f"== {report['command']}  [{report['status']}]")
        for c in report["checks"]:
            bits = [f"{c['name']:<40}", c["status"]]
            if c.get("residual") is not None:
                bits.append(f"residual={c['residual']}")
            if c.get("tolerance") is not None:
                bits.append(f"tol={c['tolerance']}")
            if c.get("value") is not None:
                bits.append(f"value={c['value']}")
            click.echo("  " + "  ".join(str(b) for b in bits))
    else:
        click.echo(json.dumps(report, indent=2, default=str))
    if report["status"] == "fail":
        sys.exit(1)


def _internal_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (click.ClickException, click.exceptions.Abort, SystemExit):
            raise
        except (ValueError, ZeroDivisionError, KeyError) as exc:
            raise click.UsageError(str(exc))
        except Exception as exc:  # invariant violation: distinct exit code
            click.echo(json.dumps({"schema": "mzv-report/1", "command": fn.__name__,
                                   "status": "fail", "checks": [],
                                   "error": f"internal: {exc!r}"}), err=False)
            sys.exit(3)

    return wrapper


def _parse_index(text: str) -> tuple[int, ...]:
    try:
        entries = tuple(int(x) for x in text.replace(" ", "").split(","))
    except ValueError:
        raise click.UsageError(f"cannot parse index {text!r}; expected e.g. 1,2")
    if not entries or any(k < 1 for k in entries):
        raise click.UsageError(f"index entries must be positive integers, got {text!r}")
    return entries


def _parse_complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise click.UsageError(f"cannot parse complex number {text!r}")


# ---------------------------------------------------------------- mzv group


@click.group(context_settings=CONTEXT_SETTINGS)
def mzv():
    """Multiple zeta values: numeric evaluation and relation tables."""


@mzv.command("eval")
@click.option("--index", required=True, help="index tuple, e.g. 1,2")
@click.option("--tolerance", default=1e-6, show_default=True)
@click.option("--pretty", is_flag=True)
@_internal_errors
def mzv_eval(index, tolerance, pretty):
    """Evaluate one multiple zeta value with an error bound."""
    from .arch_eval import mzv_numeric

    entries = _parse_index(index)
    value, bound = mzv_numeric(entries, tolerance)
    check = {"name": f"zeta{entries}", "status": "pass", "value": value,
             "residual": bound, "tolerance": tolerance}
    _emit(_report("mzv eval", [check]), pretty)


@mzv.command("relations")
@click.option("--weight", type=int, required=True)
@click.option("--flavor", default="complex", show_default=True,
              type=click.Choice(["complex", "p-adic", "p-adic-Deligne"]))
@click.option("--format", "fmt", default="csv", show_default=True, type=click.Choice(["csv", "json"]))
@click.option("--check-numeric/--no-check-numeric", default=False,
              help="also evaluate every row numerically (complex flavor)")
@click.option("--jobs", type=int, default=1, show_default=True)
@_internal_errors
def mzv_relations(weight, flavor, fmt, check_numeric, jobs):
    """Double-shuffle relation rows and their exact rank reduction."""
    from .shufflealg import generate_double_shuffle, monomial_str, reduce_relations

    rows = generate_double_shuffle(weight, flavor)
    red = reduce_relations(rows, weight)
    failures = 0
    numeric = {}
    if check_numeric:
        from .arch_eval import evaluate_relation_row

        with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
            vals = list(pool.map(evaluate_relation_row, rows))
        for i, v in enumerate(vals):
            numeric[i] = v
            if abs(v) > 1e-5:
                failures += 1
    if fmt == "csv":
        click.echo("row,weight,provenance,monomial,coefficient")
        for i, row in enumerate(rows):
            for mono, c in sorted(row.coeffs.items()):
                click.echo(f"{i},{weight},\"{row.provenance}\",{monomial_str(mono, flavor)},{c}")
    else:
        payload = {
            "schema": "mzv-report/1",
            "command": "mzv relations",
            "status": "fail" if failures else "pass",
            "weight": weight,
            "flavor": flavor,
            "rank": red.rank,
            "dimension_bound": red.dimension_bound,
            "basis": [monomial_str(m, flavor) for m in red.basis],
            "checks": [],
            "rows": [
                {
                    "provenance": row.provenance,
                    "coefficients": {monomial_str(m, flavor): str(c) for m, c in sorted(row.coeffs.items())},
                    **({"numeric_residual": numeric[i], "tolerance": 1e-5} if i in numeric else {}),
                }
                for i, row in enumerate(rows)
            ],
            "expressions": {
                monomial_str(m, flavor): {monomial_str(b, flavor): str(c) for b, c in expr.items()}
                for m, expr in red.expressions.items()
            },
        }
        click.echo(json.dumps(payload, indent=2))
    if failures:
        sys.exit(1)


# ---------------------------------------------------------------- assoc group


@click.group(context_settings=CONTEXT_SETTINGS)
def assoc():
    """Associator-type series: builders and identity verification."""


@assoc.command("build")
@click.option("--flavor", default="padic_KZ", show_default=True,
              type=click.Choice(["complex_KZ", "padic_KZ", "padic_Deligne", "minus_KZ", "symbolic_lambda"]))
@click.option("--weight", type=int, default=4, show_default=True)
@click.option("--p", type=int, default=None)
@_internal_errors
def assoc_build(flavor, weight, p):
    """Build an associator and print its canonical serialization."""
    from .associator import build_associator
    from .serialize import series_to_json

    click.echo(series_to_json(build_associator(flavor, weight, p)), nl=False)


def _verify_identity(identity: str, weight: int, p: int | None, flavor: str, tolerance: float) -> list[dict]:
    from . import associator as asc

    checks: list[dict] = []

    def exact(name, is_zero, detail=None):
        checks.append({"name": name, "status": "exact-zero" if is_zero else "fail",
                       "residual": "0" if is_zero else "nonzero", "tolerance": "exact", "detail": detail})

    def numeric(name, residual):
        checks.append({"name": name, "status": "pass" if residual < tolerance else "fail",
                       "residual": residual, "tolerance": tolerance})

    if identity in ("dual", "hexagon", "pentagon"):
        if flavor == "padic_KZ":
            if weight != 2 or identity != "hexagon":
                raise click.UsageError("the symbolic relations are exposed at weight 2 for the hexagon")
            phi = asc.build_symbolic_associator("p", 2)
            rep = asc.verify_grt_relations(phi, 2, pentagon=False)
            constraint = rep["rel_ii"]["AB"]
            zeta2 = asc.zeta_lambda_expr(phi, (2,))
            forced = (not constraint.is_zero()) and (3 * zeta2 + constraint).is_zero()
            exact("hexagon constraint forces zeta_p(2) = 0", forced,
                  detail=f"{constraint} = 0 with zeta_p[2] = {zeta2}")
            return checks
        phi = asc.build_numeric_kz(weight)
        mu = asc.complex_hexagon_scale() if identity == "hexagon" else None
        rep = asc.verify_grt_relations(phi, weight, hexagon_scale=mu, pentagon=(identity == "pentagon"))
        if identity == "dual":
            residual = max([abs(c) for c in rep["rel_i"].coeffs.values()], default=0.0)
        elif identity == "hexagon":
            residual = max([abs(c) for c in rep["rel_ii"].coeffs.values()], default=0.0)
        else:
            residual = rep["rel_iii"].max_abs()
        numeric(f"{identity} residual at weight {weight}", residual)
        return checks

    if identity == "netherland":
        if p is None:
            raise click.UsageError("--p is required for this identity")
        phi = asc.build_symbolic_associator("p", weight)
        de = asc.solve_deligne(phi, p)
        exact(f"comparison identity at weight {weight}, p={p}",
              asc.comparison_residual(phi, de, Fraction(1, p)).is_zero())
        for k in (2, 3, 4):
            if k <= weight:
                exact(f"depth-1 comparison k={k}", asc.check_deligne_depth1(k, p, weight))
        for a, b in ((1, 2), (2, 2), (1, 3)):
            if a + b <= weight:
                exact(f"depth-2 comparison (a,b)=({a},{b})", asc.check_deligne_depth2(a, b, p, weight))
        return checks

    if identity == "czech":
        if p is None:
            raise click.UsageError("--p is required for this identity")
        coeff_a = asc.rewrite_logs(asc.overconvergent_g0(p, weight)["A"], p)
        exact("letter-A coefficient vanishes after log rewrite", coeff_a.is_zero())
        for k in (1, 2, 3, 4):
            if k <= weight:
                exact(f"depth-1 overconvergent formula k={k}", asc.check_dagger_depth1(k, p, weight))
        if weight >= 3:
            exact("depth-2 overconvergent formula (1,2)", asc.check_dagger_depth2(1, 2, p, weight))
        return checks

    if identity == "moldova":
        coeff_a = asc.single_valued_g0(weight)["A"]
        from .symbols import ARG_Z, ARG_Z_CONJ, LogSym, SymbolPoly

        want = SymbolPoly.gen(LogSym(ARG_Z)) + SymbolPoly.gen(LogSym(ARG_Z_CONJ))
        exact("letter-A coefficient is log z + log zbar", (coeff_a - want).is_zero())
        for k in (1, 2, 3, 4):
            if k <= weight:
                exact(f"depth-1 single-valued formula k={k}", asc.check_sv_depth1(k, weight))
        if weight >= 3:
            exact("depth-2 single-valued formula (1,2)", asc.check_sv_depth2(1, 2, weight))
        return checks

    if identity == "kz":
        from .symbols import ARG_Z

        res = asc.verify_kz_equation(asc.g0_symbolic(ARG_Z, weight))
        exact(f"differential equation residual at weight {weight}", res.is_zero())
        return checks

    if identity == "princeton":
        if p is None:
            raise click.UsageError("--p is required for this identity")
        phi_de = asc.solve_deligne(asc.build_symbolic_associator("p", weight), p)
        res = asc.verify_kz_equation(asc.overconvergent_g0(p, weight), p=p, frobenius_conjugator=phi_de)
        exact(f"modified differential equation residual at weight {weight}, p={p}", res.is_zero())
        return checks

    raise click.UsageError(f"unknown identity {identity!r}")


@assoc.command("verify")
@click.option("--identity", required=True, type=click.Choice(_IDENTITIES))
@click.option("--weight", type=int, default=4, show_default=True)
@click.option("--p", type=int, default=None)
@click.option("--flavor", default="complex_KZ", show_default=True,
              type=click.Choice(["complex_KZ", "padic_KZ"]))
@click.option("--tolerance", default=1e-6, show_default=True)
@click.option("--format", "fmt", default="json", show_default=True, type=click.Choice(["json", "csv"]),
              help="csv emits one line per check (symbolic constraints land in the detail column)")
@click.option("--jobs", type=int, default=1, show_default=True, help="parallelism bound for independent checks")
@click.option("--pretty", is_flag=True)
@_internal_errors
def assoc_verify(identity, weight, p, flavor, tolerance, fmt, jobs, pretty):
    """Verify one defining identity and report residuals."""
    checks = _verify_identity(identity, weight, p, flavor, tolerance)
    if fmt == "csv":
        click.echo("name,status,residual,tolerance,detail")
        for c in checks:
            detail = (c.get("detail") or "").replace('"', "'")
            click.echo(f"\"{c['name']}\",{c['status']},{c.get('residual')},{c.get('tolerance')},\"{detail}\"")
        if any(c["status"] == "fail" for c in checks):
            sys.exit(1)
        return
    _emit(_report(f"assoc verify --identity {identity}", checks,
                  truncation=weight, prime=p, flavor=flavor), pretty)


# ---------------------------------------------------------------- padic group


@click.group(context_settings=CONTEXT_SETTINGS)
def padic():
    """p-adic polylogarithm evaluation on the open unit disk."""


@padic.command("polylog")
@click.option("--p", type=int, required=True)
@click.option("--k", type=int, required=True)
@click.option("--z", required=True, help="rational point, e.g. 5/7")
@click.option("--prec", type=int, default=30, show_default=True)
@click.option("--dagger", is_flag=True, help="sum only over n prime to p")
@click.option("--pretty", is_flag=True)
@_internal_errors
def padic_polylog_cmd(p, k, z, prec, dagger, pretty):
    """Evaluate Li_k (or its prime-to-p variant) at a rational disk point."""
    from .padic_eval import OutsideDiskError, padic_li_dagger, padic_polylog
    from .padics import PadicNumber

    try:
        zq = Fraction(z)
    except ValueError:
        raise click.UsageError(f"cannot parse rational {z!r}")
    zp = PadicNumber.from_rational(zq, p, prec)
    try:
        val = padic_li_dagger(k, zp) if dagger else padic_polylog(k, zp)
    except OutsideDiskError as exc:
        raise click.UsageError(str(exc))
    name = f"Li{'_dagger' if dagger else ''}[{k}]({z})"
    check = {"name": name, "status": "pass", "value": str(val),
             "tolerance": f"O({p}^{val.aprec})", "detail": f"absolute precision {val.aprec}"}
    _emit(_report("padic polylog", [check], prime=p), pretty)


@padic.command("verify-spain")
@click.option("--primes", default="3,5,7", show_default=True)
@click.option("--kmax", type=int, default=4, show_default=True)
@click.option("--points", type=int, default=20, show_default=True)
@click.option("--prec", type=int, default=30, show_default=True)
@click.option("--digits", type=int, default=20, show_default=True, help="required agreement digits")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--jobs", type=int, default=1, show_default=True)
@click.option("--pretty", is_flag=True)
@_internal_errors
def padic_verify_spain(primes, kmax, points, prec, digits, seed, jobs, pretty):
    """Check the depth-1 overconvergent identity numerically on random points."""
    from .padic_eval import padic_li_dagger, padic_polylog
    from .padics import PadicNumber

    rng = random.Random(seed)
    tasks = []
    for p in (int(x) for x in primes.split(",")):
        for k in range(1, kmax + 1):
            for _ in range(points):
                num = p * rng.randint(1, 50)
                den = rng.choice([d for d in range(1, 60) if d % p])
                tasks.append((p, k, Fraction(num, den)))

    def run(task):
        p, k, zq = task
        z = PadicNumber.from_rational(zq, p, prec)
        lhs = padic_li_dagger(k, z)
        rhs = padic_polylog(k, z) - padic_polylog(k, z**p) / Fraction(p) ** k
        diff = lhs - rhs
        ok = diff.is_zero() or diff.valuation() >= digits
        return {"name": f"p={p} k={k} z={zq}", "status": "pass" if ok else "fail",
                "residual": str(diff), "tolerance": f"agreement to {digits} digits"}

    with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
        checks = list(pool.map(run, tasks))
    _emit(_report("padic verify-spain", checks), pretty)


# ---------------------------------------------------------------- sv group


@click.group(context_settings=CONTEXT_SETTINGS)
def sv():
    """Single-valued polylogarithm combinations on the punctured disk."""


@sv.command("polylog")
@click.option("--k", type=int, required=True)
@click.option("--z", required=True, help="complex point, e.g. 0.3+0.2i")
@click.option("--tolerance", default=1e-9, show_default=True)
@click.option("--zagier", is_flag=True, help="also print the Bernoulli-weighted projection")
@click.option("--pretty", is_flag=True)
@_internal_errors
def sv_polylog_cmd(k, z, tolerance, zagier, pretty):
    """Evaluate the single-valued polylogarithm at a disk point."""
    from .arch_eval import sv_polylog, zagier_p

    zc = _parse_complex(z)
    try:
        val = sv_polylog(k, zc)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    checks = [{"name": f"Li_minus[{k}]({z})", "status": "pass",
               "value": f"{val.real!r}{val.imag:+}j", "tolerance": tolerance}]
    if zagier:
        checks.append({"name": f"P[{k}]({z})", "status": "pass",
                       "value": zagier_p(k, zc), "tolerance": tolerance})
    _emit(_report("sv polylog", checks), pretty)


# ---------------------------------------------------------------- series group


@click.group(context_settings=CONTEXT_SETTINGS)
def series():
    """Canonical series serialization."""


@series.command("dump")
@click.option("--flavor", default="padic_KZ", show_default=True,
              type=click.Choice(["complex_KZ", "padic_KZ", "padic_Deligne", "minus_KZ", "symbolic_lambda"]))
@click.option("--weight", type=int, default=4, show_default=True)
@click.option("--p", type=int, default=None)
@_internal_errors
def series_dump(flavor, weight, p):
    """Serialize a built series to canonical JSON on stdout."""
    from .associator import build_associator
    from .serialize import series_to_json

    click.echo(series_to_json(build_associator(flavor, weight, p)), nl=False)


@series.command("parse")
@click.argument("source", type=click.File("r"), default="-")
@_internal_errors
def series_parse(source):
    """Parse canonical JSON from stdin (or a file) and re-emit it canonically."""
    from .serialize import series_from_json, series_to_json

    click.echo(series_to_json(series_from_json(source.read())), nl=False)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(mzv())
