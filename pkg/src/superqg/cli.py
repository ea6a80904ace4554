"""Command-line front end.

``superqg run`` executes verification suites for one datum and writes a JSON
report; the remaining command groups expose single operations.
"""

from __future__ import annotations

import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import click
from flint import fmpz_poly

from . import __version__
from .freealg import AlgElement, parse_word
from .grading import STANDARD, TWISTED
from .gtensor import GradedMatrix
from .pairing import PairingSpec, pair, verify_convolution
from .presentations import crosscheck, extract_rll, omega_duality, table_check, twist_equivalence
from .qfield import QRat
from .rmatrix import QQ, check_structure, serre_check
from .rootdata import RootDatum, build_datum
from .rootvectors import (
    DatumContext,
    correspondence_check,
    gram_check,
    iter_simple_pairings,
    verify_ru_factorization,
)

SCHEMA = "superqg-report/1"
SUITES = (
    "structure",
    "relations",
    "twist",
    "cross",
    "convolution",
    "duality",
    "tables",
    "gram",
    "factorize",
    "correspondence",
)


@dataclass(frozen=True)
class RunConfig:
    mode: str
    parity: str
    theta: str | None
    suites: tuple[str, ...]
    height: int = 4
    degree: tuple[int, ...] | None = None
    out: str | None = None
    parallel: int = 1
    cache: str | None = None

    def datum(self) -> RootDatum:
        return build_datum(self.mode, self.parity, self.theta)


# suites


def _anchor_rows(ctx: DatumContext) -> list[dict]:
    target = QQ.inverse()
    rows = []
    for label, v, vt in iter_simple_pairings(ctx):
        rows.append({"name": f"anchor[{label}]", "status": "pass" if v == target else "fail", "value": str(v)})
        rows.append({"name": f"anchor_tilde[{label}]", "status": "pass" if vt == -target else "fail", "value": str(vt)})
    return rows


def _convolution(ctx: DatumContext) -> list[dict]:
    return verify_convolution(ctx.sigma_R, ctx.sigma_tilde, 2)


def _tables(ctx: DatumContext) -> list[dict]:
    rows = table_check(ctx.datum, ctx.model, mixed=ctx.datum.mode == "gl")
    for r in rows:
        r["name"] = f"{r.pop('table')}/{r.pop('row_id')}"
    return rows


SuiteFn = Callable[[DatumContext, "RunConfig"], list]

_SUITE_FNS: dict[str, SuiteFn] = {
    "structure": lambda c, cfg: check_structure(c.bundle, c.rep),
    "relations": lambda c, cfg: serre_check(c.rep),
    "twist": lambda c, cfg: twist_equivalence(c.bundle, c.alphabet),
    "cross": lambda c, cfg: crosscheck(c.bundle, c.sigma_R),
    "convolution": lambda c, cfg: _convolution(c),
    "duality": lambda c, cfg: omega_duality(c.bundle, c.alphabet),
    "tables": lambda c, cfg: _tables(c),
    "gram": lambda c, cfg: gram_check(c, cfg.height, cfg.degree),
    "factorize": lambda c, cfg: verify_ru_factorization(c),
    "correspondence": lambda c, cfg: correspondence_check(c) + _anchor_rows(c),
}


def _run_suite(name: str, cfg: RunConfig, ctx: DatumContext | None = None) -> dict:
    ctx = ctx or DatumContext(cfg.datum())
    t0 = time.perf_counter()
    entries = _SUITE_FNS[name](ctx, cfg)
    return {"suite": name, "entries": entries, "elapsed": round(time.perf_counter() - t0, 3)}


def _worker(args: tuple[str, RunConfig]) -> dict:
    name, cfg = args
    ctx = DatumContext(cfg.datum())
    if cfg.cache:
        load_cache(ctx, cfg)
    return _run_suite(name, cfg, ctx)


# pairing memo cache


def _poly(p: fmpz_poly) -> list[int]:
    return [int(c) for c in p.coeffs()]


def _qrat_to_json(x: QRat) -> list[list[int]]:
    return [_poly(x.num), _poly(x.den)]


def _qrat_from_json(v: list[list[int]]) -> QRat:
    return QRat(fmpz_poly(v[0]), fmpz_poly(v[1]))


def _word_str(w) -> str:
    return " ".join(repr(x).replace(" ", "") for x in w)


def _cache_key(cfg: RunConfig) -> str:
    return f"{cfg.mode}|{cfg.parity}|{cfg.theta or ''}|{__version__}"


def _specs(ctx: DatumContext) -> dict[str, PairingSpec]:
    return {"sigmaR": ctx.sigma_R, "sigmaTildeR": ctx.sigma_tilde, "dj": ctx.sigma_dj}


def load_cache(ctx: DatumContext, cfg: RunConfig) -> int:
    path = Path(cfg.cache)
    if not path.exists():
        return 0
    data = json.loads(path.read_text())
    block = data.get(_cache_key(cfg))
    if not block:
        return 0
    A = ctx.alphabet
    n = 0
    for name, spec in _specs(ctx).items():
        for a, b, v in block.get(name, ()):
            spec.memo[(parse_word(A, a), parse_word(A, b))] = _qrat_from_json(v)
            n += 1
    return n


def save_cache(ctx: DatumContext, cfg: RunConfig) -> None:
    path = Path(cfg.cache)
    data = json.loads(path.read_text()) if path.exists() else {}
    block = {}
    for name, spec in _specs(ctx).items():
        items = [[_word_str(a), _word_str(b), _qrat_to_json(v)] for (a, b), v in spec.memo.items()]
        block[name] = sorted(items, key=lambda t: (t[0], t[1]))
    data[_cache_key(cfg)] = block
    path.write_text(json.dumps(data, sort_keys=True))


# run


def run(cfg: RunConfig) -> tuple[dict, int]:
    """Execute the configured suites; return the report and the exit code."""
    d = cfg.datum()
    order = [s for s in SUITES if s in cfg.suites]
    t0 = time.perf_counter()
    if cfg.parallel > 1 and len(order) > 1:
        with ProcessPoolExecutor(max_workers=cfg.parallel) as pool:
            results = list(pool.map(_worker, [(s, cfg) for s in order]))
    else:
        ctx = DatumContext(d)
        if cfg.cache:
            load_cache(ctx, cfg)
        results = [_run_suite(s, cfg, ctx) for s in order]
        if cfg.cache:
            save_cache(ctx, cfg)
    counts = {"pass": 0, "fail": 0, "skipped": 0}
    for res in results:
        for e in res["entries"]:
            counts[e["status"]] = counts.get(e["status"], 0) + 1
    datum = d.describe() | {"N": d.N}
    if d.mode == "osp":
        datum["s"] = d.s
    report = {
        "schema": SCHEMA,
        "tool_version": __version__,
        "datum": datum,
        "config": {"suites": order, "height": cfg.height, "degree": list(cfg.degree) if cfg.degree else None},
        "suites": results,
        "summary": counts,
        "elapsed": round(time.perf_counter() - t0, 3),
    }
    return report, 1 if counts["fail"] else 0


def _summary_lines(report: dict) -> list[str]:
    lines = []
    for res in report["suites"]:
        st = [e["status"] for e in res["entries"]]
        lines.append(
            f"{res['suite']:<15} pass {st.count('pass'):>4}  fail {st.count('fail'):>3}  "
            f"skipped {st.count('skipped'):>3}  {res['elapsed']:.2f}s"
        )
        for e in res["entries"]:
            if e["status"] == "fail":
                w = f"  ({e['witness']})" if "witness" in e else ""
                lines.append(f"    FAIL {e['name']}{w}")
    return lines


# click plumbing


def _datum_options(f):
    f = click.option("--theta", default=None, help="osp sign sequence over '+'/'-'.")(f)
    f = click.option("--parity", required=True, help="Parity sequence over '0'/'1'.")(f)
    f = click.option("--mode", "--type", "mode", type=click.Choice(["gl", "osp"]), required=True)(f)
    return f


def _make_datum(mode: str, parity: str, theta: str | None) -> RootDatum:
    try:
        return build_datum(mode, parity, theta)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc


def _parse_suites(text: str) -> tuple[str, ...]:
    names = [s.strip() for s in text.split(",") if s.strip()]
    if not names:
        raise click.BadParameter("at least one suite is required", param_hint="--suites")
    if "all" in names:
        return SUITES
    bad = [s for s in names if s not in SUITES]
    if bad:
        raise click.BadParameter(f"unknown suite(s) {', '.join(bad)}; choose from all, {', '.join(SUITES)}", param_hint="--suites")
    return tuple(names)


def _parse_degree(text: str | None) -> tuple[int, ...] | None:
    if text is None:
        return None
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise click.BadParameter("degree must be comma-separated integers", param_hint="--degree") from exc


def _emit(obj, out: str | None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=False)
    if out:
        Path(out).write_text(text + "\n")
    else:
        click.echo(text)


@click.group()
@click.version_option(__version__, prog_name="superqg")
def main() -> None:
    """Exact R-matrix and RTT presentation checks for gl and osp quantum supergroups."""


@main.command("run")
@_datum_options
@click.option("--suites", default="all", show_default=True, help="Comma-separated suite names or 'all'.")
@click.option("--height", default=4, show_default=True, type=click.IntRange(min=0), help="PBW height bound.")
@click.option("--degree", default=None, help="Restrict Gram checks to one weight, e.g. '1,0,-1'.")
@click.option("--out", default=None, type=click.Path(dir_okay=False), help="JSON report path.")
@click.option("--parallel", default=1, show_default=True, type=click.IntRange(min=1), help="Worker processes.")
@click.option("--cache", default=None, type=click.Path(dir_okay=False), help="Pairing memo cache file.")
def run_cmd(mode, parity, theta, suites, height, degree, out, parallel, cache) -> None:
    """Run verification suites and write a JSON report."""
    _make_datum(mode, parity, theta)
    cfg = RunConfig(mode, parity, theta, _parse_suites(suites), height, _parse_degree(degree), out, parallel, cache)
    report, code = run(cfg)
    if out:
        _emit(report, out)
    for line in _summary_lines(report):
        click.echo(line)
    s = report["summary"]
    click.echo(f"total: {s['pass']} pass, {s['fail']} fail, {s['skipped']} skipped")
    sys.exit(code)


@main.group()
def rmatrix() -> None:
    """Evaluated R-matrix."""


@rmatrix.command("build")
@_datum_options
@click.option("--which", type=click.Choice(["R", "R_inv", "R_s", "R_u"]), default="R", show_default=True)
@click.option("--out", default=None, type=click.Path(dir_okay=False))
def rmatrix_build(mode, parity, theta, which, out) -> None:
    """Print the nonzero entries of an R-matrix as JSON."""
    ctx = DatumContext(_make_datum(mode, parity, theta))
    M: GradedMatrix = getattr(ctx.bundle, which)
    entries = [{"row": list(r), "col": list(c), "value": str(v)} for (r, c), v in sorted(M.entries.items())]
    _emit({"datum": ctx.datum.describe(), "matrix": which, "entries": entries}, out)


@rmatrix.command("check")
@_datum_options
def rmatrix_check(mode, parity, theta) -> None:
    """Structural identities of R in the defining representation."""
    ctx = DatumContext(_make_datum(mode, parity, theta))
    rows = check_structure(ctx.bundle, ctx.rep)
    _emit(rows, None)
    sys.exit(1 if any(r["status"] == "fail" for r in rows) else 0)


@main.group()
def pairing() -> None:
    """Skew pairings on words."""


@pairing.command("eval")
@_datum_options
@click.option("--spec", "spec_name", type=click.Choice(["sigmaR", "sigmaTildeR", "dj"]), required=True)
@click.option("--left", required=True, help="Left word, e.g. 'l+11^-1 l+12'.")
@click.option("--right", required=True, help="Right word.")
def pairing_eval(mode, parity, theta, spec_name, left, right) -> None:
    """Evaluate a pairing on two words."""
    ctx = DatumContext(_make_datum(mode, parity, theta))
    spec = _specs(ctx)[spec_name]
    try:
        a = AlgElement.word(parse_word(ctx.alphabet, left))
        b = AlgElement.word(parse_word(ctx.alphabet, right))
        val = pair(spec, a, b)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    click.echo(str(val))


@main.group()
def present() -> None:
    """RLL presentations and identity tables."""


@present.command("extract")
@_datum_options
@click.option("--signs", type=click.Choice(["++", "--", "+-"]), default="++", show_default=True)
@click.option("--braiding", type=click.Choice(["standard", "twisted"]), default="standard", show_default=True)
@click.option("--out", default=None, type=click.Path(dir_okay=False))
def present_extract(mode, parity, theta, signs, braiding, out) -> None:
    """Nonzero RLL relations, one per matrix component."""
    ctx = DatumContext(_make_datum(mode, parity, theta))
    rs = extract_rll(ctx.bundle, tuple(signs), STANDARD if braiding == "standard" else TWISTED, ctx.alphabet)
    rel = [{"component": list(k), "relation": repr(v)} for k, v in sorted(rs.relations.items())]
    _emit({"signs": signs, "braiding": braiding, "relations": rel}, out)


@present.command("twistcheck")
@_datum_options
def present_twist(mode, parity, theta) -> None:
    """Compare twisted and standard RLL relations."""
    ctx = DatumContext(_make_datum(mode, parity, theta))
    rows = twist_equivalence(ctx.bundle, ctx.alphabet)
    _emit(rows, None)
    sys.exit(1 if any(r["status"] == "fail" for r in rows) else 0)


@present.command("crosscheck")
@_datum_options
def present_cross(mode, parity, theta) -> None:
    """Compare pairing-derived cross relations with mixed RLL."""
    ctx = DatumContext(_make_datum(mode, parity, theta))
    rows = crosscheck(ctx.bundle, ctx.sigma_R)
    _emit(rows, None)
    sys.exit(1 if any(r["status"] == "fail" for r in rows) else 0)


@present.command("tables")
@_datum_options
@click.option("--side", type=click.Choice(["e", "f", "both"]), default="both", show_default=True)
@click.option("--mixed/--no-mixed", default=False, help="Include the gl mixed e/f commutator row.")
def present_tables(mode, parity, theta, side, mixed) -> None:
    """Check the root-vector identity tables."""
    ctx = DatumContext(_make_datum(mode, parity, theta))
    sides = ("e", "f") if side == "both" else (side,)
    rows = table_check(ctx.datum, ctx.model, sides, mixed)
    _emit(rows, None)
    sys.exit(1 if any(r["status"] == "fail" for r in rows) else 0)


@main.group()
def roots() -> None:
    """Root vectors, PBW Gram matrices and factorization."""


@roots.command("gram")
@_datum_options
@click.option("--height", default=4, show_default=True, type=click.IntRange(min=0))
@click.option("--degree", default=None)
@click.option("--long-roots", type=click.Choice(["gauss", "bracket"]), default="gauss", show_default=True,
              help="Root vectors used for C/D long roots.")
def roots_gram(mode, parity, theta, height, degree, long_roots) -> None:
    """Brute-force PBW Gram matrices against the closed form."""
    ctx = DatumContext(_make_datum(mode, parity, theta))
    rows = gram_check(ctx, height, _parse_degree(degree), long_roots=long_roots)
    _emit(rows, None)
    sys.exit(1 if any(r["status"] == "fail" for r in rows) else 0)


@roots.command("factorize")
@_datum_options
def roots_factorize(mode, parity, theta) -> None:
    """Rebuild R_u from local q-exponentials."""
    ctx = DatumContext(_make_datum(mode, parity, theta))
    rows = verify_ru_factorization(ctx)
    _emit(rows, None)
    sys.exit(1 if any(r["status"] == "fail" for r in rows) else 0)


@roots.command("correspondence")
@_datum_options
def roots_correspondence(mode, parity, theta) -> None:
    """Simple-root images and anchor pairing values."""
    ctx = DatumContext(_make_datum(mode, parity, theta))
    rows = correspondence_check(ctx) + _anchor_rows(ctx)
    _emit(rows, None)
    sys.exit(1 if any(r["status"] == "fail" for r in rows) else 0)


if __name__ == "__main__":  # pragma: no cover
    main()
