"""Command-line front end: invariant computation, verification suites, sweeps."""

from __future__ import annotations

import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import click
import numpy as np

from .closed_forms import sigma0_zw, sigma1_zw
from .errors import InvalidInputError, RadiusGuardError, SingularTargetError
from .invariants import InvariantValue, sigma_gap, sigma_k
from .lifting import lift
from .parsing import parse_blaschke, parse_generators, parse_point
from .serialization import dump_json
from .submodule import build_submodule
from .verification import SUITES, run_suite

EXIT_PARSE = 2
EXIT_GUARD = 3

CSV_HEADER = "a_re,a_im,b_re,b_im,order,value,tail,level"


@dataclass(frozen=True)
class RunConfig:
    level: int = 40
    delta: int = 20
    r_max: float = 0.9
    tolerance: float = 1e-3
    seed: int = 0x5EED
    output: str = "-"
    format: str = "csv"

    def __post_init__(self) -> None:
        if not (0.0 < self.r_max < 1.0):
            raise InvalidInputError("r_max must lie in (0, 1)")
        if self.level < 4:
            raise InvalidInputError("level must be at least 4")
        if self.tolerance <= 0:
            raise InvalidInputError("tolerance must be positive")


def _fmt(x: float) -> str:
    if x == 0.0:
        x = 0.0  # normalize negative zero for byte-stable output
    return f"{x:.17g}"


def _emit(text: str, output: str) -> None:
    if output == "-":
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(output, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")


def _csv_row(v: InvariantValue, order_label: str | None = None) -> str:
    a, b = v.point
    return ",".join([
        _fmt(a.real), _fmt(a.imag), _fmt(b.real), _fmt(b.imag),
        order_label if order_label is not None else str(v.order),
        _fmt(v.value), _fmt(v.tail_estimate), str(v.level),
    ])


def _records_text(records: list[InvariantValue], fmt: str, labels=None) -> str:
    if fmt == "csv":
        lines = [CSV_HEADER]
        for idx, v in enumerate(records):
            lines.append(_csv_row(v, labels[idx] if labels else None))
        return "\n".join(lines) + "\n"
    payload = [
        {
            "point": [[v.point[0].real, v.point[0].imag], [v.point[1].real, v.point[1].imag]],
            "order": labels[idx] if labels else v.order,
            "value": v.value,
            "tail_estimate": v.tail_estimate,
            "level": v.level,
        }
        for idx, v in enumerate(records)
    ]
    return dump_json(payload, None) + "\n"


def common_options(f):
    opts = [
        click.option("--level", type=int, default=40, envvar="BDK_LEVEL",
                     show_default=True, help="truncation level N"),
        click.option("--delta", type=int, default=20, show_default=True,
                     help="level increment for convergence certificates"),
        click.option("--rmax", type=float, default=0.9, show_default=True,
                     help="evaluation radius guard"),
        click.option("--tol", type=float, default=1e-3, show_default=True,
                     help="verification tolerance"),
        click.option("--seed", type=int, default=0x5EED, show_default=True,
                     help="seed for pseudo-random grids"),
        click.option("--jobs", type=int, default=1, show_default=True,
                     help="worker threads for sweeps"),
        click.option("-o", "--output", default="-", show_default=True,
                     help="output path ('-' for stdout)"),
        click.option("--format", "fmt", type=click.Choice(["csv", "json"]),
                     default="csv", show_default=True),
    ]
    for opt in reversed(opts):
        f = opt(f)
    return f


def _config(level, delta, rmax, tol, seed, output, fmt) -> RunConfig:
    return RunConfig(level=level, delta=delta, r_max=rmax, tolerance=tol,
                     seed=seed, output=output, format=fmt)


def _fail(code: int, message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _guarded(fn):
    try:
        return fn()
    except (RadiusGuardError, SingularTargetError) as exc:
        _fail(EXIT_GUARD, str(exc))
    except InvalidInputError as exc:
        _fail(EXIT_PARSE, str(exc))


@click.group()
def main() -> None:
    """Numerical invariants of submodules of the Hardy space over the bidisk."""


@main.command("invariants")
@click.option("-g", "--generators", required=True, help="comma-separated polynomials in z, w")
@click.option("-p", "--point", default="0,0", show_default=True, help="evaluation point a,b")
@click.option("-k", "--orders", default="0,1", show_default=True,
              help="invariant orders (integers and/or 'gap')")
@click.option("--theta", default=None, help="Blaschke spec: lift the module before computing")
@click.option("--phi", default=None, help="Blaschke spec for the w symbol")
@click.option("--oracle", type=click.Choice(["generic", "zw"]), default="generic",
              show_default=True, help="use the closed forms for the difference submodule")
@common_options
def cmd_invariants(generators, point, orders, theta, phi, oracle,
                   level, delta, rmax, tol, seed, jobs, output, fmt) -> None:
    """Compute invariant values for a finitely generated submodule."""
    del jobs

    def run():
        cfg = _config(level, delta, rmax, tol, seed, output, fmt)
        a, b = parse_point(point)
        labels = [o.strip() for o in orders.split(",") if o.strip()]
        if not labels:
            raise InvalidInputError("no orders requested")
        records: list[InvariantValue] = []
        if oracle == "zw":
            for lab in labels:
                if lab == "gap":
                    records.append(InvariantValue(1.0, 0, (a, b), cfg.level, 0.0))
                    continue
                k = _parse_order(lab)
                if k == 0:
                    records.append(sigma0_zw(a, b))
                elif k == 1:
                    records.append(sigma1_zw(a, b))
                else:
                    raise InvalidInputError("the zw oracle provides orders 0 and 1 only")
        else:
            gens = parse_generators(generators)
            M = build_submodule(gens, cfg.level)
            if (theta is None) != (phi is None):
                raise InvalidInputError("--theta and --phi must be given together")
            if theta is not None:
                M = lift(M, parse_blaschke(theta), parse_blaschke(phi), cfg.level).lifted
            for lab in labels:
                if lab == "gap":
                    gap = sigma_gap(M, a, b, delta=cfg.delta or None, r_max=cfg.r_max)
                    records.append(InvariantValue(gap, 0, (a, b), cfg.level, 0.0))
                else:
                    records.append(
                        sigma_k(M, _parse_order(lab), a, b,
                                delta=cfg.delta or None, r_max=cfg.r_max)
                    )
        _emit(_records_text(records, cfg.format, labels), cfg.output)

    _guarded(run)


def _parse_order(text: str) -> int:
    try:
        k = int(text)
    except ValueError as exc:
        raise InvalidInputError(f"bad invariant order {text!r}") from exc
    if k < 0:
        raise InvalidInputError("invariant order must be >= 0")
    return k


@main.command("verify")
@click.argument("suite", type=str)
@common_options
def cmd_verify(suite, level, delta, rmax, tol, seed, jobs, output, fmt) -> None:
    """Run a named verification suite and emit its JSON report."""
    del delta, jobs, fmt

    def run():
        cfg = _config(level, 0 or 20, rmax, tol, seed, output, "json")
        if suite not in SUITES:
            raise InvalidInputError(
                f"unknown suite {suite!r}; choose from {', '.join(SUITES)}"
            )
        report = run_suite(suite, level=cfg.level, tolerance=cfg.tolerance, seed=cfg.seed)
        _emit(dump_json(report, None), cfg.output)
        if not report["pass"]:
            sys.exit(1)

    _guarded(run)


def _parse_grid(spec: str, r_max: float) -> list[complex]:
    """'polar:NR,NA[,RMAX]' -> deterministic polar grid, radius-major order."""
    if not spec.startswith("polar:"):
        raise InvalidInputError(f"unsupported grid spec {spec!r} (use polar:NR,NA[,RMAX])")
    parts = spec[len("polar:"):].split(",")
    if len(parts) not in (2, 3):
        raise InvalidInputError(f"grid spec {spec!r} needs NR,NA[,RMAX]")
    try:
        nr, na = int(parts[0]), int(parts[1])
        rmax = float(parts[2]) if len(parts) == 3 else r_max
    except ValueError as exc:
        raise InvalidInputError(f"bad grid spec {spec!r}") from exc
    if nr < 0 or na <= 0:
        raise InvalidInputError("grid sizes must be positive")
    if rmax > r_max + 1e-12:
        raise RadiusGuardError(f"grid radius {rmax} exceeds the guard {r_max}")
    points = []
    for r in np.linspace(0.0, rmax, nr):
        for t in np.linspace(0.0, 2.0 * np.pi, na, endpoint=False):
            points.append(complex(r * np.cos(t), r * np.sin(t)))
    return points


@main.command("sweep")
@click.option("-g", "--generators", required=True)
@click.option("--grid", "grid_spec", required=True, help="grid for a: polar:NR,NA[,RMAX]")
@click.option("--bgrid", "bgrid_spec", default=None,
              help="grid for b (default: the single point 0)")
@click.option("-k", "--order", default="1", show_default=True,
              help="invariant order or 'gap'")
@click.option("--oracle", type=click.Choice(["generic", "zw"]), default="generic",
              show_default=True)
@common_options
def cmd_sweep(generators, grid_spec, bgrid_spec, order, oracle,
              level, delta, rmax, tol, seed, jobs, output, fmt) -> None:
    """Evaluate an invariant over a grid of points; one CSV row per point."""

    def run():
        cfg = _config(level, delta, rmax, tol, seed, output, fmt)
        a_points = _parse_grid(grid_spec, cfg.r_max)
        b_points = _parse_grid(bgrid_spec, cfg.r_max) if bgrid_spec else [0.0 + 0.0j]
        pairs = [(a, b) for a in a_points for b in b_points]

        if oracle == "zw":
            if order == "gap":
                def work(ab):
                    return InvariantValue(1.0, 0, ab, cfg.level, 0.0)
            else:
                k = _parse_order(order)
                if k == 0:
                    def work(ab):
                        return sigma0_zw(*ab)
                elif k == 1:
                    def work(ab):
                        return sigma1_zw(*ab)
                else:
                    raise InvalidInputError("the zw oracle provides orders 0 and 1 only")
        else:
            M = build_submodule(parse_generators(generators), cfg.level)
            if pairs:
                # materialize the shared wedge caches before threading
                sigma_k(M, 0, 0.0, 0.0)
                sigma_k(M, 1, 0.0, 0.0)
            if order == "gap":
                def work(ab):
                    gap = sigma_gap(M, *ab, r_max=cfg.r_max)
                    return InvariantValue(gap, 0, ab, cfg.level, 0.0)
            else:
                k = _parse_order(order)

                def work(ab):
                    return sigma_k(M, k, *ab, r_max=cfg.r_max)

        if jobs > 1 and pairs:
            with ThreadPoolExecutor(max_workers=jobs) as pool:
                records = list(pool.map(work, pairs))
        else:
            records = [work(ab) for ab in pairs]
        _emit(_records_text(records, cfg.format, [order] * len(records)), cfg.output)

    _guarded(run)


if __name__ == "__main__":  # pragma: no cover
    main()
