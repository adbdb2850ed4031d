"""``xicheck`` command line: check one identity, sweep a grid, list the registry."""

from __future__ import annotations

import sys
from typing import Dict, List, Optional

import click

from .errors import ContractError
from .harness import REGISTRY, IdentityId, emit, run_check, sweep
from .numeric import PrecisionContext

IDENTITY_CHOICE = click.Choice([i.value for i in IdentityId])
OUT_CHOICE = click.Choice(["json", "csv"])


def _context(tol: float, digits: int, tmax: Optional[float]) -> PrecisionContext:
    try:
        return PrecisionContext(target_rel_tol=min(1e-10, tol), identity_tol=tol, tmax=tmax, digits=digits)
    except ContractError as exc:
        raise click.UsageError(str(exc)) from exc


def _write(reports, out: str) -> None:
    stream = click.get_binary_stream("stdout")
    stream.write(emit(reports, out))
    stream.flush()


def _parse_value(key: str, text: str):
    text = text.strip()
    if key == "k":
        return int(text)
    try:
        return float(text)
    except ValueError:
        return complex(text.replace("i", "j").replace(" ", ""))


def parse_grid(text: str) -> Dict[str, List]:
    """Parse ``"z=2.5,4;alpha=0.5,2"`` into ``{"z": [2.5, 4.0], "alpha": [0.5, 2.0]}``."""
    grid: Dict[str, List] = {}
    for part in filter(None, (p.strip() for p in text.split(";"))):
        if "=" not in part:
            raise click.UsageError(f"grid entry {part!r} is not key=v1,v2,...")
        key, values = (s.strip() for s in part.split("=", 1))
        try:
            grid[key] = [_parse_value(key, v) for v in values.split(",") if v.strip()]
        except ValueError as exc:
            raise click.UsageError(f"bad value in grid entry {part!r}: {exc}") from exc
    return grid


def _exit(reports) -> None:
    sys.exit(0 if all(r.passed for r in reports) else 1)


@click.group()
def main():
    """Numerical verification of modular relations for zeta-type series."""


@main.command()
@click.option("--identity", required=True, type=IDENTITY_CHOICE)
@click.option("--z-re", type=float)
@click.option("--z-im", type=float)
@click.option("--alpha", type=float)
@click.option("--s-re", type=float)
@click.option("--n", type=float)
@click.option("--k", type=int)
@click.option("--x", type=float)
@click.option("--c", type=float, help="Mellin line abscissa.")
@click.option("--tol", type=float, default=1e-8, show_default=True)
@click.option("--digits", type=int, default=0, help="Add an mpmath reference side at this precision.")
@click.option("--tmax", type=float, help="Fixed truncation point for semi-infinite integrals.")
@click.option("--out", type=OUT_CHOICE, default="json", show_default=True)
def check(identity, z_re, z_im, alpha, s_re, n, k, x, c, tol, digits, tmax, out):
    """Run one identity at its default parameters, overridden by flags."""
    ctx = _context(tol, digits, tmax)
    defaults = REGISTRY[IdentityId(identity)].defaults
    params = {"alpha": alpha, "s": s_re, "n": n, "k": k, "x": x, "c": c}
    if z_re is not None or z_im is not None:
        base = complex(defaults.get("z", 0.0) or 0.0)
        params["z"] = complex(base.real if z_re is None else z_re, 0.0 if z_im is None else z_im)
    params = {key: v for key, v in params.items() if v is not None}
    bad = sorted(set(params) - set(defaults))
    if bad:
        raise click.UsageError(f"{identity} does not take {', '.join(bad)}")
    report = run_check(identity, params, ctx)
    _write([report], out)
    _exit([report])


@main.command(name="sweep")
@click.option("--identity", required=True, type=IDENTITY_CHOICE)
@click.option("--grid", "grid_spec", required=True, help='e.g. "z=2.5,4;alpha=0.5,2"')
@click.option("--tol", type=float, default=1e-8, show_default=True)
@click.option("--digits", type=int, default=0)
@click.option("--tmax", type=float)
@click.option("--workers", type=int, default=1, show_default=True)
@click.option("--out", type=OUT_CHOICE, default="json", show_default=True)
def sweep_cmd(identity, grid_spec, tol, digits, tmax, workers, out):
    """Evaluate an identity over the Cartesian product of a parameter grid."""
    ctx = _context(tol, digits, tmax)
    grid = parse_grid(grid_spec)
    try:
        reports = sweep(identity, grid, ctx, workers=workers)
    except ContractError as exc:
        raise click.UsageError(str(exc)) from exc
    _write(reports, out)
    _exit(reports)


@main.command(name="list")
def list_cmd():
    """Print the identity registry."""
    for ident, entry in REGISTRY.items():
        defaults = ", ".join(f"{k}={v}" for k, v in entry.defaults.items() if v is not None)
        click.echo(f"{ident.value:<18} {entry.summary}")
        click.echo(f"{'':<18} defaults: {defaults}")


if __name__ == "__main__":
    main()
