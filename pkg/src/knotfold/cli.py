"""Command line interface: ingest, compute, generate, analyze, export."""

from __future__ import annotations

import os
import sys

import click

from .errors import KnotfoldError
from .pipeline import (
    AnalysisConfig,
    InvariantCache,
    compute_batch,
    default_workers,
    generate_family,
    ingest,
    run_analysis,
)

_CLASS_ALIASES = {"all": "all", "alt": "alternating",
                  "nonalt": "nonalternating"}


@click.group()
def main():
    """Jones polynomial point cloud toolkit."""


@main.command("ingest")
@click.argument("paths", nargs=-1, required=True,
                type=click.Path(exists=True))
@click.option("--format", "fmt", type=click.Choice(["dt", "pd"]),
              default="dt", show_default=True)
@click.option("--dt-sign-convention", type=click.Choice(["a", "b"]),
              default="a", show_default=True)
def ingest_cmd(paths, fmt, dt_sign_convention):
    """Parse dataset files and report record and reject counts."""
    ds = ingest(paths, fmt, dt_sign_convention)
    click.echo(f"digest {ds.digest}")
    click.echo(f"records {len(ds.records)} rejects {len(ds.rejects)}")
    for path, lineno, reason in ds.rejects:
        click.echo(f"reject {path}:{lineno} {reason}", err=True)


@main.command("compute")
@click.argument("paths", nargs=-1, required=True,
                type=click.Path(exists=True))
@click.option("--format", "fmt", type=click.Choice(["dt", "pd"]),
              default="dt", show_default=True)
@click.option("--dt-sign-convention", type=click.Choice(["a", "b"]),
              default="a", show_default=True)
@click.option("--cache", type=click.Path(), required=True)
@click.option("--workers", type=int, default=None,
              help="defaults to core count or KNOTFOLD_WORKERS")
def compute_cmd(paths, fmt, dt_sign_convention, cache, workers):
    """Compute canonicalized Jones invariants into the cache."""
    ds = ingest(paths, fmt, dt_sign_convention)
    store = InvariantCache(cache)
    records, failures = compute_batch(
        ds, store, workers or default_workers(), dt_sign_convention,
        max_failure_fraction=1.0)
    click.echo(f"computed {len(records)} records, {len(failures)} failures")
    for rid, reason in failures:
        click.echo(f"failure {rid}: {reason}", err=True)
    if failures:
        sys.exit(2)


@main.command("generate")
@click.option("--family", type=click.Choice(["torus", "double-twist"]),
              required=True)
@click.option("--max-crossings", type=int, required=True)
@click.option("--cache", type=click.Path(), required=True)
def generate_cmd(family, max_crossings, cache):
    """Generate a knot family and cache its Jones polynomials."""
    store = InvariantCache(cache)
    digest, records = generate_family(family.replace("-", "_"),
                                      max_crossings, store)
    click.echo(f"digest {digest}")
    click.echo(f"generated {len(records)} knots")


def _load_records(cache_path, paths, fmt, convention, family, max_crossings):
    store = InvariantCache(cache_path)  # path None -> in-memory only
    if family:
        _, records = generate_family(family.replace("-", "_"),
                                     max_crossings, store)
        return records, [f"{family}-{max_crossings}"]
    if not paths:
        raise click.UsageError("need dataset paths or --family")
    ds = ingest(paths, fmt, convention)
    records, _ = compute_batch(ds, store, convention=convention,
                               max_failure_fraction=1.0)
    return records, [ds.digest]


@main.command("analyze")
@click.argument("paths", nargs=-1, type=click.Path(exists=True))
@click.option("--format", "fmt", type=click.Choice(["dt", "pd"]),
              default="dt", show_default=True)
@click.option("--dt-sign-convention", type=click.Choice(["a", "b"]),
              default="a", show_default=True)
@click.option("--family", type=click.Choice(["torus", "double-twist"]))
@click.option("--max-crossings", type=int, default=None)
@click.option("--cache", type=click.Path(), default=None)
@click.option("--filtration", type=click.Choice(["crossing", "norm"]),
              default="crossing", show_default=True)
@click.option("--class", "class_filter",
              type=click.Choice(list(_CLASS_ALIASES)), default="all",
              show_default=True)
@click.option("--levels", type=int, default=4, show_default=True)
@click.option("--kmin", type=int, default=3, show_default=True)
@click.option("--kmax", type=int, default=6, show_default=True)
@click.option("--bins", type=int, default=20, show_default=True)
@click.option("--variance-threshold", type=float, default=0.95,
              show_default=True)
@click.option("--out", type=click.Path(), required=True)
def analyze_cmd(paths, fmt, dt_sign_convention, family, max_crossings,
                cache, filtration, class_filter, levels, kmin, kmax, bins,
                variance_threshold, out):
    """Run a filtration analysis and write the report bundle."""
    try:
        records, digests = _load_records(cache, paths, fmt,
                                         dt_sign_convention, family,
                                         max_crossings)
        config = AnalysisConfig(
            filtration=filtration,
            class_filter=_CLASS_ALIASES[class_filter],
            k_min=kmin, k_max=kmax, levels=levels, bins=bins,
            variance_threshold=variance_threshold)
        spectra = run_analysis(records, config, out, digests,
                               log=sys.stderr)
    except KnotfoldError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    for s in spectra:
        click.echo(f"step {s.label}: n={s.count} d={s.ambient_dim} "
                   f"dimension={s.dimension}")


@main.command("export")
@click.option("--what",
              type=click.Choice(["spectrum", "trajectory", "angles",
                                 "histogram", "projection"]),
              required=True)
@click.option("--out", type=click.Path(), required=True,
              help="report bundle directory written by analyze")
def export_cmd(what, out):
    """Print a report artifact from an analysis bundle to stdout."""
    names = sorted(f for f in os.listdir(out) if f.startswith(what))
    if not names:
        click.echo(f"error: no {what} artifact in {out}", err=True)
        sys.exit(1)
    for name in names:
        with open(os.path.join(out, name)) as fh:
            sys.stdout.write(fh.read())


if __name__ == "__main__":
    main()
