"""Dataset ingestion, cached invariant computation, and analysis runs.

Input files are line oriented: ``id;crossing_number;code`` with optional
trailing ``key=value`` fields (sigma, s, alternating).  The cache is an
append-only text file whose lines are
``id;digest;jones;sigma;alternating;mirror_applied``; a cache hit is
bit-identical to recomputation, so interrupted runs resume cleanly.
"""

from __future__ import annotations

import hashlib
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .bracket import jones
from .cloud import KnotRecord, canonical_orientation
from .diagrams import is_alternating, parse_dt, parse_pd, realize_dt
from .errors import KnotfoldError, Unreadable, UnknownFormat
from .families import (
    double_twist_members,
    jones_double_twist,
    jones_torus,
    torus_crossing_number,
    torus_members,
)
from .laurent import LaurentPolynomial
from .signature import signature_from_diagram

FORMATS = ("dt", "pd")


@dataclass(frozen=True)
class RawRecord:
    id: str
    crossing_number: int
    payload: str
    meta: dict
    lineno: int


@dataclass(frozen=True)
class Dataset:
    paths: tuple
    format: str
    digest: str
    records: tuple
    rejects: tuple  # (path, lineno, reason)

    @property
    def meta_columns(self):
        cols = set()
        for r in self.records:
            cols.update(r.meta)
        return sorted(cols)


def _parse_line(line, lineno):
    parts = [p.strip() for p in line.split(";")]
    if len(parts) < 3:
        raise UnknownFormat("expected id;crossing_number;code")
    rid, xing, payload = parts[0], parts[1], parts[2]
    if not rid:
        raise UnknownFormat("empty id")
    try:
        crossings = int(xing)
    except ValueError:
        raise UnknownFormat(f"bad crossing number {xing!r}") from None
    if crossings < 0:
        raise UnknownFormat("negative crossing number")
    meta = {}
    for extra in parts[3:]:
        if not extra:
            continue
        key, _, value = extra.partition("=")
        key = key.strip()
        if key not in ("sigma", "s", "alternating"):
            raise UnknownFormat(f"unknown metadata column {key!r}")
        meta[key] = value.strip()
    return RawRecord(rid, crossings, payload, meta, lineno)


def ingest(paths, format="dt", convention="a"):
    """Parse dataset files, quarantining malformed lines with line numbers."""
    if format not in FORMATS:
        raise UnknownFormat(f"unknown dataset format {format!r}")
    digest = hashlib.sha256()
    records = []
    rejects = []
    for path in paths:
        try:
            with open(path, "rb") as fh:
                data = fh.read()
        except OSError as exc:
            raise Unreadable(f"cannot read {path}: {exc}") from None
        digest.update(data)
        for lineno, line in enumerate(data.decode().splitlines(), start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            try:
                rec = _parse_line(stripped, lineno)
                # parse the code now so bad payloads are quarantined here
                if format == "dt":
                    parse_dt(rec.payload)
                else:
                    parse_pd(rec.payload)
            except (KnotfoldError, ValueError) as exc:
                rejects.append((path, lineno, f"{type(exc).__name__}: {exc}"))
                continue
            records.append(rec)
    return Dataset(tuple(paths), format, digest.hexdigest(),
                   tuple(records), tuple(rejects))


class InvariantCache:
    """Append-only text cache of canonicalized invariants."""

    FIELDS = ("id", "digest", "jones", "sigma", "alternating",
              "mirror_applied")

    def __init__(self, path):
        self.path = path
        self.entries = {}
        if path and os.path.exists(path):
            with open(path) as fh:
                for line in fh:
                    line = line.rstrip("\n")
                    if not line:
                        continue
                    parts = line.split(";")
                    if len(parts) != len(self.FIELDS):
                        continue
                    self.entries[(parts[0], parts[1])] = line

    def get(self, rid, digest):
        return self.entries.get((rid, digest))

    def append(self, lines):
        fresh = [l for l in lines
                 if tuple(l.split(";")[:2]) not in self.entries]
        if self.path:
            with open(self.path, "a") as fh:
                for line in fresh:
                    fh.write(line + "\n")
        for line in fresh:
            parts = line.split(";")
            self.entries[(parts[0], parts[1])] = line

    def record(self, rid, digest, crossing_number):
        """Decode a cache line back into a canonicalized KnotRecord."""
        line = self.get(rid, digest)
        if line is None:
            return None
        _, _, jones_text, sigma, alternating, mirrored = line.split(";")
        return KnotRecord(
            id=rid,
            crossing_number=crossing_number,
            jones=LaurentPolynomial.from_text(jones_text),
            alternating={"1": True, "0": False}[alternating],
            sigma=None if sigma == "?" else int(sigma),
            mirror_applied={"1": True, "0": False}[mirrored],
        )


def _cache_line(rid, digest, record):
    sigma = "?" if record.sigma is None else str(record.sigma)
    return ";".join((
        rid, digest, record.jones.to_text(), sigma,
        "1" if record.alternating else "0",
        "1" if record.mirror_applied else "0",
    ))


def _compute_one(args):
    """Worker: one raw record -> (index, cache line) or (index, error)."""
    index, rid, fmt, payload, convention, meta, digest = args
    try:
        if fmt == "dt":
            diagram = realize_dt(parse_dt(payload), convention)
        else:
            diagram = parse_pd(payload)
        poly = jones(diagram, mode="sweep")
        if "sigma" in meta:
            sigma = int(meta["sigma"])
        else:
            sigma = signature_from_diagram(diagram)
        if "alternating" in meta:
            alternating = meta["alternating"] in ("1", "true", "True")
        else:
            alternating = is_alternating(diagram)
        s_inv = int(meta["s"]) if "s" in meta else None
        rec = KnotRecord(rid, 0, poly, diagram=diagram,
                         alternating=alternating, sigma=sigma,
                         s_invariant=s_inv)
        return index, _cache_line(rid, digest, canonical_orientation(rec)), None
    except (KnotfoldError, ValueError, OverflowError) as exc:
        return index, None, f"{type(exc).__name__}: {exc}"


def default_workers():
    env = os.environ.get("KNOTFOLD_WORKERS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def compute_batch(dataset, cache, workers=None, convention="a",
                  max_failure_fraction=0.0):
    """Compute canonicalized invariants for every dataset record.

    Results enter the cache in dataset order regardless of worker count,
    so the cache file is byte-identical for any parallelism.  Returns
    (records, failures); failures are (id, reason).
    """
    workers = workers or default_workers()
    todo = [(i, r) for i, r in enumerate(dataset.records)
            if cache.get(r.id, dataset.digest) is None]
    jobs = [(i, r.id, dataset.format, r.payload, convention, r.meta,
             dataset.digest) for i, r in todo]
    results = []
    if jobs:
        if workers > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(_compute_one, jobs,
                                        chunksize=max(1, len(jobs) // (4 * workers))))
        else:
            results = [_compute_one(job) for job in jobs]
    results.sort(key=lambda t: t[0])
    failures = []
    lines = []
    for (index, line, error) in results:
        if error is not None:
            failures.append((dataset.records[index].id, error))
        else:
            lines.append(line)
    cache.append(lines)
    records = []
    for r in dataset.records:
        rec = cache.record(r.id, dataset.digest, r.crossing_number)
        if rec is not None:
            records.append(rec)
    if dataset.records and len(failures) > max_failure_fraction * len(dataset.records):
        if failures:
            raise KnotfoldError(
                f"{len(failures)} records failed, first: {failures[0]}")
    return records, failures


def generate_family(kind, limit, cache=None):
    """All torus or double twist knots with crossing number <= limit.

    Jones polynomials come from the closed forms; records are
    canonicalized and entered into the cache when one is supplied.
    """
    if limit < 3:
        raise ValueError("limit must be >= 3")
    digest = f"{kind}-{limit}"
    records = []
    if kind == "torus":
        for m, n in torus_members(limit):
            rec = KnotRecord(f"T({m},{n})", torus_crossing_number(m, n),
                             jones_torus(m, n), alternating=(m == 2))
            records.append(canonical_orientation(rec))
    elif kind == "double_twist":
        for m, n in double_twist_members(limit):
            rec = KnotRecord(f"C({m},{n})", m + n, jones_double_twist(m, n),
                             alternating=True)
            records.append(canonical_orientation(rec))
    else:
        raise UnknownFormat(f"unknown family {kind!r}")
    if cache is not None:
        cache.append([_cache_line(r.id, digest, r) for r in records])
    return digest, records


# --- analysis runs ---

@dataclass
class AnalysisConfig:
    filtration: str = "crossing"  # crossing | norm
    class_filter: str = "all"     # all | alternating | nonalternating
    k_min: int = 3
    k_max: int = 6
    levels: int = 4
    bins: int = 20
    variance_threshold: float = 0.95
    tracked: int = 6
    projection_components: int = 3

    def to_dict(self):
        return dict(sorted(self.__dict__.items()))


def _fmt(x):
    return f"{float(x):.12g}"


def _write_csv(path, header, rows):
    with open(path, "w") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(
                _fmt(v) if isinstance(v, float) else str(v)
                for v in row) + "\n")


def run_analysis(records, config, out_dir, digests=(), log=None):
    """Filtration + PCA + diagnostics; writes the report bundle.

    Returns the list of per-step spectra.  Every report byte is a
    function of (records, config); timings go to the log stream only.
    """
    from . import filtration as F
    from .cloud import align, coeff_vector
    from .pca import project

    t0 = time.time()
    os.makedirs(out_dir, exist_ok=True)
    if config.filtration == "crossing":
        steps = F.crossing_filtration(records, config.k_min, config.k_max,
                                      config.class_filter)
    elif config.filtration == "norm":
        fam = [(r.id, coeff_vector(r.jones),
                {"alternating": r.alternating, "sigma": r.sigma})
               for r in sorted(records, key=lambda r: r.id)
               if F._class_match(r.alternating, config.class_filter)]
        steps = F.norm_filtration(align(fam), config.levels)
    else:
        raise UnknownFormat(f"unknown filtration {config.filtration!r}")

    spectra = F.eigensystem_trajectory(steps, config.variance_threshold)
    if not spectra:
        raise KnotfoldError("no non-empty filtration steps")

    for s in spectra:
        rows = [(i + 1, float(s.eigensystem.eigenvalues[i]),
                 float(s.eigensystem.normalized[i]),
                 float(s.eigensystem.cumulative[i]))
                for i in range(s.ambient_dim)]
        _write_csv(os.path.join(out_dir, f"spectrum_step_{s.label}.csv"),
                   ("i", "lambda_i", "lambda_bar_i", "S_i"), rows)

    _write_csv(os.path.join(out_dir, "trajectory.csv"),
               ("step", "component", "lambda_bar"),
               [(s.label, i + 1, float(s.eigensystem.normalized[i]))
                for s in spectra
                for i in range(min(config.tracked, s.ambient_dim))])

    if len(spectra) >= 2:
        _write_csv(os.path.join(out_dir, "angles.csv"),
                   ("step", "component", "theta"),
                   F.angle_trajectory(spectra, config.tracked))
        _write_csv(os.path.join(out_dir, "spread.csv"),
                   ("component", "spread_percent"),
                   F.spread_table(spectra, config.tracked))

    last = next(s for s in reversed(steps) if not s.empty)
    edges, counts = F.norm_histogram(last.cloud, config.bins)
    for cls, series in counts.items():
        _write_csv(os.path.join(out_dir, f"histogram_{cls}.csv"),
                   ("bin_low", "bin_high", "count"),
                   [(float(edges[b]), float(edges[b + 1]), int(series[b]))
                    for b in range(len(series))])

    final = spectra[-1]
    k = min(config.projection_components, final.ambient_dim)
    coords = project(last.cloud.matrix, final.mean, final.eigensystem, k)
    _write_csv(os.path.join(out_dir, "projection.csv"),
               ("id",) + tuple(f"pc{i+1}" for i in range(k)) + ("sigma",),
               [(last.cloud.row_ids[r],)
                + tuple(float(c) for c in coords[r])
                + ("" if last.cloud.sigma_values[r] is None
                   else str(last.cloud.sigma_values[r]),)
                for r in range(len(last.cloud.row_ids))])

    manifest = {
        "config": config.to_dict(),
        "dataset_digests": sorted(digests),
        "record_count": len(records),
        "steps": [{"label": s.label, "count": s.count,
                   "ambient_dim": s.ambient_dim, "dimension": s.dimension}
                  for s in spectra],
    }
    with open(os.path.join(out_dir, "run_manifest"), "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    if log:
        print(f"analysis completed in {time.time() - t0:.2f}s", file=log)
    return spectra
