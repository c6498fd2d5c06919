"""Nested-family analyses: filtrations, spectra, and stability diagnostics.

A filtration is an increasing sequence of knot sets, here by crossing
number or by coefficient-vector norm.  Each step gets its own PCA; the
diagnostics compare steps: explained-variance trajectories, principal
angles between consecutive steps, relative spreads, and norm histograms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cloud import AlignedCloud, align, coeff_vector
from .errors import WindowOverflow
from .pca import CovarianceAccumulator, dimension_estimate, sym_eig

TRACKED_COMPONENTS = 6

CLASS_FILTERS = ("all", "alternating", "nonalternating")


def _class_match(alternating, class_filter):
    if class_filter == "all":
        return True
    if class_filter == "alternating":
        return bool(alternating)
    if class_filter == "nonalternating":
        return not alternating
    raise ValueError(f"unknown class filter {class_filter!r}")


@dataclass(frozen=True)
class FiltrationStep:
    """One level of a filtration: a label and its aligned cloud (or None)."""

    label: str
    cloud: AlignedCloud
    radius: float = None

    @property
    def empty(self):
        return self.cloud is None


def crossing_filtration(records, k_min, k_max, class_filter="all"):
    """Nested clouds of records with crossing number <= k, k = k_min..k_max.

    Each step is aligned independently; empty steps are reported with a
    None cloud rather than raised.
    """
    if k_min > k_max:
        raise ValueError(f"k_min {k_min} exceeds k_max {k_max}")
    steps = []
    for k in range(k_min, k_max + 1):
        chosen = [r for r in records
                  if r.crossing_number <= k
                  and _class_match(r.alternating, class_filter)]
        chosen.sort(key=lambda r: r.id)
        if not chosen:
            steps.append(FiltrationStep(str(k), None))
            continue
        fam = [(r.id, coeff_vector(r.jones),
                {"alternating": r.alternating, "sigma": r.sigma})
               for r in chosen]
        steps.append(FiltrationStep(str(k), align(fam)))
    return steps


def norm_filtration(cloud, levels):
    """Central-norm subsets doubling in size up to the full cloud.

    Level i (i = levels-1 .. 0) keeps the ceil(n / 2^i) rows of smallest
    norm (ties broken by row id); the level's radius is its largest norm.
    All levels share the parent cloud's degree window.
    """
    if levels < 1:
        raise ValueError("levels must be >= 1")
    n = len(cloud.row_ids)
    order = sorted(range(n), key=lambda i: (cloud.norms[i], cloud.row_ids[i]))
    steps = []
    for i in range(levels - 1, -1, -1):
        take = -(-n // (1 << i))  # ceil
        rows = sorted(order[:take])
        sub = AlignedCloud(
            row_ids=tuple(cloud.row_ids[j] for j in rows),
            matrix=cloud.matrix[rows],
            q0_column=cloud.q0_column,
            min_degree=cloud.min_degree,
            max_degree=cloud.max_degree,
            norms=cloud.norms[rows],
            class_flags=tuple(cloud.class_flags[j] for j in rows),
            sigma_values=tuple(cloud.sigma_values[j] for j in rows),
        )
        steps.append(FiltrationStep(f"r_{i}", sub,
                                    radius=float(sub.norms.max())))
    return steps


@dataclass(frozen=True)
class StepSpectrum:
    """PCA output of one filtration step."""

    label: str
    count: int
    ambient_dim: int
    mean: np.ndarray
    eigensystem: object
    dimension: int
    min_degree: int
    max_degree: int
    radius: float = None


def step_spectrum(step, variance_threshold=0.95):
    cloud = step.cloud
    acc = CovarianceAccumulator(cloud.matrix.shape[1])
    acc.add_block(cloud.matrix)
    es = sym_eig(acc.finalize())
    return StepSpectrum(
        label=step.label,
        count=cloud.matrix.shape[0],
        ambient_dim=cloud.matrix.shape[1],
        mean=acc.mean,
        eigensystem=es,
        dimension=dimension_estimate(es.normalized, variance_threshold),
        min_degree=cloud.min_degree,
        max_degree=cloud.max_degree,
        radius=step.radius,
    )


def eigensystem_trajectory(steps, variance_threshold=0.95):
    """Per-step spectra for the steps holding enough rows for a PCA.

    Empty steps and one-record steps (whose covariance is undefined)
    are skipped.
    """
    return [step_spectrum(s, variance_threshold) for s in steps
            if not s.empty and len(s.cloud.row_ids) >= 2]


def embed_direction(vec, src_window, dst_window):
    """Zero-pad an eigenvector from a smaller degree window into a larger."""
    slo, shi = src_window
    dlo, dhi = dst_window
    if slo < dlo or shi > dhi:
        raise WindowOverflow(
            f"window [{slo}, {shi}] does not embed in [{dlo}, {dhi}]")
    out = np.zeros(dhi - dlo + 1)
    out[slo - dlo: slo - dlo + len(vec)] = vec
    return out


def angle_trajectory(spectra, tracked=TRACKED_COMPONENTS):
    """Principal angles between consecutive steps, per tracked component.

    theta_{i,j} = arccos |v_i(step j+1) . embed(v_i(step j))|, in [0, pi/2];
    the absolute value removes the eigenvector sign ambiguity.  Rows are
    (transition label, component index starting at 1, theta radians).
    """
    out = []
    for prev, cur in zip(spectra, spectra[1:]):
        k = min(tracked, prev.ambient_dim, cur.ambient_dim)
        for i in range(k):
            v_prev = embed_direction(prev.eigensystem.eigenvectors[:, i],
                                     (prev.min_degree, prev.max_degree),
                                     (cur.min_degree, cur.max_degree))
            v_cur = cur.eigensystem.eigenvectors[:, i]
            dot = abs(float(v_cur @ v_prev))
            out.append((f"{prev.label}->{cur.label}", i + 1,
                        math.acos(min(1.0, dot))))
    return out


def relative_spread(values):
    """(max - min) / mean of a per-step series, as a percentage."""
    values = list(values)
    if not values:
        raise ValueError("empty series")
    mean = sum(values) / len(values)
    if mean == 0:
        return 0.0
    return (max(values) - min(values)) / mean * 100.0


def spread_table(spectra, tracked=TRACKED_COMPONENTS):
    """Relative spread of each tracked normalized variance across steps."""
    k = min([tracked] + [s.ambient_dim for s in spectra])
    table = []
    for i in range(k):
        series = [float(s.eigensystem.normalized[i]) for s in spectra]
        table.append((i + 1, relative_spread(series)))
    return table


def norm_histogram(cloud, bins):
    """Equal-width norm histograms over [0, r_max] by alternating class.

    Returns (edges, counts dict with keys alternating / nonalternating /
    combined).
    """
    if bins < 1:
        raise ValueError("bins must be >= 1")
    r_max = float(cloud.norms.max()) if len(cloud.norms) else 1.0
    if r_max == 0:
        r_max = 1.0
    edges = np.linspace(0.0, r_max, bins + 1)
    flags = np.array([bool(f) for f in cloud.class_flags])
    alt, _ = np.histogram(cloud.norms[flags], bins=edges)
    nonalt, _ = np.histogram(cloud.norms[~flags], bins=edges)
    combined, _ = np.histogram(cloud.norms, bins=edges)
    return edges, {"alternating": alt, "nonalternating": nonalt,
                   "combined": combined}
