"""Jones coefficient point clouds.

Turns a family of knots into an integer matrix: pick one knot from each
mirror pair, read off dense coefficient vectors, and zero-pad them into a
family-wide degree window aligned at the q^0 column.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .diagrams import mirror as mirror_diagram
from .errors import EmptyFamily, WindowOverflow
from .laurent import LaurentPolynomial


@dataclass(frozen=True)
class KnotRecord:
    """One knot with its Jones polynomial and optional metadata."""

    id: str
    crossing_number: int
    jones: LaurentPolynomial
    diagram: object = None
    alternating: bool = None
    sigma: int = None
    s_invariant: int = None
    mirror_applied: bool = False


def mirror_record(r):
    """Mirror a record: invert the Jones variable and negate sigma and s."""
    return replace(
        r,
        jones=r.jones.substitute_inverse(),
        diagram=None if r.diagram is None else mirror_diagram(r.diagram),
        sigma=None if r.sigma is None else -r.sigma,
        s_invariant=None if r.s_invariant is None else -r.s_invariant,
        mirror_applied=not r.mirror_applied,
    )


def canonical_orientation(r):
    """Choose between a knot and its mirror.

    Rule chain, skipping unknown quantities: keep the side with sigma > 0,
    else s > 0, else the extreme Jones degree of largest absolute value
    positive.  A tie on extreme degrees leaves the input unchanged.
    """
    if r.sigma is not None and r.sigma != 0:
        return r if r.sigma > 0 else mirror_record(r)
    if r.s_invariant is not None and r.s_invariant != 0:
        return r if r.s_invariant > 0 else mirror_record(r)
    if r.jones.is_zero():
        return r
    lo, hi = r.jones.min_exp4(), r.jones.max_exp4()
    if abs(lo) == abs(hi):
        return r
    extreme = lo if abs(lo) > abs(hi) else hi
    return r if extreme > 0 else mirror_record(r)


@dataclass(frozen=True)
class CoefficientVector:
    """Dense coefficient window of an integer-exponent Laurent polynomial."""

    min_degree: int
    coefficients: tuple

    @property
    def max_degree(self):
        return self.min_degree + len(self.coefficients) - 1

    def to_polynomial(self):
        return LaurentPolynomial.from_coeffs(
            self.min_degree, list(self.coefficients), "q")


def coeff_vector(p):
    """Dense window of a q-polynomial; raises HalfIntegerExponent."""
    lo, coeffs = p.int_coeffs()
    return CoefficientVector(lo, tuple(coeffs))


def embed(row, min_degree, max_degree):
    """Zero-pad a coefficient vector into a target degree window."""
    if row.min_degree < min_degree or row.max_degree > max_degree:
        raise WindowOverflow(
            f"degrees [{row.min_degree}, {row.max_degree}] exceed the "
            f"window [{min_degree}, {max_degree}]")
    left = row.min_degree - min_degree
    right = max_degree - row.max_degree
    return (0,) * left + row.coefficients + (0,) * right


def l2_norm(row):
    """Euclidean norm of an integer coefficient row."""
    return math.sqrt(sum(c * c for c in row))


@dataclass(frozen=True)
class AlignedCloud:
    """A family of coefficient rows padded into one shared degree window."""

    row_ids: tuple
    matrix: np.ndarray
    q0_column: int
    min_degree: int
    max_degree: int
    norms: np.ndarray
    class_flags: tuple
    sigma_values: tuple

    @property
    def width(self):
        return self.max_degree - self.min_degree + 1


def align(family):
    """Pad a family of (id, CoefficientVector, metadata) into a cloud.

    Metadata is a mapping; keys ``alternating`` and ``sigma`` are carried
    through per row when present.
    """
    family = list(family)
    if not family:
        raise EmptyFamily("cannot align an empty family")
    lo = min(cv.min_degree for _, cv, _ in family)
    hi = max(cv.max_degree for _, cv, _ in family)
    rows = [embed(cv, lo, hi) for _, cv, _ in family]
    matrix = np.array(rows, dtype=np.int64)
    if not all(int(matrix[i, j]) == rows[i][j]
               for i in (0, len(rows) - 1) for j in (0, len(rows[0]) - 1)):
        raise OverflowError("coefficient exceeds the matrix element type")
    return AlignedCloud(
        row_ids=tuple(rid for rid, _, _ in family),
        matrix=matrix,
        q0_column=-lo,
        min_degree=lo,
        max_degree=hi,
        norms=np.sqrt((matrix.astype(float) ** 2).sum(axis=1)),
        class_flags=tuple(meta.get("alternating") for _, _, meta in family),
        sigma_values=tuple(meta.get("sigma") for _, _, meta in family),
    )
