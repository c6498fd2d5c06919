"""Knot diagram codes (DT and PD) and diagram-level operations.

A PlanarDiagram stores each crossing as 4 arc labels in counterclockwise
order starting from the incoming under-strand (PD convention).  A dart is a
pair (crossing index, slot) naming one of the four strand ends at a
crossing; slots 0 and 2 carry the under-strand, 1 and 3 the over-strand.

DT realization searches over the one free choice per crossing (which way
the second passage crosses the first) and keeps the first assignment whose
rotation system is planar by the Euler formula, with the first-visited
crossing's sense pinned to resolve the reflection ambiguity
deterministically.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import (
    BadArcMultiplicity,
    Disconnected,
    DuplicateOrGap,
    NonInteger,
    NotRealizable,
    OddEntry,
)

DT_CONVENTIONS = ("a", "b")


@dataclass(frozen=True)
class DTSequence:
    """A validated Dowker-Thistlethwaite code: signed even entries."""

    entries: tuple

    def __post_init__(self):
        n = len(self.entries)
        for e in self.entries:
            if e == 0 or e % 2:
                raise OddEntry(f"DT entry {e} is not a nonzero even integer")
        if sorted(abs(e) for e in self.entries) != list(range(2, 2 * n + 1, 2)):
            raise DuplicateOrGap(
                f"absolute DT entries must be exactly 2..{2 * n} with no repeats")

    def __len__(self):
        return len(self.entries)


def parse_dt(text):
    """Parse a whitespace/comma separated list of integers into a DTSequence."""
    tokens = [t for t in re.split(r"[\s,]+", text.strip()) if t]
    entries = []
    for t in tokens:
        try:
            entries.append(int(t))
        except ValueError:
            raise NonInteger(f"DT token {t!r} is not an integer") from None
    return DTSequence(tuple(entries))


@dataclass(frozen=True)
class PlanarDiagram:
    """A link diagram: crossings as CCW 4-tuples of arc labels (PD code)."""

    crossings: tuple

    def __post_init__(self):
        counts = {}
        for cr in self.crossings:
            if len(cr) != 4:
                raise BadArcMultiplicity(f"crossing {cr} does not have 4 arcs")
            for label in cr:
                if not isinstance(label, int) or label < 1:
                    raise BadArcMultiplicity(f"bad arc label {label!r}")
                counts[label] = counts.get(label, 0) + 1
        bad = [l for l, c in counts.items() if c != 2]
        if bad:
            raise BadArcMultiplicity(
                f"arc labels {sorted(bad)} do not appear exactly twice")
        # Tracing below validates closure / orientation consistency.
        self.orientation()

    # --- structural helpers ---

    @property
    def n(self):
        return len(self.crossings)

    def arc_occurrences(self):
        """Map arc label -> the two darts carrying it, in crossing order."""
        occ = {}
        for ci, cr in enumerate(self.crossings):
            for s, label in enumerate(cr):
                occ.setdefault(label, []).append((ci, s))
        return occ

    def dart_mate(self):
        """Involution pairing the two darts of every arc."""
        mate = {}
        for darts in self.arc_occurrences().values():
            a, b = darts
            mate[a] = b
            mate[b] = a
        return mate

    def orientation(self):
        """Trace every component, directing each arc.

        Returns (components, incoming) where components is a list of visit
        lists [(crossing index, slot entered), ...] in traversal order and
        incoming is the set of darts at which a strand enters its crossing.
        The under-strand must enter at slot 0 everywhere; a diagram that
        cannot be oriented that way is rejected.
        """
        if not self.crossings:
            return [[]], frozenset()
        mate = self.dart_mate()
        incoming = set()
        components = []
        seen_out = set()

        def trace(start_out):
            visits = []
            out = start_out
            while out not in seen_out:
                seen_out.add(out)
                ci, s = mate[out]  # strand arrives here
                incoming.add((ci, s))
                visits.append((ci, s))
                out = (ci, (s + 2) % 4)
            return visits

        # Components carrying an under-pass are forced: start at a slot-2 dart.
        for ci in range(self.n):
            if (ci, 2) not in seen_out:
                components.append(trace((ci, 2)))
        # A component that only ever passes over is traced with an arbitrary
        # (but deterministic) direction.
        for ci in range(self.n):
            for s in (1, 3):
                if (ci, s) not in seen_out and (ci, s) not in incoming:
                    components.append(trace((ci, s)))
        for ci, s in incoming:
            if s == 2:
                raise Disconnected(
                    "under-strand enters at slot 2; PD violates the "
                    "incoming-under convention")
        return components, frozenset(incoming)

    @property
    def component_count(self):
        return len(self.orientation()[0])

    def crossing_signs(self):
        """Per-crossing sign: +1 when the over-strand enters at slot 3."""
        _, incoming = self.orientation()
        signs = []
        for ci in range(self.n):
            signs.append(1 if (ci, 3) in incoming else -1)
        return signs

    def faces(self):
        """Faces of the induced embedding, as corner lists.

        Corner (ci, s) is the region between darts s and s+1 at crossing ci.
        """
        if not self.crossings:
            return [[(None, 0)], [(None, 1)]]
        mate = self.dart_mate()
        todo = {(ci, s) for ci in range(self.n) for s in range(4)}
        faces = []
        while todo:
            corner = next(iter(todo))
            face = []
            c = corner
            while c in todo:
                todo.remove(c)
                face.append(c)
                ci, s = c
                c = mate[(ci, (s + 1) % 4)]
            faces.append(face)
        return faces


def mirror(d):
    """Switch over and under at every crossing (cyclic order preserved)."""
    _, incoming = d.orientation()
    out = []
    for ci, cr in enumerate(d.crossings):
        s = 1 if (ci, 1) in incoming else 3  # incoming over-dart becomes under-in
        out.append(tuple(cr[(s + k) % 4] for k in range(4)))
    return PlanarDiagram(tuple(out))


def writhe(d):
    """Sum of crossing signs under the traced orientation."""
    return sum(d.crossing_signs())


def is_alternating(d):
    """True iff every component alternates over/under along its course."""
    components, _ = d.orientation()
    for visits in components:
        k = len(visits)
        for i in range(k):
            s_here = visits[i][1]
            s_next = visits[(i + 1) % k][1]
            if (s_here % 2) == (s_next % 2):
                return False
    return True


def from_even_under(crossings):
    """Build a PlanarDiagram from CCW tuples with the under-strand on
    slots 0 and 2 but in an unknown direction.

    Traces an orientation and rotates every crossing where the under-strand
    turns out to enter at slot 2, so constructors can lay out tuples
    geometrically without solving for strand directions first.
    """
    if not crossings:
        return PlanarDiagram(())
    occ = {}
    for ci, cr in enumerate(crossings):
        for s, lab in enumerate(cr):
            occ.setdefault(lab, []).append((ci, s))
    mate = {}
    for a, b in occ.values():
        mate[a] = b
        mate[b] = a
    incoming = set()
    seen = set()
    for ci0 in range(len(crossings)):
        for s0 in range(4):
            out = (ci0, s0)
            if out in seen or out in incoming:
                continue
            while out not in seen:
                seen.add(out)
                ci, s = mate[out]
                incoming.add((ci, s))
                out = (ci, (s + 2) % 4)
    rotated = []
    for ci, cr in enumerate(crossings):
        r = 2 if (ci, 2) in incoming else 0
        rotated.append(tuple(cr[(r + k) % 4] for k in range(4)))
    return PlanarDiagram(tuple(rotated))


# --- DT realization ---

def _dt_crossing_tuples(code, eps, convention):
    """Crossing tuples for a sense assignment, or None if not planar.

    Geometric slots are S,E,N,W in CCW order; the odd-time passage runs
    S->N, the even-time passage E->W when eps=+1 and W->E when eps=-1.
    Arc label k joins passage time k to time k+1 (arc 2n wraps to time 1).
    """
    n = len(code)
    two_n = 2 * n
    arc_in = lambda t: (t - 2) % two_n + 1   # arc entering at time t
    arc_out = lambda t: t                    # arc leaving at time t
    geo = []
    for i, entry in enumerate(code.entries):
        o, e = 2 * i + 1, abs(entry)
        if eps[i] == 1:
            g = (arc_in(o), arc_in(e), arc_out(o), arc_out(e))
        else:
            g = (arc_in(o), arc_out(e), arc_out(o), arc_in(e))
        geo.append(g)

    # Planarity: V - E + F = 2 needs n + 2 faces of the rotation system.
    occ = {}
    for ci, g in enumerate(geo):
        for s, label in enumerate(g):
            occ.setdefault(label, []).append((ci, s))
    mate = {}
    for a, b in occ.values():
        mate[a] = b
        mate[b] = a
    todo = {(ci, s) for ci in range(n) for s in range(4)}
    nfaces = 0
    while todo:
        c = next(iter(todo))
        while c in todo:
            todo.remove(c)
            ci, s = c
            c = mate[(ci, (s + 1) % 4)]
        nfaces += 1
    if nfaces != n + 2:
        return None

    # Rotate each tuple to start at the incoming under-strand.
    out = []
    for i, entry in enumerate(code.entries):
        even_under = (entry > 0) == (convention == "a")
        if not even_under:
            start = 0                      # odd passage under, enters at S
        else:
            start = 1 if eps[i] == 1 else 3
        out.append(tuple(geo[i][(start + k) % 4] for k in range(4)))
    return tuple(out)


def realize_dt(code, convention="a"):
    """Realize a DT code as a PlanarDiagram.

    The first consistent crossing-sense assignment in binary counting order
    (crossings ordered by first visit, first crossing pinned to +1) is
    returned, which resolves the reflection ambiguity deterministically.
    Raises NotRealizable if no assignment embeds in the plane.
    """
    if convention not in DT_CONVENTIONS:
        raise ValueError(f"unknown DT sign convention {convention!r}")
    n = len(code)
    if n == 0:
        return PlanarDiagram(())
    for mask in range(1 << (n - 1)):
        eps = [1] + [1 if (mask >> k) & 1 == 0 else -1 for k in range(n - 1)]
        tuples = _dt_crossing_tuples(code, eps, convention)
        if tuples is not None:
            return PlanarDiagram(tuples)
    raise NotRealizable(f"DT code {list(code.entries)} admits no planar embedding")


def dt_code(d, convention="a", start=None, reverse=False):
    """Recompute the DT code of a 1-component diagram.

    The traversal starts at the passage entering through dart ``start``
    (default: the head of the lowest arc label) and runs along the traced
    orientation, or against it when ``reverse`` is set.
    """
    components, incoming = d.orientation()
    if len(components) != 1:
        raise ValueError("DT codes are defined for knots (1 component) only")
    if not d.crossings:
        return DTSequence(())
    visits = components[0]
    if start is None:
        lowest = min(label for cr in d.crossings for label in cr)
        head = d.arc_occurrences()[lowest]
        start = head[0] if head[0] in incoming else head[1]
    idx = visits.index(start)
    order = visits[idx:] + visits[:idx]
    if reverse:
        # Traverse against the orientation: same crossings, reversed cyclic
        # order, entering where the forward course exited.
        order = [order[0]] + order[1:][::-1]
    times = {}
    for t, (ci, s) in enumerate(order, start=1):
        times.setdefault(ci, []).append((t, s))
    entries = [0] * len(d.crossings)
    for ci, ((t1, s1), (t2, s2)) in times.items():
        if t1 % 2 == 0:
            (t1, s1), (t2, s2) = (t2, s2), (t1, s1)
        even_under = (s2 % 2 == 0) if not reverse else (s2 % 2 == 0)
        sign = 1 if even_under == (convention == "a") else -1
        entries[(t1 - 1) // 2] = sign * t2
    return DTSequence(tuple(entries))


def all_dt_codes(d, convention="a"):
    """Every DT code of a knot diagram over all traversal starts/directions."""
    components, incoming = d.orientation()
    codes = set()
    for dart in components[0]:
        for reverse in (False, True):
            codes.add(dt_code(d, convention, start=dart, reverse=reverse).entries)
    return codes


# --- PD text form ---

_PD_CROSSING_RE = re.compile(r"X\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)")


def parse_pd(text):
    """Parse `X(a,b,c,d) X(e,f,g,h) ...` into a validated PlanarDiagram."""
    stripped = text.strip()
    crossings = []
    consumed = 0
    for m in _PD_CROSSING_RE.finditer(stripped):
        crossings.append(tuple(int(g) for g in m.groups()))
        consumed += len(m.group(0))
    leftover = re.sub(r"\s+", "", _PD_CROSSING_RE.sub("", stripped))
    if leftover:
        raise BadArcMultiplicity(f"unparsable PD fragment {leftover!r}")
    return PlanarDiagram(tuple(crossings))


def serialize_pd(d):
    """Emit the PD text form, crossings in ascending first-arc-label order."""
    ordered = sorted(d.crossings, key=lambda cr: cr[0])
    return " ".join("X({},{},{},{})".format(*cr) for cr in ordered)
