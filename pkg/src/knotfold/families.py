"""Closed-form Jones generators for torus and double twist families.

Torus knots use the classical closed form with an exact synthetic division;
double twist knots expand each twist region in the two-strand tangle basis
{horizontal, vertical}, so the bracket of the closure costs a handful of
polynomial products instead of a full diagram evaluation.  Both routes are
validated against the diagram evaluators in the test suite, which is why
the explicit diagram builders live here too.
"""

from __future__ import annotations

from math import gcd

from .bracket import _delta, bracket_to_jones
from .diagrams import PlanarDiagram, from_even_under, writhe
from .errors import NotAKnot
from .laurent import LaurentPolynomial


def torus_crossing_number(m, n):
    """Crossing number of the (m,n) torus knot: min(m(n-1), n(m-1))."""
    return min(m * (n - 1), n * (m - 1))


def jones_torus(m, n):
    """Jones polynomial of the (m,n) torus knot.

    J = q^((m-1)(n-1)/2) (1 - q^(m+1) - q^(n+1) + q^(m+n)) / (1 - q^2),
    with the division required to be exact.
    """
    if m < 2 or n < 2:
        raise NotAKnot(f"torus parameters must be >= 2, got ({m}, {n})")
    if gcd(m, n) != 1:
        raise NotAKnot(f"T({m},{n}) is a link, not a knot (gcd > 1)")
    num = LaurentPolynomial({0: 1, 4 * (m + 1): -1, 4 * (n + 1): -1,
                             4 * (m + n): 1}, "q")
    den = LaurentPolynomial({0: 1, 8: -1}, "q")
    quot = num.exact_div(den)
    return quot.shift4(2 * (m - 1) * (n - 1))


def torus_members(max_crossings):
    """Coprime (m, n), 2 <= m < n, with crossing number <= max_crossings."""
    out = []
    m = 2
    while (m + 1) * (m - 1) <= max_crossings:
        n = m + 1
        while n * (m - 1) <= max_crossings:
            if gcd(m, n) == 1:
                out.append((m, n))
            n += 1
        m += 1
    return sorted(out, key=lambda mn: (torus_crossing_number(*mn), mn))


def torus_diagram(n):
    """Standard diagram of the (2, n) torus knot/link: closed 2-braid."""
    crossings = []
    t = [2 * j + 1 for j in range(n)]  # top arc entering crossing j
    b = [2 * j + 2 for j in range(n)]
    for j in range(n):
        tn, bn = t[(j + 1) % n], b[(j + 1) % n]
        crossings.append(_h_crossing(t[j], b[j], tn, bn))
    return PlanarDiagram(tuple(crossings))


def _h_crossing(t, b, t_out, b_out):
    """One positive crossing in a horizontal twist region.

    Strands run west to east; the bottom-west strand passes under.  CCW
    from the incoming under-strand: (WB, EB, ET, WT).
    """
    return (b, b_out, t_out, t)


def _v_crossing(l, r, l_out, r_out):
    """One crossing in a vertical twist region (strands run north to south).

    The north-east strand passes under; CCW from it: (NR, NL, SL, SR).
    """
    return (r, l, l_out, r_out)


def double_twist_diagram(m, n):
    """Diagram of the positive double twist knot/link with m + n crossings.

    Numerator closure of the tangle sum of a horizontal region with m
    crossings and a vertical region with n crossings (two-bridge link
    C(m, n), fraction m + 1/n).
    """
    if m < 0 or n < 0:
        raise ValueError("twist parameters must be nonnegative")
    if m == 0 and n == 0:
        return PlanarDiagram(())
    labels = iter(range(1, 10 * (m + n) + 10))
    parent = {}

    def fresh():
        lab = next(labels)
        parent[lab] = lab
        return lab

    def resolve(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def merge(x, y):
        rx, ry = resolve(x), resolve(y)
        if rx != ry:
            parent[rx] = ry

    wt, wb = fresh(), fresh()
    t, b = wt, wb
    h_crossings = []
    for _ in range(m):
        tn, bn = fresh(), fresh()
        h_crossings.append((t, b, tn, bn))
        t, b = tn, bn
    et, eb = t, b

    nl, nr = fresh(), fresh()
    l, r = nl, nr
    v_crossings = []
    for _ in range(n):
        ln, rn = fresh(), fresh()
        v_crossings.append((l, r, ln, rn))
        l, r = ln, rn
    sl, sr = l, r

    # Tangle sum: east side of H meets west side of V; numerator closure
    # joins the outer corners top-to-top and bottom-to-bottom.
    merge(et, nl)
    merge(eb, sl)
    merge(wt, nr)
    merge(wb, sr)

    crossings = []
    for t, b, tn, bn in h_crossings:
        crossings.append(_h_crossing(resolve(t), resolve(b),
                                     resolve(tn), resolve(bn)))
    for l, r, ln, rn in v_crossings:
        crossings.append(_v_crossing(resolve(l), resolve(r),
                                     resolve(ln), resolve(rn)))
    used = sorted({lab for cr in crossings for lab in cr})
    relab = {lab: i + 1 for i, lab in enumerate(used)}
    return from_even_under(tuple(tuple(relab[lab] for lab in cr)
                                 for cr in crossings))


def double_twist_is_knot(m, n):
    """C(m, n) is a knot iff its two-bridge determinant m*n + 1 is odd."""
    return (m * n) % 2 == 0


def double_twist_members(max_crossings):
    """Unordered twist parameter pairs giving knots with m + n crossings."""
    out = []
    for m in range(1, max_crossings):
        for n in range(m, max_crossings - m + 1):
            if double_twist_is_knot(m, n):
                out.append((m, n))
    return sorted(out, key=lambda mn: (mn[0] + mn[1], mn))


class _TwistTables:
    """Tangle-basis expansions of twist regions, shared across a family.

    h[k] = (a, b) with k horizontal crossings equal to a*[horizontal] +
    b*[vertical]; v[k] likewise for k vertical crossings.  Coefficient
    recursions follow from smoothing one crossing at a time.
    """

    def __init__(self):
        one = LaurentPolynomial.one("A")
        zero = LaurentPolynomial.zero("A")
        self.h = [(one, zero)]
        self.v = [(zero, one)]
        self.delta = _delta("A")
        self.A = LaurentPolynomial.monomial(1, 1, "A")
        self.Ainv = LaurentPolynomial.monomial(1, -1, "A")

    def horizontal(self, k):
        # One more crossing contributes p*[horizontal] + q*[vertical] with
        # (p, q) = (A, A^-1), calibrated against the diagram evaluators.
        while len(self.h) <= k:
            a, b = self.h[-1]
            p, q = self.A, self.Ainv
            self.h.append((a * p, a * q + b * p + b * q * self.delta))
        return self.h[k]

    def vertical(self, k):
        while len(self.v) <= k:
            c, d = self.v[-1]
            p, q = self.A, self.Ainv
            self.v.append((c * p * self.delta + c * q + d * p, d * q))
        return self.v[k]


_TABLES = _TwistTables()


def double_twist_bracket(m, n, tables=None):
    """Bracket of the positive double twist diagram via the tangle tables."""
    tb = tables or _TABLES
    a, b = tb.horizontal(m)
    c, d = tb.vertical(n)
    return a * c * tb.delta + a * d + b * c + b * d * tb.delta


def double_twist_writhe(m, n):
    """Writhe of the diagram built by double_twist_diagram."""
    if m == 0 and n == 0:
        return 0
    return writhe(double_twist_diagram(m, n))


def jones_double_twist(m, n):
    """Jones polynomial of the positive double twist knot C(m, n)."""
    if m < 0 or n < 0:
        raise ValueError("twist parameters must be nonnegative")
    if (m + n) == 0:
        return LaurentPolynomial.one("q")
    return bracket_to_jones(double_twist_bracket(m, n), double_twist_writhe(m, n))
