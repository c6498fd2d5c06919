"""Knot signature from a diagram via the Goeritz matrix.

One checkerboard color class of the diagram's faces gives a Goeritz
matrix; its signature plus a per-crossing correction term yields the link
signature (Gordon-Litherland).  The sign convention is the one under which
positive knots have positive signature (the trefoil with all-positive
crossings gets +2), so that mirror selection by positive signature and by
positive extreme Jones degree agree on chiral knots.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import Unsupported


def _white_graph(d):
    """Edges of the corner-adjacency multigraph on face indices.

    Opposite corners at a crossing lie in faces of the same checkerboard
    color; corners (0, 2) define a sign +1 edge and corners (1, 3) a sign
    -1 edge.  Returns (edges, faces) with edges as (i, j, edge_sign, ci).
    """
    faces = d.faces()
    face_of = {}
    for fi, face in enumerate(faces):
        for corner in face:
            face_of[corner] = fi
    edges = []
    for ci in range(d.n):
        edges.append((face_of[(ci, 0)], face_of[(ci, 2)], 1, ci))
        edges.append((face_of[(ci, 1)], face_of[(ci, 3)], -1, ci))
    return edges, faces

def _components(nverts, edges):
    parent = list(range(nverts))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j, _, _ in edges:
        parent[find(i)] = find(j)
    comps = {}
    for v in range(nverts):
        comps.setdefault(find(v), []).append(v)
    return sorted(comps.values(), key=lambda c: (len(c), c))


def _goeritz(vertices, edges):
    """Goeritz matrix of one color class, first row/column deleted."""
    idx = {v: k for k, v in enumerate(sorted(vertices))}
    nv = len(idx)
    m = [[0] * nv for _ in range(nv)]
    for i, j, sign, _ in edges:
        a, b = idx[i], idx[j]
        m[a][b] += sign
        if a != b:
            m[b][a] += sign
    for k in range(nv):
        m[k][k] = -sum(m[r][k] for r in range(nv))
    return [row[1:] for row in m[1:]]


def _sym_signature(m):
    """Signature of an integer symmetric matrix by congruence reduction."""
    n = len(m)
    w = [[Fraction(x) for x in row] for row in m]
    pos = neg = 0
    for k in range(n):
        if w[k][k] == 0:
            pivot = next((j for j in range(k + 1, n) if w[j][j] != 0), None)
            if pivot is not None:
                w[k], w[pivot] = w[pivot], w[k]
                for row in w:
                    row[k], row[pivot] = row[pivot], row[k]
            else:
                other = next((j for j in range(k + 1, n) if w[k][j] != 0), None)
                if other is None:
                    continue  # zero row/column: null direction
                for j in range(n):
                    w[k][j] += w[other][j]
                for row in w:
                    row[k] += row[other]
        d = w[k][k]
        if d > 0:
            pos += 1
        else:
            neg += 1
        for i in range(k + 1, n):
            f = w[i][k] / d
            if f:
                for j in range(k, n):
                    w[i][j] -= f * w[k][j]
                for row in w:
                    row[i] -= f * row[k]
    return pos - neg


def signature_from_diagram(d):
    """Signature of the knot presented by a 1-component diagram."""
    components, _ = d.orientation()
    if len(components) != 1:
        raise Unsupported("signature is computed for knots (1 component) only")
    if d.n == 0:
        return 0
    edges, faces = _white_graph(d)
    comps = _components(len(faces), edges)
    if len(comps) != 2:
        raise Unsupported("split diagram has no checkerboard coloring")
    chosen = set(comps[0])
    kept = [e for e in edges if e[0] in chosen and e[1] in chosen]
    goeritz = _goeritz(chosen, kept)
    signs = d.crossing_signs()
    correction = sum(s for _, _, s, ci in kept if s == signs[ci])
    return _sym_signature(goeritz) + correction
