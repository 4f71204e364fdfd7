"""Straight-line drawings: crossing tests and rotation systems from coordinates."""

import math
from itertools import combinations


def _cross(o, p, q):
    return (p[0] - o[0]) * (q[1] - o[1]) - (p[1] - o[1]) * (q[0] - o[0])


def segments_cross(p1, p2, q1, q2):
    """Proper crossing of two segments (touching at an endpoint does not count)."""
    d1, d2 = _cross(q1, q2, p1), _cross(q1, q2, p2)
    d3, d4 = _cross(p1, p2, q1), _cross(p1, p2, q2)
    return d1 * d2 < 0 and d3 * d4 < 0


def crossing_pairs(coords, edges):
    """Pairs of edge ids whose straight segments cross; edges are (id, u, v)."""
    out = []
    for (e, t, h), (f, u, w) in combinations(edges, 2):
        if {t, h} & {u, w}:
            continue
        if segments_cross(coords[t], coords[h], coords[u], coords[w]):
            out.append((e, f))
    return out


def rotation_from_coords(coords, edges, vertices):
    """Counterclockwise order of incident edge ids around each listed vertex."""
    rot = {}
    for v in vertices:
        ends = []
        for e, t, h in edges:
            if v in (t, h):
                other = h if t == v else t
                ends.append((math.atan2(coords[other][1] - coords[v][1], coords[other][0] - coords[v][0]), e))
        rot[v] = [e for _, e in sorted(ends)]
    return rot


def clockwise_order(coords, vertices, start):
    cx = sum(coords[v][0] for v in vertices) / len(vertices)
    cy = sum(coords[v][1] for v in vertices) / len(vertices)
    order = sorted(vertices, key=lambda v: -math.atan2(coords[v][1] - cy, coords[v][0] - cx))
    i = order.index(start)
    return order[i:] + order[:i]
