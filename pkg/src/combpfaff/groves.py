"""Groves on undirected graphs-with-boundary.

A grove is a spanning forest in which every tree touches the boundary; it
induces a partition of the boundary vertices.  Grove sums normalised by
``Z`` (the singleton-partition sum) satisfy the determinant relation, with
the one-point values read off the response matrix (the Schur complement of
the Kirchhoff matrix onto the boundary).
"""

from __future__ import annotations

import os
from collections import namedtuple
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import _kernels
from .det2pf import MinorFamily, pfaffian_principle_check
from .errors import EnumerationTooLarge, NotBoundaryVertex, OverlappingTuples, ValidationError
from .linalg import RingMatrix, SkewMatrix, determinant, pfaffian_matchings, permutations_with_sign
from .report import VerificationReport, sub_check, timed
from .ring import Polynomial, RationalFunction, Ring

UEdge = namedtuple("UEdge", "id u v")

DEFAULT_MAX_EDGES = 20


def max_edges_from_env():
    return int(os.environ.get("COMBPFAFF_MAX_EDGES", DEFAULT_MAX_EDGES))


class GraphWithBoundary:
    def __init__(self, vertices, boundary, edges, weights=None):
        self.vertices = tuple(str(v) for v in vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise ValidationError("duplicate vertex ids")
        self.boundary = tuple(str(v) for v in boundary)
        vset = set(self.vertices)
        problems = []
        if len(set(self.boundary)) != len(self.boundary):
            problems.append("boundary list has duplicates")
        problems += [f"boundary vertex {v!r} is not a vertex" for v in self.boundary if v not in vset]
        self.interior = tuple(v for v in self.vertices if v not in set(self.boundary))
        self.edges = tuple(UEdge(str(e), str(u), str(v)) for e, u, v in edges)
        ids = [e.id for e in self.edges]
        if len(set(ids)) != len(ids):
            problems.append("duplicate edge ids")
        problems += [f"edge {e.id} has an endpoint outside the vertex list"
                     for e in self.edges if e.u not in vset or e.v not in vset]
        if problems:
            raise ValidationError(problems)
        self.overrides = {str(k): v for k, v in dict(weights or {}).items()}
        self.ring = Ring(e.id for e in self.edges if e.id not in self.overrides)
        self.weight = {e.id: (Polynomial.constant(self.overrides[e.id], self.ring) if e.id in self.overrides
                              else Polynomial.variable(e.id, self.ring)) for e in self.edges}
        self.index = {v: i for i, v in enumerate(self.vertices)}
        lonely = self._components_without_boundary()
        if lonely:
            raise ValidationError([f"component {sorted(c)} has no boundary vertex" for c in lonely])

    def _components_without_boundary(self):
        parent = {v: v for v in self.vertices}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in self.edges:
            parent[find(e.u)] = find(e.v)
        comps = {}
        for v in self.vertices:
            comps.setdefault(find(v), set()).add(v)
        bset = set(self.boundary)
        return [c for c in comps.values() if not (c & bset)]

    def __repr__(self):
        return (f"GraphWithBoundary({len(self.vertices)} vertices, {len(self.boundary)} boundary, "
                f"{len(self.edges)} edges)")

    def check_boundary(self, *vs):
        bset = set(self.boundary)
        for v in vs:
            if str(v) not in bset:
                raise NotBoundaryVertex(f"{v!r} is not a boundary vertex")


@dataclass(frozen=True)
class Grove:
    edges: frozenset
    partition: tuple


def kirchhoff(g):
    """Weighted Laplacian over all vertices (loops contribute nothing)."""
    n = len(g.vertices)
    zero = Polynomial({}, g.ring)
    K = [[zero] * n for _ in range(n)]
    for e in g.edges:
        if e.u == e.v:
            continue
        i, j = g.index[e.u], g.index[e.v]
        w = g.weight[e.id]
        K[i][j] = K[i][j] - w
        K[j][i] = K[j][i] - w
        K[i][i] = K[i][i] + w
        K[j][j] = K[j][j] + w
    return RingMatrix(K, g.vertices, g.vertices)


def _edge_arrays(g, max_edges):
    limit = max_edges_from_env() if max_edges is None else max_edges
    m = len(g.edges)
    if m > min(limit, _kernels.MAX_KERNEL_EDGES):
        raise EnumerationTooLarge(f"{m} edges exceeds the enumeration cap {limit} "
                                  "(raise COMBPFAFF_MAX_EDGES)")
    eu = np.array([g.index[e.u] for e in g.edges], dtype=np.int64)
    ev = np.array([g.index[e.v] for e in g.edges], dtype=np.int64)
    return eu, ev


def _partition_masks(g, parts, max_edges=None):
    """Masks of all groves whose induced boundary partition is exactly ``parts``."""
    eu, ev = _edge_arrays(g, max_edges)
    label = np.full(len(g.vertices), -1, dtype=np.int64)
    for pid, part in enumerate(parts):
        for v in part:
            label[g.index[v]] = pid
    need = len(g.vertices) - len(parts)
    if need < 0:
        return np.empty(0, dtype=np.int64)
    return _kernels.grove_masks(len(g.vertices), eu, ev, label, need)


def masks_to_polynomial(g, masks, coeffs=None, edge_ids=None):
    """Sum of edge-weight products over the given edge-subset masks."""
    edge_ids = edge_ids if edge_ids is not None else [e.id for e in g.edges]
    mono = []
    scal = []
    for eid in edge_ids:
        w = g.weight[eid]
        if len(w.terms) != 1:
            raise ValueError(f"edge {eid} weight is not a monomial")
        (m, c), = w.terms.items()
        mono.append(m)
        scal.append(c)
    all_unit = all(c == 1 for c in scal)
    terms = {}
    for idx, mask in enumerate(masks):
        mask = int(mask)
        m = 0
        c = 1 if coeffs is None else coeffs[idx]
        i = 0
        while mask:
            if mask & 1:
                m += mono[i]
                if not all_unit:
                    c = c * scal[i]
            mask >>= 1
            i += 1
        terms[m] = terms.get(m, 0) + c
    return Polynomial._clean(terms, g.ring)


def _mask_edges(g, mask):
    mask = int(mask)
    return frozenset(e.id for i, e in enumerate(g.edges) if mask >> i & 1)


def _singleton_parts(g):
    return [(v,) for v in g.boundary]


def _pair_parts(g, a, b):
    """Parts {a_i, b_i} plus singletons, or None when a tuple repeats a vertex."""
    a = tuple(str(x) for x in a)
    b = tuple(str(x) for x in b)
    if len(a) != len(b):
        raise ValueError("tuples differ in length")
    g.check_boundary(*a, *b)
    if set(a) & set(b):
        raise OverlappingTuples(f"source tuple {a} and target tuple {b} share vertices")
    if len(set(a)) != len(a) or len(set(b)) != len(b):
        return None
    paired = set(a) | set(b)
    return [(x, y) for x, y in zip(a, b)] + [(v,) for v in g.boundary if v not in paired]


def enumerate_groves(g, a, b, max_edges=None):
    parts = _pair_parts(g, a, b)
    if parts is None:
        return []
    masks = _partition_masks(g, parts, max_edges)
    partition = tuple(frozenset(p) for p in parts)
    return [Grove(_mask_edges(g, m), partition) for m in masks]


def tree_groves(g, max_edges=None):
    """Groves inducing the all-singletons partition."""
    parts = _singleton_parts(g)
    partition = tuple(frozenset(p) for p in parts)
    return [Grove(_mask_edges(g, m), partition) for m in _partition_masks(g, parts, max_edges)]


def z_singleton(g, method="enumerate", max_edges=None):
    """Singleton-partition grove sum, by enumeration or as det of the interior Kirchhoff block."""
    if method == "enumerate":
        return masks_to_polynomial(g, _partition_masks(g, _singleton_parts(g), max_edges))
    if method == "det":
        K = kirchhoff(g)
        return determinant(K.submatrix(g.interior, g.interior)).num
    raise ValueError(f"unknown method {method!r}")


def glued_spanning_tree_sum(g):
    """Spanning-tree sum of the graph with all boundary vertices identified.

    Brute force over edge subsets of the right size; kept independent of
    the grove kernel on purpose.
    """
    bset = set(g.boundary)
    node = {v: ("∂" if v in bset else v) for v in g.vertices}
    nodes = sorted(set(node.values()))
    edges = [(e.id, node[e.u], node[e.v]) for e in g.edges if node[e.u] != node[e.v]]
    need = len(nodes) - 1
    total = Polynomial({}, g.ring)
    for subset in combinations(range(len(edges)), need):
        parent = {x: x for x in nodes}

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x

        ok = True
        for i in subset:
            ru, rv = find(edges[i][1]), find(edges[i][2])
            if ru == rv:
                ok = False
                break
            parent[ru] = rv
        if ok:
            w = Polynomial.constant(1, g.ring)
            for i in subset:
                w = w * g.weight[edges[i][0]]
            total = total + w
    return total


def lemma_z_check(g, max_edges=None):
    """Grove enumeration vs det(K_int) vs the glued spanning-tree sum."""
    with timed() as t:
        lhs = z_singleton(g, "enumerate", max_edges)
        rhs = z_singleton(g, "det")
        glued = glued_spanning_tree_sum(g)
    details = [sub_check("glued spanning trees", glued, lhs)]
    return VerificationReport.compare("grove-z", {"edges": len(g.edges), "boundary": list(g.boundary)},
                                      lhs, rhs, details, seconds=t["seconds"])


class GroveSums:
    """Per-call cache of the normaliser Z and raw grove sums."""

    def __init__(self, g, max_edges=None):
        self.g = g
        self.max_edges = max_edges
        self.z = z_singleton(g, "enumerate", max_edges)
        self._raw = {}

    def raw(self, a, b):
        key = (tuple(a), tuple(b))
        if key not in self._raw:
            parts = _pair_parts(self.g, a, b)
            if parts is None:
                self._raw[key] = Polynomial({}, self.g.ring)
            else:
                self._raw[key] = masks_to_polynomial(self.g, _partition_masks(self.g, parts, self.max_edges))
        return self._raw[key]

    def signed_raw(self, a, b):
        a = tuple(str(x) for x in a)
        b = tuple(str(x) for x in b)
        total = Polynomial({}, self.g.ring)
        for sigma, sign in permutations_with_sign(len(a)):
            total = total + self.raw(a, tuple(b[s] for s in sigma)) * sign
        return total

    def g_k(self, a, b):
        return RationalFunction(self.raw(tuple(map(str, a)), tuple(map(str, b))), self.z)

    def g_tilde(self, a, b):
        return RationalFunction(self.signed_raw(a, b), self.z)


def grove_sum(g, a, b, max_edges=None):
    """Normalised grove sum for the partition {a_i, b_i} + singletons."""
    return GroveSums(g, max_edges).g_k(a, b)


def grove_signed_sum(g, a, b, max_edges=None):
    return GroveSums(g, max_edges).g_tilde(a, b)


def response_matrix(g):
    """Schur complement of the Kirchhoff matrix onto the boundary.

    Entry (a, b) is computed as det of the interior block bordered by row a
    and column b, divided by det of the interior block.
    """
    K = kirchhoff(g)
    inner = list(g.interior)
    bnd = list(g.boundary)
    z = determinant(K.submatrix(inner, inner))
    if not z:
        from .errors import Singular

        raise Singular("interior Kirchhoff block is singular")
    inv_z = z.inverse()
    out = [[None] * len(bnd) for _ in bnd]
    for i, a in enumerate(bnd):
        for j in range(i, len(bnd)):
            b = bnd[j]
            bordered = K.submatrix(inner + [a], inner + [b])
            val = determinant(bordered) * inv_z
            out[i][j] = val
            out[j][i] = val
    return RingMatrix(out, bnd, bnd)


def grove_determinant_check(g, a, b, sums=None, lam=None):
    """Enumerated normalised signed grove sum against the determinant of one-point values.

    The one-point values come from the response matrix; sub-checks compare
    them entrywise with enumeration and test det(Lambda minor) = (-1)^k G~_k.
    """
    a = tuple(str(x) for x in a)
    b = tuple(str(x) for x in b)
    k = len(a)
    with timed() as t:
        sums = sums or GroveSums(g)
        lam = lam if lam is not None else response_matrix(g)
        lhs = sums.g_tilde(a, b)
        g1 = RingMatrix([[-lam[x, y] for y in b] for x in a], a, b)
        rhs = determinant(g1)
        details = []
        for x in dict.fromkeys(a):
            for y in dict.fromkeys(b):
                details.append(sub_check(f"-Lambda[{x},{y}] = G~1({x},{y})", -lam[x, y], sums.g_tilde((x,), (y,))))
        cm = determinant(lam.submatrix(a, b))
        details.append(sub_check("det(Lambda_ab) = (-1)^k G~_k", cm, lhs if k % 2 == 0 else -lhs))
    return VerificationReport.compare("grove-det", {"a": a, "b": b}, lhs, rhs, details, seconds=t["seconds"])


def grove_minor_family(g, A, B, sums=None):
    sums = sums or GroveSums(g)
    table = {(x, y): sums.g_tilde((x,), (y,)) for x in A for y in B}
    return MinorFamily(list(A), list(B), table)


def grove_pfaffian_check(g, A, B, a, max_edges=None):
    A = tuple(str(x) for x in A)
    B = tuple(str(x) for x in B)
    a = tuple(str(x) for x in a)
    if set(A) & set(B) or set(A) | set(B) != set(g.boundary) or len(A) + len(B) != len(g.boundary):
        raise ValidationError("A and B must partition the boundary")
    if any(x not in A for x in a):
        raise NotBoundaryVertex(f"tuple {a} is not drawn from A")
    if len(a) % 2:
        raise ValueError("the Pfaffian relation is stated for even k only")
    k = len(a)
    with timed() as t:
        sums = GroveSums(g, max_edges)

        def h(at):
            total = RationalFunction.zero()
            for bt in combinations(B, len(at)):
                total = total + sums.g_tilde(at, bt)
            return total

        lhs = h(a)
        rhs = pfaffian_matchings(SkewMatrix(k, {(i, j): h((a[i], a[j])) for i in range(k) for j in range(i + 1, k)}))
        fam = grove_minor_family(g, A, B, sums)
        via = pfaffian_principle_check(fam, a)
        details = [sub_check("det2pf: R~_k from G~1 minors", via.lhs_value, lhs),
                   sub_check("det2pf: Pf(R~_2) from G~1 minors", via.rhs_value, lhs)]
    return VerificationReport.compare("grove-pf", {"a": a, "A": A, "B": B}, lhs, rhs, details,
                                      seconds=t["seconds"])


def random_graph_with_boundary(seed, n_boundary=None, n_interior=None, max_edges=16):
    """Seeded connected simple graph with labelled boundary b0.. and interior i0.."""
    rng = np.random.default_rng(seed)
    nb = int(rng.integers(3, 7)) if n_boundary is None else n_boundary
    ni = int(rng.integers(1, 5)) if n_interior is None else n_interior
    names = [f"b{i}" for i in range(nb)] + [f"i{i}" for i in range(ni)]
    order = [names[i] for i in rng.permutation(len(names))]
    pairs = []
    for i in range(1, len(order)):
        j = int(rng.integers(0, i))
        pairs.append(tuple(sorted((order[i], order[j]))))
    cap = min(max_edges, len(names) * (len(names) - 1) // 2)
    target = int(rng.integers(len(pairs), cap + 1))
    while len(pairs) < target:
        u, v = rng.choice(len(names), size=2, replace=False)
        pair = tuple(sorted((names[u], names[v])))
        if pair not in pairs:
            pairs.append(pair)
    edges = [(f"e{k}", u, v) for k, (u, v) in enumerate(pairs)]
    return GraphWithBoundary(names, names[:nb], edges)
