"""Directed graphs, paths, walks and loop-erasure.

Checks provided here:

* ``lindstrom_check``: signed sum over vertex-disjoint path families equals
  the determinant of the path-sum matrix (acyclic graphs only).
* ``fomin_check``: signed sum over loop-erased-disjoint walk families equals
  the determinant of the walk-sum matrix, compared as power series
  truncated at a total-degree bound.
* ``stembridge_check``: the Pfaffian companion of either, summing over
  increasing tuples drawn from an ordered target set.

All enumeration is deterministic: out-edges are visited in edge-id order.
"""

from __future__ import annotations

from collections import namedtuple
from dataclasses import dataclass
from itertools import combinations

from .errors import NotAcyclic, UnknownVertex
from .linalg import RingMatrix, SkewMatrix, determinant, pfaffian_matchings, permutations_with_sign
from .report import SubCheck, VerificationReport, timed
from .ring import Polynomial, RationalFunction, Ring

Edge = namedtuple("Edge", "id tail head")


class Digraph:
    """Weighted directed multigraph; each edge id doubles as its formal variable."""

    def __init__(self, vertices, edges, weights=None):
        self.vertices = tuple(str(v) for v in vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex ids")
        vset = set(self.vertices)
        self.edges = tuple(Edge(str(e), str(t), str(h)) for e, t, h in edges)
        ids = [e.id for e in self.edges]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate edge ids")
        for e in self.edges:
            if e.tail not in vset or e.head not in vset:
                raise UnknownVertex(f"edge {e.id} has an endpoint outside the vertex list")
        weights = dict(weights or {})
        self.overrides = {str(k): v for k, v in weights.items()}
        self.ring = Ring(e.id for e in self.edges if e.id not in self.overrides)
        self.weight = {}
        for e in self.edges:
            if e.id in self.overrides:
                self.weight[e.id] = Polynomial.constant(self.overrides[e.id], self.ring)
            else:
                self.weight[e.id] = Polynomial.variable(e.id, self.ring)
        self.edge = {e.id: e for e in self.edges}
        self.out_edges = {v: [] for v in self.vertices}
        for e in sorted(self.edges, key=lambda e: e.id):
            self.out_edges[e.tail].append(e)

    def __repr__(self):
        return f"Digraph({len(self.vertices)} vertices, {len(self.edges)} edges)"

    @property
    def formal(self):
        return not self.overrides

    def check_vertex(self, *vs):
        for v in vs:
            if str(v) not in self.out_edges:
                raise UnknownVertex(f"unknown vertex {v!r}")

    def topological_order(self):
        """Kahn's algorithm; returns None when a directed cycle exists."""
        indeg = {v: 0 for v in self.vertices}
        for e in self.edges:
            indeg[e.head] += 1
        ready = [v for v in self.vertices if indeg[v] == 0]
        order = []
        while ready:
            v = ready.pop(0)
            order.append(v)
            for e in self.out_edges[v]:
                indeg[e.head] -= 1
                if indeg[e.head] == 0:
                    ready.append(e.head)
        return order if len(order) == len(self.vertices) else None

    def is_acyclic(self):
        return self.topological_order() is not None

    def require_acyclic(self):
        if not self.is_acyclic():
            raise NotAcyclic("graph has a directed cycle")

    def walk_weight(self, walk):
        w = Polynomial.constant(1, self.ring)
        for eid in walk.edges:
            w = w * self.weight[eid]
        return w


@dataclass(frozen=True)
class Walk:
    vertices: tuple
    edges: tuple

    @property
    def start(self):
        return self.vertices[0]

    @property
    def end(self):
        return self.vertices[-1]

    def __len__(self):
        return len(self.edges)

    def is_path(self):
        return len(set(self.vertices)) == len(self.vertices)

    @classmethod
    def from_edges(cls, g, start, edge_ids):
        vs = [str(start)]
        for eid in edge_ids:
            e = g.edge[eid]
            if e.tail != vs[-1]:
                raise ValueError(f"edge {eid} does not continue the walk at {vs[-1]}")
            vs.append(e.head)
        return cls(tuple(vs), tuple(edge_ids))

    def __str__(self):
        return "".join(self.edges) if self.edges else "ε"


def loop_erase(w):
    """Chronological loop-erasure: cut each cycle the moment it closes."""
    vs = [w.vertices[0]]
    es = []
    pos = {vs[0]: 0}
    for eid, v in zip(w.edges, w.vertices[1:]):
        if v in pos:
            p = pos[v]
            for dropped in vs[p + 1:]:
                del pos[dropped]
            del vs[p + 1:]
            del es[p:]
        else:
            pos[v] = len(vs)
            vs.append(v)
            es.append(eid)
    return Walk(tuple(vs), tuple(es))


# paths

def enumerate_paths(g, a, b):
    """All vertex-simple directed paths a -> b, including the empty path when a == b."""
    a, b = str(a), str(b)
    g.check_vertex(a, b)
    out = []

    def dfs(v, vs, es, seen):
        if v == b:
            out.append(Walk(tuple(vs), tuple(es)))
            return
        for e in g.out_edges[v]:
            if e.head not in seen:
                seen.add(e.head)
                vs.append(e.head)
                es.append(e.id)
                dfs(e.head, vs, es, seen)
                es.pop()
                vs.pop()
                seen.discard(e.head)

    dfs(a, [a], [], {a})
    return out


def path_sum(g, a, b):
    total = Polynomial({}, g.ring)
    for p in enumerate_paths(g, a, b):
        total = total + g.walk_weight(p)
    return total


def _family_search(options, mode, budget=None):
    """Yield families (one walk per slot) obeying the disjointness rule of ``mode``.

    ``options[i]`` lists candidate walks for slot i, sorted by length.
    In ``paths`` mode families are pairwise vertex-disjoint; in ``walks``
    mode each walk must avoid the loop-erasures of all earlier walks.
    """
    k = len(options)
    if k == 0:
        yield ()
        return
    if any(not opts for opts in options):
        return
    min_len = [len(opts[0]) for opts in options]
    tail_min = [0] * (k + 1)
    for i in range(k - 1, -1, -1):
        tail_min[i] = tail_min[i + 1] + min_len[i]
    if budget is not None and tail_min[0] > budget:
        return
    blocks = [[set(w.vertices) if mode == "paths" else set(loop_erase(w).vertices) for w in opts]
              for opts in options]
    vsets = [[set(w.vertices) for w in opts] for opts in options]
    chosen = []

    def rec(i, forbidden, used):
        if i == k:
            yield tuple(chosen)
            return
        for idx, w in enumerate(options[i]):
            if budget is not None and used + len(w) + tail_min[i + 1] > budget:
                break
            if vsets[i][idx] & forbidden:
                continue
            chosen.append(w)
            yield from rec(i + 1, forbidden | blocks[i][idx], used + len(w))
            chosen.pop()

    yield from rec(0, set(), 0)


def disjoint_path_families(g, a, b):
    """Families (p_1..p_k), p_i: a_i -> b_i, pairwise vertex-disjoint."""
    a, b = _tuples(g, a, b)
    options = [sorted(enumerate_paths(g, x, y), key=len) for x, y in zip(a, b)]
    return list(_family_search(options, "paths"))


def _tuples(g, a, b):
    a = tuple(str(x) for x in a)
    b = tuple(str(x) for x in b)
    if len(a) != len(b):
        raise ValueError("source and target tuples differ in length")
    g.check_vertex(*a, *b)
    return a, b


def _family_weight(g, fam):
    w = Polynomial.constant(1, g.ring)
    for walk in fam:
        w = w * g.walk_weight(walk)
    return w


def signed_path_sum(g, a, b):
    """Sum over permutations of sign times disjoint-family weights."""
    a, b = _tuples(g, a, b)
    k = len(a)
    cache = {(x, y): sorted(enumerate_paths(g, x, y), key=len) for x in set(a) for y in set(b)}
    total = Polynomial({}, g.ring)
    for sigma, sign in permutations_with_sign(k):
        options = [cache[a[i], b[sigma[i]]] for i in range(k)]
        for fam in _family_search(options, "paths"):
            total = total + _family_weight(g, fam) * sign
    return total


def path_matrix(g, a, b):
    return RingMatrix([[path_sum(g, x, y) for y in b] for x in a], list(a), list(b))


def lindstrom_check(g, a, b):
    a, b = _tuples(g, a, b)
    g.require_acyclic()
    with timed() as t:
        lhs = signed_path_sum(g, a, b)
        rhs = determinant(path_matrix(g, a, b))
    return VerificationReport.compare("lindstrom", {"a": a, "b": b}, lhs, rhs, seconds=t["seconds"])


# walks

def adjacency_matrix(g):
    idx = {v: i for i, v in enumerate(g.vertices)}
    n = len(g.vertices)
    rows = [[Polynomial({}, g.ring) for _ in range(n)] for _ in range(n)]
    for e in g.edges:
        i, j = idx[e.tail], idx[e.head]
        rows[i][j] = rows[i][j] + g.weight[e.id]
    return rows


def _walk_denominator_and_minor(g):
    n = len(g.vertices)
    adj = adjacency_matrix(g)
    one = Polynomial.constant(1, g.ring)
    m = [[(one if i == j else 0) - adj[i][j] for j in range(n)] for i in range(n)]
    return m


def walk_sum_exact(g, a, b):
    """Entry (a, b) of (I - A)^{-1}: the generating function of all walks a -> b."""
    a, b = str(a), str(b)
    g.check_vertex(a, b)
    m = _walk_denominator_and_minor(g)
    idx = {v: i for i, v in enumerate(g.vertices)}
    i, j = idx[a], idx[b]
    n = len(m)
    d = determinant(m)
    # (M^-1)_{ij} = (-1)^{i+j} det(M without row j, column i) / det M
    minor = [[m[r][c] for c in range(n) if c != i] for r in range(n) if r != j]
    cof = determinant(minor)
    if (i + j) % 2:
        cof = -cof
    return cof / d


def walk_matrix(g, a, b):
    """Matrix (W(a_i, b_j)) sharing one denominator det(I - A)."""
    m = _walk_denominator_and_minor(g)
    idx = {v: i for i, v in enumerate(g.vertices)}
    n = len(m)
    inv_d = determinant(m).inverse()
    rows = []
    for x in a:
        row = []
        for y in b:
            i, j = idx[str(x)], idx[str(y)]
            minor = [[m[r][c] for c in range(n) if c != i] for r in range(n) if r != j]
            cof = determinant(minor)
            row.append((-cof if (i + j) % 2 else cof) * inv_d)
        rows.append(row)
    return RingMatrix(rows, [str(x) for x in a], [str(y) for y in b])


def walks_from(g, a, d):
    """All walks starting at ``a`` with at most ``d`` edges (including the empty walk)."""
    a = str(a)
    g.check_vertex(a)
    out = []

    def dfs(vs, es):
        out.append(Walk(tuple(vs), tuple(es)))
        if len(es) == d:
            return
        for e in g.out_edges[vs[-1]]:
            vs.append(e.head)
            es.append(e.id)
            dfs(vs, es)
            es.pop()
            vs.pop()

    dfs([a], [])
    return out


def enumerate_walks_bounded(g, a, b, d):
    if d < 0:
        raise ValueError("degree bound must be >= 0")
    b = str(b)
    g.check_vertex(b)
    return [w for w in walks_from(g, a, d) if w.end == b]


class _WalkCatalog:
    """Per-call cache of bounded walks keyed by (start, end)."""

    def __init__(self, g, d):
        self.g, self.d = g, d
        self._by_start = {}

    def get(self, a, b):
        if a not in self._by_start:
            grouped = {}
            for w in walks_from(self.g, a, self.d):
                grouped.setdefault(w.end, []).append(w)
            for ws in grouped.values():
                ws.sort(key=len)
            self._by_start[a] = grouped
        return self._by_start[a].get(b, [])


@dataclass(frozen=True)
class WalkFamilySpec:
    a: tuple
    b: tuple
    mode: str = "paths"
    degree_bound: int | None = None

    def __post_init__(self):
        if len(self.a) != len(self.b):
            raise ValueError("source and target tuples differ in length")
        if self.mode not in ("paths", "walks"):
            raise ValueError(f"unknown mode {self.mode!r}")

    def validate(self, g):
        if self.mode == "walks":
            if self.degree_bound is None and not g.is_acyclic():
                raise ValueError("walk families on a cyclic graph need a degree bound")
            if self.degree_bound is not None and not g.formal:
                raise ValueError("degree truncation needs formal edge weights")
        elif not g.is_acyclic():
            raise NotAcyclic("path families are only summed on acyclic graphs")


def _signed_family_sum(g, a, b, mode, d, catalog=None):
    k = len(a)
    if mode == "walks":
        catalog = catalog or _WalkCatalog(g, d if d is not None else len(g.edges))
        fetch = catalog.get
        budget = d
    else:
        cache = {}

        def fetch(x, y):
            if (x, y) not in cache:
                cache[x, y] = sorted(enumerate_paths(g, x, y), key=len)
            return cache[x, y]

        budget = None
    total = Polynomial({}, g.ring)
    for sigma, sign in permutations_with_sign(k):
        options = [fetch(a[i], b[sigma[i]]) for i in range(k)]
        for fam in _family_search(options, mode, budget):
            total = total + _family_weight(g, fam) * sign
    return total


def signed_walk_sum(g, a, b, d):
    """Signed sum over loop-erased-disjoint walk families with at most ``d`` edges in total."""
    a, b = _tuples(g, a, b)
    spec = WalkFamilySpec(a, b, "walks", d)
    spec.validate(g)
    return _signed_family_sum(g, a, b, "walks", d)


def fomin_check(g, a, b, d):
    a, b = _tuples(g, a, b)
    if not g.formal:
        raise ValueError("degree truncation needs formal edge weights")
    with timed() as t:
        lhs = signed_walk_sum(g, a, b, d)
        exact = determinant(walk_matrix(g, a, b))
        rhs = exact.series(d)
    note = SubCheck("det(W) exact, expanded as rhs", str(exact), f"series to degree {d}", True)
    return VerificationReport.compare("fomin", {"a": a, "b": b, "degree": d}, lhs, rhs,
                                      details=[note], seconds=t["seconds"])


def is_compatible(g, A, B):
    """Every path A[i] -> B[j'] meets every path A[i'] -> B[j] when i < i' and j < j'."""
    A = [str(x) for x in A]
    B = [str(x) for x in B]
    g.check_vertex(*A, *B)
    cache = {}

    def paths(x, y):
        if (x, y) not in cache:
            cache[x, y] = [set(p.vertices) for p in enumerate_paths(g, x, y)]
        return cache[x, y]

    for i, i2 in combinations(range(len(A)), 2):
        for j, j2 in combinations(range(len(B)), 2):
            for p in paths(A[i], B[j2]):
                for q in paths(A[i2], B[j]):
                    if not (p & q):
                        return False
    return True


def stembridge_q(g, a, B, mode="paths", d=None, signed=True):
    """Sum of family sums over strictly increasing tuples of the ordered set B.

    ``signed=False`` in paths mode gives the unsigned sum of disjoint path
    families, which agrees with the signed one when ``a`` is compatible with B.
    """
    a = tuple(str(x) for x in a)
    B = tuple(str(x) for x in B)
    if len(set(B)) != len(B):
        raise ValueError("ordered target set has duplicates")
    g.check_vertex(*a, *B)
    WalkFamilySpec(a, a, mode, d).validate(g)
    k = len(a)
    catalog = _WalkCatalog(g, d) if mode == "walks" else None
    total = Polynomial({}, g.ring)
    for bt in combinations(B, k):
        if mode == "paths" and not signed:
            for fam in disjoint_path_families(g, a, bt):
                total = total + _family_weight(g, fam)
        else:
            total = total + _signed_family_sum(g, a, bt, mode, d, catalog)
    return total


def stembridge_check(g, a, B, mode="paths", d=None):
    a = tuple(str(x) for x in a)
    B = tuple(str(x) for x in B)
    if len(a) % 2:
        raise ValueError("the Pfaffian relation needs an even number of sources")
    with timed() as t:
        lhs = stembridge_q(g, a, B, mode, d)
        k = len(a)
        upper = {}
        for i in range(k):
            for j in range(i + 1, k):
                upper[i, j] = stembridge_q(g, (a[i], a[j]), B, mode, d)
        pf = pfaffian_matchings(SkewMatrix(k, upper))
        rhs = pf.series(d) if mode == "walks" else pf
    details = []
    if mode == "paths":
        compat = is_compatible(g, a, B)
        details.append(SubCheck("compatible with B (diagnostic, not a hypothesis)", str(compat), "-", True))
    name = "stembridge" if mode == "paths" else "stembridge-walks"
    inputs = {"a": a, "B": B} if mode == "paths" else {"a": a, "B": B, "degree": d}
    return VerificationReport.compare(name, inputs, lhs, rhs, details, seconds=t["seconds"])


def as_minor_family(g, A, B, mode="paths"):
    """Tables of single path sums (acyclic) or exact walk sums, for the det-to-Pfaffian transform."""
    from .det2pf import MinorFamily

    if mode == "paths":
        g.require_acyclic()
        table = {(x, y): RationalFunction(path_sum(g, x, y)) for x in A for y in B}
    else:
        wm = walk_matrix(g, A, B)
        table = {(x, y): wm[str(x), str(y)] for x in A for y in B}
    return MinorFamily([str(x) for x in A], [str(y) for y in B],
                       {(str(x), str(y)): v for (x, y), v in table.items()})
