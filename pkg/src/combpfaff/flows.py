"""Alternating flows on planar circular networks.

A network is a digraph drawn in a disc with the boundary vertices on the
circle, each touching exactly one edge.  The embedding enters only through
the rotation system: for every interior vertex, the counterclockwise cyclic
order of its incident edges.  A flow is alternating when, around every
interior vertex, its edges alternate between pointing in and pointing out.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import _kernels
from .det2pf import MinorFamily, pfaffian_principle_check
from .digraph import Digraph
from .errors import EnumerationTooLarge, NotBoundaryVertex, SourceSinkMismatch, ValidationError
from .geometry import crossing_pairs, rotation_from_coords, segments_cross
from .groves import masks_to_polynomial, max_edges_from_env
from .linalg import RingMatrix, SkewMatrix, determinant, pfaffian_matchings
from .report import VerificationReport, sub_check, timed
from .ring import RationalFunction


def _alternates(signs):
    """True iff the cyclic sequence of +1/-1 strictly alternates (empty counts)."""
    n = len(signs)
    if n == 0:
        return True
    if n % 2:
        return False
    return all(signs[i] != signs[(i + 1) % n] for i in range(n))


def network_problems(digraph, boundary, sources, sinks, rotation):
    """Every violated network invariant, as readable strings."""
    problems = []
    vset = set(digraph.vertices)
    boundary = list(boundary)
    bset = set(boundary)
    if len(bset) != len(boundary):
        problems.append("boundary order lists a vertex twice")
    for v in boundary:
        if v not in vset:
            problems.append(f"boundary vertex {v!r} is not a vertex")
    src, snk = set(sources), set(sinks)
    if src & snk:
        problems.append(f"vertices {sorted(src & snk)} are both sources and sinks")
    if (src | snk) != bset:
        missing = sorted(bset - src - snk)
        extra = sorted((src | snk) - bset)
        if missing:
            problems.append(f"boundary vertices {missing} are neither sources nor sinks")
        if extra:
            problems.append(f"sources/sinks {extra} are not boundary vertices")
    incident = {v: [] for v in digraph.vertices}
    for e in digraph.edges:
        if e.tail == e.head:
            problems.append(f"edge {e.id} is a loop at {e.tail}")
            continue
        incident[e.tail].append(e)
        incident[e.head].append(e)
    for v in boundary:
        if v not in incident:
            continue
        es = incident[v]
        if len(es) != 1:
            problems.append(f"boundary vertex {v} has {len(es)} incident edges, expected 1")
            continue
        e = es[0]
        if v in src and e.tail != v:
            problems.append(f"source {v} has its edge {e.id} pointing inward")
        if v in snk and e.head != v:
            problems.append(f"sink {v} has its edge {e.id} pointing outward")
    for v in rotation:
        if v in bset:
            problems.append(f"rotation given for boundary vertex {v}")
        elif v not in vset:
            problems.append(f"rotation given for unknown vertex {v}")
    for v in digraph.vertices:
        if v in bset:
            continue
        want = sorted(e.id for e in incident[v])
        got = list(rotation.get(v, []))
        if sorted(got) != want:
            lost = sorted(set(want) - set(got))
            dup = sorted({x for x in got if got.count(x) > 1})
            alien = sorted(set(got) - set(want))
            if lost:
                problems.append(f"rotation at {v} is missing edges {lost}")
            if dup:
                problems.append(f"rotation at {v} repeats edges {dup}")
            if alien:
                problems.append(f"rotation at {v} lists non-incident edges {alien}")
    return problems


class PlanarCircularNetwork:
    def __init__(self, digraph, boundary, sources, sinks, rotation, validate=True):
        self.digraph = digraph
        self.boundary = tuple(str(v) for v in boundary)
        self.sources = tuple(v for v in self.boundary if v in set(map(str, sources)))
        self.sinks = tuple(v for v in self.boundary if v in set(map(str, sinks)))
        self.rotation = {str(v): tuple(str(e) for e in es) for v, es in dict(rotation).items()}
        self.problems = network_problems(digraph, self.boundary, list(map(str, sources)),
                                         list(map(str, sinks)), self.rotation)
        if validate and self.problems:
            raise ValidationError(self.problems)
        bset = set(self.boundary)
        self.interior = tuple(v for v in digraph.vertices if v not in bset)
        self.position = {v: i for i, v in enumerate(self.boundary)}
        self.edge_index = {e.id: i for i, e in enumerate(digraph.edges)}
        self.boundary_edge = {}
        for e in digraph.edges:
            for v in (e.tail, e.head):
                if v in bset:
                    self.boundary_edge[v] = e.id

    @property
    def ring(self):
        return self.digraph.ring

    @property
    def edges(self):
        return self.digraph.edges

    @property
    def weight(self):
        return self.digraph.weight

    def __repr__(self):
        return (f"PlanarCircularNetwork({len(self.digraph.vertices)} vertices, {len(self.edges)} edges, "
                f"{len(self.sources)} sources, {len(self.sinks)} sinks)")

    def rotated(self, start):
        """Same network with the boundary order starting at ``start``."""
        i = self.position[str(start)]
        order = self.boundary[i:] + self.boundary[:i]
        return PlanarCircularNetwork(self.digraph, order, self.sources, self.sinks, self.rotation)

    def check_boundary(self, *vs):
        for v in vs:
            if str(v) not in self.position:
                raise NotBoundaryVertex(f"{v!r} is not a boundary vertex")

    def orientation(self, v, eid):
        e = self.digraph.edge[eid]
        return 1 if e.tail == v else -1


def validate_network(n):
    """List of violated invariants (empty when the network is valid)."""
    return list(n.problems)


@dataclass(frozen=True)
class AlternatingFlow:
    edges: frozenset
    sources: frozenset
    sinks: frozenset
    theta: int


def is_alternating(n, f):
    f = set(f)
    for v in n.interior:
        signs = [n.orientation(v, e) for e in n.rotation.get(v, ()) if e in f]
        if not _alternates(signs):
            return False
    return True


def collision_index(n, f):
    if not is_alternating(n, f):
        raise ValueError("collision index is defined for alternating flows only")
    f = set(f)
    theta = 0
    for v in n.interior:
        deg = sum(1 for e in n.rotation.get(v, ()) if e in f)
        if deg:
            theta += deg // 2 - 1
    return theta


def _local_patterns(n, v):
    """(edge mask, theta contribution) for every alternating choice of edges at v."""
    ring = n.rotation.get(v, ())
    signs = [n.orientation(v, e) for e in ring]
    bits = [1 << n.edge_index[e] for e in ring]
    out = []
    for sub in range(1 << len(ring)):
        chosen = [i for i in range(len(ring)) if sub >> i & 1]
        if _alternates([signs[i] for i in chosen]):
            mask = 0
            for i in chosen:
                mask |= bits[i]
            out.append((mask, len(chosen) // 2 - 1 if chosen else 0))
    return out


class _KernelInput:
    def __init__(self, n, max_edges=None):
        limit = max_edges_from_env() if max_edges is None else max_edges
        m = len(n.edges)
        if m > min(limit, _kernels.MAX_KERNEL_EDGES):
            raise EnumerationTooLarge(f"{m} edges exceeds the enumeration cap {limit} "
                                      "(raise COMBPFAFF_MAX_EDGES)")
        inc, start, pmask, ptheta = [], [0], [], []
        for v in n.interior:
            m_v = 0
            for e in n.rotation.get(v, ()):
                m_v |= 1 << n.edge_index[e]
            inc.append(m_v)
            for mask, th in _local_patterns(n, v):
                pmask.append(mask)
                ptheta.append(th)
            start.append(len(pmask))
        self.inc = np.array(inc, dtype=np.int64)
        self.start = np.array(start, dtype=np.int64)
        self.pmask = np.array(pmask, dtype=np.int64)
        self.ptheta = np.array(ptheta, dtype=np.int64)
        self.n_int = len(n.interior)

    def run(self, fixed_mask, fixed_val):
        return _kernels.flow_masks(self.n_int, self.inc, self.start, self.pmask, self.ptheta,
                                   np.int64(fixed_mask), np.int64(fixed_val))


def _boundary_sets(n, sources, sinks):
    sources = frozenset(map(str, sources))
    sinks = frozenset(map(str, sinks))
    n.check_boundary(*sources, *sinks)
    bad = sorted(sources - set(n.sources)) + sorted(sinks - set(n.sinks))
    if bad:
        raise NotBoundaryVertex(f"{bad} are on the wrong side (sources must be in A, sinks in B)")
    if len(sources) != len(sinks):
        raise SourceSinkMismatch(f"{len(sources)} sources but {len(sinks)} sinks")
    return sources, sinks


def _flow_masks(n, sources, sinks, kin=None, max_edges=None):
    kin = kin or _KernelInput(n, max_edges)
    fixed = 0
    val = 0
    used = set(sources) | set(sinks)
    for v in n.boundary:
        bit = 1 << n.edge_index[n.boundary_edge[v]]
        fixed |= bit
        if v in used:
            val |= bit
    return kin.run(fixed, val)


def enumerate_flows(n, sources, sinks, max_edges=None):
    sources, sinks = _boundary_sets(n, sources, sinks)
    masks, thetas = _flow_masks(n, sources, sinks, max_edges=max_edges)
    masks, thetas = _fix_boundary_pairs(n, masks, thetas, sources, sinks)
    out = set()
    for mask, th in zip(masks, thetas):
        edges = frozenset(e.id for i, e in enumerate(n.edges) if int(mask) >> i & 1)
        out.add(AlternatingFlow(edges, sources, sinks, int(th)))
    return out


def _fix_boundary_pairs(n, masks, thetas, sources, sinks):
    """Force edges between two boundary vertices to match the requested endpoints."""
    bb = [e for e in n.edges if e.tail in n.position and e.head in n.position]
    if not bb:
        return masks, thetas
    used = set(sources) | set(sinks)
    add = 0
    for e in bb:
        on_t, on_h = e.tail in used, e.head in used
        if on_t != on_h:
            return np.empty(0, np.int64), np.empty(0, np.int64)
        if on_t:
            add |= 1 << n.edge_index[e.id]
    return masks | np.int64(add), thetas


def all_flows(n, max_edges=None):
    """Every alternating flow, grouped by its (sources, sinks)."""
    kin = _KernelInput(n, max_edges)
    masks, thetas = kin.run(0, 0)
    bb = [e for e in n.edges if e.tail in n.position and e.head in n.position]
    groups = {}
    for mask, th in zip(masks, thetas):
        variants = [int(mask)]
        for e in bb:
            bit = 1 << n.edge_index[e.id]
            variants += [x | bit for x in variants]
        for x in variants:
            src = frozenset(v for v in n.sources if x >> n.edge_index[n.boundary_edge[v]] & 1)
            snk = frozenset(v for v in n.sinks if x >> n.edge_index[n.boundary_edge[v]] & 1)
            groups.setdefault((src, snk), []).append((x, int(th)))
    return groups


class FlowSums:
    """Normaliser C and per-(A', B') flow sums, cached for one network."""

    def __init__(self, n, collision_factor=True, max_edges=None):
        self.n = n
        self.collision_factor = collision_factor
        self.max_edges = max_edges
        self._kin = _KernelInput(n, max_edges)
        self._raw = {}
        self.c = self.raw(frozenset(), frozenset())

    def raw(self, sources, sinks):
        key = (frozenset(sources), frozenset(sinks))
        if key not in self._raw:
            masks, thetas = _flow_masks(self.n, key[0], key[1], self._kin)
            masks, thetas = _fix_boundary_pairs(self.n, masks, thetas, key[0], key[1])
            coeffs = [2 ** int(t) if self.collision_factor else 1 for t in thetas]
            self._raw[key] = masks_to_polynomial(self.n, masks, coeffs)
        return self._raw[key]

    def f_k(self, sources, sinks):
        sources, sinks = _boundary_sets(self.n, sources, sinks)
        return RationalFunction(self.raw(sources, sinks), self.c)

    def f_tilde(self, a, b):
        a = tuple(map(str, a))
        b = tuple(map(str, b))
        if len(a) != len(b):
            raise SourceSinkMismatch("tuples differ in length")
        if len(set(a)) != len(a) or len(set(b)) != len(b):
            return RationalFunction.zero()
        return flow_sign(self.n, a, b) * self.f_k(a, b)


def flow_sum(n, sources, sinks, max_edges=None):
    return FlowSums(n, max_edges=max_edges).f_k(sources, sinks)


def _inversions(seq):
    return sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])


def flow_sign(n, a, b):
    """(-1) to the combined inversion count of a+(A minus a) and b+(A minus a)."""
    a = tuple(map(str, a))
    b = tuple(map(str, b))
    n.check_boundary(*a, *b)
    rest = [v for v in n.sources if v not in set(a)]
    pos = n.position
    inv = _inversions([pos[v] for v in a + tuple(rest)]) + _inversions([pos[v] for v in b + tuple(rest)])
    return -1 if inv % 2 else 1


def flow_signed_sum(n, a, b, max_edges=None):
    return FlowSums(n, max_edges=max_edges).f_tilde(a, b)


def boundary_measurement_matrix(n, sums=None):
    sums = sums or FlowSums(n)
    one, zero = RationalFunction.one(), RationalFunction.zero()
    rows = []
    for a in n.sources:
        row = []
        for v in n.boundary:
            if v in set(n.sources):
                row.append(one if v == a else zero)
            else:
                row.append(sums.f_tilde((a,), (v,)))
        rows.append(row)
    return RingMatrix(rows, list(n.sources), list(n.boundary))


def maximal_minor_checks(n, sums, subsets=None):
    """det(M restricted to columns V') against F(A minus V', V' minus A)."""
    M = boundary_measurement_matrix(n, sums)
    A = set(n.sources)
    if subsets is None:
        subsets = combinations(n.boundary, len(n.sources))
    out = []
    for cols in subsets:
        cols = tuple(sorted(cols, key=n.position.get))
        lhs = determinant(M.submatrix(list(n.sources), list(cols)))
        rhs = sums.f_k(A - set(cols), set(cols) - A)
        out.append(sub_check(f"maximal minor {','.join(cols)}", lhs, rhs))
    return out


def flow_determinant_check(n, a, b, collision_factor=True, minors="auto", max_edges=None):
    """Enumerated signed flow sum against det of one-point values.

    ``minors`` picks which maximal minors of the boundary measurement matrix
    are cross-checked: "all", "induced" (the one selected by a and b), or
    "auto" (all of them when there are at most 70).  With
    ``collision_factor=False`` flows are weighted without 2**theta, which
    breaks the identity on networks with collisions.
    """
    a = tuple(map(str, a))
    b = tuple(map(str, b))
    if len(a) != len(b):
        raise SourceSinkMismatch("tuples differ in length")
    n.check_boundary(*a, *b)
    with timed() as t:
        sums = FlowSums(n, collision_factor, max_edges)
        lhs = sums.f_tilde(a, b)
        rhs = determinant([[sums.f_tilde((x,), (y,)) for y in b] for x in a])
        if minors == "auto":
            total = len(list(combinations(range(len(n.boundary)), len(n.sources))))
            minors = "all" if total <= 70 else "induced"
        if minors == "all":
            details = maximal_minor_checks(n, sums)
        elif minors == "induced" and len(set(a)) == len(a) and len(set(b)) == len(b):
            cols = (set(n.sources) - set(a)) | set(b)
            details = maximal_minor_checks(n, sums, [cols])
        else:
            details = []
    inputs = {"a": a, "b": b}
    if not collision_factor:
        inputs["collision_factor"] = False
    return VerificationReport.compare("flow-det", inputs, lhs, rhs, details, seconds=t["seconds"])


def flow_minor_family(n, sums=None):
    sums = sums or FlowSums(n)
    table = {(x, y): sums.f_tilde((x,), (y,)) for x in n.sources for y in n.sinks}
    return MinorFamily(list(n.sources), list(n.sinks), table)


def flow_pfaffian_check(n, a, max_edges=None):
    a = tuple(map(str, a))
    if len(a) % 2:
        raise ValueError("the Pfaffian relation is stated for even k only")
    bad = [x for x in a if x not in set(n.sources)]
    if bad:
        raise NotBoundaryVertex(f"{bad} are not sources")
    k = len(a)
    with timed() as t:
        sums = FlowSums(n, max_edges=max_edges)

        def e_tilde(at):
            total = RationalFunction.zero()
            for bt in combinations(n.sinks, len(at)):
                total = total + sums.f_tilde(at, bt)
            return total

        lhs = e_tilde(a)
        rhs = pfaffian_matchings(SkewMatrix(k, {(i, j): e_tilde((a[i], a[j]))
                                                for i in range(k) for j in range(i + 1, k)}))
        via = pfaffian_principle_check(flow_minor_family(n, sums), a)
        details = [sub_check("det2pf: R~_k from F~1 minors", via.lhs_value, lhs),
                   sub_check("det2pf: Pf(R~_2) from F~1 minors", via.rhs_value, lhs)]
    return VerificationReport.compare("flow-pf", {"a": a, "B": n.sinks}, lhs, rhs, details,
                                      seconds=t["seconds"])


def network_from_parts(vertices, edges, boundary, sources, sinks, rotation, weights=None, validate=True):
    return PlanarCircularNetwork(Digraph(vertices, edges, weights), boundary, sources, sinks, rotation, validate)


def random_planar_network(seed, n_boundary=None, n_interior=None, max_edges=14):
    """Seeded planar circular network drawn with straight edges in the unit disc.

    Interior points are random; each boundary point is joined to the nearest
    interior point it can reach without a crossing, then interior pairs are
    added in random order whenever they cross nothing.  Orientations are
    random, and the rotation system is read off the drawing.
    """
    rng = np.random.default_rng(seed)
    nb = int(rng.integers(4, 7)) if n_boundary is None else n_boundary
    ni = int(rng.integers(2, 7)) if n_interior is None else n_interior
    while True:
        angles = np.sort(rng.uniform(0, 2 * np.pi, nb))[::-1]
        coords = {f"x{i}": (float(np.cos(t)), float(np.sin(t))) for i, t in enumerate(angles)}
        radius = np.sqrt(rng.uniform(0, 0.6, ni))
        theta = rng.uniform(0, 2 * np.pi, ni)
        for i in range(ni):
            coords[f"v{i}"] = (float(radius[i] * np.cos(theta[i])), float(radius[i] * np.sin(theta[i])))
        bnd = [f"x{i}" for i in range(nb)]
        inner = [f"v{i}" for i in range(ni)]
        segs = []

        def fits(u, w):
            return all(not segments_cross(coords[u], coords[w], coords[p], coords[q])
                       for p, q in segs if not {p, q} & {u, w})

        ok = True
        for b in bnd:
            near = sorted(inner, key=lambda v: (coords[v][0] - coords[b][0]) ** 2 + (coords[v][1] - coords[b][1]) ** 2)
            hit = next((v for v in near if fits(b, v)), None)
            if hit is None:
                ok = False
                break
            segs.append((b, hit))
        if not ok:
            continue
        cand = [(inner[i], inner[j]) for i in range(ni) for j in range(i + 1, ni)]
        for idx in rng.permutation(len(cand)):
            if len(segs) >= max_edges:
                break
            u, w = cand[idx]
            if fits(u, w):
                segs.append((u, w))
        kinds = rng.integers(0, 2, nb)
        if kinds.min() == kinds.max():
            kinds[0] = 1 - kinds[0]
        sources = [b for b, k in zip(bnd, kinds) if k]
        sinks = [b for b, k in zip(bnd, kinds) if not k]
        edges = []
        for k, (u, w) in enumerate(segs):
            if u in sources or (u not in sinks and w not in sinks and rng.integers(0, 2)):
                edges.append((f"e{k}", u, w))
            else:
                edges.append((f"e{k}", w, u))
        assert not crossing_pairs(coords, edges)
        rotation = rotation_from_coords(coords, edges, inner)
        return network_from_parts(list(coords), edges, bnd, sources, sinks, rotation)
