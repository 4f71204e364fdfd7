import math
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from combpfaff.digraph import Digraph
from combpfaff.errors import EnumerationTooLarge, NotBoundaryVertex, SourceSinkMismatch, ValidationError
from combpfaff.flows import (PlanarCircularNetwork, FlowSums, validate_network, is_alternating,
                             collision_index, enumerate_flows, all_flows, flow_sum, flow_sign,
                             flow_signed_sum, boundary_measurement_matrix, flow_determinant_check,
                             flow_pfaffian_check, network_from_parts, random_planar_network)
from combpfaff.geometry import crossing_pairs, rotation_from_coords
from combpfaff.graphio import load_fixture
from combpfaff.linalg import determinant
from combpfaff.ring import Polynomial, RationalFunction

from tests import oracles

P = Polynomial.parse

FIG9_FLOW = {"e12_1", "e2_12", "e3_13", "e13_4", "e16_5", "e6_16", "e15_7", "e8_15", "e15_9", "e10_15",
             "e15_12", "e12_16", "e16_15"}


def wheel(spokes=("out", "in", "out", "in")):
    """Hub h, rim r0..r3 (directed cycle), boundary p_i on the ray through r_i; p0, p2 sources."""
    coords = {"h": (0.0, 0.0)}
    edges = []
    for i in range(4):
        t = -i * math.pi / 2
        coords[f"r{i}"] = (math.cos(t), math.sin(t))
        coords[f"p{i}"] = (2 * math.cos(t), 2 * math.sin(t))
        edges.append((f"c{i}", f"r{i}", f"r{(i + 1) % 4}"))
        edges.append((f"s{i}", "h", f"r{i}") if spokes[i] == "out" else (f"s{i}", f"r{i}", "h"))
        edges.append((f"b{i}", f"p{i}", f"r{i}") if i % 2 == 0 else (f"b{i}", f"r{i}", f"p{i}"))
    assert not crossing_pairs(coords, edges)
    inner = ["h"] + [f"r{i}" for i in range(4)]
    return network_from_parts(list(coords), edges, ["p0", "p1", "p2", "p3"], ["p0", "p2"], ["p1", "p3"],
                              rotation_from_coords(coords, edges, inner))


def single_edge():
    return network_from_parts(["a", "b"], [("x", "a", "b")], ["a", "b"], ["a"], ["b"], {})


def two_edge_path():
    return network_from_parts(["a", "v", "b"], [("x", "a", "v"), ("y", "v", "b")], ["a", "b"], ["a"], ["b"],
                              {"v": ["x", "y"]})


# validation

def test_fig9_is_valid(fig9):
    assert validate_network(fig9) == []


def test_boundary_vertex_with_two_edges():
    g = Digraph(["a", "v", "b"], [("x", "a", "v"), ("y", "v", "b"), ("z", "a", "b")])
    with pytest.raises(ValidationError) as info:
        PlanarCircularNetwork(g, ["a", "b"], ["a"], ["b"], {"v": ["x", "y"]})
    assert any("a has 2 incident edges" in p for p in info.value.problems)


def test_rotation_missing_edge():
    g = Digraph(["a", "v", "b"], [("x", "a", "v"), ("y", "v", "b")])
    n = PlanarCircularNetwork(g, ["a", "b"], ["a"], ["b"], {"v": ["x"]}, validate=False)
    problems = validate_network(n)
    assert problems == ["rotation at v is missing edges ['y']"]


def test_other_invariants():
    g = Digraph(["a", "v", "b"], [("x", "v", "a"), ("y", "v", "b")])
    problems = validate_network(PlanarCircularNetwork(g, ["a", "b"], ["a"], ["b", "a"], {"v": ["x", "y"]},
                                                      validate=False))
    assert any("both sources and sinks" in p for p in problems)
    assert any("pointing inward" in p for p in problems)
    loop = Digraph(["a", "v"], [("x", "a", "v"), ("l", "v", "v")])
    problems = validate_network(PlanarCircularNetwork(loop, ["a"], ["a"], [], {"v": ["x", "l"]}, validate=False))
    assert any("loop" in p for p in problems)


# alternation and the collision index

def test_fig9_flow(fig9):
    assert is_alternating(fig9, FIG9_FLOW)
    assert collision_index(fig9, FIG9_FLOW) == 4


def test_empty_flow(fig9):
    assert is_alternating(fig9, set())
    assert collision_index(fig9, set()) == 0


def test_two_inward_edges_adjacent():
    n = wheel()
    # every rim vertex alternates, but s1 and s3 both point into the hub with nothing between them
    f = {"b0", "c0", "s1", "b2", "c2", "s3"}
    assert not is_alternating(n, f)
    assert is_alternating(n, {"b0", "c0", "b1"})
    assert oracles.flow_table(n)[frozenset({"p0"}), frozenset({"p1"})]
    with pytest.raises(ValueError):
        collision_index(n, f)


def test_path_flow_has_theta_zero():
    n = two_edge_path()
    assert is_alternating(n, {"x", "y"}) and collision_index(n, {"x", "y"}) == 0
    assert not is_alternating(n, {"x"})


@pytest.mark.parametrize("name", ["flow-collision", "flow-square", "flow-square5"])
def test_theta_properties(name):
    n = load_fixture(name)
    for f in {f for fs in all_flows(n).values() for f, _ in fs}:
        edges = {e.id for i, e in enumerate(n.edges) if f >> i & 1}
        theta = collision_index(n, edges)
        degrees = [sum(1 for e in n.rotation[v] if e in edges) for v in n.interior]
        assert theta >= 0
        assert (theta == 0) == all(d in (0, 2) for d in degrees)


# enumeration

def test_cons_contains_empty(fig9):
    cons = enumerate_flows(fig9, (), (), max_edges=21)
    assert any(not f.edges for f in cons)
    assert all(f.theta >= 0 for f in cons)


def test_fig9_known_flow(fig9):
    flows = enumerate_flows(fig9, {"2", "3", "6", "8", "10"}, {"1", "4", "5", "7", "9"}, max_edges=21)
    match = [f for f in flows if f.edges == FIG9_FLOW]
    assert len(match) == 1 and match[0].theta == 4


def test_fig9_needs_raised_cap(fig9):
    with pytest.raises(EnumerationTooLarge):
        enumerate_flows(fig9, (), ())


@pytest.mark.parametrize("build", [wheel, lambda: wheel(("in", "in", "out", "out")), two_edge_path,
                                   single_edge])
def test_enumeration_matches_brute_force(build):
    n = build()
    table = oracles.flow_table(n)
    assert all(len(s) == len(t) for s, t in table)
    for k in range(len(n.sources) + 1):
        for src in combinations(n.sources, k):
            for snk in combinations(n.sinks, k):
                mine = {(f.edges, f.theta) for f in enumerate_flows(n, src, snk)}
                assert mine == set(table.get((frozenset(src), frozenset(snk)), []))
    grouped = {key: sorted(v) for key, v in all_flows(n).items()}
    assert sum(map(len, grouped.values())) == sum(map(len, table.values()))


@pytest.mark.parametrize("name", ["flow-collision", "flow-square", "flow-square5"])
def test_fixture_enumeration_matches_brute_force(name):
    n = load_fixture(name)
    table = oracles.flow_table(n)
    sums = FlowSums(n)
    assert all(len(s) == len(t) for s, t in table)
    for (src, snk), flows in table.items():
        assert sums.raw(src, snk) == oracles.flow_weight_sum(n, flows)


def test_source_sink_errors(fig9):
    n = single_edge()
    with pytest.raises(SourceSinkMismatch):
        enumerate_flows(n, {"a"}, ())
    with pytest.raises(NotBoundaryVertex):
        enumerate_flows(n, {"b"}, {"a"})


# sums and signs

def test_trivial_sums():
    n = two_edge_path()
    assert flow_sum(n, (), ()) == 1
    assert flow_sum(n, {"a"}, {"b"}) == P("x*y")
    assert FlowSums(n).c == 1


def test_single_edge_measurement():
    n = single_edge()
    M = boundary_measurement_matrix(n)
    assert M["a", "a"] == 1 and M["a", "b"] == flow_sign(n, ("a",), ("b",)) * P("x")
    assert flow_sign(n, ("a",), ("b",)) == 1


def test_flow_sign_examples(fig9):
    assert flow_sign(fig9, ("2", "3"), ("4", "5")) == 1
    assert flow_sign(fig9, ("3", "2"), ("1", "4")) == -1
    assert flow_sign(fig9, ("2", "3"), ("1", "4")) == 1
    # brute inversion count by hand: 3,2,6,8,10,11 has one inversion; 1,4,6,8,10,11 has none
    assert flow_sign(fig9, ("3", "2"), ("4", "1")) == 1


def test_flow_sign_swap_property():
    n = load_fixture("flow-square")
    for a in combinations(n.sources, 2):
        for b in combinations(n.sinks, 2):
            assert flow_sign(n, a, b) == -flow_sign(n, a[::-1], b)
            assert flow_sign(n, a, b) == -flow_sign(n, a, b[::-1])


def test_signed_sum_rules():
    n = load_fixture("flow-square")
    s, t = n.sources, n.sinks
    assert flow_signed_sum(n, (s[0], s[0]), (t[0], t[1])) == 0
    assert flow_signed_sum(n, (s[0],), (t[1],)) == flow_sign(n, (s[0],), (t[1],)) * flow_sum(n, {s[0]}, {t[1]})


@pytest.mark.parametrize("name", ["flow-collision", "flow-square", "flow-square5"])
def test_normaliser_constant_term(name):
    c = FlowSums(load_fixture(name)).c
    assert c.constant_term() == 1


def test_measurement_matrix_shape():
    n = load_fixture("flow-square")
    M = boundary_measurement_matrix(n)
    for a in n.sources:
        for v in n.sources:
            assert M[a, v] == (1 if a == v else 0)


# determinant and Pfaffian relations

def test_k1_tautology():
    n = load_fixture("flow-square")
    assert flow_determinant_check(n, n.sources[:1], n.sinks[:1]).passed


@pytest.mark.parametrize("name", ["flow-collision", "flow-square", "flow-square5"])
def test_determinant_all_pairs_k2(name):
    n = load_fixture(name)
    sums = FlowSums(n)
    for a in combinations(n.sources, 2):
        for b in combinations(n.sinks, 2):
            lhs = sums.f_tilde(a, b)
            rhs = determinant([[sums.f_tilde((x,), (y,)) for y in b] for x in a])
            assert lhs == rhs


def test_wheel_determinant_and_minors():
    n = wheel()
    r = flow_determinant_check(n, ("p0", "p2"), ("p1", "p3"), minors="all")
    assert r.passed and len(r.details) == 6 and all(d.passed for d in r.details)


def test_collision_factor_is_needed():
    n = load_fixture("flow-collision")
    bad = []
    for a in combinations(n.sources, 2):
        for b in combinations(n.sinks, 2):
            assert flow_determinant_check(n, a, b).passed
            if not flow_determinant_check(n, a, b, collision_factor=False, minors="none").passed:
                bad.append((a, b))
    assert bad


def test_rotating_boundary_start():
    n = load_fixture("flow-square5")
    a, b = n.sources[:2], n.sinks[1:3]
    for start in n.boundary:
        m = n.rotated(start)
        assert m.boundary[0] == start
        assert flow_determinant_check(m, a, b, minors="induced").passed
        assert flow_pfaffian_check(m, m.sources[:2]).passed


def test_pfaffian_checks():
    n = load_fixture("flow-square")
    assert flow_pfaffian_check(n, n.sources[:2]).passed
    r = flow_pfaffian_check(n, n.sources)
    assert r.passed and all(d.passed for d in r.details)
    with pytest.raises(ValueError):
        flow_pfaffian_check(n, n.sources[:3])
    with pytest.raises(NotBoundaryVertex):
        flow_pfaffian_check(n, (n.sources[0], n.sinks[0]))


def test_pfaffian_four_by_five():
    n = load_fixture("flow-square5")
    assert len(n.sources) == 4 and len(n.sinks) == 5
    assert flow_pfaffian_check(n, n.sources).passed


@given(seed=st.integers(0, 5000))
@settings(max_examples=15)
def test_random_networks(seed):
    n = random_planar_network(seed)
    assert validate_network(n) == []
    sums = FlowSums(n)
    for k in range(1, min(3, len(n.sources), len(n.sinks)) + 1):
        a, b = n.sources[:k], n.sinks[-k:]
        assert sums.f_tilde(a, b) == determinant([[sums.f_tilde((x,), (y,)) for y in b] for x in a])


def test_random_network_is_seeded():
    a, b = random_planar_network(4), random_planar_network(4)
    assert a.edges == b.edges and a.boundary == b.boundary and len(a.edges) <= 14
