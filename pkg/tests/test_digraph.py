from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from combpfaff.digraph import (Digraph, Walk, enumerate_paths, path_sum, disjoint_path_families,
                               signed_path_sum, lindstrom_check, loop_erase, walk_sum_exact,
                               enumerate_walks_bounded, signed_walk_sum, fomin_check, is_compatible,
                               stembridge_q, stembridge_check, walk_matrix, WalkFamilySpec,
                               as_minor_family)
from combpfaff.errors import NotAcyclic, UnknownVertex
from combpfaff.linalg import determinant
from combpfaff.ring import Polynomial, RationalFunction, ratfun_eq

from tests import oracles

P = Polynomial.parse


def edge_strings(walks):
    return {str(w) for w in walks}


# paths

def test_fig1_paths_2_to_4(fig1):
    assert edge_strings(enumerate_paths(fig1, "2", "4")) == {"ce", "f"}
    assert path_sum(fig1, "2", "4") == P("c*e + f")


def test_empty_path(fig1):
    ps = enumerate_paths(fig1, "3", "3")
    assert len(ps) == 1 and len(ps[0]) == 0
    assert path_sum(fig1, "3", "3") == 1


def test_fig4_single_paths(fig4):
    assert edge_strings(enumerate_paths(fig4, "1", "3")) == {"ab"}
    assert path_sum(fig4, "2", "3") == P("b*c*e*f")


def test_unknown_vertex(fig1):
    with pytest.raises(UnknownVertex):
        enumerate_paths(fig1, "1", "99")
    with pytest.raises(UnknownVertex):
        Digraph(["a"], [("e", "a", "b")])


def test_fig1_disjoint_families(fig1):
    fams = disjoint_path_families(fig1, ("1", "2"), ("3", "4"))
    assert [tuple(str(p) for p in f) for f in fams] == [("ab", "f")]
    assert disjoint_path_families(fig1, ("1", "1"), ("3", "4")) == []


def test_fig1_signed_sum(fig1):
    assert signed_path_sum(fig1, ("1", "2"), ("3", "4")) == P("a*b*f - a*d*e")
    assert signed_path_sum(fig1, (), ()) == 1


def test_fig4_signed_path_sum(fig4):
    assert signed_path_sum(fig4, ("1", "2"), ("3", "4")) == P("a*b*c*e*g")


def test_lindstrom_fig1(fig1):
    r = lindstrom_check(fig1, ("1", "2"), ("3", "4"))
    assert r.passed and r.lhs == r.rhs == "a*b*f - a*d*e"
    assert lindstrom_check(fig1, ("2",), ("4",)).passed


def test_lindstrom_needs_acyclic(fig4):
    with pytest.raises(NotAcyclic):
        lindstrom_check(fig4, ("1", "2"), ("3", "4"))


def grid_dag(n):
    vs = [f"{r}{c}" for r in range(n) for c in range(n)]
    es = []
    for r in range(n):
        for c in range(n):
            if c + 1 < n:
                es.append((f"h{r}{c}", f"{r}{c}", f"{r}{c + 1}"))
            if r + 1 < n:
                es.append((f"v{r}{c}", f"{r}{c}", f"{r + 1}{c}"))
    return Digraph(vs, es, {e[0]: 1 for e in es})


def test_grid_family_count_matches_determinant():
    g = grid_dag(3)
    a, b = ("10", "00"), ("22", "12")
    fams = disjoint_path_families(g, a, b)
    det = determinant([[path_sum(g, x, y) for y in b] for x in a])
    assert len(fams) == det
    assert signed_path_sum(g, a, b) == det


@pytest.mark.parametrize("seed", range(15))
def test_paths_against_oracles(seed):
    g = oracles.random_dag(seed)
    for a in g.vertices[:3]:
        for b in g.vertices[-3:]:
            mine = {p.edges for p in enumerate_paths(g, a, b)}
            assert mine == {es for _, es in oracles.simple_paths(g, a, b)}
            assert path_sum(g, a, b) == oracles.path_sum_dp(g, a, b)


@pytest.mark.parametrize("seed", range(15))
def test_lindstrom_random_dag(seed):
    g = oracles.random_dag(seed)
    a, b = g.vertices[:2], g.vertices[-2:]
    r = lindstrom_check(g, a, b)
    assert r.passed
    assert signed_path_sum(g, a, b) == oracles.signed_family_sum(g, a, b, "paths")


# loop-erasure

def test_loop_erase_fig4(fig4):
    w = Walk.from_edges(fig4, "2", ["c", "e", "f", "d", "e", "g"])
    assert str(loop_erase(w)) == "ceg"


def test_loop_erase_examples(fig4):
    w = Walk.from_edges(fig4, "5", ["d", "e", "f"])
    assert loop_erase(w) == Walk(("5",), ())
    p = enumerate_paths(fig4, "1", "4")[0]
    assert loop_erase(p) == p
    with pytest.raises(ValueError):
        Walk.from_edges(fig4, "1", ["b"])


def test_self_loop_erased():
    g = Digraph(["u", "v"], [("s", "u", "u"), ("t", "u", "v")])
    w = Walk.from_edges(g, "u", ["s", "s", "t"])
    assert str(loop_erase(w)) == "t"
    assert edge_strings(enumerate_walks_bounded(g, "u", "v", 3)) == {"t", "st", "sst"}


@given(seed=st.integers(0, 10_000), d=st.integers(0, 7))
@settings(max_examples=40)
def test_loop_erase_properties(seed, d):
    g = oracles.random_cyclic(seed)
    for w in enumerate_walks_bounded(g, g.vertices[0], g.vertices[-1], d)[:30]:
        le = loop_erase(w)
        assert le.is_path() and le.start == w.start and le.end == w.end
        assert loop_erase(le) == le
        assert le.vertices == oracles.loop_erase_last_exit(w.vertices)


# walks

def test_fig4_walk_sums(fig4):
    assert ratfun_eq(walk_sum_exact(fig4, "1", "3"), RationalFunction(P("a*b"), P("1 - d*e*f")))
    assert ratfun_eq(walk_sum_exact(fig4, "2", "4"), RationalFunction(P("c*e*g"), P("1 - d*e*f")))
    g = Digraph(["x"], [])
    assert walk_sum_exact(g, "x", "x") == 1


def test_fig4_bounded_walks(fig4):
    assert edge_strings(enumerate_walks_bounded(fig4, "1", "3", 3)) == {"ab"}
    assert edge_strings(enumerate_walks_bounded(fig4, "1", "3", 7)) == {"ab", "adefb"}
    assert edge_strings(enumerate_walks_bounded(fig4, "1", "3", 8)) == {"ab", "adefb", "adefdefb"}
    assert edge_strings(enumerate_walks_bounded(fig4, "1", "1", 0)) == {"ε"}
    with pytest.raises(ValueError):
        enumerate_walks_bounded(fig4, "1", "3", -1)


@pytest.mark.parametrize("seed", range(8))
def test_walk_enumeration_matches_oracle_and_series(seed):
    g = oracles.random_cyclic(seed, n=5)
    d = 6
    for a in g.vertices[:2]:
        for b in g.vertices:
            mine = sorted(w.edges for w in enumerate_walks_bounded(g, a, b, d))
            assert mine == sorted(es for _, es in oracles.edge_sequences(g, a, b, d))
            total = sum((oracles.weight(g, es) for es in mine), Polynomial({}, g.ring))
            assert walk_sum_exact(g, a, b).series(d) == total


def test_acyclic_walks_are_paths(fig1):
    for a in fig1.vertices:
        for b in fig1.vertices:
            assert walk_sum_exact(fig1, a, b) == path_sum(fig1, a, b)


def test_fig4_signed_walk_sum(fig4):
    lhs = signed_walk_sum(fig4, ("1", "2"), ("3", "4"), 12)
    closed = RationalFunction(P("a*b*c*e*g"), P("1 - d*e*f"))
    assert lhs == closed.series(12)
    assert signed_walk_sum(fig4, (), (), 5) == 1
    assert fomin_check(fig4, ("1", "2"), ("3", "4"), 12).passed


def test_signed_walk_sum_acyclic_is_path_sum(fig1):
    a, b = ("1", "2"), ("3", "4")
    assert signed_walk_sum(fig1, a, b, len(fig1.edges)) == signed_path_sum(fig1, a, b)
    assert fomin_check(fig1, a, b, 20).passed


@pytest.mark.parametrize("seed", range(6))
def test_signed_walk_sum_oracle(seed):
    g = oracles.random_cyclic(seed, n=5, p=0.35)
    a, b = g.vertices[:2], g.vertices[-2:]
    assert signed_walk_sum(g, a, b, 5) == oracles.signed_family_sum(g, a, b, "walks", 5)


@given(seed=st.integers(0, 10_000), d=st.integers(0, 12))
@settings(max_examples=25)
def test_fomin_random_cyclic(seed, d):
    g = oracles.random_cyclic(seed, n=6, p=0.25)
    assert fomin_check(g, g.vertices[:2], g.vertices[-2:], d).passed


def test_walk_spec_rules(fig4):
    with pytest.raises(ValueError):
        WalkFamilySpec(("1",), ("3", "4"))
    with pytest.raises(ValueError):
        WalkFamilySpec(("1",), ("3",), "walks").validate(fig4)
    with pytest.raises(NotAcyclic):
        WalkFamilySpec(("1",), ("3",), "paths").validate(fig4)


# compatibility and the Pfaffian form

def test_compatibility(fig1):
    assert is_compatible(fig1, ["1"], ["3", "4"])
    crossing = Digraph(["a1", "a2", "b1", "b2"], [("p", "a1", "b2"), ("q", "a2", "b1")])
    assert not is_compatible(crossing, ["a1", "a2"], ["b1", "b2"])
    assert is_compatible(crossing, ["a2", "a1"], ["b1", "b2"])


def test_compat_dag_fixture():
    from combpfaff.graphio import load_fixture
    g = load_fixture("compat-dag")
    assert is_compatible(g, ["a1", "a2", "a3"], ["b1", "b2", "b3"])


def test_stembridge_examples(fig1, fig4):
    assert stembridge_q(fig1, (), ("3", "4")) == 1
    assert stembridge_q(fig1, ("1", "2"), ("3", "4")) == P("a*b*f - a*d*e")
    q = stembridge_q(fig4, ("1", "2"), ("3", "4"), "walks", 12)
    assert q == RationalFunction(P("a*b*c*e*g"), P("1 - d*e*f")).series(12)
    assert stembridge_check(fig1, ("1", "2"), ("3", "4")).passed
    with pytest.raises(ValueError):
        stembridge_check(fig1, ("1",), ("3", "4"))


@pytest.mark.parametrize("seed", range(6))
def test_stembridge_random_dag(seed):
    g = oracles.random_dag(seed, n=9, p=0.4)
    a, B = g.vertices[:4], g.vertices[4:]
    assert stembridge_check(g, a, B).passed
    expected = sum((oracles.signed_family_sum(g, a, bt, "paths")
                    for bt in combinations(B, 4)), Polynomial({}, g.ring))
    assert stembridge_q(g, a, B) == expected


@pytest.mark.parametrize("seed", range(4))
def test_stembridge_walks_random_cyclic(seed):
    g = oracles.random_cyclic(seed, n=7, p=0.25)
    r = stembridge_check(g, g.vertices[:4], g.vertices[3:], "walks", 8)
    assert r.passed


def test_minor_family_from_graph(fig1, fig4):
    fam = as_minor_family(fig1, ["1", "2"], ["3", "4"])
    assert fam.c1("2", "4") == P("c*e + f")
    wf = as_minor_family(fig4, ["1", "2"], ["3", "4"], "walks")
    assert wf.c1("1", "3") == walk_matrix(fig4, ["1"], ["3"])["1", "3"]
