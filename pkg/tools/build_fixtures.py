"""Regenerate the bundled graph fixtures.

Planar networks are described by vertex coordinates; the rotation at each
interior vertex is the counterclockwise order of its edges by angle, and
the script refuses to write a drawing whose straight edges cross.

    python3 tools/build_fixtures.py
"""

import json
import math
from pathlib import Path

from combpfaff.geometry import clockwise_order, crossing_pairs, rotation_from_coords

OUT = Path(__file__).resolve().parents[1] / "src" / "combpfaff" / "fixtures"


def check_planar(coords, edges):
    bad = crossing_pairs(coords, edges)
    if bad:
        raise SystemExit(f"edges {bad[0][0]} and {bad[0][1]} cross")


def network(name, description, coords, edges, sources, sinks, start):
    boundary = sources + sinks
    check_planar(coords, edges)
    interior = [v for v in coords if v not in boundary]
    return {
        "kind": "planar-circular",
        "name": name,
        "description": description,
        "vertices": list(coords),
        "edges": [{"id": e, "tail": t, "head": h} for e, t, h in edges],
        "boundary": clockwise_order(coords, boundary, start),
        "sources": sources,
        "sinks": sinks,
        "rotation": rotation_from_coords(coords, edges, interior),
        "coords": {v: list(p) for v, p in coords.items()},
    }


def fig1():
    return {
        "kind": "digraph",
        "name": "fig1",
        "description": "Acyclic digraph with five vertices and six edges; vertex 5 is the unlabelled middle vertex.",
        "vertices": ["1", "2", "3", "4", "5"],
        "edges": [{"id": e, "tail": t, "head": h} for e, t, h in [
            ("a", "1", "5"), ("b", "5", "3"), ("c", "2", "5"), ("d", "2", "3"), ("e", "5", "4"), ("f", "2", "4")]],
    }


def fig4():
    return {
        "kind": "digraph",
        "name": "fig4",
        "description": "Digraph with the directed cycle 5 -> 6 -> 7 -> 5 (edges d, e, f).",
        "vertices": ["1", "2", "3", "4", "5", "6", "7"],
        "edges": [{"id": e, "tail": t, "head": h} for e, t, h in [
            ("a", "1", "5"), ("b", "5", "3"), ("c", "2", "6"), ("d", "5", "6"),
            ("e", "6", "7"), ("f", "7", "5"), ("g", "7", "4")]],
    }


FIG6_EDGES = [("a1", "i1"), ("i1", "b1"), ("a1", "i2"), ("i1", "i2"), ("i1", "i3"), ("i3", "b1"), ("a2", "i2"),
              ("i2", "i3"), ("i3", "i4"), ("i2", "i4"), ("a2", "i5"), ("i5", "i4"), ("i4", "i6"), ("i6", "b1"),
              ("i6", "b2"), ("i5", "i6"), ("i6", "i7"), ("a2", "a3"), ("a3", "i5"), ("i5", "i7"), ("a3", "i8"),
              ("i7", "i8"), ("i8", "b3"), ("i7", "b3"), ("b2", "b3")]
FIG6_COORDS = {"a1": (0, 3), "a2": (0, 2), "a3": (0, 1), "b1": (3, 3), "b2": (3, 2), "b3": (3, 1),
               "i1": (1.5, 3.5), "i2": (.8, 2.8), "i3": (1.8, 2.9), "i4": (1.3, 2.3), "i5": (1, 1.8),
               "i6": (2, 2), "i7": (1.5, 1.3), "i8": (1.7, .6)}


def _edge_id(u, v):
    return f"{u}_{v}"


def fig6_grove():
    return {
        "kind": "undirected-boundary",
        "name": "fig6-grove",
        "description": "Graph-with-boundary with six boundary vertices a1..a3, b1..b3 and eight interior vertices.",
        "vertices": list(FIG6_COORDS),
        "edges": [{"id": _edge_id(u, v), "ends": [u, v]} for u, v in FIG6_EDGES],
        "boundary": ["a1", "a2", "a3", "b3", "b2", "b1"],
        "coords": {v: list(p) for v, p in FIG6_COORDS.items()},
    }


def compat_dag():
    return {
        "kind": "digraph",
        "name": "compat-dag",
        "description": "The fig6 graph with every edge directed as listed; acyclic, sources a1..a3, sinks b1..b3.",
        "vertices": list(FIG6_COORDS),
        "edges": [{"id": _edge_id(u, v), "tail": u, "head": v} for u, v in FIG6_EDGES],
    }


def cyclic_stembridge():
    edges = [("p", "s1", "u"), ("q", "s2", "v"), ("r", "s3", "w"), ("m", "s4", "t4"), ("n", "s4", "w"),
             ("uv", "u", "v"), ("vw", "v", "w"), ("wu", "w", "u"),
             ("t1", "u", "t1"), ("t2", "v", "t2"), ("t3", "w", "t3"), ("t5", "w", "t5")]
    verts = ["s1", "s2", "s3", "s4", "u", "v", "w", "t1", "t2", "t3", "t4", "t5"]
    return {
        "kind": "digraph",
        "name": "cyclic-stembridge",
        "description": "Four sources s1..s4, five sinks t1..t5 and the directed triangle u -> v -> w -> u.",
        "vertices": verts,
        "edges": [{"id": e, "tail": t, "head": h} for e, t, h in edges],
    }


def grid(rows, cols, boundary_skip=()):
    verts = [f"v{r}{c}" for r in range(rows) for c in range(cols)]
    edges = []
    for r in range(rows):
        for c in range(cols):
            if c + 1 < cols:
                edges.append({"id": f"h{r}{c}", "ends": [f"v{r}{c}", f"v{r}{c + 1}"]})
            if r + 1 < rows:
                edges.append({"id": f"u{r}{c}", "ends": [f"v{r}{c}", f"v{r + 1}{c}"]})
    perim = ([(0, c) for c in range(cols)] + [(r, cols - 1) for r in range(1, rows)]
             + [(rows - 1, c) for c in range(cols - 2, -1, -1)] + [(r, 0) for r in range(rows - 2, 0, -1)])
    boundary = [f"v{r}{c}" for r, c in perim if f"v{r}{c}" not in boundary_skip]
    return verts, edges, boundary


def grove_grid3x3():
    verts, edges, boundary = grid(3, 3)
    return {"kind": "undirected-boundary", "name": "grove-grid3x3",
            "description": "3x3 grid; the centre is the only interior vertex, the perimeter is the boundary.",
            "vertices": verts, "edges": edges, "boundary": boundary}


def grove_grid3x4():
    verts, edges, boundary = grid(3, 4, boundary_skip=("v10",))
    return {"kind": "undirected-boundary", "name": "grove-grid3x4",
            "description": "3x4 grid with nine perimeter vertices as boundary (v10 is declared interior).",
            "vertices": verts, "edges": edges, "boundary": boundary}


def flow_collision():
    r = 3.0
    pt = {name: (r * math.cos(math.radians(ang)), r * math.sin(math.radians(ang)))
          for name, ang in [("s1", 90), ("t1", 30), ("s2", -30), ("t2", -90), ("s3", -150), ("t3", 150)]}
    coords = dict(pt, v=(0.8, 0.0), u=(-0.8, 0.0), w=(0.0, 0.8), z=(0.0, -0.8))
    edges = [("a", "s1", "v"), ("b", "v", "t1"), ("c", "s2", "v"), ("d", "v", "t2"),
             ("g", "s3", "u"), ("h", "u", "t3"),
             ("vz", "v", "z"), ("zu", "z", "u"), ("uw", "u", "w"), ("wv", "w", "v")]
    return network("flow-collision",
                   "Three sources and three sinks; v is a collision vertex (in, out, in, out around it) "
                   "sitting on the directed cycle v -> z -> u -> w -> v.",
                   coords, edges, ["s1", "s2", "s3"], ["t1", "t2", "t3"], "s1")


def flow_square(extra_sink=False):
    coords = {"p": (-1, 1), "q": (1, 1), "r": (1, -1), "s": (-1, -1)}
    R = 3.5
    spots = {"ap": 100, "bp": 170, "aq": 10, "bq": 80, "ar": -80, "br": -10, "as": -170, "bs": -100}
    if extra_sink:
        spots["cq"] = 45
    for name, ang in spots.items():
        coords[name] = (R * math.cos(math.radians(ang)), R * math.sin(math.radians(ang)))
    edges = [("pq", "p", "q"), ("qr", "q", "r"), ("rs", "r", "s"), ("sp", "s", "p")]
    for corner in "pqrs":
        edges.append((f"x{corner}", f"a{corner}", corner))
        edges.append((f"y{corner}", corner, f"b{corner}"))
    if extra_sink:
        edges.append(("zq", "q", "cq"))
    sources = ["ap", "aq", "ar", "as"]
    sinks = ["bp", "bq", "br", "bs"] + (["cq"] if extra_sink else [])
    name = "flow-square5" if extra_sink else "flow-square"
    desc = ("Directed square p -> q -> r -> s -> p; each corner has one source feeding it and one sink "
            "fed by it" + (", and q feeds a fifth sink." if extra_sink else "."))
    return network(name, desc, coords, edges, sources, sinks, "ap")


def fig9_network():
    coords = {"1": (1, 4), "2": (2, 4), "3": (3, 4), "4": (4, 2.5), "5": (4, 1.5), "6": (3, 0), "7": (2, 0),
              "8": (1, 0), "9": (0, 1), "10": (0, 2), "11": (0, 3), "12": (1.5, 3), "13": (2.75, 2.75),
              "14": (1, 2.5), "15": (1.25, 1.25), "16": (2.5, 1.5), "17": (1.75, 2)}
    arcs = [("11", "14"), ("14", "12"), ("14", "15"), ("12", "13"), ("13", "16"), ("12", "17"), ("15", "17"),
            ("17", "16"), ("12", "1"), ("2", "12"), ("3", "13"), ("13", "4"), ("16", "5"), ("6", "16"),
            ("15", "7"), ("8", "15"), ("15", "9"), ("10", "15"), ("15", "12"), ("12", "16"), ("16", "15")]
    edges = [(f"e{t}_{h}", t, h) for t, h in arcs]
    sources = ["2", "3", "6", "8", "10", "11"]
    sinks = ["1", "4", "5", "7", "9"]
    return network("fig9-network", "Planar circular network with boundary 1..11 clockwise and interior 12..17.",
                   coords, edges, sources, sinks, "1")


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    docs = [fig1(), fig4(), fig6_grove(), compat_dag(), cyclic_stembridge(), grove_grid3x3(), grove_grid3x4(),
            flow_collision(), flow_square(), flow_square(True), fig9_network()]
    for doc in docs:
        path = OUT / f"{doc['name']}.json"
        path.write_text(json.dumps(doc, indent=1) + "\n")
        print("wrote", path.name)


if __name__ == "__main__":
    main()
