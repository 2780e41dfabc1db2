#!/usr/bin/env python3
"""Writes the bundled model fixtures.

Every fixture is an inclusion poset of simplicial complexes over a ground
set: one morphism per strict inclusion, composites inferred, and a declared
pullback (the intersection) for every cospan of distinct arrows. Run
`algstoch fmt --in-place` on the output to canonicalize it.
"""

import itertools
import json
import sys
from fractions import Fraction
from pathlib import Path


def closure(vertices, simplices):
    faces = {frozenset([v]) for v in vertices}
    for s in simplices:
        for r in range(1, len(s) + 1):
            faces.update(frozenset(c) for c in itertools.combinations(s, r))
    return frozenset(faces)


class Poset:
    def __init__(self, ground, events):
        self.ground = ground
        self.events = events  # id -> dict(atoms, vertices, simplices | tables)
        self.shape = {}
        for eid, e in events.items():
            cl = closure(e.get("vertices", []), e.get("simplices", []))
            self.shape[eid] = (cl, frozenset(e["atoms"]))

    def leq(self, x, y):
        return self.shape[x][0] <= self.shape[y][0] and self.shape[x][1] <= self.shape[y][1]

    def meet(self, x, y):
        want = (self.shape[x][0] & self.shape[y][0], self.shape[x][1] & self.shape[y][1])
        for eid, s in self.shape.items():
            if s == want:
                return eid
        raise ValueError(f"no event for the intersection of {x} and {y}")


def arrow(x, y):
    return f"id_{x}" if x == y else f"i_{x}_{y}"


def build(name, ground, events, objects=None, levels=None, base_times=None, m=1,
          measure=None, operad="saturated", drop_pullbacks=(), operad_drop=(),
          presheaves=None, tables=()):
    poset = Poset(ground, events)
    objects = objects or list(events)
    morphisms = [
        {"id": arrow(x, y), "source": x, "target": y}
        for x in objects for y in objects if x != y and poset.leq(x, y)
    ]
    pullbacks = []
    for z in objects:
        into = [x for x in objects if x != z and poset.leq(x, z)]
        for x, y in itertools.combinations(into, 2):
            if (x, y) in drop_pullbacks:
                continue
            p = poset.meet(x, y)
            pullbacks.append({"f": arrow(x, z), "g": arrow(y, z), "object": p,
                              "first": arrow(p, x), "second": arrow(p, y)})

    doc = {"schema": 1, "name": name, "ground_set": ground, "d_max": 2, "events": []}
    for eid in objects:
        e = events[eid]
        entry = {"id": eid, "atoms": e["atoms"]}
        if eid in tables:
            entry.update(tables[eid])
        else:
            entry["vertices"] = e.get("vertices", [])
            entry["simplices"] = e.get("simplices", [])
        doc["events"].append(entry)
    doc["category"] = {"objects": objects, "morphisms": morphisms, "pullbacks": pullbacks}

    if levels:
        doc["filtration"] = {
            "base_times": base_times, "fiber_resolution": m,
            "levels": [{"time": t, "k": k, "events": evs} for (t, k, evs) in levels],
        }
        if operad == "saturated":
            gens = []
            for (t, k, evs) in levels:
                for w in evs:
                    inputs = [x for x in evs if poset.leq(x, w) and (w, x) not in operad_drop]
                    gens.append({"id": f"g_{w}_{t.replace('/', '_')}_{k}", "time": t, "k": k,
                                 "inputs": inputs, "output": w})
            doc["operad"] = gens
    if measure:
        total = sum(Fraction(w) for w in measure.values())
        assert total == 1, name
        doc["measure"] = {a: float(Fraction(w)) for a, w in measure.items()}
    if presheaves:
        doc["presheaves"] = presheaves
    return doc


def point_tables(v):
    return {
        "levels": [[v], [f"{v},{v}"], [f"{v},{v},{v}"]],
        "faces": [{}, {f"{v},{v}": [v, v]}, {f"{v},{v},{v}": [f"{v},{v}"] * 3}],
        "degeneracies": [{v: [f"{v},{v}"]}, {f"{v},{v}": [f"{v},{v},{v}"] * 2}, {}],
    }


EMPTY_TABLES = {"levels": [[], [], []], "faces": [{}, {}, {}], "degeneracies": [{}, {}, {}]}


def fixtures():
    out = {}

    out["minimal"] = build(
        "minimal", ["w"],
        {"Empty": {"atoms": []}, "Omega": {"atoms": ["w"], "vertices": ["w"]}},
        levels=[("0", 1, ["Empty", "Omega"])], base_times=["0"],
        measure={"w": "1"}, tables={"Empty": EMPTY_TABLES, "Omega": point_tables("w")})

    four = {
        "Empty": {"atoms": []},
        "A": {"atoms": ["a", "b"], "vertices": ["a", "b"], "simplices": [["a", "b"]]},
        "Ac": {"atoms": ["c", "d"], "vertices": ["c", "d"], "simplices": [["c", "d"]]},
        "Omega": {"atoms": ["a", "b", "c", "d"], "vertices": ["a", "b", "c", "d"],
                  "simplices": [["a", "b"], ["b", "c"], ["c", "d"]]},
    }
    four_levels = [("0", 1, ["Empty", "Omega"]), ("1", 1, ["Empty", "A", "Ac", "Omega"])]
    four_measure = {"a": "1/4", "b": "1/4", "c": "1/4", "d": "1/4"}
    out["four_events"] = build("four_events", ["a", "b", "c", "d"], four, levels=four_levels,
                               base_times=["0", "1"], measure=four_measure)

    six = {
        "Empty": {"atoms": []},
        "PointA": {"atoms": ["a"], "vertices": ["a"]},
        "EdgeBC": {"atoms": ["b", "c"], "vertices": ["b", "c"], "simplices": [["b", "c"]]},
        "Split": {"atoms": ["a", "b", "c"], "vertices": ["a", "b", "c"], "simplices": [["b", "c"]]},
        "Path": {"atoms": ["a", "b", "c"], "vertices": ["a", "b", "c"], "simplices": [["a", "b"], ["b", "c"]]},
        "Triangle": {"atoms": ["a", "b", "c"], "vertices": ["a", "b", "c"], "simplices": [["a", "b", "c"]]},
    }
    out["six_events"] = build(
        "six_events", ["a", "b", "c"], six,
        levels=[("0", 1, ["Empty", "Triangle"]), ("1/2", 1, ["Empty", "Path", "Triangle"]),
                ("1", 1, list(six))],
        base_times=["0", "1/2", "1"], m=2, measure={"a": "1/4", "b": "1/4", "c": "1/2"})

    chain = {
        "Vertex": {"atoms": ["a"], "vertices": ["a"]},
        "Edge": {"atoms": ["a", "b"], "vertices": ["a", "b"], "simplices": [["a", "b"]]},
        "Face": {"atoms": ["a", "b", "c"], "vertices": ["a", "b", "c"], "simplices": [["a", "b", "c"]]},
    }
    out["chain"] = build("chain", ["a", "b", "c"], chain,
                         levels=[("0", 1, ["Face"]), ("1", 1, ["Vertex", "Face"]), ("2", 1, list(chain))],
                         base_times=["0", "1", "2"], measure={"a": "1/2", "b": "1/4", "c": "1/4"})

    square = {
        "Base": {"atoms": ["a"], "vertices": ["a"]},
        "Left": {"atoms": ["a", "b"], "vertices": ["a", "b"], "simplices": [["a", "b"]]},
        "Right": {"atoms": ["a", "c"], "vertices": ["a", "c"], "simplices": [["a", "c"]]},
        "Top": {"atoms": ["a", "b", "c"], "vertices": ["a", "b", "c"], "simplices": [["a", "b"], ["a", "c"]]},
    }
    out["square"] = build("square", ["a", "b", "c"], square, measure={"a": "1/2", "b": "1/4", "c": "1/4"})

    blocks = {"a": ["a"], "b": ["b"], "cd": ["c", "d"]}
    part = {}
    for r in range(0, 4):
        for combo in itertools.combinations(blocks, r):
            atoms = [x for blk in combo for x in blocks[blk]]
            eid = "Empty" if not combo else ("Omega" if r == 3 else "U_" + "".join(combo))
            part[eid] = {"atoms": atoms, "vertices": atoms}
    out["partition"] = build(
        "partition", ["a", "b", "c", "d"], part,
        levels=[("0", 1, ["Empty", "Omega"]), ("1/2", 1, ["Empty", "U_ab", "U_cd", "Omega"]),
                ("1", 1, list(part))],
        base_times=["0", "1/2", "1"],
        measure={"a": "1/4", "b": "1/4", "c": "1/8", "d": "3/8"})

    out["defect_missing_pullback"] = build(
        "defect_missing_pullback", ["a", "b", "c", "d"], four, levels=four_levels, base_times=["0", "1"],
        measure=four_measure, drop_pullbacks={("A", "Ac")})

    out["defect_operad_gap"] = build(
        "defect_operad_gap", ["a", "b", "c", "d"], four, levels=four_levels, base_times=["0", "1"],
        measure=four_measure, operad_drop={("A", "Empty")})

    glue = {
        "A": {"atoms": ["a"], "vertices": ["a"]},
        "Omega": {"atoms": ["a", "b"], "vertices": ["a", "b"], "simplices": [["a", "b"]]},
    }
    out["defect_nongluing"] = build(
        "defect_nongluing", ["a", "b"], glue, measure={"a": "1/2", "b": "1/2"},
        presheaves=[{"id": "doubled", "sections": {"A": [0, 1], "Omega": [0]},
                     "restrictions": {"i_A_Omega": [0]}}])
    return out


def main():
    target = Path(sys.argv[1] if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "fixtures")
    target.mkdir(parents=True, exist_ok=True)
    for name, doc in fixtures().items():
        (target / f"{name}.json").write_text(json.dumps(doc, indent=2) + "\n")


if __name__ == "__main__":
    main()
