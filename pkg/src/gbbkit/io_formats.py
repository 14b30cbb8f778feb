"""JSON file formats for complexes, covers, integer sets, and quotient
specifications."""

from __future__ import annotations

import json

from .covers import build_cover
from .errors import GbbError
from .groups import AbelianGroup, Permutation, PermutationGroup
from .intsets import GodelSet, PeriodicSet
from .simplicial import SimplicialComplex, build_complex


def complex_to_json(cx):
    return {
        "vertices": [str(v) for v in cx.vertices],
        "maximal_simplices": [
            sorted(str(v) for v in s) for s in cx.maximal_simplices
        ],
    }


def complex_from_json(data):
    return build_complex(data["vertices"], [set(s) for s in data["maximal_simplices"]])


def map_from_json(data):
    return dict(data["vertex_map"])


def cover_from_json(data, base=None):
    if base is None:
        base = complex_from_json(data["base"])
    deck = PermutationGroup(
        int(data["deck"]["degree"]),
        [Permutation(tuple(p)) for p in data["deck"]["generators"]],
    )
    labels = {}
    for item in data.get("labels", []):
        u, v = item["edge"]
        labels[(u, v)] = Permutation(tuple(item["perm"]))
    return build_cover(base, deck, labels, data["base_vertex"])


def set_from_json(data):
    if data.get("kind") == "godel":
        positions = frozenset(int(x) for x in data["S"])
        bound = int(data.get("position_bound", max(positions, default=0) + 1))
        return GodelSet(positions, bound)
    return PeriodicSet(int(data["modulus"]), frozenset(int(r) for r in data["residues"]))


def set_to_json(s):
    if isinstance(s, GodelSet):
        return {
            "kind": "godel",
            "S": sorted(s.digit_positions),
            "position_bound": s.position_bound,
        }
    return {"modulus": s.modulus, "residues": sorted(s.residues)}


def quotient_spec_from_json(data):
    """Parse {"target": {...}, "theta": {...}, "mode": ...}; theta keys are
    "u,v" strings, values are coordinate lists for abelian targets."""
    target_data = data["target"]
    if target_data["kind"] != "abelian":
        raise GbbError("only abelian quotient specs are file-loadable")
    target = AbelianGroup(tuple(int(f) for f in target_data["factors"]))
    theta = {}
    for key, coords in data["theta"].items():
        u, v = key.split(",")
        theta[(u, v)] = target.element([int(c) for c in coords])
    return target, theta, data.get("mode", "abelian-exact")


def load_json(path):
    with open(path) as fh:
        return json.load(fh)
