"""Complexes, subdivisions, suitability, graph edge subdivisions."""

import pytest

from gbbkit.errors import ComplexError
from gbbkit.fixtures import annulus_complex, square_complex
from gbbkit.simplicial import (Graph, SimplicialMap, barycentric,
                               build_complex, collapse_map, identity_record,
                               is_suitable, octahedralize, star_union,
                               subdivide_graph_edges)


def two_simplex():
    return build_complex(["p", "q", "r"], [{"p", "q", "r"}])


def test_closure_and_flags():
    cx = two_simplex()
    assert cx.dimension == 2
    assert cx.has_simplex({"p", "q"})
    assert cx.is_flag and cx.is_connected
    # hollow triangle: 3-clique without the filling simplex
    hollow = build_complex(["p", "q", "r"],
                           [{"p", "q"}, {"q", "r"}, {"p", "r"}])
    assert not hollow.is_flag


def test_square_is_flag():
    cx = square_complex()
    assert cx.is_flag
    assert len(cx.edges()) == 4
    assert cx.neighbors("w") == ["x", "z"]


def test_validation_errors():
    with pytest.raises(ComplexError):
        build_complex(["a", "a"], [])
    with pytest.raises(ComplexError):
        build_complex(["a"], [{"a", "b"}])
    with pytest.raises(ComplexError):
        SimplicialMap(two_simplex(), square_complex(),
                      {"p": "w", "q": "x", "r": "y"})


def test_octahedralize_doubles():
    oc = octahedralize(square_complex())
    assert len(oc.vertices) == 8
    # signed pairs of adjacent base vertices span edges; antipodes do not
    assert oc.has_simplex({("w", 1), ("x", -1)})
    assert not oc.has_simplex({("w", 1), ("w", -1)})
    # doubling a 4-cycle gives the 8-cycle link pattern: all degrees 4
    assert all(len(oc.neighbors(v)) == 4 for v in oc.vertices)


def test_star_union():
    sub, incl = star_union(square_complex(), "w", "x")
    assert set(sub.vertices) == {"w", "x", "y", "z"}
    assert incl("w") == "w"


# --- barycentric subdivision and suitability --------------------------------


def test_barycentric_counts():
    rec = barycentric(two_simplex())
    # simplices of the 2-simplex: 3 + 3 + 1 vertices, 6 triangles
    assert len(rec.subdivided.vertices) == 7
    assert len(rec.subdivided.maximal_simplices) == 6
    assert rec.approximation(("p", "q")) == "p"


@pytest.mark.parametrize("cx_factory", [square_complex, two_simplex,
                                        annulus_complex])
def test_second_barycentric_is_suitable(cx_factory):
    rec = barycentric(cx_factory(), iterations=2)
    ok, witness = is_suitable(rec)
    assert ok, witness


def test_identity_is_not_suitable():
    ok, witness = is_suitable(identity_record(square_complex()))
    assert not ok
    assert witness is not None


def test_annulus_shape():
    cx = annulus_complex()
    assert cx.dimension == 2
    assert len(cx.vertices) == 8
    assert len([s for s in cx.maximal_simplices if len(s) == 3]) == 8


# --- graph subdivisions ------------------------------------------------------


def test_subdivide_multigraph():
    g = Graph(("o",), (("o", "o"), ("o", "o")))
    sub = subdivide_graph_edges(g, 4)
    assert len(sub.edge_paths) == 2
    assert all(len(p) == 4 for p in sub.edge_paths.values())
    assert sub.complex.is_connected
    # loop needs r >= 3
    with pytest.raises(ComplexError):
        subdivide_graph_edges(g, 2)


def test_collapse_map_three_in_a_row():
    g = Graph(("o",), (("o", "o"), ("o", "o")))
    fine = subdivide_graph_edges(g, 12)
    coarse = subdivide_graph_edges(g, 4)
    m = collapse_map(fine, coarse)
    # endpoints fixed, everything lands on the coarse complex
    assert m("o") == "o"
    for i, path in fine.edge_paths.items():
        images = {m(v) for e in path for v in e}
        assert images <= set(coarse.complex.vertices)
