import pytest

from drtoolkit.builders import n_gon_rotation, standard
from drtoolkit.complexes import DirectedEdge, barycentric_subdivision, dart
from drtoolkit.errors import SourceTargetMismatch
from drtoolkit.maps import (CellularMap, FaceWitness, compose, identity_map,
                            induced_subdivision_map, inverse_map,
                            is_identity, is_immersion, is_near_immersion)


def butterfly_fold():
    """two_triangles folded onto the triangle disk across the shared edge."""
    source = standard("two_triangles")
    target = standard("triangle_disk")
    return CellularMap(
        source, target,
        {"v0": "v0", "v1": "v1", "v2": "v2", "v3": "v2"},
        {"s": dart("e0"), "a1": dart("e1"), "a2": dart("e2"),
         "b1": dart("e1"), "b2": dart("e2")},
        {"f1": ("f", FaceWitness(0, False)),
         "f2": ("f", FaceWitness(0, False))})


def test_identity_neutral():
    x = standard("torus")
    f = identity_map(x)
    assert compose(f, f) == f
    assert is_identity(f)


def test_compose_rotation_witnesses():
    rot = n_gon_rotation(3)
    double = compose(rot, rot)
    assert double.face_map["f"] == ("f", (2, False))
    triple = compose(double, rot)
    assert is_identity(triple)


def test_compose_mismatch():
    with pytest.raises(SourceTargetMismatch):
        compose(identity_map(standard("torus")),
                identity_map(standard("triangle_disk")))


def test_inverse_gives_identity_witnesses():
    rot = n_gon_rotation(5)
    inv = inverse_map(rot)
    assert is_identity(compose(rot, inv))
    assert is_identity(compose(inv, rot))


def test_compose_associative_on_witness_data():
    _x, action = standard("dihedral", 3)
    elements = action.elements
    for a in elements:
        for b in elements:
            for c in elements:
                left = compose(compose(a, b), c)
                right = compose(a, compose(b, c))
                assert left.key() == right.key()


def test_validate_catches_endpoint_violation():
    x = standard("interval")
    phi = CellularMap(x, x, {"u": "u", "v": "u"},
                      {"e": DirectedEdge("e", 1)}, {})
    assert any("endpoints" in p for p in phi.validate())


def test_validate_catches_bad_witness():
    x = standard("triangle_disk")
    phi = identity_map(x)
    phi.face_map["f"] = ("f", FaceWitness(1, False))
    assert any("witness" in p for p in phi.validate())


# -- near-immersion -------------------------------------------------------------

def test_identity_bigon_near_immersion():
    phi = identity_map(standard("bigon_sphere"))
    ok, fold = is_near_immersion(phi)
    assert ok and fold is None


def test_butterfly_fold_detected():
    phi = butterfly_fold()
    assert phi.validate() == []
    ok, fold = is_near_immersion(phi)
    assert not ok
    edge, side_a, side_b = fold
    assert edge == "s"
    assert {side_a, side_b} == {("f1", 0), ("f2", 0)}


def test_injective_maps_are_near_immersions():
    for name in ("torus", "two_triangles", "bigon_sphere"):
        ok, _ = is_near_immersion(identity_map(standard(name)))
        assert ok


def test_fold_persists_under_postcomposition():
    phi = butterfly_fold()
    for auto in (identity_map(standard("triangle_disk")),
                 n_gon_rotation(3)):
        ok, _ = is_near_immersion(compose(phi, auto))
        assert not ok


# -- immersion ---------------------------------------------------------------------

def test_identity_is_immersion():
    assert is_immersion(identity_map(standard("torus")))


def wedge_to_single_loop():
    from drtoolkit.complexes import TwoComplex
    source = TwoComplex({"v"}, {"a": ("v", "v"), "b": ("v", "v")}, {})
    target = TwoComplex({"w"}, {"c": ("w", "w")}, {})
    return CellularMap(source, target, {"v": "w"},
                       {"a": dart("c"), "b": dart("c")}, {})


def test_vertex_fold_breaks_immersion_only():
    phi = wedge_to_single_loop()
    assert phi.validate() == []
    ok, _ = is_near_immersion(phi)
    assert ok
    assert not is_immersion(phi)


# -- induced subdivision maps ----------------------------------------------------------

def test_induced_subdivision_map_valid():
    rot = n_gon_rotation(3)
    sub = barycentric_subdivision(rot.source)
    lifted = induced_subdivision_map(rot, sub, sub)
    assert lifted.validate() == []
    assert lifted.is_bijective()


def test_induced_subdivision_functorial():
    rot = n_gon_rotation(4)
    sub = barycentric_subdivision(rot.source)
    lifted = induced_subdivision_map(rot, sub, sub)
    double = compose(rot, rot)
    lifted_double = induced_subdivision_map(double, sub, sub)
    assert compose(lifted, lifted).key() == lifted_double.key()


def test_induced_subdivision_of_flip():
    x, action = standard("edge_flip")
    sub = barycentric_subdivision(x)
    flip = action.elements[1]
    lifted = induced_subdivision_map(flip, sub, sub)
    assert lifted.validate() == []
    assert lifted.vertex_map["e.m"] == "e.m"
    assert lifted.edge_map["e.h0"] == ("e.h1", -1)
