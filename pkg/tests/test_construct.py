import pytest

from drtoolkit.actions import (close_group, has_inversions,
                               remove_inversions)
from drtoolkit.builders import n_gon_rotation, standard
from drtoolkit.complexes import (Path, dart, subcomplex)
from drtoolkit.construct import equivariant_filling, orbit_graph
from drtoolkit.errors import (EndpointsNotFixed, NotMinimal,
                              PreconditionsNotCertified)
from drtoolkit.homology import certify_simply_connected
from drtoolkit.maps import compose


def boundary_subcomplex(x, prefix_letters):
    edges = [e for e in x.edges
             if any(e.startswith(p) for p in prefix_letters)]
    return subcomplex(x, set(), edges, ())


def hexagon_instance():
    """C3 on the subdivided triangle disk with the boundary hexagon."""
    _x, action = standard("cyclic_rotation", 3)
    cleaned = remove_inversions(action)
    y0 = boundary_subcomplex(cleaned.complex, ("e0.", "e1.", "e2."))
    return cleaned, y0


# -- orbit_graph ---------------------------------------------------------------

def test_orbit_graph_trivial_group_is_path():
    x = standard("tree", 2, 2)
    action = close_group(x, [])
    alpha = Path("t", (dart("t.0"), dart("t.0.1")))
    y0 = orbit_graph(action, alpha)
    assert y0.vertices == {"t", "t.0", "t.0.1"}
    assert set(y0.edges) == {"t.0", "t.0.1"}


def test_orbit_graph_length_zero():
    x = standard("triangle_disk")
    action = close_group(x, [])
    y0 = orbit_graph(action, Path("v0", ()))
    assert y0.vertices == {"v0"} and not y0.edges


def test_orbit_graph_union_of_swapped_paths():
    # Swap two of the three theta edges; the orbit of one side is the bigon.
    x = standard("theta_graph")
    from drtoolkit.maps import CellularMap
    from drtoolkit.complexes import DirectedEdge
    swap = CellularMap(
        x, x, {"u": "u", "v": "v"},
        {"e0": DirectedEdge("e1", 1), "e1": DirectedEdge("e0", 1),
         "e2": DirectedEdge("e2", 1)}, {})
    action = close_group(x, [swap])
    y0 = orbit_graph(action, Path("u", (dart("e0"),)))
    assert set(y0.edges) == {"e0", "e1"}
    assert y0.vertices == {"u", "v"}


def test_orbit_graph_rejects_moved_endpoints():
    _x, action = standard("cyclic_rotation", 3)
    cleaned = remove_inversions(action)
    with pytest.raises(EndpointsNotFixed):
        orbit_graph(cleaned, Path("v0", (dart("e0.h0"),)))


def test_orbit_graph_rejects_non_embedded():
    x = standard("theta_graph")
    action = close_group(x, [])
    detour = Path("u", (dart("e0"), dart("e1", -1), dart("e2")))
    with pytest.raises(ValueError):
        orbit_graph(action, detour)  # revisits u


def test_orbit_graph_rejects_non_minimal():
    # In the subdivided theta graph, e0.m is one step from u, but the
    # embedded detour through e1 and back takes three.
    x = standard("subdivided", "theta_graph")
    action = close_group(x, [])
    detour = Path("u", (dart("e1.h0"), dart("e1.h1"), dart("e0.h1", -1)))
    with pytest.raises(NotMinimal):
        orbit_graph(action, detour)


# -- equivariant_filling --------------------------------------------------------------

def test_filling_tree_is_identity_pushout():
    x = standard("tree", 2, 2)
    action = close_group(x, [])
    result = equivariant_filling(action, x)
    assert result.complex == x
    assert not result.orbit_fillings
    assert all(origin[0] == "base" for origin in result.provenance.values())


def test_filling_hexagon_c3():
    cleaned, y0 = hexagon_instance()
    result = equivariant_filling(cleaned, y0)
    # One orbit of one hexagon, filled with six triangles.
    assert len(result.orbit_fillings) == 1
    rep, disk = result.orbit_fillings[0]
    assert rep.length == 6 and disk.area() == 6
    assert len(result.complex.faces) == 6
    assert result.symmetric_orbits == [0]
    # f restricted to Y0 is the inclusion, cell for cell.
    for v in y0.vertices:
        assert result.map.vertex_map[v] == v
    for e in y0.edges:
        assert result.map.edge_map[e] == (e, 1)
    assert certify_simply_connected(result.complex).status == "Certified"


def test_filling_two_triangles_swap():
    _x, action = standard("triangle_swap")
    y0 = boundary_subcomplex(action.complex, ("a", "b"))
    result = equivariant_filling(action, y0)
    assert len(result.complex.faces) == 2
    assert result.symmetric_orbits == [0]  # reflection stabilizer
    assert result.action.validate() == []
    assert not has_inversions(result.action)


def test_filling_square_c2():
    rot = n_gon_rotation(4)
    half_turn = compose(rot, rot)
    action = remove_inversions(close_group(rot.source, [half_turn]))
    y0 = boundary_subcomplex(action.complex, ("e0.", "e1.", "e2.", "e3."))
    result = equivariant_filling(action, y0)
    assert len(result.complex.faces) == 8
    assert len(result.orbit_fillings) == 1
    assert result.orbit_fillings[0][1].area() == 8


def test_filling_face_count_identity(action_corpus):
    # |faces of Y| = sum over cycle orbits of (orbit size x filling area),
    # checked on the hexagon instance where the orbit structure is known.
    cleaned, y0 = hexagon_instance()
    result = equivariant_filling(cleaned, y0)
    total = sum(disk.area() for _rep, disk in result.orbit_fillings)
    by_orbit = {}
    for cell, origin in result.provenance.items():
        if cell[0] == "face":
            assert origin[0] == "disk"
            by_orbit.setdefault((origin[1], origin[2]), 0)
        if origin[0] == "disk" and cell[0] == "face":
            by_orbit[(origin[1], origin[2])] += 1
    members = {oi for oi, _ci in by_orbit}
    assert len(result.complex.faces) == sum(
        disk.area() * len([1 for (o, _c) in by_orbit if o == oi])
        for oi, (_rep, disk) in enumerate(result.orbit_fillings))


def test_filling_equivariance_table():
    cleaned, y0 = hexagon_instance()
    result = equivariant_filling(cleaned, y0)
    for h in range(result.action.order):
        lhs = compose(result.action.elements[h], result.map)
        rhs = compose(result.map, cleaned.elements[h])
        assert lhs.key() == rhs.key()


def test_filling_requires_certified_ambient():
    torus = standard("torus")
    action = close_group(torus, [])
    skeleton = subcomplex(torus, torus.vertices, torus.edges, ())
    with pytest.raises(PreconditionsNotCertified):
        equivariant_filling(action, skeleton)


def test_filling_requires_inversion_free():
    _x, action = standard("cyclic_rotation", 3)
    y0 = boundary_subcomplex(action.complex, ("e",))
    with pytest.raises(PreconditionsNotCertified):
        equivariant_filling(action, y0)


def test_filling_rejects_non_invariant_y0():
    cleaned, _y0 = hexagon_instance()
    partial = boundary_subcomplex(cleaned.complex, ("e0.",))
    with pytest.raises(ValueError):
        equivariant_filling(cleaned, partial)
