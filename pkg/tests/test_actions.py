import pytest

from drtoolkit.actions import (close_group, equivariant_collapse,
                               find_fixed_point, fixed_subcomplex,
                               has_inversions, orbits, remove_inversions,
                               setwise_stabilizer, stabilizer, tree_center,
                               verify_classifying_model)
from drtoolkit.builders import n_gon_rotation, standard
from drtoolkit.complexes import (DirectedEdge, TwoComplex,
                                 euler_characteristic, is_connected)
from drtoolkit.errors import (HasInversions, LimitExceeded, NotAutomorphism,
                              PreconditionsNotCertified)
from drtoolkit.maps import CellularMap


def test_close_group_identity_only():
    x = standard("torus")
    action = close_group(x, [])
    assert action.order == 1
    assert action.validate() == []


def test_close_group_rotation_order_three():
    _x, action = standard("cyclic_rotation", 3)
    assert action.order == 3
    assert action.validate() == []


def test_close_group_face_swap_order_two():
    _x, action = standard("face_swap")
    assert action.order == 2
    assert action.validate() == []


def test_close_group_dihedral_order_six():
    _x, action = standard("dihedral", 3)
    assert action.order == 6
    assert action.validate() == []


def test_close_group_limit():
    gen = n_gon_rotation(7)
    with pytest.raises(LimitExceeded):
        close_group(gen.source, [gen], limit=5)


def test_close_group_rejects_non_automorphism():
    x = standard("interval")
    broken = CellularMap(x, x, {"u": "u", "v": "u"},
                         {"e": DirectedEdge("e", 1)}, {})
    with pytest.raises(NotAutomorphism):
        close_group(x, [broken])


# -- inversions ------------------------------------------------------------------

def test_rotation_has_face_inversion():
    _x, action = standard("cyclic_rotation", 3)
    entries = has_inversions(action).entries
    assert (1, "f", "face-rotation") in entries


def test_edge_flip_inversion():
    _x, action = standard("edge_flip")
    entries = has_inversions(action).entries
    assert (1, "e", "edge-flip") in entries


def test_face_swap_no_inversions():
    _x, action = standard("face_swap")
    assert not has_inversions(action)


def test_dihedral_reflection_inversions():
    _x, action = standard("dihedral", 3)
    kinds = {kind for _i, _c, kind in has_inversions(action).entries}
    assert "face-rotation" in kinds and "face-reflection" in kinds
    assert "edge-flip" in kinds


def test_remove_inversions_examples():
    for name, params in [("cyclic_rotation", (3,)), ("edge_flip", ()),
                         ("dihedral", (3,)), ("face_swap", ())]:
        _x, action = standard(name, *params)
        cleaned = remove_inversions(action)
        assert not has_inversions(cleaned)
        assert cleaned.validate() == []


# -- fixed subcomplexes ----------------------------------------------------------------

def test_fixed_subcomplex_needs_no_inversions():
    _x, action = standard("cyclic_rotation", 3)
    with pytest.raises(HasInversions):
        fixed_subcomplex(action)


def test_fixed_subcomplex_rotation_barycenter():
    _x, action = standard("cyclic_rotation", 3)
    cleaned = remove_inversions(action)
    fixed = fixed_subcomplex(cleaned)
    assert fixed.vertices == {"f.b"}
    assert not fixed.edges and not fixed.faces


def test_fixed_subcomplex_identity_is_everything():
    _x, action = standard("cyclic_rotation", 3)
    cleaned = remove_inversions(action)
    fixed = fixed_subcomplex(cleaned, [0])
    assert fixed == cleaned.complex


def test_fixed_subcomplex_triangle_swap_is_shared_edge():
    _x, action = standard("triangle_swap")
    fixed = fixed_subcomplex(action)
    assert fixed.vertices == {"v0", "v1"}
    assert set(fixed.edges) == {"s"}
    assert not fixed.faces


def test_fixed_subcomplexes_validate(action_corpus):
    from drtoolkit.complexes import validate
    for _name, action in action_corpus:
        fixed = fixed_subcomplex(action)
        assert validate(fixed) == []


# -- orbits and stabilizers ----------------------------------------------------------------

def test_orbits_identity_group_singletons():
    action = close_group(standard("torus"), [])
    assert all(len(orbit) == 1 for orbit in orbits(action))


def test_bigon_face_swap_orbit():
    _x, action = standard("face_swap")
    face_orbits = [o for o in orbits(action) if o[0][0] == "face"]
    assert face_orbits == [[("face", "f1"), ("face", "f2")]]


def test_barycenter_full_stabilizer():
    _x, action = standard("cyclic_rotation", 3)
    cleaned = remove_inversions(action)
    assert stabilizer(cleaned, ("vertex", "f.b")) == (0, 1, 2)


def test_orbit_stabilizer_lagrange(action_corpus):
    for _name, action in action_corpus:
        for orbit in orbits(action):
            stab = setwise_stabilizer(action, orbit[0])
            assert len(orbit) * len(stab) == action.order
            # Without inversions the two stabilizers agree.
            assert stab == stabilizer(action, orbit[0])


# -- equivariant collapse -----------------------------------------------------------------

def test_equivariant_collapse_rotation_to_tree():
    _x, action = standard("cyclic_rotation", 3)
    cleaned = remove_inversions(action)
    collapsed, log = equivariant_collapse(cleaned)
    w = collapsed.complex
    assert not w.faces
    assert is_connected(w) and euler_characteristic(w) == 1
    assert all(len(step) == 3 for step in log)  # orbits of size |C3|


def test_equivariant_collapse_trivial_group_matches_greedy():
    x = standard("two_triangles")
    action = close_group(x, [])
    collapsed, log = equivariant_collapse(action)
    assert not collapsed.complex.faces
    assert all(len(step) == 1 for step in log)


def test_equivariant_collapse_torus_unchanged():
    x = standard("torus")
    action = close_group(x, [])
    collapsed, log = equivariant_collapse(action)
    assert collapsed.complex == x
    assert log == []


def test_equivariant_collapse_needs_no_inversions():
    _x, action = standard("cyclic_rotation", 3)
    with pytest.raises(HasInversions):
        equivariant_collapse(action)


def test_equivariant_collapse_preserves_homotopy_invariants(action_corpus):
    # Euler characteristic and homology are unchanged at every step of the
    # orbit collapse, replayed from the log.
    from drtoolkit.homology import homology
    for _name, action in action_corpus:
        before = homology(action.complex)
        _collapsed, log = equivariant_collapse(action)
        current = action.complex
        for step in log:
            edges = {e for e, _f in step}
            faces = {f for _e, f in step}
            current = TwoComplex(
                set(current.vertices),
                {e: ends for e, ends in current.edges.items()
                 if e not in edges},
                {f: w for f, w in current.faces.items() if f not in faces})
            profile = homology(current)
            assert profile.as_tuple() == before.as_tuple()
            assert profile.torsion1 == before.torsion1
            assert euler_characteristic(current) \
                == euler_characteristic(action.complex)


# -- fixed points --------------------------------------------------------------------------

def test_tree_center_paths():
    path = TwoComplex({"a", "b", "c"}, {"e1": ("a", "b"), "e2": ("b", "c")},
                      {})
    assert tree_center(path) == ["b"]
    edge = standard("interval")
    assert tree_center(edge) == ["u", "v"]


def test_find_fixed_point_rotation():
    _x, action = standard("cyclic_rotation", 3)
    cleaned = remove_inversions(action)
    assert find_fixed_point(cleaned) == "f.b"


def test_find_fixed_point_trivial_on_tree():
    tree = standard("tree", 2, 2)
    action = close_group(tree, [])
    vertex = find_fixed_point(action)
    assert vertex == "t"


def test_find_fixed_point_triangle_swap():
    _x, action = standard("triangle_swap")
    cleaned = remove_inversions(action)
    vertex = find_fixed_point(cleaned)
    fixed = fixed_subcomplex(cleaned)
    assert vertex in fixed.vertices
    # The fixed point lies on the subdivided shared edge.
    assert vertex in {"v0", "v1", "s.m"}


def test_find_fixed_point_needs_certified_input():
    x, action = standard("face_swap")  # bigon sphere is not DR
    with pytest.raises(PreconditionsNotCertified):
        find_fixed_point(action)


def test_find_fixed_point_rejects_inversions():
    _x, action = standard("cyclic_rotation", 3)
    with pytest.raises(PreconditionsNotCertified):
        find_fixed_point(action)


# -- classifying model ------------------------------------------------------------------------

def test_classifying_trivial_group():
    action = close_group(standard("triangle_disk"), [])
    report = verify_classifying_model(action)
    assert report.all_ok
    assert report.entries == [((0,), True, "Contractible")]


def test_classifying_rotation():
    _x, action = standard("cyclic_rotation", 3)
    report = verify_classifying_model(remove_inversions(action))
    assert report.all_ok
    assert [sub for sub, _n, _s in report.entries] == [(0,), (0, 1, 2)]


def test_classifying_triangle_swap():
    _x, action = standard("triangle_swap")
    report = verify_classifying_model(remove_inversions(action))
    assert report.all_ok
    assert len(report.entries) == 2


def test_classifying_dihedral():
    _x, action = standard("dihedral", 3)
    report = verify_classifying_model(remove_inversions(action))
    assert report.all_ok
    sizes = sorted(len(sub) for sub, _n, _s in report.entries)
    assert sizes == [1, 2, 2, 2, 3, 6]


def test_classifying_limit():
    _x, action = standard("cyclic_rotation", 3)
    with pytest.raises(LimitExceeded):
        verify_classifying_model(remove_inversions(action), order_limit=2)
