import pytest

from drtoolkit.builders import random_complex, standard
from drtoolkit.complexes import (Cycle, Path, TwoComplex,
                                 barycentric_subdivision, canonical_cycle,
                                 collapse, dart, embedded_cycles,
                                 embedded_paths, euler_characteristic,
                                 free_edges, is_embedded_cycle, prune_leaf,
                                 subcomplex, validate)
from drtoolkit.errors import NotFreeError
from drtoolkit.homology import homology

from conftest import all_standard_complexes


def test_validate_torus_clean():
    assert validate(standard("torus")) == []


def test_validate_broken_walk():
    x = TwoComplex({"u", "v", "w"},
                   {"e1": ("u", "v"), "e2": ("w", "u")},
                   {"f": (dart("e1"), dart("e2"))})
    report = validate(x)
    assert any("not closed at position 0" in p for p in report)


def test_validate_dangling_reference():
    x = TwoComplex({"u"}, {}, {"f": (dart("ghost"),)})
    assert any("dangling" in p for p in validate(x))


def test_validate_empty_complex():
    assert validate(TwoComplex()) != []


def test_validate_empty_word():
    x = TwoComplex({"u"}, {}, {"f": ()})
    assert any("empty attaching word" in p for p in validate(x))


@pytest.mark.parametrize("name,chi", [
    ("torus", 0), ("triangle_disk", 1), ("bigon_sphere", 2),
    ("theta_graph", -1), ("two_triangles", 1)])
def test_euler_characteristic(name, chi):
    assert euler_characteristic(standard(name)) == chi


def test_free_edges_triangle():
    assert free_edges(standard("triangle_disk")) == [
        ("e0", "f"), ("e1", "f"), ("e2", "f")]


def test_free_edges_torus_and_bigon_empty():
    assert free_edges(standard("torus")) == []
    assert free_edges(standard("bigon_sphere")) == []


def test_collapse_triangle():
    x = collapse(standard("triangle_disk"), "e0", "f")
    assert len(x.vertices) == 3 and len(x.edges) == 2 and not x.faces
    assert euler_characteristic(x) == 1
    assert validate(x) == []


def test_collapse_not_free():
    with pytest.raises(NotFreeError):
        collapse(standard("torus"), "a", "f")


def test_collapse_preserves_euler_on_corpus():
    for _name, x in all_standard_complexes():
        for e, f in free_edges(x):
            assert euler_characteristic(collapse(x, e, f)) \
                == euler_characteristic(x)
            break


def test_prune_leaf():
    x = standard("interval")
    y = prune_leaf(x, "e", "v")
    assert y.vertices == {"u"} and not y.edges


# -- embedded paths -----------------------------------------------------------

def test_theta_paths_u_to_v():
    theta = standard("theta_graph")
    paths = embedded_paths(theta, "u", "v", 1)
    assert len(paths) == 3
    assert all(p.length == 1 for p in paths)


def test_theta_paths_u_to_u_only_empty():
    theta = standard("theta_graph")
    assert embedded_paths(theta, "u", "u", 2) == [Path("u", ())]


def test_torus_skeleton_loops_excluded():
    torus = standard("torus")
    skeleton = subcomplex(torus, torus.vertices, torus.edges, ())
    assert embedded_paths(skeleton, "v", "v", 1) == [Path("v", ())]


def brute_force_embedded_paths(x, u, v, n):
    """Oracle: enumerate every walk of length <= n and filter by the
    embeddedness predicate (all visited vertices distinct)."""
    found = []

    def extend(at, walk):
        if at == v:
            verts = x.walk_vertices(u, tuple(walk))
            if len(set(verts)) == len(verts):
                found.append(tuple(walk))
        if len(walk) == n:
            return
        for d in x.darts_out_of(at):
            walk.append(d)
            extend(x.head(d), walk)
            walk.pop()

    extend(u, [])
    return sorted(set(found))


def test_embedded_paths_match_brute_force():
    graphs = [standard("theta_graph"), standard("tree", 2, 2)]
    for seed in (3, 5, 8):
        x = random_complex(seed, max_faces=0)
        graphs.append(subcomplex(x, x.vertices, x.edges, ()))
    for g in graphs:
        if len(g.edges) > 8:
            continue
        vs = g.sorted_vertices()
        for u in vs:
            for v in vs:
                expected = brute_force_embedded_paths(g, u, v, 4)
                got = sorted(set(p.darts for p in embedded_paths(g, u, v, 4)))
                assert got == expected


# -- embedded cycles ----------------------------------------------------------

def test_theta_cycles():
    assert len(embedded_cycles(standard("theta_graph"))) == 3


def test_tree_has_no_cycles():
    assert embedded_cycles(standard("tree", 2, 2)) == []


def test_single_loop_cycle():
    g = TwoComplex({"v"}, {"a": ("v", "v")}, {})
    cycles = embedded_cycles(g)
    assert len(cycles) == 1 and cycles[0].length == 1


def test_backtrack_not_embedded():
    g = standard("interval")
    cyc = Cycle("u", (dart("e"), dart("e", -1)))
    assert not is_embedded_cycle(g, cyc)
    assert embedded_cycles(g) == []


def test_canonical_cycle_deterministic():
    theta = standard("theta_graph")
    cyc = Cycle("v", (dart("e1", -1), dart("e0")))
    canon = canonical_cycle(theta, cyc)
    assert canon == canonical_cycle(theta, canon)
    assert canon.darts[0] == dart("e0")
    assert canon.canonical_key() == cyc.reverse().canonical_key()


# -- barycentric subdivision -----------------------------------------------------

def test_subdivision_triangle_counts():
    sub = barycentric_subdivision(standard("triangle_disk"))
    x = sub.complex
    assert (len(x.vertices), len(x.edges), len(x.faces)) == (7, 12, 6)
    assert euler_characteristic(x) == 1
    assert validate(x) == []


def test_subdivision_preserves_euler_and_homology():
    for _name, x in all_standard_complexes():
        sub = barycentric_subdivision(x)
        assert validate(sub.complex) == []
        assert euler_characteristic(sub.complex) == euler_characteristic(x)
        before, after = homology(x), homology(sub.complex)
        assert before.as_tuple() == after.as_tuple()
        assert before.torsion1 == after.torsion1


def test_subdivision_provenance_total():
    x = standard("two_triangles")
    sub = barycentric_subdivision(x)
    for v in sub.complex.vertices:
        assert ("vertex", v) in sub.provenance
    for e in sub.complex.edges:
        assert ("edge", e) in sub.provenance
    for f in sub.complex.faces:
        assert ("face", f) in sub.provenance
    originals = {("vertex", v) for v in x.vertices}
    originals |= {("edge", e) for e in x.edges}
    originals |= {("face", f) for f in x.faces}
    assert set(sub.provenance.values()) == originals


def test_random_complexes_validate():
    for seed in range(25):
        assert validate(random_complex(seed)) == []
        assert validate(random_complex(
            seed, require="simply_connected_dr")) == []
