"""Shared corpus fixtures.

The simply-connected DR corpus and the action corpus are the instances the
acceptance suite quantifies over; module tests reuse them for property
checks.
"""

import pytest

from drtoolkit.actions import close_group, remove_inversions
from drtoolkit.builders import (n_gon_rotation, random_complex, standard)
from drtoolkit.maps import compose


def sc_dr_complexes():
    """Named simply-connected diagrammatically reducible complexes."""
    return [
        ("triangle_disk", standard("triangle_disk")),
        ("square_disk", standard("n_gon_disk", 4)),
        ("pentagon_disk", standard("n_gon_disk", 5)),
        ("two_triangles", standard("two_triangles")),
        ("loop_disk", standard("loop_disk")),
        ("interval", standard("interval")),
        ("tree22", standard("tree", 2, 2)),
        ("sub_triangle", standard("subdivided", "triangle_disk")),
        ("rand11", random_complex(11, require="simply_connected_dr")),
        ("rand23", random_complex(23, require="simply_connected_dr")),
        ("rand37", random_complex(37, require="simply_connected_dr")),
    ]


def all_standard_complexes():
    return [
        ("triangle_disk", standard("triangle_disk")),
        ("square_disk", standard("n_gon_disk", 4)),
        ("bigon_sphere", standard("bigon_sphere")),
        ("torus", standard("torus")),
        ("theta_graph", standard("theta_graph")),
        ("interval", standard("interval")),
        ("two_triangles", standard("two_triangles")),
        ("loop_disk", standard("loop_disk")),
        ("tree22", standard("tree", 2, 2)),
    ]


def raw_action_corpus():
    """Actions as built, possibly with inversions; all on simply-connected
    DR complexes."""
    pairs = []
    for n in (3, 4, 5, 6):
        _x, act = standard("cyclic_rotation", n)
        pairs.append((f"C{n}_rotation", act))
    _x, act = standard("dihedral", 3)
    pairs.append(("D3_triangle", act))
    _x, act = standard("dihedral", 2)
    pairs.append(("D2_bigon_disk", act))
    rot = n_gon_rotation(4)
    half_turn = compose(rot, rot)
    pairs.append(("C2_square", close_group(rot.source, [half_turn])))
    _x, act = standard("triangle_swap")
    pairs.append(("swap_two_triangles", act))
    _x, act = standard("edge_flip")
    pairs.append(("edge_flip", act))
    pairs.append(("trivial_triangle",
                  close_group(standard("triangle_disk"), [])))
    pairs.append(("trivial_rand",
                  close_group(random_complex(
                      11, require="simply_connected_dr"), [])))
    return pairs


@pytest.fixture(scope="session")
def action_corpus():
    """Inversion-free corpus actions (after barycentric subdivision)."""
    return [(name, remove_inversions(act))
            for name, act in raw_action_corpus()]
