import math
import random
from fractions import Fraction
from itertools import combinations

import pytest

from drtoolkit.builders import presentation_complex, random_complex, standard
from drtoolkit.complexes import collapse, euler_characteristic, prune_leaf
from drtoolkit.homology import (boundary_composition_is_zero, chain_data,
                                certify_simply_connected, collapsible,
                                contractibility_verdict, homology,
                                replay_operations, smith_normal_form)


def rank_over_rationals(matrix):
    """Independent rank oracle: Gaussian elimination over Fractions."""
    m = [[Fraction(v) for v in row] for row in matrix]
    rank = 0
    cols = len(m[0]) if m else 0
    row = 0
    for col in range(cols):
        pivot = next((r for r in range(row, len(m)) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[row], m[pivot] = m[pivot], m[row]
        for r in range(len(m)):
            if r != row and m[r][col] != 0:
                factor = m[r][col] / m[row][col]
                m[r] = [a - factor * b for a, b in zip(m[r], m[row])]
        rank += 1
        row += 1
    return rank


def gcd_of_minors(matrix, k):
    """Independent invariant-factor oracle: d1...dk = gcd of k-minors."""
    rows = range(len(matrix))
    cols = range(len(matrix[0]))
    values = []
    for rs in combinations(rows, k):
        for cs in combinations(cols, k):
            sub = [[matrix[r][c] for c in cs] for r in rs]
            values.append(round(_det(sub)))
    g = 0
    for v in values:
        g = math.gcd(g, v)
    return g


def _det(m):
    if len(m) == 1:
        return m[0][0]
    total = 0
    for j in range(len(m)):
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        total += ((-1) ** j) * m[0][j] * _det(minor)
    return total


def test_snf_stated_example():
    # gcd of entries is 1, |det| = 2, so the factors are forced to (1, 2).
    factors, ops, diag = smith_normal_form([[1, 2], [3, 4]])
    assert factors == [1, 2]
    assert replay_operations([[1, 2], [3, 4]], ops) == diag


def test_snf_zero_and_identity():
    assert smith_normal_form([[0, 0], [0, 0]])[0] == []
    assert smith_normal_form([[1, 0, 0], [0, 1, 0], [0, 0, 1]])[0] == [1, 1, 1]


def test_snf_random_matrices_against_minor_oracle():
    rng = random.Random(7)
    for _trial in range(25):
        rows = rng.randint(1, 3)
        cols = rng.randint(1, 3)
        matrix = [[rng.randint(-6, 6) for _ in range(cols)]
                  for _ in range(rows)]
        factors, ops, diag = smith_normal_form(matrix)
        assert replay_operations(matrix, ops) == diag
        assert len(factors) == rank_over_rationals(matrix)
        for a, b in zip(factors, factors[1:]):
            assert b % a == 0
        product = 1
        for k, d in enumerate(factors, start=1):
            product *= d
            assert product == gcd_of_minors(matrix, k)


def test_snf_no_overflow():
    big = 10 ** 30
    factors, ops, diag = smith_normal_form([[big, 1], [1, big]])
    assert replay_operations([[big, 1], [1, big]], ops) == diag
    assert factors[0] == 1 and factors[1] == big * big - 1


@pytest.mark.parametrize("name,betti,torsion", [
    ("torus", (1, 2, 1), ()),
    ("bigon_sphere", (1, 0, 1), ()),
    ("triangle_disk", (1, 0, 0), ()),
    ("theta_graph", (1, 2, 0), ()),
    ("two_triangles", (1, 0, 0), ()),
])
def test_homology_standards(name, betti, torsion):
    profile = homology(standard(name))
    assert profile.as_tuple() == betti
    assert profile.torsion1 == torsion


def test_projective_plane_torsion():
    profile = homology(presentation_complex(["a"], ["a a"]))
    assert profile.as_tuple() == (1, 0, 0)
    assert profile.torsion1 == (2,)


def test_projective_plane_torsion_survives_subdivision():
    from drtoolkit.complexes import barycentric_subdivision
    x = presentation_complex(["a"], ["a a"])
    once = barycentric_subdivision(x).complex
    twice = barycentric_subdivision(once).complex
    assert homology(once).torsion1 == (2,)
    assert homology(twice).torsion1 == (2,)


def test_boundary_composition_zero_everywhere():
    for seed in range(15):
        x = random_complex(seed)
        assert boundary_composition_is_zero(chain_data(x))
        profile = homology(x)
        assert (profile.betti0 - profile.betti1 + profile.betti2
                == euler_characteristic(x))


def test_homology_invariant_under_collapse():
    x = standard("two_triangles")
    before = homology(x)
    from drtoolkit.complexes import free_edges
    e, f = free_edges(x)[0]
    after = homology(collapse(x, e, f))
    assert before.as_tuple() == after.as_tuple()
    assert before.torsion1 == after.torsion1


# -- collapsibility ----------------------------------------------------------------

def test_collapsible_triangle_replays():
    x = standard("triangle_disk")
    steps = collapsible(x)
    assert steps is not None
    current = x
    for step in steps:
        if step[0] == "collapse":
            current = collapse(current, step[1], step[2])
        else:
            current = prune_leaf(current, step[1], step[2])
    assert len(current.vertices) == 1 and not current.edges


def test_collapsible_negative_and_tree():
    assert collapsible(standard("torus")) is None
    assert collapsible(standard("bigon_sphere")) is None
    assert collapsible(standard("tree", 2, 3)) is not None


# -- simple connectivity ---------------------------------------------------------------

def test_certify_bigon_sphere():
    verdict = certify_simply_connected(standard("bigon_sphere"))
    assert verdict.status == "Certified"
    assert all(d.area() == 1 for _e, _c, d in verdict.loops)


def test_certify_torus_not_simply_connected():
    verdict = certify_simply_connected(standard("torus"))
    assert verdict.status == "NotSimplyConnected"
    assert "betti1=2" in verdict.reason


def test_certify_triangle():
    assert certify_simply_connected(
        standard("triangle_disk")).status == "Certified"


def test_certify_projective_plane_torsion_obstruction():
    verdict = certify_simply_connected(presentation_complex(["a"], ["a a"]))
    assert verdict.status == "NotSimplyConnected"


def test_certify_unknown_when_bounds_too_small():
    verdict = certify_simply_connected(standard("triangle_disk"),
                                       max_area=0)
    assert verdict.status == "Unknown"
    assert "bounds" in verdict.reason


# -- contractibility ----------------------------------------------------------------------

def test_contractibility_point_and_tree():
    from drtoolkit.complexes import TwoComplex
    point = TwoComplex({"p"}, {}, {})
    assert contractibility_verdict(point).status == "Contractible"
    assert contractibility_verdict(
        standard("tree", 2, 2)).status == "Contractible"


def test_contractibility_bigon_not():
    verdict = contractibility_verdict(standard("bigon_sphere"))
    assert verdict.status == "NotContractible"
    assert "betti" in verdict.reason


def test_contractibility_whitehead_route():
    # A complex whose greedy collapse stalls is still recognised through
    # trivial homology plus the filling certificate when possible; the
    # triangle disk goes through the collapse route.
    verdict = contractibility_verdict(standard("triangle_disk"))
    assert verdict.status == "Contractible"
    assert verdict.certificate[0] == "collapse"
