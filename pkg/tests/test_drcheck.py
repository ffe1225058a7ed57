import random

import pytest

from drtoolkit.builders import presentation_complex, random_complex, standard
from drtoolkit.complexes import collapse, free_edges
from drtoolkit.drcheck import (brute_force_core_oracle, decide_dr,
                               greedy_core, sphere_search)
from drtoolkit.errors import TooLarge
from drtoolkit.homology import homology
from drtoolkit.maps import is_near_immersion

from conftest import all_standard_complexes


def test_greedy_core_triangle():
    result = greedy_core(standard("triangle_disk"))
    assert result.empties
    assert len(result.collapse_order) == 1


def test_greedy_core_bigon_and_torus():
    assert greedy_core(standard("bigon_sphere")).core == ("f1", "f2")
    assert greedy_core(standard("torus")).core == ("f",)


def test_greedy_core_collapse_order_replays():
    for seed in (2, 9, 14):
        x = random_complex(seed, require="simply_connected_dr")
        result = greedy_core(x)
        assert result.empties
        current = x
        for e, f in result.collapse_order:
            assert (e, f) in free_edges(current)
            current = collapse(current, e, f)
        assert not current.faces


def test_greedy_core_confluence():
    rng = random.Random(0)
    complexes = [x for _n, x in all_standard_complexes()]
    complexes += [random_complex(s) for s in range(20)]
    for x in complexes:
        if len(x.faces) > 6:
            continue
        reference = greedy_core(x).empties
        faces = x.sorted_faces()
        for _trial in range(20):
            rng.shuffle(faces)
            assert greedy_core(x, order_hint=list(faces)).empties == reference


def test_oracle_examples():
    assert brute_force_core_oracle(standard("triangle_disk")) is None
    assert brute_force_core_oracle(standard("bigon_sphere")) == ("f1", "f2")


def test_oracle_guard():
    x = presentation_complex(list("abcdefghijklm"),
                             [f"{g} {g} {g}" for g in "abcdefghijklm"])
    with pytest.raises(TooLarge):
        brute_force_core_oracle(x)


def test_oracle_agrees_with_greedy():
    for seed in range(40):
        x = random_complex(seed)
        if len(x.faces) > 6:
            continue
        assert greedy_core(x).empties == (brute_force_core_oracle(x) is None)


def test_decide_dr_standards():
    assert decide_dr(standard("triangle_disk")).status == "DR"
    bigon = decide_dr(standard("bigon_sphere"))
    assert bigon.status == "NotDR"
    assert bigon.certificate.core == ("f1", "f2")
    assert decide_dr(standard("torus")).status == "Unknown"


def test_decide_dr_certificates_replay():
    verdict = decide_dr(standard("two_triangles"))
    assert verdict.status == "DR"
    current = standard("two_triangles")
    for e, f in verdict.certificate.collapse_order:
        assert (e, f) in free_edges(current)
        current = collapse(current, e, f)
    assert not current.faces


def test_not_dr_core_revalidates():
    verdict = decide_dr(standard("bigon_sphere"))
    core = verdict.certificate.core
    assert core
    assert free_edges(standard("bigon_sphere"), core) == []


def test_sphere_search_bigon():
    sphere = sphere_search(standard("bigon_sphere"), 2)
    assert sphere is not None
    assert sphere.area() == 2
    ok, _ = is_near_immersion(sphere.map)
    assert ok
    assert sphere.validate() == []


def test_sphere_search_dr_targets_find_nothing():
    assert sphere_search(standard("triangle_disk"), 4) is None
    assert sphere_search(standard("torus"), 4) is None


def test_sphere_certificate_implies_not_dr_consistency():
    # Whenever a glued sphere is a near-immersion, decide_dr must not say DR.
    sphere = sphere_search(standard("bigon_sphere"), 2)
    assert sphere is not None
    assert decide_dr(standard("bigon_sphere")).status == "NotDR"


def test_dr_implies_trivial_h2():
    for seed in range(12):
        x = random_complex(seed, require="simply_connected_dr")
        verdict = decide_dr(x)
        assert verdict.status == "DR"
        assert homology(x).betti2 == 0
    for name in ("triangle_disk", "two_triangles", "loop_disk"):
        x = standard(name)
        if decide_dr(x).status == "DR":
            assert homology(x).betti2 == 0
