import pytest

from drtoolkit.builders import (EXPECTED_INVARIANTS, format_word, parse_word,
                                presentation_complex, random_complex,
                                standard)
from drtoolkit.complexes import dart, euler_characteristic, validate
from drtoolkit.drcheck import decide_dr
from drtoolkit.errors import ParseError, UnknownGenerator, UnknownName
from drtoolkit.homology import certify_simply_connected, homology


def test_presentation_torus():
    x = presentation_complex(["a", "b"], ["a b A B"])
    assert x.faces["r1"] == (dart("a"), dart("b"),
                             dart("a", -1), dart("b", -1))
    assert euler_characteristic(x) == 0
    assert homology(x).as_tuple() == (1, 2, 1)


def test_presentation_caret_inverses():
    x = presentation_complex(["a", "b"], ["a b a^-1 b^-1"])
    y = presentation_complex(["a", "b"], ["a b A B"])
    assert x == y


def test_presentation_loop_disk_is_dr():
    x = presentation_complex(["a"], ["a"])
    assert decide_dr(x).status == "DR"


def test_presentation_projective_plane():
    x = presentation_complex(["a"], ["a a"])
    assert homology(x).torsion1 == (2,)


def test_parse_word_errors_carry_position():
    with pytest.raises(UnknownGenerator, match="position 1"):
        parse_word("a c", ["a", "b"])
    with pytest.raises(ParseError, match="position 0"):
        parse_word("a A b", ["a", "b"])
    with pytest.raises(ParseError):
        parse_word("", ["a"])


def test_word_round_trip():
    for text in ("a b a^-1 b^-1", "a a", "a b^-1"):
        word = parse_word(text, ["a", "b"])
        assert parse_word(format_word(word), ["a", "b"]) == word


def test_standard_expected_invariants():
    for name, expected in EXPECTED_INVARIANTS.items():
        x = standard(name)
        assert validate(x) == []
        assert euler_characteristic(x) == expected["chi"]
        profile = homology(x)
        assert profile.as_tuple() == expected["betti"]
        assert profile.torsion1 == tuple(expected["torsion"])
        if "dr" in expected:
            assert decide_dr(x).status == expected["dr"]


def test_standard_parameterized():
    assert len(standard("n_gon_disk", 6).edges) == 6
    assert len(standard("tree", 3, 2).vertices) == 15
    sub = standard("subdivided", "triangle_disk")
    assert len(sub.faces) == 6
    sub2 = standard("subdivided", "triangle_disk", 2)
    assert len(sub2.faces) == 36


def test_standard_actions_ship_with_complexes():
    for name, params in [("cyclic_rotation", (4,)), ("dihedral", (3,)),
                         ("edge_flip", ()), ("face_swap", ()),
                         ("triangle_swap", ())]:
        x, action = standard(name, *params)
        assert action.complex == x
        assert action.validate() == []


def test_unknown_name():
    with pytest.raises(UnknownName):
        standard("klein_bottle")


def test_random_deterministic():
    for seed in (0, 7, 42):
        assert random_complex(seed) == random_complex(seed)
        assert random_complex(seed, require="simply_connected_dr") \
            == random_complex(seed, require="simply_connected_dr")


def test_random_dr_samples_are_dr_and_simply_connected():
    for seed in (1, 5, 13, 29):
        x = random_complex(seed, require="simply_connected_dr")
        assert validate(x) == []
        assert decide_dr(x).status == "DR"
        assert certify_simply_connected(x).status == "Certified"
