"""Build complexes three ways and inspect their invariants.

Run with: python demos/01_complexes_and_homology.py
"""

from drtoolkit import (TwoComplex, barycentric_subdivision, dart,
                       euler_characteristic, homology, validate)
from drtoolkit.builders import presentation_complex, standard
from drtoolkit.textio import parse_complex, serialize_complex

# A complex by hand: two vertices, two parallel edges, two faces glued along
# the same word. This is the 2-sphere with a bigon cell structure.
bigon = TwoComplex(
    vertices={"u", "v"},
    edges={"e1": ("u", "v"), "e2": ("u", "v")},
    faces={"f1": (dart("e1"), dart("e2", -1)),
           "f2": (dart("e1"), dart("e2", -1))})
print("bigon sphere violations:", validate(bigon))
print("chi =", euler_characteristic(bigon))
print("homology =", homology(bigon).as_tuple())

# The same complex through the text format.
text = serialize_complex(bigon)
print("\nserialized:")
print(text)
assert parse_complex(text) == bigon

# A presentation complex: the torus is <a, b | a b a^-1 b^-1>.
torus = presentation_complex(["a", "b"], ["a b A B"])
print("torus homology =", homology(torus).as_tuple(), "(one vertex, two"
      " loops, one square)")

# The projective plane <a | a a> shows torsion.
plane = presentation_complex(["a"], ["a a"])
print("projective plane torsion in H1:", homology(plane).torsion1)

# Barycentric subdivision refines cells but not topology.
sub = barycentric_subdivision(standard("triangle_disk")).complex
print("\nsubdivided triangle:", len(sub.vertices), "vertices,",
      len(sub.edges), "edges,", len(sub.faces), "faces;",
      "homology still", homology(sub).as_tuple())
