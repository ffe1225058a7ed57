"""The equivariant pushout: extend an invariant graph to a simply-connected
complex mapping into the ambient one, one filled disk per cycle orbit.

Run with: python demos/05_equivariant_filling.py
"""

from drtoolkit import remove_inversions
from drtoolkit.builders import standard
from drtoolkit.complexes import Path, dart, subcomplex
from drtoolkit.construct import equivariant_filling, orbit_graph
from drtoolkit.homology import certify_simply_connected
from drtoolkit.maps import compose

# C3 acts on the subdivided triangle disk; the boundary hexagon is an
# invariant connected graph.
_x, rotation = standard("cyclic_rotation", 3)
action = remove_inversions(rotation)
hexagon = subcomplex(action.complex, set(),
                     [e for e in action.complex.edges
                      if e.startswith(("e0.", "e1.", "e2."))], ())
print("Y0 = boundary hexagon:", len(hexagon.edges), "edges")

result = equivariant_filling(action, hexagon)
print("Y has", len(result.complex.faces), "faces from",
      len(result.orbit_fillings), "cycle orbit(s)")
print("stabilizer-symmetric orbits:", result.symmetric_orbits,
      "(the rotation carries the filled disk to itself nontrivially)")
print("Y simply connected:",
      certify_simply_connected(result.complex).status)

# The map extends the inclusion and commutes with the action cell for cell.
assert all(result.map.vertex_map[v] == v for v in hexagon.vertices)
for h in range(action.order):
    lhs = compose(result.action.elements[h], result.map)
    rhs = compose(result.map, action.elements[h])
    assert lhs.key() == rhs.key()
print("map extends the inclusion and is equivariant: checked")

# Orbit graphs feed the same machinery: the union of the images of a
# minimal path between fixed vertices.
_x2, swap = standard("triangle_swap")
y0 = orbit_graph(swap, Path("v0", (dart("s"),)))
print("\norbit graph of the shared edge under the swap:",
      sorted(y0.edges))
square = subcomplex(swap.complex, set(), ["a1", "a2", "b1", "b2"], ())
result = equivariant_filling(swap, square)
print("filling the outer square equivariantly:",
      len(result.complex.faces), "faces;",
      "reflection-symmetric orbits:", result.symmetric_orbits)
