"""Group actions: inversions, fixed subcomplexes, constructive fixed points,
and the classifying-space conditions.

Run with: python demos/04_group_actions_fixed_points.py
"""

from drtoolkit import (contractibility_verdict, equivariant_collapse,
                       find_fixed_point, fixed_subcomplex, has_inversions,
                       remove_inversions, verify_classifying_model)
from drtoolkit.actions import orbits, stabilizer
from drtoolkit.builders import standard

# Rotating the triangle disk fixes its face setwise but rotates the
# attaching word: an inversion. One barycentric subdivision resolves it.
_x, rotation = standard("cyclic_rotation", 3)
print("C3 inversions:", has_inversions(rotation).entries)
action = remove_inversions(rotation)
print("after subdivision:", has_inversions(action).entries or "none")

# The fixed subcomplex of the full group is the barycenter, and it is the
# constructive fixed point: collapse equivariantly to a tree, take its
# center.
fixed = fixed_subcomplex(action)
print("fixed cells:", sorted(fixed.vertices))
print("find_fixed_point:", find_fixed_point(action))
collapsed, log = equivariant_collapse(action)
print("collapse steps (orbit sizes):", [len(step) for step in log])

# Orbits and stabilizers on the subdivided disk.
sizes = sorted(len(orbit) for orbit in orbits(action))
print("orbit sizes:", sizes)
print("barycenter stabilizer:", stabilizer(action, ("vertex", "f.b")))

# The fixed set of every subgroup in the stabilizer family is contractible,
# which is the classifying-space condition for this action.
report = verify_classifying_model(action)
for subgroup, nonempty, status in report.entries:
    print(f"subgroup {subgroup}: nonempty={nonempty}, fixed set {status}")
print("classifying model:", "ok" if report.all_ok else "refuted")

# A dihedral action mixes rotations with reflections; reflections flip edges
# and reflect the face, all resolved by the same subdivision.
_x, dihedral = standard("dihedral", 3)
print("\nD3 inversion kinds:",
      sorted({kind for _e, _c, kind in has_inversions(dihedral).entries}))
cleaned = remove_inversions(dihedral)
fixed = fixed_subcomplex(cleaned)
print("D3 fixed set:", sorted(fixed.vertices),
      "->", contractibility_verdict(fixed).status)
print("D3 fixed point:", find_fixed_point(cleaned))
