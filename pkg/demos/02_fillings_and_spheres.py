"""Van Kampen fillings: search disk diagrams, enumerate them, glue spheres.

Run with: python demos/02_fillings_and_spheres.py
"""

from drtoolkit import (Cycle, dart, enumerate_fillings, fill_cycle,
                       glue_to_sphere, is_near_immersion)
from drtoolkit.builders import standard

# The commutator loop on the torus bounds the single square cell.
torus = standard("torus")
commutator = Cycle("v", (dart("a"), dart("b"), dart("a", -1), dart("b", -1)))
filling = fill_cycle(torus, commutator)
print("commutator filling: area", filling.area())
print("boundary image:", " ".join(d.token() for d in filling.boundary_image()))

# The bare loop a is not null-homotopic; every splice move reduces straight
# back to the loop, so the search saturates and reports no filling.
print("loop a fillable:", fill_cycle(torus, Cycle("v", (dart("a"),))))

# The bigon sphere has an embedded cycle with two genuinely different
# fillings, one through each face. That breaks filling uniqueness, and the
# two fillings glue into a reduced sphere: the complex is not
# diagrammatically reducible.
bigon = standard("bigon_sphere")
cycle = Cycle("u", (dart("e1"), dart("e2", -1)))
fillings, _ = enumerate_fillings(bigon, cycle, max_area=1)
print("\nbigon fillings of e1 e2^-1 at area 1:", len(fillings))
sphere = glue_to_sphere(fillings[0], fillings[1])
ok, fold = is_near_immersion(sphere.map)
print("glued sphere: area", sphere.area(), "reduced:", ok)

# Gluing a filling with itself mirrors it, and every face folds with its
# mirror image.
mirror = glue_to_sphere(fillings[0], fillings[0])
ok, fold = is_near_immersion(mirror.map)
print("self-glued sphere reduced:", ok, "- first fold:", fold)

# On a diagrammatically reducible target, fillings of an embedded cycle are
# unique up to isomorphism.
triangle = standard("triangle_disk")
boundary = Cycle("v0", (dart("e0"), dart("e1"), dart("e2")))
fillings, _ = enumerate_fillings(triangle, boundary, max_area=6)
print("\ntriangle boundary filling classes up to area 6:", len(fillings))
