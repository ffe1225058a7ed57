"""Decide diagrammatic reducibility and replay the certificates.

Run with: python demos/03_diagrammatic_reducibility.py
"""

from drtoolkit import (brute_force_core_oracle, decide_dr, greedy_core,
                       sphere_search)
from drtoolkit.builders import random_complex, standard
from drtoolkit.certificates import emit_dr_certificate, verify_certificate

BOUNDS = {"max_area": 12, "max_perimeter": 24, "sphere_bound": 4}

for name in ("triangle_disk", "two_triangles", "bigon_sphere", "torus"):
    x = standard(name)
    verdict = decide_dr(x)
    print(f"{name}: {verdict.status}"
          + (f" ({verdict.reason})" if verdict.reason else ""))

# The greedy core either empties the faces by free-edge collapses or stops
# at a sub-collection with no free edge; a subset oracle confirms it.
bigon = standard("bigon_sphere")
print("\nbigon greedy core:", greedy_core(bigon).core)
print("bigon oracle finds:", brute_force_core_oracle(bigon))

# A reduced spherical diagram is an unconditional witness against
# reducibility, no simple-connectivity assumption needed.
sphere = sphere_search(bigon, max_area=2)
print("reduced sphere over the bigon: area", sphere.area())

# Certificates replay against the input through primitive operations only.
two_tri = standard("two_triangles")
cert = emit_dr_certificate(two_tri, decide_dr(two_tri), BOUNDS)
for step in verify_certificate(cert, two_tri):
    print("verify:", step)

# Randomly grown collapsible complexes are reducible by construction.
print()
for seed in (11, 23, 37):
    x = random_complex(seed, require="simply_connected_dr")
    print(f"seed {seed}: {len(x.faces)} faces ->",
          decide_dr(x).status)
