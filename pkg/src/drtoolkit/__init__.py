"""Combinatorial 2-complexes with finite group actions: diagrammatic
reducibility decisions, van Kampen fillings, fixed-point subcomplexes, and
replayable certificates."""

from .complexes import (Cycle, DirectedEdge, Path, TwoComplex,
                        barycentric_subdivision, collapse, dart,
                        embedded_cycles, embedded_paths,
                        euler_characteristic, free_edges, validate)
from .maps import (CellularMap, FaceWitness, compose, identity_map,
                   inverse_map, is_immersion, is_near_immersion)
from .diagrams import (Diagram, DiagramInX, area, boundary_cycle,
                       diagram_isomorphic, enumerate_fillings, fill_cycle,
                       from_walks, glue_to_sphere, validate_diagram)
from .homology import (HomologyProfile, certify_simply_connected,
                       collapsible, contractibility_verdict, homology,
                       smith_normal_form)
from .drcheck import (CoreResult, DrVerdict, brute_force_core_oracle,
                      decide_dr, greedy_core, sphere_search)
from .actions import (GroupAction, InversionReport, close_group,
                      equivariant_collapse, find_fixed_point,
                      fixed_subcomplex, has_inversions, orbits,
                      remove_inversions, stabilizer,
                      verify_classifying_model)
from .construct import equivariant_filling, orbit_graph
from .builders import presentation_complex, random_complex, standard

__all__ = [name for name in dir() if not name.startswith("_")]
