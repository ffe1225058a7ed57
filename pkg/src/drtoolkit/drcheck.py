"""Deciding diagrammatic reducibility for finite simply-connected complexes.

The decision rests on the collapsibility characterization: a
simply-connected 2-complex is diagrammatically reducible exactly when no
sub-collection of faces is free-edge-less.  The greedy core computes this;
a brute-force subset oracle double-checks it at small sizes; and a search
for reduced spherical diagrams provides certificates independent of simple
connectivity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

from .complexes import TwoComplex, embedded_cycles, free_edges, subcomplex
from .diagrams import DiagramInX, enumerate_fillings, glue_to_sphere
from .errors import TooLarge
from .homology import certify_simply_connected
from .maps import is_near_immersion


@dataclass
class CoreResult:
    """Either a collapse order emptying all faces, or a nonempty face
    collection with no free edge relative to itself."""

    collapse_order: Optional[list] = None  # [(edge, face), ...]
    core: Optional[tuple] = None           # sorted face ids

    @property
    def empties(self) -> bool:
        return self.core is None


def greedy_core(x: TwoComplex, order_hint: Optional[list] = None) -> CoreResult:
    """Repeatedly drop a face with a free edge until none is removable.

    Deterministically removes the least (edge, face) pair; ``order_hint``
    (a list of face ids) overrides the tie-break for confluence testing.
    The residual core is independent of removal order.
    """
    remaining = set(x.faces)
    order = []
    while remaining:
        free = free_edges(x, remaining)
        if not free:
            return CoreResult(core=tuple(sorted(remaining)))
        if order_hint is not None:
            ranked = sorted(free, key=lambda ef: (order_hint.index(ef[1]), ef))
            e, f = ranked[0]
        else:
            e, f = free[0]
        order.append((e, f))
        remaining.discard(f)
    return CoreResult(collapse_order=order)


def brute_force_core_oracle(x: TwoComplex, face_limit: int = 12
                            ) -> Optional[tuple]:
    """Enumerate all nonempty face subsets; return the first (by size, then
    lexicographically) with no free edge relative to itself, or None."""
    faces = x.sorted_faces()
    if len(faces) > face_limit:
        raise TooLarge(f"{len(faces)} faces exceeds the oracle limit"
                       f" {face_limit}")
    for size in range(1, len(faces) + 1):
        for subset in combinations(faces, size):
            if not free_edges(x, subset):
                return subset
    return None


@dataclass
class DrVerdict:
    status: str                      # "DR" | "NotDR" | "Unknown"
    certificate: Optional[object] = None
    assumptions: list = field(default_factory=list)
    reason: str = ""
    simple_connectivity: Optional[object] = None


def sphere_search(x: TwoComplex, max_area: int = 4,
                  max_fill_area: Optional[int] = None
                  ) -> Optional[DiagramInX]:
    """Search for a reduced spherical diagram by gluing pairs of distinct
    near-immersed fillings of embedded cycles.

    Returns the first reduced sphere found (deterministic order), or None;
    None is not a reducibility proof.  Raises nothing on truncation; the
    caller can inspect coverage through ``decide_dr``.
    """
    skeleton = subcomplex(x, x.vertices, x.edges, ())
    fill_bound = max_fill_area if max_fill_area is not None else max_area - 1
    for cycle in embedded_cycles(skeleton):
        fillings, _truncated = enumerate_fillings(x, cycle, fill_bound)
        for i in range(len(fillings)):
            for j in range(i + 1, len(fillings)):
                if fillings[i].area() + fillings[j].area() > max_area:
                    continue
                sphere = glue_to_sphere(fillings[i], fillings[j])
                ok, _fold = is_near_immersion(sphere.map)
                if ok:
                    return sphere
    return None


def decide_dr(x: TwoComplex, max_area: int = 12, max_perimeter: int = 24,
              sphere_bound: int = 4) -> DrVerdict:
    """Decide diagrammatic reducibility.

    With certified simple connectivity the greedy core is decisive: an empty
    core yields DR with a replayable collapse order, a nonempty core is a
    finite subcomplex without free edges and yields NotDR.  Otherwise the
    verdict is Unknown unless a reduced sphere is found.
    """
    sc = certify_simply_connected(x, max_area, max_perimeter)
    if sc.status == "Certified":
        core = greedy_core(x)
        assumption = ("simple connectivity certified by filling one loop"
                      " per non-tree edge")
        if core.empties:
            return DrVerdict("DR", core, [assumption],
                             simple_connectivity=sc)
        return DrVerdict("NotDR", core, [assumption],
                         reason="face collection with no free edge",
                         simple_connectivity=sc)
    sphere = sphere_search(x, sphere_bound)
    if sphere is not None:
        return DrVerdict("NotDR", sphere, [],
                         reason="reduced spherical diagram found",
                         simple_connectivity=sc)
    return DrVerdict(
        "Unknown", None, [],
        reason=f"simple connectivity not certified ({sc.reason}); no reduced"
               f" sphere within area {sphere_bound}",
        simple_connectivity=sc)
