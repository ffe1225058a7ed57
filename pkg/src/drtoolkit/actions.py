"""Finite group actions on 2-complexes.

A group is a concrete closed set of automorphisms with a multiplication
table (never an abstract presentation).  "Fixed pointwise" for a face means
the identity witness: a face mapped to itself through a nontrivial rotation
or reflection counts as an inversion, and is resolved by passing to the
barycentric subdivision.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .complexes import (TwoComplex, barycentric_subdivision,
                        euler_characteristic, free_edges, is_connected,
                        subcomplex)
from .errors import (HasInversions, LimitExceeded, NotAutomorphism,
                     OrbitClash, PreconditionsNotCertified)
from .homology import contractibility_verdict
from .maps import (CellularMap, compose, identity_map,
                   induced_subdivision_map, is_identity)

CellKey = tuple  # ("vertex"|"edge"|"face", id)


def apply_cell(phi: CellularMap, cell: CellKey) -> CellKey:
    kind, name = cell
    if kind == "vertex":
        return ("vertex", phi.vertex_map[name])
    if kind == "edge":
        return ("edge", phi.edge_map[name].edge)
    return ("face", phi.face_map[name][0])


def all_cells(x: TwoComplex) -> list:
    return ([("vertex", v) for v in x.sorted_vertices()]
            + [("edge", e) for e in x.sorted_edges()]
            + [("face", f) for f in x.sorted_faces()])


def fixes_pointwise(phi: CellularMap, cell: CellKey) -> bool:
    kind, name = cell
    if kind == "vertex":
        return phi.vertex_map[name] == name
    if kind == "edge":
        return phi.edge_map[name] == (name, 1)
    g, w = phi.face_map[name]
    return g == name and w == (0, False)


@dataclass
class GroupAction:
    """A finite group of automorphisms of a complex.

    elements[0] is the identity; table[i][j] is the index of "apply
    elements[i], then elements[j]"; inverses[i] indexes the inverse.
    """

    complex: TwoComplex
    elements: list
    table: list
    inverses: list

    @property
    def order(self) -> int:
        return len(self.elements)

    def multiply(self, i: int, j: int) -> int:
        return self.table[i][j]

    def validate(self) -> list:
        report = []
        if not self.elements or not is_identity(self.elements[0]):
            report.append("element 0 is not the identity")
        for i, phi in enumerate(self.elements):
            if phi.source != self.complex or phi.target != self.complex:
                report.append(f"element {i} is not a self-map")
                continue
            problems = phi.validate()
            if problems:
                report.append(f"element {i} invalid: {problems[0]}")
            elif not phi.is_bijective():
                report.append(f"element {i} is not bijective")
        for i in range(len(self.elements)):
            for j in range(len(self.elements)):
                prod = compose(self.elements[i], self.elements[j])
                if prod.key() != self.elements[self.table[i][j]].key():
                    report.append(f"table entry ({i},{j}) disagrees with"
                                  " composition")
        for i, inv in enumerate(self.inverses):
            if self.table[i][inv] != 0 or self.table[inv][i] != 0:
                report.append(f"inverse of element {i} is wrong")
        return report

    def subgroup_closure(self, indices: Iterable) -> tuple:
        """Indices of the subgroup generated by the given element indices."""
        closed = {0}
        frontier = [0]
        gens = sorted(set(indices) | {0})
        for g in gens:
            if g not in closed:
                closed.add(g)
                frontier.append(g)
        while frontier:
            nxt = []
            for i in frontier:
                for g in gens:
                    k = self.table[i][g]
                    if k not in closed:
                        closed.add(k)
                        nxt.append(k)
                    k = self.table[g][i]
                    if k not in closed:
                        closed.add(k)
                        nxt.append(k)
            frontier = nxt
        # Close under inverses (automatic for finite closed sets, but cheap).
        closed |= {self.inverses[i] for i in closed}
        return tuple(sorted(closed))

    def all_subgroups(self) -> list:
        """Every subgroup, as sorted index tuples (BFS over generations)."""
        trivial = (0,)
        seen = {trivial}
        frontier = [trivial]
        while frontier:
            nxt = []
            for sub in frontier:
                for g in range(self.order):
                    if g in sub:
                        continue
                    bigger = self.subgroup_closure(set(sub) | {g})
                    if bigger not in seen:
                        seen.add(bigger)
                        nxt.append(bigger)
            frontier = nxt
        return sorted(seen, key=lambda s: (len(s), s))

    def conjugate_subgroup(self, sub: tuple, h: int) -> tuple:
        hinv = self.inverses[h]
        return tuple(sorted(self.table[self.table[hinv][s]][h] for s in sub))


def close_group(x: TwoComplex, generators: list, limit: int = 24) -> GroupAction:
    """Close a generating set of automorphisms under composition; computes
    the multiplication table and inverse indices."""
    for phi in generators:
        if phi.source != x or phi.target != x:
            raise NotAutomorphism("generator is not a self-map of the complex")
        problems = phi.validate()
        if problems:
            raise NotAutomorphism(f"generator invalid: {problems[0]}")
        if not phi.is_bijective():
            raise NotAutomorphism("generator is not bijective")
    identity = identity_map(x)
    elements = [identity]
    index = {identity.key(): 0}
    frontier = [identity]
    while frontier:
        nxt = []
        for phi in frontier:
            for gen in generators:
                prod = compose(phi, gen)
                key = prod.key()
                if key not in index:
                    if len(elements) >= limit:
                        raise LimitExceeded(
                            f"group closure exceeded {limit} elements")
                    index[key] = len(elements)
                    elements.append(prod)
                    nxt.append(prod)
        frontier = nxt
    order = len(elements)
    table = [[index[compose(elements[i], elements[j]).key()]
              for j in range(order)] for i in range(order)]
    inverses = []
    for i in range(order):
        inv = next(j for j in range(order)
                   if table[i][j] == 0 and table[j][i] == 0)
        inverses.append(inv)
    return GroupAction(x, elements, table, inverses)


# -- inversions ---------------------------------------------------------------

@dataclass
class InversionReport:
    """Cells fixed setwise but not pointwise, per element."""

    entries: list = field(default_factory=list)  # (element, cell id, kind)

    def __bool__(self) -> bool:
        return bool(self.entries)


def has_inversions(action: GroupAction) -> InversionReport:
    report = InversionReport()
    for i, phi in enumerate(action.elements):
        for e in action.complex.sorted_edges():
            if phi.edge_map[e] == (e, -1):
                report.entries.append((i, e, "edge-flip"))
        for f in action.complex.sorted_faces():
            g, w = phi.face_map[f]
            if g == f and w != (0, False):
                kind = "face-reflection" if w[1] else "face-rotation"
                report.entries.append((i, f, kind))
    return report


def remove_inversions(action: GroupAction) -> GroupAction:
    """The induced action on the barycentric subdivision; the result has no
    inversions (midpoints and barycenters split every setwise-fixed cell)."""
    sub = barycentric_subdivision(action.complex)
    induced = [induced_subdivision_map(phi, sub, sub)
               for phi in action.elements]
    result = GroupAction(sub.complex, induced, action.table, action.inverses)
    leftover = has_inversions(result)
    if leftover:
        raise AssertionError(
            f"subdivided action still has inversions: {leftover.entries[:3]}")
    return result


# -- fixed sets, orbits, stabilizers ----------------------------------------------

def fixed_subcomplex(action: GroupAction, indices: Optional[Iterable] = None
                     ) -> TwoComplex:
    """The subcomplex of cells fixed pointwise by every element of the
    subgroup generated by ``indices`` (default: the whole group)."""
    if indices is None:
        indices = range(action.order)
    group = action.subgroup_closure(indices)
    inversions = [entry for entry in has_inversions(action).entries
                  if entry[0] in group]
    if inversions:
        raise HasInversions(
            f"subgroup has inversions (e.g. {inversions[0]}); apply"
            " remove_inversions first")
    x = action.complex
    maps = [action.elements[i] for i in group]
    vs = [v for v in x.sorted_vertices()
          if all(phi.vertex_map[v] == v for phi in maps)]
    es = [e for e in x.sorted_edges()
          if all(phi.edge_map[e] == (e, 1) for phi in maps)]
    fs = [f for f in x.sorted_faces()
          if all(fixes_pointwise(phi, ("face", f)) for phi in maps)]
    return subcomplex(x, vs, es, fs)


def orbits(action: GroupAction) -> list:
    """The partition of all cells into orbits (sorted lists of cell keys)."""
    remaining = dict.fromkeys(all_cells(action.complex))
    out = []
    for cell in list(remaining):
        if cell not in remaining:
            continue
        orbit = sorted({apply_cell(phi, cell) for phi in action.elements})
        for c in orbit:
            remaining.pop(c, None)
        out.append(orbit)
    return out


def stabilizer(action: GroupAction, cell: CellKey) -> tuple:
    """Indices of the pointwise stabilizer of a cell."""
    return tuple(i for i, phi in enumerate(action.elements)
                 if fixes_pointwise(phi, cell))


def setwise_stabilizer(action: GroupAction, cell: CellKey) -> tuple:
    return tuple(i for i, phi in enumerate(action.elements)
                 if apply_cell(phi, cell) == cell)


# -- equivariant collapsing ----------------------------------------------------------

def restrict_action(action: GroupAction, x: TwoComplex) -> GroupAction:
    """Restrict every element to an invariant subcomplex ``x``."""
    restricted = []
    for phi in action.elements:
        restricted.append(CellularMap(
            x, x,
            {v: phi.vertex_map[v] for v in x.vertices},
            {e: phi.edge_map[e] for e in x.edges},
            {f: phi.face_map[f] for f in x.faces}))
    return GroupAction(x, restricted, action.table, action.inverses)


def equivariant_collapse(action: GroupAction):
    """Collapse free-edge orbits until none remain.

    Requires an inversion-free action.  Each step picks the least free pair
    and collapses its whole orbit simultaneously; the returned log replays
    step by step.  Returns (action on the final subcomplex, log).
    """
    if has_inversions(action):
        raise HasInversions("equivariant collapse needs an inversion-free"
                            " action")
    current = action
    log = []
    while True:
        free = free_edges(current.complex)
        if not free:
            break
        free_set = set(free)
        e, f = free[0]
        orbit_pairs = {}
        for phi in current.elements:
            img_e = phi.edge_map[e].edge
            img_f = phi.face_map[f][0]
            if (img_e, img_f) not in free_set:
                raise OrbitClash(
                    f"orbit pair ({img_e}, {img_f}) is not free; the action"
                    " should have no inversions")
            if img_f in orbit_pairs and orbit_pairs[img_f] != img_e:
                raise OrbitClash(
                    f"face {img_f} meets the edge orbit twice")
            orbit_pairs[img_f] = img_e
        x = current.complex
        y = TwoComplex(set(x.vertices),
                       {ed: ends for ed, ends in x.edges.items()
                        if ed not in set(orbit_pairs.values())},
                       {fc: w for fc, w in x.faces.items()
                        if fc not in orbit_pairs})
        log.append(sorted((ed, fc) for fc, ed in orbit_pairs.items()))
        current = restrict_action(current, y)
    return current, log


def tree_center(x: TwoComplex) -> list:
    """The center (one or two vertices) of a tree, by leaf stripping."""
    vertices = set(x.vertices)
    edges = dict(x.edges)
    while len(vertices) > 2:
        degree = {v: 0 for v in vertices}
        for t, h in edges.values():
            degree[t] += 1
            degree[h] += 1
        leaves = {v for v, d in degree.items() if d <= 1}
        if not leaves:
            raise ValueError("not a tree")
        vertices -= leaves
        edges = {e: ends for e, ends in edges.items()
                 if ends[0] in vertices and ends[1] in vertices}
    return sorted(vertices)


def find_fixed_point(action: GroupAction, max_area: int = 12,
                     max_perimeter: int = 24) -> str:
    """A vertex fixed by the whole group, found constructively.

    Requires an inversion-free action on a finite complex certified simply
    connected and diagrammatically reducible.  Equivariantly collapses to a
    tree and returns the tree center (for an edge center, inversion-freeness
    fixes both endpoints; the least is returned).
    """
    from .drcheck import decide_dr
    if has_inversions(action):
        raise PreconditionsNotCertified(
            "action has inversions; apply remove_inversions first")
    verdict = decide_dr(action.complex, max_area=max_area,
                        max_perimeter=max_perimeter)
    if verdict.status != "DR":
        raise PreconditionsNotCertified(
            f"complex is not certified DR (status {verdict.status})")
    collapsed, _log = equivariant_collapse(action)
    w = collapsed.complex
    if w.faces:
        raise AssertionError("equivariant collapse left 2-cells on a DR"
                             " complex")
    if not is_connected(w) or euler_characteristic(w) != 1:
        raise AssertionError("collapsed 1-complex is not a tree")
    center = tree_center(w)
    result = center[0]
    fixed = fixed_subcomplex(action)
    if result not in fixed.vertices:
        raise AssertionError("tree center is not a fixed vertex")
    return result


# -- classifying-space condition check --------------------------------------------------

@dataclass
class ClassifyingReport:
    """Per-subgroup fixed-set checks for the family generated by cell
    stabilizers."""

    family: list
    entries: list  # (subgroup, nonempty, contractibility status)
    stabilizers_in_family: bool

    @property
    def all_ok(self) -> bool:
        return (self.stabilizers_in_family
                and all(nonempty and status == "Contractible"
                        for _, nonempty, status in self.entries))


def verify_classifying_model(action: GroupAction, order_limit: int = 24,
                             max_area: int = 12, max_perimeter: int = 24
                             ) -> ClassifyingReport:
    """Check the classifying-space conditions on a concrete action: every
    cell stabilizer lies in the family it generates (closure under
    conjugation and subgroups), and every family member has a nonempty
    contractible fixed set."""
    if action.order > order_limit:
        raise LimitExceeded(f"group order {action.order} exceeds"
                            f" {order_limit}")
    if has_inversions(action):
        raise HasInversions("classifying check needs an inversion-free"
                            " action")
    stabs = {stabilizer(action, cell) for cell in all_cells(action.complex)}
    conjugates = set()
    for sub in stabs:
        for h in range(action.order):
            conjugates.add(action.conjugate_subgroup(sub, h))
    family = [sub for sub in action.all_subgroups()
              if any(set(sub) <= set(c) for c in conjugates)]
    stabilizers_ok = all(s in set(family) for s in stabs)
    entries = []
    for sub in family:
        fixed = fixed_subcomplex(action, sub)
        nonempty = bool(fixed.vertices)
        if nonempty:
            verdict = contractibility_verdict(fixed, max_area, max_perimeter)
            status = verdict.status
        else:
            status = "Empty"
        entries.append((sub, nonempty, status))
    return ClassifyingReport(family, entries, stabilizers_ok)
