"""Equivariant constructions: path-orbit graphs and the pushout complex
built from one filling per cycle orbit.

Fillings are transported along coset representatives, never re-searched, so
the induced action is equivariant by construction; each stabilizing element
must carry the representative filling to itself through the unique
boundary-compatible isomorphism, which is re-derived and checked.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .actions import GroupAction, has_inversions
from .complexes import (Cycle, DirectedEdge, Path, TwoComplex,
                        canonical_cycle, embedded_cycles, is_connected,
                        subcomplex)
from .diagrams import (DiagramInX, cyclic_rotation_of, diagram_isomorphic,
                       fill_cycle)
from .drcheck import decide_dr
from .errors import (BoundsExhausted, ConstructionError, EndpointsNotFixed,
                     NotMinimal, PreconditionsNotCertified)
from .homology import certify_simply_connected
from .maps import CellularMap, compose, is_identity, is_near_immersion


def _graph_distance(x: TwoComplex, u: str, v: str) -> Optional[int]:
    dist = {u: 0}
    frontier = [u]
    while frontier:
        nxt = []
        for a in frontier:
            for d in x.darts_out_of(a):
                b = x.head(d)
                if b not in dist:
                    dist[b] = dist[a] + 1
                    nxt.append(b)
        frontier = nxt
    return dist.get(v)


def orbit_graph(action: GroupAction, alpha: Path) -> TwoComplex:
    """The union of the images of an embedded minimal path between fixed
    vertices: a finite connected invariant 1-complex."""
    x = action.complex
    verts = x.walk_vertices(alpha.start, alpha.darts)
    if len(set(verts)) != len(verts):
        raise ValueError("orbit_graph expects an embedded path")
    end = verts[-1]
    for i, phi in enumerate(action.elements):
        if (phi.vertex_map[alpha.start] != alpha.start
                or phi.vertex_map[end] != end):
            raise EndpointsNotFixed(
                f"element {i} moves an endpoint of the path")
    if _graph_distance(x, alpha.start, end) != len(alpha.darts):
        raise NotMinimal("a shorter path joins the endpoints")
    vs = set()
    es = set()
    for phi in action.elements:
        vs.add(phi.vertex_map[alpha.start])
        for d in alpha.darts:
            image = phi.apply_dart(d)
            es.add(image.edge)
    y0 = subcomplex(x, vs, es, ())
    for phi in action.elements:
        for e in y0.edges:
            if phi.edge_map[e].edge not in y0.edges:
                raise AssertionError("orbit graph is not invariant")
    if not is_connected(y0):
        raise AssertionError("orbit graph is not connected")
    return y0


def _check_subcomplex(x: TwoComplex, y0: TwoComplex) -> None:
    if y0.faces:
        raise ValueError("Y0 must be 1-dimensional")
    if not (y0.vertices <= x.vertices):
        raise ValueError("Y0 vertices are not cells of the complex")
    for e, ends in y0.edges.items():
        if x.edges.get(e) != ends:
            raise ValueError(f"Y0 edge {e} is not a cell of the complex")
    if not is_connected(y0):
        raise ValueError("Y0 must be connected")


def _cycle_key(x: TwoComplex, cyc: Cycle) -> tuple:
    return canonical_cycle(x, cyc).canonical_key()


def _apply_to_cycle(phi: CellularMap, cyc: Cycle) -> Cycle:
    return Cycle(phi.vertex_map[cyc.start], phi.apply_walk(cyc.darts))


def _stabilizer_alignment(walk, image_walk) -> Optional[tuple]:
    """(t, reflected) with image_walk[i] == walk[(i+t) % k], or the
    reflected variant; None when the walks are not related."""
    k = len(walk)
    t = cyclic_rotation_of(walk, image_walk)
    if t is not None:
        return (t, False)
    for t in range(k):
        if all(image_walk[i] == walk[(t - i) % k].reverse()
               for i in range(k)):
            return (t, True)
    return None


@dataclass
class EquivariantFilling:
    """The pushout complex, its induced action, and the map to the ambient
    complex, together with build provenance."""

    complex: TwoComplex
    action: GroupAction
    map: CellularMap
    provenance: dict = field(default_factory=dict)
    orbit_fillings: list = field(default_factory=list)  # (rep cycle, DiagramInX)
    symmetric_orbits: list = field(default_factory=list)


def equivariant_filling(action: GroupAction, y0: TwoComplex,
                        max_area: int = 12, max_perimeter: int = 24
                        ) -> EquivariantFilling:
    """Extend the inclusion of an invariant 1-complex to a simply-connected
    finite complex mapping into the ambient one.

    One representative per cycle orbit is filled; all other members receive
    the transported filling, so the group acts on the result and the map is
    equivariant cell for cell.
    """
    x = action.complex
    if has_inversions(action):
        raise PreconditionsNotCertified(
            "action has inversions; apply remove_inversions first")
    _check_subcomplex(x, y0)
    for i, phi in enumerate(action.elements):
        for e in y0.edges:
            if phi.edge_map[e].edge not in y0.edges:
                raise ValueError(f"Y0 is not invariant under element {i}")
    verdict = decide_dr(x, max_area=max_area, max_perimeter=max_perimeter)
    if verdict.status != "DR":
        raise PreconditionsNotCertified(
            f"ambient complex is not certified DR (status {verdict.status})")

    cycles = embedded_cycles(y0)
    by_key = {_cycle_key(x, c): c for c in cycles}

    # Orbit decomposition of the cycle set under the action.
    orbits = []
    assigned = {}
    for key in sorted(by_key):
        if key in assigned:
            continue
        rep = by_key[key]
        members = {}
        for h in range(action.order):
            image = _apply_to_cycle(action.elements[h], rep)
            ikey = _cycle_key(x, image)
            if ikey not in by_key:
                raise AssertionError("cycle orbit leaves Y0; Y0 is not"
                                     " invariant")
            if ikey not in members:
                members[ikey] = h
        for ikey in members:
            assigned[ikey] = len(orbits)
        orbits.append((rep, members))

    # Fill one representative per orbit and derive the stabilizer transports.
    fillings = []
    symmetric = []
    for oi, (rep, members) in enumerate(orbits):
        try:
            disk = fill_cycle(x, rep, max_area, max_perimeter)
        except BoundsExhausted:
            raise BoundsExhausted(
                f"cycle orbit {oi} failed to fill within the bounds")
        if disk is None:
            raise BoundsExhausted(
                f"cycle orbit {oi} has no filling reachable in the move"
                " system")
        ok, fold = is_near_immersion(disk.map)
        if not ok:
            raise BoundsExhausted(
                f"minimal filling for orbit {oi} is not a near-immersion"
                f" (fold {fold}); enlarge the bounds")
        walk_image = disk.map.apply_walk(disk.diagram.outer)
        stab_transport = {}
        nontrivial = False
        for g in range(action.order):
            g_image = action.elements[g].apply_walk(walk_image)
            alignment = _stabilizer_alignment(walk_image, g_image)
            if alignment is None:
                continue
            moved = DiagramInX(disk.diagram,
                               compose(disk.map, action.elements[g]))
            iso = diagram_isomorphic(moved, disk, alignment)
            if iso is None:
                raise ConstructionError(
                    "stabilizing element does not carry the filling to"
                    " itself; filling uniqueness failed")
            stab_transport[g] = iso
            if not is_identity(iso):
                nontrivial = True
        if nontrivial:
            symmetric.append(oi)
        fillings.append((rep, members, disk, stab_transport))

    # -- assemble the pushout -------------------------------------------------
    y = TwoComplex(set(y0.vertices), dict(y0.edges), {})
    fmap_v = {v: v for v in y0.vertices}
    fmap_e = {e: DirectedEdge(e, 1) for e in y0.edges}
    fmap_f = {}
    provenance = {c: ("base",) + c for c in
                  [("vertex", v) for v in y0.vertices]
                  + [("edge", e) for e in y0.edges]}

    def disk_prefix(oi: int, ci: int) -> str:
        return f"d{oi}.{ci}."

    # Renamings per (orbit, member): cell of the disk -> Y cell (darts for
    # edges); boundary cells land in Y0, interior cells get fresh ids.
    renamings = {}
    member_list = {}
    for oi, (rep, members, disk, _stab) in enumerate(fillings):
        dx = disk.diagram.complex
        outer = disk.diagram.outer
        ordered = sorted(members.items(), key=lambda kv: kv[1])
        member_list[oi] = ordered
        for ci, (_key, h) in enumerate(ordered):
            hphi = action.elements[h]
            target_walk = hphi.apply_walk(disk.map.apply_walk(outer))
            vren = {}
            eren = {}
            for i, d in enumerate(outer):
                vren[dx.tail(d)] = x.tail(target_walk[i])
                eren[d.edge] = DirectedEdge(target_walk[i].edge,
                                            d.sign * target_walk[i].sign)
            prefix = disk_prefix(oi, ci)
            for v in dx.sorted_vertices():
                if v not in vren:
                    vren[v] = prefix + v
            for e in dx.sorted_edges():
                if e not in eren:
                    eren[e] = DirectedEdge(prefix + e, 1)
            fren = {f: prefix + f for f in dx.sorted_faces()}
            renamings[(oi, ci)] = (vren, eren, fren)

            def rename_dart(d: DirectedEdge) -> DirectedEdge:
                image = eren[d.edge]
                return DirectedEdge(image.edge, image.sign * d.sign)

            boundary_vertices = {dx.tail(d) for d in outer}
            boundary_edges = {d.edge for d in outer}
            mapped = compose(disk.map, hphi)
            for v in dx.sorted_vertices():
                new = vren[v]
                if v in boundary_vertices:
                    continue
                if new in y.vertices:
                    raise ConstructionError(f"disk cell id {new} collides"
                                            " with an existing cell")
                y.vertices.add(new)
                fmap_v[new] = mapped.vertex_map[v]
                provenance[("vertex", new)] = ("disk", oi, ci, "vertex", v)
            for e in dx.sorted_edges():
                new = eren[e]
                if e in boundary_edges:
                    continue
                if new.edge in y.edges:
                    raise ConstructionError(f"disk cell id {new.edge}"
                                            " collides with an existing cell")
                t, h_ = dx.edges[e]
                y.edges[new.edge] = (vren[t], vren[h_])
                fmap_e[new.edge] = mapped.edge_map[e]
                provenance[("edge", new.edge)] = ("disk", oi, ci, "edge", e)
            for f in dx.sorted_faces():
                new = fren[f]
                if new in y.faces:
                    raise ConstructionError(f"disk cell id {new} collides"
                                            " with an existing cell")
                y.faces[new] = tuple(rename_dart(d) for d in dx.faces[f])
                fmap_f[new] = mapped.face_map[f]
                provenance[("face", new)] = ("disk", oi, ci, "face", f)

    f_map = CellularMap(y, x, fmap_v, fmap_e, fmap_f)
    problems = f_map.validate()
    if problems:
        raise ConstructionError("assembled map invalid: " + problems[0])

    # -- induced action --------------------------------------------------------
    elements = []
    for h in range(action.order):
        hphi = action.elements[h]
        vmap = {v: hphi.vertex_map[v] for v in y0.vertices}
        emap = {e: hphi.edge_map[e] for e in y0.edges}
        fmap = {}
        for oi, (rep, members, disk, stab) in enumerate(fillings):
            dx = disk.diagram.complex
            ordered = member_list[oi]
            key_to_ci = {key: ci for ci, (key, _h) in enumerate(ordered)}
            for ci, (_key, h_delta) in enumerate(ordered):
                m = action.table[h_delta][h]     # apply h_delta, then h
                target_key = _cycle_key(
                    x, _apply_to_cycle(action.elements[m], rep))
                ci2 = key_to_ci[target_key]
                h_delta2 = ordered[ci2][1]
                g = action.table[m][action.inverses[h_delta2]]
                iso = stab.get(g)
                if iso is None:
                    raise ConstructionError(
                        "transport element is missing from the stabilizer"
                        " table")
                vren1, eren1, fren1 = renamings[(oi, ci)]
                vren2, eren2, fren2 = renamings[(oi, ci2)]
                for v in dx.sorted_vertices():
                    new = vren1[v]
                    if ("vertex", new) in provenance and \
                            provenance[("vertex", new)][0] == "disk":
                        vmap[new] = vren2[iso.vertex_map[v]]
                for e in dx.sorted_edges():
                    new = eren1[e]
                    if new.sign < 0 or ("edge", new.edge) not in provenance \
                            or provenance[("edge", new.edge)][0] != "disk":
                        continue
                    image = iso.edge_map[e]
                    renamed = eren2[image.edge]
                    fmap_entry = DirectedEdge(renamed.edge,
                                              renamed.sign * image.sign)
                    emap[new.edge] = fmap_entry
                for fc in dx.sorted_faces():
                    new = fren1[fc]
                    target_face, wit = iso.face_map[fc]
                    fmap[new] = (fren2[target_face], wit)
        elements.append(CellularMap(y, y, vmap, emap, fmap))
    b_action = GroupAction(y, elements, action.table, action.inverses)
    action_problems = b_action.validate()
    if action_problems:
        raise ConstructionError("induced action invalid: "
                                + action_problems[0])
    if has_inversions(b_action):
        raise ConstructionError(
            "induced action has inversions despite an inversion-free input;"
            " subdivide the ambient complex and retry")

    # -- posts -------------------------------------------------------------------
    for h in range(action.order):
        lhs = compose(b_action.elements[h], f_map)
        rhs = compose(f_map, action.elements[h])
        if lhs.key() != rhs.key():
            raise ConstructionError(
                f"map is not equivariant for element {h}")
    sc = certify_simply_connected(y, max_area, max_perimeter)
    if sc.status != "Certified":
        raise ConstructionError(
            f"pushout complex is not certified simply connected:"
            f" {sc.reason}")
    return EquivariantFilling(
        y, b_action, f_map, provenance,
        [(rep, disk) for rep, _m, disk, _s in fillings], symmetric)
