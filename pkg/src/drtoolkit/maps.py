"""Combinatorial maps between 2-complexes.

A ``CellularMap`` carries explicit witnesses: every edge image has a sign and
every face image has a (rotation, reflected) shift aligning the mapped
attaching word with the target word.  With the witnesses stored, composition,
fixedness and local injectivity are all decidable by table lookup.

Witness convention for a face of word-length n mapping onto a target word u:
  not reflected: position i of the source word corresponds to position
                 (i + rotation) mod n of u, and the mapped dart equals
                 u[(i + rotation) mod n];
  reflected:     position i corresponds to (rotation - i) mod n, and the
                 mapped dart equals the reverse of u[(rotation - i) mod n].
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .complexes import (DirectedEdge, Subdivision, TwoComplex, Word,
                        barycenter_id, half_id, midpoint_id, spoke_id,
                        triangle_id)
from .errors import SourceTargetMismatch


class FaceWitness(tuple):
    """(rotation, reflected) pair; plain tuple with named accessors."""

    __slots__ = ()

    def __new__(cls, rotation: int, reflected: bool):
        return tuple.__new__(cls, (int(rotation), bool(reflected)))

    @property
    def rotation(self) -> int:
        return self[0]

    @property
    def reflected(self) -> bool:
        return self[1]


def witness_position(w, i: int, n: int) -> int:
    """Target position corresponding to source position ``i``."""
    r, refl = w[0], w[1]
    return (r - i) % n if refl else (i + r) % n


def compose_witness(w1, w2, n: int) -> FaceWitness:
    """Witness of the composite correspondence (apply w1, then w2)."""
    r1, p1 = w1[0], w1[1]
    r2, p2 = w2[0], w2[1]
    if not p1 and not p2:
        return FaceWitness((r1 + r2) % n, False)
    if not p1 and p2:
        return FaceWitness((r2 - r1) % n, True)
    if p1 and not p2:
        return FaceWitness((r1 + r2) % n, True)
    return FaceWitness((r2 - r1) % n, False)


def invert_witness(w, n: int) -> FaceWitness:
    r, refl = w[0], w[1]
    return FaceWitness(r if refl else (-r) % n, refl)


def apply_witness(word: Word, w) -> Word:
    """Transform a cyclic word by a witness: the result at position j is the
    source letter whose target position is j."""
    n = len(word)
    out: list = [None] * n
    for i in range(n):
        j = witness_position(w, i, n)
        out[j] = word[i].reverse() if w[1] else word[i]
    return tuple(out)


def find_witness(mapped_word: Word, target_word: Word) -> Optional[FaceWitness]:
    """A witness aligning ``mapped_word`` with ``target_word`` (least rotation,
    unreflected preferred), or None."""
    n = len(target_word)
    if len(mapped_word) != n:
        return None
    for refl in (False, True):
        for r in range(max(1, n)):
            w = FaceWitness(r, refl)
            ok = all(
                mapped_word[i] == (target_word[witness_position(w, i, n)].reverse()
                                   if refl else
                                   target_word[witness_position(w, i, n)])
                for i in range(n))
            if ok:
                return w
    return None


@dataclass
class CellularMap:
    """A dimension-preserving combinatorial map with explicit witnesses.

    vertex_map: vertex id -> vertex id
    edge_map:   edge id -> DirectedEdge (image edge with sign)
    face_map:   face id -> (face id, FaceWitness)
    """

    source: TwoComplex
    target: TwoComplex
    vertex_map: dict = field(default_factory=dict)
    edge_map: dict = field(default_factory=dict)
    face_map: dict = field(default_factory=dict)

    # -- application --------------------------------------------------------

    def apply_vertex(self, v: str) -> str:
        return self.vertex_map[v]

    def apply_dart(self, d: DirectedEdge) -> DirectedEdge:
        image = self.edge_map[d.edge]
        return DirectedEdge(image.edge, image.sign * d.sign)

    def apply_walk(self, word: Word) -> Word:
        return tuple(self.apply_dart(d) for d in word)

    def apply_face(self, f: str):
        return self.face_map[f]

    def key(self) -> tuple:
        """Hashable identity of the map data (used for closure dedup)."""
        return (tuple(sorted(self.vertex_map.items())),
                tuple(sorted(self.edge_map.items())),
                tuple(sorted((f, (t, tuple(w)))
                             for f, (t, w) in self.face_map.items())))

    def __eq__(self, other) -> bool:
        if not isinstance(other, CellularMap):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.key() == other.key())

    def is_bijective(self) -> bool:
        return (len(set(self.vertex_map.values())) == len(self.source.vertices)
                == len(self.target.vertices)
                and len(set(d.edge for d in self.edge_map.values()))
                == len(self.source.edges) == len(self.target.edges)
                and len(set(f for f, _ in self.face_map.values()))
                == len(self.source.faces) == len(self.target.faces))

    def validate(self) -> list:
        """Invariant check; returns a list of violations (empty iff valid)."""
        report = []
        src, tgt = self.source, self.target
        for v in src.sorted_vertices():
            if v not in self.vertex_map:
                report.append(f"vertex {v}: no image")
            elif self.vertex_map[v] not in tgt.vertices:
                report.append(f"vertex {v}: image not in target")
        for e in src.sorted_edges():
            if e not in self.edge_map:
                report.append(f"edge {e}: no image")
                continue
            image = self.edge_map[e]
            if image.edge not in tgt.edges:
                report.append(f"edge {e}: image not in target")
                continue
            t, h = src.edges[e]
            d = DirectedEdge(e, 1)
            if (self.vertex_map.get(t) != tgt.tail(self.apply_dart(d))
                    or self.vertex_map.get(h) != tgt.head(self.apply_dart(d))):
                report.append(f"edge {e}: endpoints not respected")
        for f in src.sorted_faces():
            if f not in self.face_map:
                report.append(f"face {f}: no image")
                continue
            g, w = self.face_map[f]
            if g not in tgt.faces:
                report.append(f"face {f}: image not in target")
                continue
            word = src.faces[f]
            target_word = tgt.faces[g]
            if len(word) != len(target_word):
                report.append(f"face {f}: word length differs from image")
                continue
            try:
                mapped = self.apply_walk(word)
            except KeyError:
                report.append(f"face {f}: word maps through missing edges")
                continue
            n = len(word)
            ok = all(
                mapped[i] == (target_word[witness_position(w, i, n)].reverse()
                              if w[1] else
                              target_word[witness_position(w, i, n)])
                for i in range(n))
            if not ok:
                report.append(f"face {f}: witness does not align words")
        return report


def identity_map(x: TwoComplex) -> CellularMap:
    return CellularMap(
        x, x,
        {v: v for v in x.vertices},
        {e: DirectedEdge(e, 1) for e in x.edges},
        {f: (f, FaceWitness(0, False)) for f in x.faces})


def compose(f: CellularMap, g: CellularMap) -> CellularMap:
    """The composite map: apply ``f`` first, then ``g``."""
    if f.target != g.source:
        raise SourceTargetMismatch("target of first map is not source of second")
    vm = {v: g.vertex_map[f.vertex_map[v]] for v in f.vertex_map}
    em = {e: g.apply_dart(f.edge_map[e]) for e in f.edge_map}
    fm = {}
    for face, (mid, w1) in f.face_map.items():
        final, w2 = g.face_map[mid]
        n = len(g.target.faces[final])
        fm[face] = (final, compose_witness(w1, w2, n))
    return CellularMap(f.source, g.target, vm, em, fm)


def inverse_map(f: CellularMap) -> CellularMap:
    """The inverse of a bijective map (witnesses inverted as well)."""
    if not f.is_bijective():
        raise ValueError("map is not bijective")
    vm = {w: v for v, w in f.vertex_map.items()}
    em = {}
    for e, d in f.edge_map.items():
        em[d.edge] = DirectedEdge(e, d.sign)
    fm = {}
    for face, (g, w) in f.face_map.items():
        n = len(f.target.faces[g])
        fm[g] = (face, invert_witness(w, n))
    return CellularMap(f.target, f.source, vm, em, fm)


def is_identity(f: CellularMap) -> bool:
    return (all(v == w for v, w in f.vertex_map.items())
            and all(e == d.edge and d.sign == 1 for e, d in f.edge_map.items())
            and all(face == g and w == (0, False)
                    for face, (g, w) in f.face_map.items()))


# -- local injectivity --------------------------------------------------------

def face_sides(x: TwoComplex) -> dict:
    """Edge id -> list of sides (face, position) where the edge occurs."""
    sides: dict = {e: [] for e in x.edges}
    for f in x.sorted_faces():
        for i, d in enumerate(x.faces[f]):
            sides[d.edge].append((f, i))
    return sides


def map_side(phi: CellularMap, side) -> tuple:
    """Image of a side (face, position) under the face witnesses."""
    f, i = side
    g, w = phi.face_map[f]
    n = len(phi.source.faces[f])
    return (g, witness_position(w, i, n))


def is_near_immersion(phi: CellularMap):
    """Local injectivity away from vertices.

    For every source edge, the induced map on sides at that edge must be
    injective.  Returns ``(True, None)`` or ``(False, fold)`` where fold is
    the first offending pair of sides, ``(edge, side_a, side_b)``.
    """
    sides = face_sides(phi.source)
    for e in phi.source.sorted_edges():
        seen: dict = {}
        for side in sides[e]:
            image = map_side(phi, side)
            if image in seen:
                return False, (e, seen[image], side)
            seen[image] = side
    return True, None


def edge_end(d: DirectedEdge) -> tuple:
    """The end of the underlying edge that an outgoing dart leaves from:
    (edge, 0) is the tail end, (edge, 1) the head end."""
    return (d.edge, 0 if d.sign > 0 else 1)


def map_edge_end(phi: CellularMap, end: tuple) -> tuple:
    e, which = end
    image = phi.edge_map[e]
    return (image.edge, which if image.sign > 0 else 1 - which)


def vertex_corners(x: TwoComplex) -> dict:
    """Vertex -> list of corners (face, position).  Corner (f, i) sits at the
    head of letter i of f's word, between that letter and the next."""
    corners: dict = {v: [] for v in x.vertices}
    for f in x.sorted_faces():
        word = x.faces[f]
        for i, d in enumerate(word):
            corners[x.head(d)].append((f, i))
    return corners


def is_immersion(phi: CellularMap) -> bool:
    """Local injectivity everywhere: near-immersion plus injectivity of the
    induced maps on vertex links (edge-ends and face corners)."""
    ok, _ = is_near_immersion(phi)
    if not ok:
        return False
    ends_at: dict = {v: [] for v in phi.source.vertices}
    for e in phi.source.sorted_edges():
        t, h = phi.source.edges[e]
        ends_at[t].append((e, 0))
        ends_at[h].append((e, 1))
    for v in phi.source.sorted_vertices():
        images = set()
        for end in ends_at[v]:
            image = map_edge_end(phi, end)
            if image in images:
                return False
            images.add(image)
    corners = vertex_corners(phi.source)
    for v in phi.source.sorted_vertices():
        images = set()
        for f, i in corners[v]:
            g, w = phi.face_map[f]
            n = len(phi.source.faces[f])
            corner_image = (g, witness_position(w, (i + 1) % n, n)
                            if w[1] else witness_position(w, i, n))
            if corner_image in images:
                return False
            images.add(corner_image)
    return True


# -- induced maps on subdivisions ---------------------------------------------

def induced_subdivision_map(phi: CellularMap, sub_src: Subdivision,
                            sub_tgt: Subdivision) -> CellularMap:
    """The map induced by ``phi`` between barycentric subdivisions.

    Midpoints follow edge images, barycenters follow face images; triangle
    images are resolved by matching mapped words among the target face's
    triangles (unique because spokes are distinct).
    """
    src, tgt = sub_src.complex, sub_tgt.complex
    vm = {}
    em = {}
    fm = {}
    for v in phi.source.vertices:
        vm[v] = phi.vertex_map[v]
    for e in phi.source.edges:
        image = phi.edge_map[e]
        vm[midpoint_id(e)] = midpoint_id(image.edge)
        if image.sign > 0:
            em[half_id(e, 0)] = DirectedEdge(half_id(image.edge, 0), 1)
            em[half_id(e, 1)] = DirectedEdge(half_id(image.edge, 1), 1)
        else:
            em[half_id(e, 0)] = DirectedEdge(half_id(image.edge, 1), -1)
            em[half_id(e, 1)] = DirectedEdge(half_id(image.edge, 0), -1)
    for f, word in phi.source.faces.items():
        g, w = phi.face_map[f]
        n = len(word)
        vm[barycenter_id(f)] = barycenter_id(g)
        for k in range(2 * n):
            # Stations transform like doubled word positions.
            if w[1]:
                k_image = (2 * w[0] + 2 - k) % (2 * n)
            else:
                k_image = (k + 2 * w[0]) % (2 * n)
            em[spoke_id(f, k)] = DirectedEdge(spoke_id(g, k_image), 1)
    partial = CellularMap(src, tgt, vm, em, {})
    for f, word in phi.source.faces.items():
        g, _ = phi.face_map[f]
        n = len(word)
        candidates = [triangle_id(g, k) for k in range(2 * n)]
        for k in range(2 * n):
            tri = triangle_id(f, k)
            mapped = partial.apply_walk(src.faces[tri])
            for cand in candidates:
                wit = find_witness(mapped, tgt.faces[cand])
                if wit is not None:
                    fm[tri] = (cand, wit)
                    break
            else:
                raise ValueError(f"no image triangle found for {tri}")
    return CellularMap(src, tgt, vm, em, fm)
