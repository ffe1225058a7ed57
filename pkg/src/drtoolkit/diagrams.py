"""Disk and spherical diagrams over a target complex.

A diagram is a complex together with a rotation system (a cyclic order of
outgoing darts at each vertex) standing in for a planar or spherical
embedding.  Tracing the rotation system yields boundary walks; a diagram is
valid when the traced walks are exactly the attached faces, plus one extra
walk (the outer boundary) for disks.

Diagrams are built through ``from_walks``, which derives the rotation system
from the face walks and the outer walk and fails if no consistent embedding
exists.  The filling search operates on boundary words in the target complex
(canonically rotated, memoized) and reconstructs the winning diagram by
replaying its move sequence.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from .complexes import (Cycle, DirectedEdge, TwoComplex, Word,
                        canonical_cyclic_key, euler_characteristic,
                        is_connected, reverse_walk, rotate_word, validate)
from .errors import (BoundaryMismatch, BoundsExhausted, NotADisk,
                     SingularDiagram)
from .maps import CellularMap, FaceWitness, compose, is_near_immersion


def cyclic_rotation_of(w1: Word, w2: Word) -> Optional[int]:
    """Least r with rotate(w1, r) == w2, or None."""
    if len(w1) != len(w2):
        return None
    if not w1:
        return 0
    for r in range(len(w1)):
        if rotate_word(w1, r) == w2:
            return r
    return None


def cyclic_match(w1: Word, w2: Word) -> bool:
    """True when the cyclic words agree up to rotation or reflection."""
    if len(w1) != len(w2):
        return False
    if cyclic_rotation_of(w1, w2) is not None:
        return True
    return cyclic_rotation_of(reverse_walk(w1), w2) is not None


# -- the diagram type ----------------------------------------------------------


@dataclass
class Diagram:
    """A complex with a rotation system.

    rotation:   vertex -> tuple of outgoing darts in cyclic order.
    outer:      boundary walk of a disk diagram, oriented so that its image
                is the filled cycle (the traced outer orbit is its reversal);
                None for spherical diagrams.
    face_walks: face -> the traced boundary walk glued to that face.
    """

    complex: TwoComplex
    rotation: dict
    outer: Optional[Word]
    face_walks: dict = field(default_factory=dict)

    def is_disk(self) -> bool:
        return self.outer is not None

    def area(self) -> int:
        return len(self.complex.faces)

    def boundary_walk(self) -> Word:
        if self.outer is None:
            raise NotADisk("spherical diagram has no boundary")
        return self.outer

    def is_nonsingular(self) -> bool:
        """Disk with an embedded boundary walk (no repeated vertex or edge)."""
        if self.outer is None:
            return False
        if not self.outer:
            return True  # trivial diagram
        x = self.complex
        verts = x.walk_vertices(x.tail(self.outer[0]), self.outer)[:-1]
        edges = [d.edge for d in self.outer]
        return (len(set(verts)) == len(verts)
                and len(set(edges)) == len(edges))


def area(d: Diagram) -> int:
    return d.area()


def boundary_cycle(d: Diagram) -> Cycle:
    """The outer walk as a canonical cycle."""
    from .complexes import canonical_cycle
    walk = d.boundary_walk()
    if not walk:
        start = min(d.complex.vertices)
        return Cycle(start, ())
    return canonical_cycle(d.complex, Cycle(d.complex.tail(walk[0]), walk))


def trace_orbits(x: TwoComplex, rotation: dict) -> list:
    """Orbit decomposition of all darts under next(d) = sigma(reverse(d)).
    Each orbit is returned as a walk starting at its least dart."""
    succ = {}
    for v, order in rotation.items():
        n = len(order)
        for i, d in enumerate(order):
            succ[d] = order[(i + 1) % n]
    orbits = []
    seen = set()
    for d0 in x.all_darts():
        if d0 in seen:
            continue
        walk = []
        d = d0
        while d not in seen:
            seen.add(d)
            walk.append(d)
            d = succ[d.reverse()]
        orbits.append(tuple(walk))
    return orbits


def _derive_rotation(x: TwoComplex, walks: list) -> dict:
    """Rotation system whose traced orbits are exactly the given walks.

    Every dart must occur exactly once across the walks; raises ValueError
    when the walks do not describe a surface embedding (in particular when
    some vertex would need more than one rotation cycle).
    """
    succ = {}
    position = {}
    for walk in walks:
        n = len(walk)
        for i, d in enumerate(walk):
            if d in position:
                raise ValueError(f"dart {d.token()} traced twice")
            position[d] = True
            succ[d] = walk[(i + 1) % n]
    for d in x.all_darts():
        if d not in position:
            raise ValueError(f"dart {d.token()} not traced by any walk")
    rotation = {}
    for v in x.sorted_vertices():
        out = x.darts_out_of(v)
        if not out:
            rotation[v] = ()
            continue
        # sigma(a) = successor of reverse(a) in its walk
        sigma = {a: succ[a.reverse()] for a in out}
        if any(b not in sigma for b in sigma.values()):
            raise ValueError(f"walks are not consecutive at {v}")
        start = out[0]
        order = [start]
        cur = sigma[start]
        while cur != start:
            if len(order) > len(out):
                raise ValueError(f"rotation at {v} is not a single cycle")
            order.append(cur)
            cur = sigma[cur]
        if len(order) != len(out):
            raise ValueError(f"rotation at {v} is not a single cycle")
        rotation[v] = tuple(order)
    return rotation


def from_walks(x: TwoComplex, face_walks: dict, outer: Optional[Word]) -> Diagram:
    """Build and validate a diagram from its face walks and outer walk."""
    walks = [face_walks[f] for f in sorted(face_walks)]
    if outer is not None and outer:
        walks.append(reverse_walk(outer))
    rotation = _derive_rotation(x, walks)
    d = Diagram(x, rotation, outer, dict(face_walks))
    problems = validate_diagram(d)
    if problems:
        raise ValueError("invalid diagram: " + "; ".join(problems))
    return d


def link_is_single_cycle(x: TwoComplex, v: str) -> bool:
    """Literal link check: edge-ends at ``v`` joined by face corners form one
    cycle visiting every end."""
    ends = []
    for e in x.sorted_edges():
        t, h = x.edges[e]
        if t == v:
            ends.append((e, 0))
        if h == v:
            ends.append((e, 1))
    arcs = []
    for f in x.sorted_faces():
        word = x.faces[f]
        n = len(word)
        for i, d in enumerate(word):
            if x.head(d) != v:
                continue
            a = (d.edge, 1 if d.sign > 0 else 0)
            nxt = word[(i + 1) % n]
            b = (nxt.edge, 0 if nxt.sign > 0 else 1)
            arcs.append((a, b))
    if len(arcs) != len(ends) or not ends:
        return False
    degree = {end: 0 for end in ends}
    adjacency = {end: [] for end in ends}
    for k, (a, b) in enumerate(arcs):
        degree[a] += 1
        degree[b] += 1
        adjacency[a].append((k, b))
        adjacency[b].append((k, a))
    if any(deg != 2 for deg in degree.values()):
        return False
    seen_ends = {ends[0]}
    seen_arcs = set()
    stack = [ends[0]]
    while stack:
        cur = stack.pop()
        for k, other in adjacency[cur]:
            if k in seen_arcs:
                continue
            seen_arcs.add(k)
            if other not in seen_ends:
                seen_ends.add(other)
                stack.append(other)
    return len(seen_ends) == len(ends) and len(seen_arcs) == len(arcs)


def validate_diagram(d: Diagram) -> list:
    """Full diagram validation; returns violations (empty iff valid)."""
    report = list(validate(d.complex))
    if report:
        return report
    x = d.complex
    if set(d.rotation) != x.vertices:
        return ["rotation system does not cover the vertex set"]
    for v in x.sorted_vertices():
        if sorted(d.rotation[v]) != sorted(x.darts_out_of(v)):
            report.append(f"rotation at {v} does not list the edge-ends")
    if report:
        return report
    if set(d.face_walks) != set(x.faces):
        return ["face walks do not cover the face set"]
    # Traced orbits must be exactly the face walks plus the outer orbit.
    expected = {}
    for f in x.sorted_faces():
        walk = d.face_walks[f]
        key = canonical_cyclic_key(walk, reflect=False)
        expected.setdefault(key, []).append(("face", f, walk))
        if not cyclic_match(walk, x.faces[f]):
            report.append(f"face {f}: walk does not match attaching word")
    if d.outer is not None and d.outer:
        key = canonical_cyclic_key(reverse_walk(d.outer), reflect=False)
        expected.setdefault(key, []).append(("outer", None, reverse_walk(d.outer)))
    orbits = trace_orbits(x, d.rotation)
    traced = {}
    for orbit in orbits:
        key = canonical_cyclic_key(orbit, reflect=False)
        traced[key] = traced.get(key, 0) + 1
    counted = {key: len(v) for key, v in expected.items()}
    if traced != counted:
        report.append("traced orbits do not match the declared walks")
    if not is_connected(x):
        report.append("diagram is not connected")
    chi = euler_characteristic(x)
    if d.outer is not None:
        if chi != 1:
            report.append(f"disk diagram has Euler characteristic {chi}")
        if not d.outer and (x.edges or x.faces or len(x.vertices) != 1):
            report.append("empty outer walk requires a single-vertex diagram")
    else:
        if chi != 2:
            report.append(f"spherical diagram has Euler characteristic {chi}")
        sides: dict = {e: 0 for e in x.edges}
        for f in x.faces:
            for dart_ in x.faces[f]:
                sides[dart_.edge] += 1
        for e in x.sorted_edges():
            if sides[e] != 2:
                report.append(f"edge {e} carries {sides[e]} sides, expected 2")
        for v in x.sorted_vertices():
            if not link_is_single_cycle(x, v):
                report.append(f"vertex link at {v} is not a single cycle")
    return report


@dataclass
class DiagramInX:
    """A diagram together with its combinatorial map to a target complex."""

    diagram: Diagram
    map: CellularMap

    def area(self) -> int:
        return self.diagram.area()

    def boundary_image(self) -> Word:
        return self.map.apply_walk(self.diagram.boundary_walk())

    def validate(self) -> list:
        report = validate_diagram(self.diagram)
        if self.map.source != self.diagram.complex:
            report.append("map source is not the diagram complex")
        report.extend(self.map.validate())
        return report


# -- replay construction -------------------------------------------------------


class _Builder:
    """Incremental diagram construction used to replay a filling search.

    Cells are created with fresh ids; folds merge them through union-find
    structures (edges carry a sign relative to their representative).
    """

    def __init__(self, target: TwoComplex):
        self.target = target
        self.counter = 0
        self.vertex_image: dict = {}
        self.edge_image: dict = {}    # edge -> image of its forward dart
        self.edge_ends: dict = {}     # edge -> (tail, head) at creation
        self.face_word: dict = {}     # face -> diagram walk (created ids)
        self.face_image: dict = {}    # face -> (target face, witness)
        self.vparent: dict = {}
        self.eparent: dict = {}       # edge -> (edge, sign)

    # -- fresh cells ------------------------------------------------------

    def new_vertex(self, image: str) -> str:
        v = f"v{self.counter}"
        self.counter += 1
        self.vertex_image[v] = image
        self.vparent[v] = v
        return v

    def new_edge(self, tail: str, head: str, image: DirectedEdge) -> str:
        e = f"e{self.counter}"
        self.counter += 1
        self.edge_image[e] = image
        self.edge_ends[e] = (tail, head)
        self.eparent[e] = (e, 1)
        return e

    def new_face(self, word, image) -> str:
        f = f"f{self.counter}"
        self.counter += 1
        self.face_word[f] = tuple(word)
        self.face_image[f] = image
        return f

    # -- union-find ---------------------------------------------------------

    def find_vertex(self, v: str) -> str:
        root = v
        while self.vparent[root] != root:
            root = self.vparent[root]
        while self.vparent[v] != root:
            self.vparent[v], v = root, self.vparent[v]
        return root

    def find_edge(self, e: str):
        sign = 1
        while True:
            parent, s = self.eparent[e]
            if parent == e:
                return e, sign
            sign *= s
            e = parent

    def resolve(self, d: DirectedEdge) -> DirectedEdge:
        e, s = self.find_edge(d.edge)
        return DirectedEdge(e, s * d.sign)

    def image_of(self, d: DirectedEdge) -> DirectedEdge:
        r = self.resolve(d)
        img = self.edge_image[r.edge]
        return DirectedEdge(img.edge, img.sign * r.sign)

    def tail_of(self, d: DirectedEdge) -> str:
        r = self.resolve(d)
        t, h = self.edge_ends[r.edge]
        return self.find_vertex(t if r.sign > 0 else h)

    def head_of(self, d: DirectedEdge) -> str:
        r = self.resolve(d)
        t, h = self.edge_ends[r.edge]
        return self.find_vertex(h if r.sign > 0 else t)

    def merge_vertices(self, a: str, b: str):
        ra, rb = self.find_vertex(a), self.find_vertex(b)
        if ra == rb:
            return
        if self.vertex_image[ra] != self.vertex_image[rb]:
            raise ValueError("fold merges vertices with different images")
        self.vparent[rb] = ra

    def fold(self, x: DirectedEdge, y: DirectedEdge):
        """Identify dart ``y`` with the reverse of dart ``x``."""
        rx, ry = self.resolve(x), self.resolve(y)
        if self.image_of(ry) != self.image_of(rx).reverse():
            raise ValueError("fold on darts with incompatible images")
        self.merge_vertices(self.tail_of(rx), self.head_of(ry))
        self.merge_vertices(self.head_of(rx), self.tail_of(ry))
        if ry.edge == rx.edge:
            if ry.sign != -rx.sign:
                raise ValueError("inconsistent self-fold")
            return
        # (ry.edge, ry.sign) = (rx.edge, -rx.sign), so forward dart of
        # ry.edge equals (rx.edge, -rx.sign * ry.sign).
        self.eparent[ry.edge] = (rx.edge, -rx.sign * ry.sign)

    # -- moves ---------------------------------------------------------------

    def init_circle(self, cyc: Cycle) -> list:
        """Create the boundary circle for a cycle; returns the slot list."""
        k = len(cyc.darts)
        if k == 0:
            return []
        verts = [self.new_vertex(self.target.tail(d)) for d in cyc.darts]
        slots = []
        for i, d in enumerate(cyc.darts):
            e = self.new_edge(verts[i], verts[(i + 1) % k], d)
            slots.append(DirectedEdge(e, 1))
        return slots

    def splice(self, x: DirectedEdge, f: str, j: int, refl: bool) -> list:
        """Glue a fresh copy of target face ``f`` across the slot dart ``x``
        (occurrence ``j``, possibly mirrored); returns the replacement slots."""
        u = self.target.faces[f]
        m = len(u)
        if refl:
            if u[j] != self.image_of(x).reverse():
                raise ValueError("splice occurrence does not match slot")
        elif u[j] != self.image_of(x):
            raise ValueError("splice occurrence does not match slot")
        if m == 1:
            self.merge_vertices(self.tail_of(x), self.head_of(x))
            self.new_face((x,), (f, FaceWitness(j, refl)))
            return []
        darts = [x]
        prev = self.head_of(x)
        for l in range(1, m):
            img = (u[(j - l) % m].reverse() if refl else u[(j + l) % m])
            nxt = (self.tail_of(x) if l == m - 1
                   else self.new_vertex(self.target.head(img)))
            e = self.new_edge(prev, nxt, img)
            darts.append(DirectedEdge(e, 1))
            prev = nxt
        self.new_face(tuple(darts), (f, FaceWitness(j, refl)))
        return [d.reverse() for d in reversed(darts[1:])]

    # -- assembly -------------------------------------------------------------

    def finish(self, boundary_slots: list, base_vertex: Optional[str] = None
               ) -> DiagramInX:
        """Resolve all identifications and assemble the diagram plus its map.
        ``boundary_slots`` is the original circle in cycle order."""
        complex_ = TwoComplex()
        vm: dict = {}
        em: dict = {}
        fm: dict = {}
        if not boundary_slots and not self.face_word:
            if base_vertex is None:
                raise ValueError("trivial diagram needs a base vertex")
            v = "v0"
            complex_.vertices.add(v)
            vm[v] = base_vertex
            diagram = Diagram(complex_, {v: ()}, (), {})
            the_map = CellularMap(complex_, self.target, vm, em, fm)
            return DiagramInX(diagram, the_map)
        for v in self.vparent:
            r = self.find_vertex(v)
            if r not in complex_.vertices:
                complex_.vertices.add(r)
                vm[r] = self.vertex_image[r]
        for e in self.eparent:
            r, _ = self.find_edge(e)
            if r not in complex_.edges:
                t, h = self.edge_ends[r]
                complex_.edges[r] = (self.find_vertex(t), self.find_vertex(h))
                em[r] = self.edge_image[r]
        face_walks = {}
        for f, word in self.face_word.items():
            resolved = tuple(self.resolve(d) for d in word)
            complex_.faces[f] = resolved
            face_walks[f] = resolved
            fm[f] = self.face_image[f]
        outer = tuple(self.resolve(d) for d in boundary_slots)
        diagram = from_walks(complex_, face_walks, outer)
        the_map = CellularMap(complex_, self.target, vm, em, fm)
        problems = the_map.validate()
        if problems:
            raise ValueError("replay produced an invalid map: "
                             + "; ".join(problems))
        return DiagramInX(diagram, the_map)


# -- word-level filling search ---------------------------------------------------


def splice_occurrences(x: TwoComplex, d: DirectedEdge) -> list:
    """All (face, position, mirrored) gluings available across dart ``d``."""
    out = []
    for f in x.sorted_faces():
        word = x.faces[f]
        for j, letter in enumerate(word):
            if letter == d:
                out.append((f, j, False))
            if letter == d.reverse():
                out.append((f, j, True))
    return out


def _splice_replacement(x: TwoComplex, f: str, j: int, refl: bool) -> Word:
    u = x.faces[f]
    rotated = rotate_word(u, j)
    if refl:
        return rotated[1:]
    return reverse_walk(rotated[1:])


def _least_rotation_index(s: tuple) -> int:
    """Booth's algorithm: index of the lexicographically least rotation
    (the smallest such index)."""
    n = len(s)
    if n <= 1:
        return 0
    doubled = s + s
    failure = [-1] * (2 * n)
    k = 0
    for j in range(1, 2 * n):
        sj = doubled[j]
        i = failure[j - k - 1]
        while i != -1 and sj != doubled[k + i + 1]:
            if sj < doubled[k + i + 1]:
                k = j - i - 1
            i = failure[i]
        if sj != doubled[k + i + 1]:
            if sj < doubled[k]:
                k = j
            failure[j - k] = -1
        else:
            failure[j - k] = i + 1
    return k


class _SearchEncoding:
    """Integer encoding of darts for the filling search.

    Darts are numbered in (edge id, sign) order with the two darts of an
    edge adjacent, so reversal is ``code ^ 1`` and integer comparison agrees
    with the dart ordering used by canonical forms.
    """

    def __init__(self, x: TwoComplex):
        self.decode = []
        self.encode = {}
        for e in x.sorted_edges():
            for sign in (1, -1):
                d = DirectedEdge(e, sign)
                self.encode[d] = len(self.decode)
                self.decode.append(d)
        self.splices = {code: [] for code in range(len(self.decode))}
        for f in x.sorted_faces():
            word = x.faces[f]
            for j in range(len(word)):
                for refl in (False, True):
                    replacement = tuple(
                        self.encode[d]
                        for d in _splice_replacement(x, f, j, refl))
                    letter = word[j] if not refl else word[j].reverse()
                    self.splices[self.encode[letter]].append(
                        (f, j, refl, replacement))

    def encode_word(self, word: Word) -> tuple:
        return tuple(self.encode[d] for d in word)


def _reduce_word(word: tuple) -> tuple:
    """Full cyclic free reduction, folding the leftmost adjacent inverse
    pair first (deterministic; mirrored by the replay)."""
    w = list(word)
    changed = True
    while changed and len(w) >= 2:
        changed = False
        n = len(w)
        for i in range(n):
            j = (i + 1) % n
            if w[j] == w[i] ^ 1:
                if j > i:
                    del w[j]
                    del w[i]
                else:
                    w = w[1:i]
                changed = True
                break
    return tuple(w)


def _reduce_slots(builder: "_Builder", enc: "_SearchEncoding",
                  slots: list) -> list:
    """The replay twin of ``_reduce_word``: fold the same pairs."""
    slots = list(slots)
    changed = True
    while changed and len(slots) >= 2:
        changed = False
        n = len(slots)
        codes = [enc.encode[builder.image_of(s)] for s in slots]
        for i in range(n):
            j = (i + 1) % n
            if codes[j] == codes[i] ^ 1:
                builder.fold(slots[i], slots[j])
                if j > i:
                    del slots[j]
                    del slots[i]
                else:
                    slots = slots[1:i]
                changed = True
                break
    return slots


def fill_cycle(x: TwoComplex, cyc: Cycle, max_area: int = 12,
               max_perimeter: int = 24) -> Optional[DiagramInX]:
    """Search for a disk diagram filling ``cyc``, minimal in area among the
    diagrams the move system reaches within the bounds.

    Moves are free cancellation of adjacent inverse letters (cost 0) and
    splicing a face word across one boundary letter (cost 1).  States are
    boundary words up to rotation; reflection is not quotiented.  Raises
    ``BoundsExhausted`` when the search was truncated by the bounds and no
    filling was found; returns None only on untruncated exhaustion.
    """
    if not x.walk_is_closed(cyc.darts):
        raise ValueError("not a closed walk in the target complex")
    if not cyc.darts:
        builder = _Builder(x)
        return builder.finish([], base_vertex=cyc.start)
    if len(cyc.darts) > max_perimeter:
        raise BoundsExhausted("cycle longer than the perimeter bound")

    enc = _SearchEncoding(x)
    reduced_start = _reduce_word(enc.encode_word(cyc.darts))
    start_off = _least_rotation_index(reduced_start)
    start = reduced_start[start_off:] + reduced_start[:start_off]
    if len(start) > max_perimeter:
        raise BoundsExhausted("reduced cycle longer than the perimeter bound")
    dist = {start: 0}
    parents: dict = {start: None}
    queue = deque([(start, 0)])
    truncated = False
    goal: tuple = ()
    while queue:
        word, d = queue.popleft()
        if word == goal:
            break
        if d >= max_area:
            if any(enc.splices[c] for c in word):
                truncated = True
            continue
        for i in range(len(word)):
            for f, j, refl, replacement in enc.splices[word[i]]:
                reduced = _reduce_word(word[:i] + replacement + word[i + 1:])
                if len(reduced) > max_perimeter:
                    truncated = True
                    continue
                off = _least_rotation_index(reduced)
                canon = reduced[off:] + reduced[:off]
                if canon not in dist:
                    dist[canon] = d + 1
                    parents[canon] = (word, ("splice", i, f, j, refl))
                    queue.append((canon, d + 1))
    else:
        if truncated:
            raise BoundsExhausted("no filling found within the bounds")
        return None

    # Reconstruct the move sequence goal -> start, then replay forward.
    sequence = []
    cur = goal
    while parents[cur] is not None:
        prev, move = parents[cur]
        sequence.append((move, cur))
        cur = prev
    sequence.reverse()

    builder = _Builder(x)
    boundary = builder.init_circle(cyc)
    active = _reduce_slots(builder, enc, boundary)
    active = active[start_off:] + active[:start_off]
    for move, state_after in sequence:
        _, i, f, j, refl = move
        repl = builder.splice(active[i], f, j, refl)
        active = _reduce_slots(builder, enc, active[:i] + repl
                               + active[i + 1:])
        word = tuple(enc.encode[builder.image_of(s)] for s in active)
        off = _least_rotation_index(word)
        active = active[off:] + active[:off]
        if word[off:] + word[:off] != state_after:
            raise ValueError("replay diverged from the searched states")
    if active:
        raise ValueError("replay did not close the boundary")
    return builder.finish(boundary)


# -- exhaustive enumeration -------------------------------------------------------


def _enumerate_traces(x: TwoComplex, word: Word, budget: int):
    """All decompositions of a boundary word: the first letter either folds
    with a later inverse letter (splitting the word) or carries a face.
    Returns (list of (trace, area), truncated_flag)."""
    if not word:
        return [(("empty",), 0)], False
    head = word[0]
    results = []
    truncated = False
    for j in range(1, len(word)):
        if word[j] == head.reverse():
            left, tl = _enumerate_traces(x, word[1:j], budget)
            truncated |= tl
            for trace_b, area_b in left:
                right, tr = _enumerate_traces(x, word[j + 1:], budget - area_b)
                truncated |= tr
                for trace_c, area_c in right:
                    results.append((("split", j, trace_b, trace_c),
                                    area_b + area_c))
    occurrences = splice_occurrences(x, head)
    if occurrences and budget < 1:
        truncated = True
    elif budget >= 1:
        for f, j, refl in occurrences:
            rest = _splice_replacement(x, f, j, refl) + word[1:]
            sub, ts = _enumerate_traces(x, rest, budget - 1)
            truncated |= ts
            for trace, used in sub:
                results.append((("splice", f, j, refl, trace), used + 1))
    return results, truncated


def _replay_trace(builder: _Builder, active: list, trace) -> None:
    kind = trace[0]
    if kind == "empty":
        if active:
            raise ValueError("trace terminates with a nonempty boundary")
        return
    if kind == "split":
        _, j, trace_b, trace_c = trace
        builder.fold(active[0], active[j])
        _replay_trace(builder, active[1:j], trace_b)
        _replay_trace(builder, active[j + 1:], trace_c)
        return
    _, f, j, refl, rest = trace
    repl = builder.splice(active[0], f, j, refl)
    _replay_trace(builder, repl + active[1:], rest)


def enumerate_fillings(x: TwoComplex, cyc: Cycle, max_area: int = 6):
    """All near-immersed fillings of an embedded cycle, one per isomorphism
    class, within the area bound.

    Returns ``(fillings, truncated)``; when ``truncated`` is True the list
    may be incomplete (some branch hit the area bound).
    """
    from .complexes import is_embedded_cycle
    if cyc.darts and not is_embedded_cycle(x, cyc):
        raise ValueError("enumerate_fillings expects an embedded cycle")
    if not cyc.darts:
        builder = _Builder(x)
        return [builder.finish([], base_vertex=cyc.start)], False
    traces, truncated = _enumerate_traces(x, cyc.darts, max_area)
    fillings = []
    for trace, _ in traces:
        builder = _Builder(x)
        boundary = builder.init_circle(cyc)
        _replay_trace(builder, list(boundary), trace)
        filling = builder.finish(boundary)
        ok, _fold = is_near_immersion(filling.map)
        if not ok:
            continue
        if any(diagram_isomorphic(filling, other) is not None
               for other in fillings):
            continue
        fillings.append(filling)
    return fillings, truncated


# -- sphere gluing ------------------------------------------------------------------


def _fresh_prefix(taken_ids) -> str:
    prefix = "o."
    while any(i.startswith(prefix) for i in taken_ids):
        prefix = "o" + prefix
    return prefix


def glue_to_sphere(d1: DiagramInX, d2: DiagramInX) -> DiagramInX:
    """The spherical diagram obtained by gluing two non-singular disk
    fillings of the same cycle along their boundaries (the second diagram is
    mirrored, so its face walks reverse)."""
    for d in (d1, d2):
        if d.diagram.outer is None:
            raise NotADisk("can only glue disk diagrams")
        if not d.diagram.is_nonsingular():
            raise SingularDiagram("gluing requires non-singular diagrams")
        if d.area() == 0:
            raise SingularDiagram("gluing requires diagrams with faces")
    b1 = d1.diagram.boundary_walk()
    b2 = d2.diagram.boundary_walk()
    img1 = d1.map.apply_walk(b1)
    img2 = d2.map.apply_walk(b2)
    r = cyclic_rotation_of(img2, img1)
    if r is None:
        raise BoundaryMismatch("boundary cycles have different images")
    b2 = rotate_word(b2, r)
    k = len(b1)
    x1, x2 = d1.diagram.complex, d2.diagram.complex
    prefix = _fresh_prefix(set(x1.vertices) | set(x1.edges) | set(x1.faces))

    vmap2: dict = {}
    emap2: dict = {}   # edge of x2 -> DirectedEdge in the glued complex
    for i in range(k):
        va = x1.tail(b1[i])
        vb = x2.tail(b2[i])
        vmap2[vb] = va
        emap2[b2[i].edge] = DirectedEdge(b1[i].edge, b1[i].sign * b2[i].sign)
    for v in x2.sorted_vertices():
        if v not in vmap2:
            vmap2[v] = prefix + v
    for e in x2.sorted_edges():
        if e not in emap2:
            emap2[e] = DirectedEdge(prefix + e, 1)

    def rename_dart(d: DirectedEdge) -> DirectedEdge:
        image = emap2[d.edge]
        return DirectedEdge(image.edge, image.sign * d.sign)

    glued = TwoComplex(set(x1.vertices), dict(x1.edges),
                       {f: tuple(w) for f, w in x1.faces.items()})
    vm = dict(d1.map.vertex_map)
    em = dict(d1.map.edge_map)
    fm = dict(d1.map.face_map)
    face_walks = dict(d1.diagram.face_walks)
    for v in x2.sorted_vertices():
        new = vmap2[v]
        if new not in glued.vertices:
            glued.vertices.add(new)
            vm[new] = d2.map.vertex_map[v]
        elif vm[new] != d2.map.vertex_map[v]:
            raise BoundaryMismatch("boundary identification maps disagree")
    for e in x2.sorted_edges():
        new = emap2[e]
        image = d2.map.edge_map[e]
        image = DirectedEdge(image.edge, image.sign * new.sign)
        if new.edge not in glued.edges:
            t, h = x2.edges[e]
            ends = (vmap2[t], vmap2[h])
            if new.sign < 0:
                ends = (ends[1], ends[0])
            glued.edges[new.edge] = ends
            em[new.edge] = image
        elif em[new.edge] != image:
            raise BoundaryMismatch("boundary identification maps disagree")
    for f in x2.sorted_faces():
        new = prefix + f
        glued.faces[new] = tuple(rename_dart(d) for d in x2.faces[f])
        fm[new] = d2.map.face_map[f]
        face_walks[new] = reverse_walk(
            tuple(rename_dart(d) for d in d2.diagram.face_walks[f]))

    sphere = from_walks(glued, face_walks, None)
    the_map = CellularMap(glued, d1.map.target, vm, em, fm)
    problems = the_map.validate()
    if problems:
        raise BoundaryMismatch("glued map invalid: " + "; ".join(problems))
    return DiagramInX(sphere, the_map)


# -- diagram isomorphism ----------------------------------------------------------


def _consumers(d: Diagram) -> dict:
    """Dart -> ('face', f, position) or ('outer', position)."""
    table = {}
    for f, walk in d.face_walks.items():
        for i, dart_ in enumerate(walk):
            table[dart_] = ("face", f, i)
    if d.outer is not None:
        for i, dart_ in enumerate(reverse_walk(d.outer)):
            table[dart_] = ("outer", i)
    return table


def diagram_isomorphic(d1: DiagramInX, d2: DiagramInX,
                       alignment=(0, False)) -> Optional[CellularMap]:
    """The unique isomorphism of filled diagrams extending the boundary
    correspondence ``alignment``, or None.

    ``alignment`` = (t, reflected) aligns boundary position i of the first
    diagram with position i+t of the second (reflected: with the reverse of
    position t-i).  The isomorphism must satisfy map1 = map2 after it,
    witness for witness; it is found by deterministic propagation from the
    boundary across shared edges.
    """
    if d1.diagram.outer is None or d2.diagram.outer is None:
        raise NotADisk("diagram isomorphism is defined for disk fillings")
    t, refl = alignment
    b1, b2 = d1.diagram.outer, d2.diagram.outer
    k = len(b1)
    if k != len(b2):
        return None
    x1, x2 = d1.diagram.complex, d2.diagram.complex
    if k == 0:
        v1 = min(x1.vertices)
        v2 = min(x2.vertices)
        if len(x1.vertices) != 1 or len(x2.vertices) != 1 or x1.edges or x2.edges:
            return None
        iso = CellularMap(x1, x2, {v1: v2}, {}, {})
        if compose(iso, d2.map).key() != d1.map.key():
            return None
        return iso

    cons1 = _consumers(d1.diagram)
    cons2 = _consumers(d2.diagram)
    vmap: dict = {}
    emap: dict = {}
    fmap: dict = {}

    def assign_dart(a: DirectedEdge, b: DirectedEdge) -> bool:
        image = DirectedEdge(b.edge, a.sign * b.sign)
        if a.edge in emap:
            return emap[a.edge] == image
        emap[a.edge] = image
        return True

    def assign_vertex(a: str, b: str) -> bool:
        if a in vmap:
            return vmap[a] == b
        vmap[a] = b
        return True

    queue = deque()
    seen_pairs = set()

    def push(a: DirectedEdge, b: DirectedEdge) -> bool:
        if (a, b) in seen_pairs:
            return True
        seen_pairs.add((a, b))
        if not assign_dart(a, b):
            return False
        if not assign_vertex(x1.tail(a), x2.tail(b)):
            return False
        if not assign_vertex(x1.head(a), x2.head(b)):
            return False
        queue.append((a, b))
        return True

    for i in range(k):
        if refl:
            target = b2[(t - i) % k].reverse()
        else:
            target = b2[(i + t) % k]
        if not push(b1[i], target):
            return None

    while queue:
        a, b = queue.popleft()
        c1 = cons1[a]
        c2 = cons2[b.reverse() if refl else b]
        if c1[0] == "outer":
            if c2[0] != "outer":
                return None
            continue
        if c2[0] != "face":
            return None
        _, f1, i1 = c1
        _, f2, i2 = c2
        w1 = d1.diagram.face_walks[f1]
        w2 = d2.diagram.face_walks[f2]
        n = len(w1)
        if n != len(w2):
            return None
        wit = (FaceWitness((i1 + i2) % n, True) if refl
               else FaceWitness((i2 - i1) % n, False))
        if f1 in fmap:
            if fmap[f1] != (f2, wit):
                return None
            continue
        fmap[f1] = (f2, wit)
        for l in range(n):
            if refl:
                target = w2[(i2 - l) % n].reverse()
            else:
                target = w2[(i2 + l) % n]
            if not push(w1[(i1 + l) % n], target):
                return None

    if (set(vmap) != x1.vertices or set(emap) != set(x1.edges)
            or set(fmap) != set(x1.faces)):
        return None
    iso = CellularMap(x1, x2, vmap, emap, fmap)
    if iso.validate():
        return None
    if compose(iso, d2.map).key() != d1.map.key():
        return None
    return iso
