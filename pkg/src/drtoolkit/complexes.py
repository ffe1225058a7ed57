"""Combinatorial 2-complexes.

A complex is a set of vertices, a set of oriented edges (each with a tail and
a head vertex), and a set of faces, each attached along a closed walk of
directed edges (its attaching word).  Faces need not be embedded polygons:
the torus is one vertex, two loops and the face ``a b a- b-``.

All values are treated as immutable after construction; every operation
returns fresh objects and never mutates its arguments.  Iteration order is
deterministic everywhere (sorted ids), so outputs are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple, Optional

from .errors import NotFreeError


class DirectedEdge(NamedTuple):
    """An edge together with a direction of traversal (sign +1 or -1)."""

    edge: str
    sign: int

    def reverse(self) -> "DirectedEdge":
        return DirectedEdge(self.edge, -self.sign)

    def token(self) -> str:
        return self.edge + ("+" if self.sign > 0 else "-")


def dart(edge: str, sign: int = 1) -> DirectedEdge:
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    return DirectedEdge(edge, sign)


def _dart_key(d: DirectedEdge) -> tuple:
    return (d.edge, 0 if d.sign > 0 else 1)


Word = tuple  # tuple[DirectedEdge, ...]: a closed walk with a marked start


def rotate_word(word: Word, k: int) -> Word:
    """The same cyclic word started ``k`` positions later."""
    n = len(word)
    if n == 0:
        return word
    k %= n
    return word[k:] + word[:k]


def reverse_walk(word: Word) -> Word:
    """The walk traversed backwards (letters reversed and inverted)."""
    return tuple(d.reverse() for d in reversed(word))


def word_variants(word: Word) -> Iterator[Word]:
    """All rotations of ``word`` and of its reversal."""
    n = len(word)
    if n == 0:
        yield word
        return
    rev = reverse_walk(word)
    for k in range(n):
        yield rotate_word(word, k)
    for k in range(n):
        yield rotate_word(rev, k)


def canonical_cyclic_key(word: Word, reflect: bool = True) -> tuple:
    """Lexicographically least rotation (and optionally reflection) of a
    cyclic word, as a hashable key."""
    variants = word_variants(word) if reflect else (
        rotate_word(word, k) for k in range(max(1, len(word))))
    return min(tuple(_dart_key(d) for d in w) for w in variants)


def least_rotation(word: Word) -> int:
    """Offset of the lexicographically least rotation (ties: least offset)."""
    n = len(word)
    if n == 0:
        return 0
    keys = [tuple(_dart_key(d) for d in rotate_word(word, k)) for k in range(n)]
    best = min(keys)
    return keys.index(best)


class Path(NamedTuple):
    """A combinatorial path: a start vertex plus a walk of directed edges."""

    start: str
    darts: Word

    @property
    def length(self) -> int:
        return len(self.darts)


class Cycle(NamedTuple):
    """A closed walk regarded up to rotation and reversal.

    The concrete representative (start vertex plus dart sequence) is kept so
    cycles can be filled and mapped; ``canonical_key`` identifies the class.
    """

    start: str
    darts: Word

    @property
    def length(self) -> int:
        return len(self.darts)

    def canonical_key(self) -> tuple:
        return (("cycle",) + canonical_cyclic_key(self.darts)
                if self.darts else ("point", self.start))

    def reverse(self) -> "Cycle":
        return Cycle(self.start, reverse_walk(self.darts))


@dataclass
class TwoComplex:
    """A finite combinatorial 2-complex.

    vertices: set of vertex ids.
    edges:    edge id -> (tail vertex, head vertex).
    faces:    face id -> attaching word, a closed walk of DirectedEdge.
    """

    vertices: set = field(default_factory=set)
    edges: dict = field(default_factory=dict)
    faces: dict = field(default_factory=dict)

    # -- basic accessors ---------------------------------------------------

    def sorted_vertices(self) -> list:
        return sorted(self.vertices)

    def sorted_edges(self) -> list:
        return sorted(self.edges)

    def sorted_faces(self) -> list:
        return sorted(self.faces)

    def tail(self, d: DirectedEdge) -> str:
        t, h = self.edges[d.edge]
        return t if d.sign > 0 else h

    def head(self, d: DirectedEdge) -> str:
        t, h = self.edges[d.edge]
        return h if d.sign > 0 else t

    def all_darts(self) -> list:
        return [DirectedEdge(e, s) for e in self.sorted_edges() for s in (1, -1)]

    def darts_out_of(self, v: str) -> list:
        """Outgoing darts at ``v``; one per edge-end, so loops give two."""
        out = []
        for e in self.sorted_edges():
            t, h = self.edges[e]
            if t == v:
                out.append(DirectedEdge(e, 1))
            if h == v:
                out.append(DirectedEdge(e, -1))
        return out

    def is_one_dimensional(self) -> bool:
        return not self.faces

    def walk_is_closed(self, word: Word) -> bool:
        if not word:
            return True
        for i, d in enumerate(word):
            nxt = word[(i + 1) % len(word)]
            if self.head(d) != self.tail(nxt):
                return False
        return True

    def walk_vertices(self, start: str, word: Word) -> list:
        """Vertices visited by a walk, starting vertex first."""
        seq = [start]
        for d in word:
            seq.append(self.head(d))
        return seq

    def copy(self) -> "TwoComplex":
        return TwoComplex(set(self.vertices), dict(self.edges),
                          {f: tuple(w) for f, w in self.faces.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, TwoComplex):
            return NotImplemented
        return (self.vertices == other.vertices and self.edges == other.edges
                and self.faces == other.faces)


# -- validation ------------------------------------------------------------

def validate(x: TwoComplex) -> list:
    """Check the complex invariants.  Returns a list of violation strings,
    one per problem, empty iff the complex is well formed."""
    report = []
    if not x.vertices:
        report.append("complex is empty: no vertices")
    for e in x.sorted_edges():
        t, h = x.edges[e]
        if t not in x.vertices:
            report.append(f"edge {e}: dangling reference to tail vertex {t}")
        if h not in x.vertices:
            report.append(f"edge {e}: dangling reference to head vertex {h}")
    for f in x.sorted_faces():
        word = x.faces[f]
        if len(word) == 0:
            report.append(f"face {f}: empty attaching word")
            continue
        dangling = False
        for i, d in enumerate(word):
            if d.edge not in x.edges:
                report.append(f"face {f}: dangling reference to edge {d.edge}"
                              f" at position {i}")
                dangling = True
            elif d.sign not in (1, -1):
                report.append(f"face {f}: bad sign at position {i}")
                dangling = True
        if dangling:
            continue
        for i in range(len(word)):
            nxt = word[(i + 1) % len(word)]
            if x.head(word[i]) != x.tail(nxt):
                report.append(f"face {f}: word not closed at position {i}")
    return report


def euler_characteristic(x: TwoComplex) -> int:
    return len(x.vertices) - len(x.edges) + len(x.faces)


# -- free edges and collapsing ----------------------------------------------

def edge_occurrences(x: TwoComplex, face_ids: Optional[Iterable] = None) -> dict:
    """Count occurrences of each edge over the given faces' attaching words,
    ignoring orientation.  Defaults to all faces."""
    if face_ids is None:
        face_ids = x.faces
    counts: dict = {}
    for f in face_ids:
        for d in x.faces[f]:
            counts[d.edge] = counts.get(d.edge, 0) + 1
    return counts


def free_edges(x: TwoComplex, face_ids: Optional[Iterable] = None) -> list:
    """Pairs ``(edge, face)`` where the edge occurs exactly once over all
    attaching words (orientation ignored), in that face.  Restricting
    ``face_ids`` computes freeness relative to a sub-collection of faces."""
    if face_ids is None:
        face_ids = x.faces
    face_ids = sorted(face_ids)
    counts = edge_occurrences(x, face_ids)
    out = []
    for f in face_ids:
        for d in x.faces[f]:
            if counts[d.edge] == 1:
                out.append((d.edge, f))
    out.sort()
    return out


def collapse(x: TwoComplex, e: str, f: str) -> TwoComplex:
    """Remove the open edge ``e`` and the open face ``f``; requires ``(e, f)``
    free.  Euler characteristic is unchanged."""
    if (e, f) not in free_edges(x):
        raise NotFreeError(f"edge {e} is not free in face {f}")
    y = x.copy()
    del y.edges[e]
    del y.faces[f]
    return y


def prune_leaf(x: TwoComplex, e: str, v: str) -> TwoComplex:
    """Remove a leaf edge ``e`` together with its degree-one endpoint ``v``."""
    occurs = edge_occurrences(x)
    if e in occurs:
        raise NotFreeError(f"edge {e} lies in a face")
    degree = sum(1 for d in x.darts_out_of(v))
    if degree != 1 or v not in x.edges[e]:
        raise NotFreeError(f"vertex {v} is not a leaf of edge {e}")
    y = x.copy()
    del y.edges[e]
    y.vertices.discard(v)
    return y


# -- subcomplexes and connectivity -------------------------------------------

def subcomplex(x: TwoComplex, vertices: Iterable, edges: Iterable = (),
               faces: Iterable = ()) -> TwoComplex:
    """The subcomplex spanned by the given cells (closure is taken: edge
    endpoints and face boundary edges are pulled in)."""
    fs = {f: x.faces[f] for f in faces}
    es = set(edges)
    for w in fs.values():
        es.update(d.edge for d in w)
    vs = set(vertices)
    for e in es:
        vs.update(x.edges[e])
    return TwoComplex(vs, {e: x.edges[e] for e in es}, fs)


def is_connected(x: TwoComplex) -> bool:
    if not x.vertices:
        return False
    start = min(x.vertices)
    seen = {start}
    stack = [start]
    adjacency: dict = {v: [] for v in x.vertices}
    for e, (t, h) in x.edges.items():
        adjacency[t].append(h)
        adjacency[h].append(t)
    while stack:
        v = stack.pop()
        for w in adjacency[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(x.vertices)


def spanning_tree(x: TwoComplex) -> set:
    """Edge ids of a BFS spanning tree rooted at the least vertex.  Requires
    a connected complex; deterministic."""
    root = min(x.vertices)
    parent = {root: None}
    tree = set()
    frontier = [root]
    while frontier:
        nxt = []
        for v in frontier:
            for d in x.darts_out_of(v):
                w = x.head(d)
                if w not in parent:
                    parent[w] = (v, d.edge)
                    tree.add(d.edge)
                    nxt.append(w)
        frontier = nxt
    if len(parent) != len(x.vertices):
        raise ValueError("complex is not connected")
    return tree


def tree_path(x: TwoComplex, tree: set, u: str, v: str) -> Word:
    """The unique path from ``u`` to ``v`` inside a spanning tree, as a walk."""
    prev = {u: None}
    frontier = [u]
    while frontier and v not in prev:
        nxt = []
        for a in frontier:
            for d in x.darts_out_of(a):
                if d.edge in tree:
                    b = x.head(d)
                    if b not in prev:
                        prev[b] = (a, d)
                        nxt.append(b)
        frontier = nxt
    if v not in prev:
        raise ValueError("vertices not connected in tree")
    path = []
    cur = v
    while prev[cur] is not None:
        a, d = prev[cur]
        path.append(d)
        cur = a
    path.reverse()
    return tuple(path)


# -- path and cycle enumeration ----------------------------------------------

def embedded_paths(x: TwoComplex, u: str, v: str, n: int) -> list:
    """All embedded paths of length at most ``n`` from ``u`` to ``v``.

    A path is embedded when its vertex sequence has no repeats; in particular
    the only embedded path from a vertex to itself is the empty one.  Output
    is sorted lexicographically on the dart id sequence.
    """
    results = []
    if u == v:
        results.append(Path(u, ()))

    def extend(current: list, visited: set, at: str):
        if len(current) >= n:
            return
        for d in sorted(x.darts_out_of(at), key=_dart_key):
            w = x.head(d)
            if w in visited:
                continue
            current.append(d)
            if w == v:
                results.append(Path(u, tuple(current)))
            else:
                visited.add(w)
                extend(current, visited, w)
                visited.remove(w)
            current.pop()

    if u in x.vertices and v in x.vertices and u != v:
        extend([], {u}, u)
    results.sort(key=lambda p: tuple(_dart_key(d) for d in p.darts))
    return results


def is_embedded_cycle(x: TwoComplex, cyc: Cycle) -> bool:
    """No repeated vertex and no repeated edge along the closed walk."""
    if not cyc.darts:
        return False
    verts = x.walk_vertices(cyc.start, cyc.darts)[:-1]
    if len(set(verts)) != len(verts):
        return False
    edges = [d.edge for d in cyc.darts]
    return len(set(edges)) == len(edges)


def canonical_cycle(x: TwoComplex, cyc: Cycle) -> Cycle:
    """The canonical representative of a cycle class: lexicographically least
    rotation-or-reflection of the dart sequence, rebased accordingly."""
    best = None
    for w in word_variants(cyc.darts):
        key = tuple(_dart_key(d) for d in w)
        if best is None or key < best[0]:
            best = (key, w)
    word = best[1]
    start = x.tail(word[0]) if word else cyc.start
    return Cycle(start, word)


def embedded_cycles(g: TwoComplex) -> list:
    """One canonical representative per isomorphism class of embedded cycles
    in a 1-dimensional complex (classes are taken up to rotation and
    reversal).  Sorted by (length, canonical key)."""
    if g.faces:
        raise ValueError("embedded_cycles expects a 1-dimensional complex")
    found = {}

    def search(start: str, current: list, used_edges: set, visited: set,
               at: str):
        for d in sorted(g.darts_out_of(at), key=_dart_key):
            if d.edge in used_edges:
                continue
            w = g.head(d)
            if w == start:
                cyc = canonical_cycle(g, Cycle(start, tuple(current) + (d,)))
                if is_embedded_cycle(g, cyc):
                    found.setdefault(cyc.canonical_key(), cyc)
                continue
            if w in visited:
                continue
            current.append(d)
            used_edges.add(d.edge)
            visited.add(w)
            search(start, current, used_edges, visited, w)
            visited.remove(w)
            used_edges.discard(d.edge)
            current.pop()

    for v in g.sorted_vertices():
        search(v, [], set(), {v}, v)
    out = sorted(found.values(), key=lambda c: (c.length, c.canonical_key()))
    return out


# -- barycentric subdivision --------------------------------------------------

@dataclass
class Subdivision:
    """A barycentric subdivision together with its provenance map.

    provenance maps each new cell, keyed by ("vertex"|"edge"|"face", id), to
    the original cell it came from, in the same keyed form.
    """

    complex: TwoComplex
    provenance: dict

    # Naming scheme (fixed, so induced maps can be written down):
    #   vertex v          -> vertex v
    #   edge e            -> vertex "e.m", edges "e.h0" (tail->mid),
    #                        "e.h1" (mid->head)
    #   face f, |word|=n  -> vertex "f.b", spokes "f.r{k}" (barycenter ->
    #                        station k) for k in 0..2n-1, triangles "f.t{k}"
    #   Stations around f alternate: station 2i is the walk vertex before
    #   letter i, station 2i+1 is the midpoint of letter i's edge.


def midpoint_id(edge: str) -> str:
    return edge + ".m"


def half_id(edge: str, which: int) -> str:
    return f"{edge}.h{which}"


def barycenter_id(face: str) -> str:
    return face + ".b"


def spoke_id(face: str, station: int) -> str:
    return f"{face}.r{station}"


def triangle_id(face: str, k: int) -> str:
    return f"{face}.t{k}"


def half_walk(d: DirectedEdge) -> Word:
    """The two darts replacing one dart in the subdivided complex."""
    if d.sign > 0:
        return (DirectedEdge(half_id(d.edge, 0), 1),
                DirectedEdge(half_id(d.edge, 1), 1))
    return (DirectedEdge(half_id(d.edge, 1), -1),
            DirectedEdge(half_id(d.edge, 0), -1))


def station_vertex(x: TwoComplex, f: str, station: int) -> str:
    """The vertex at a station of face ``f``'s subdivided boundary walk."""
    word = x.faces[f]
    n = len(word)
    station %= 2 * n
    i, r = divmod(station, 2)
    if r == 0:
        return x.tail(word[i])
    return midpoint_id(word[i].edge)


def barycentric_subdivision(x: TwoComplex) -> Subdivision:
    """Split every edge at a midpoint and every face of word-length n into
    2n triangles around a barycenter.  Preserves the Euler characteristic."""
    y = TwoComplex()
    prov = {}
    for v in x.vertices:
        y.vertices.add(v)
        prov[("vertex", v)] = ("vertex", v)
    for e, (t, h) in x.edges.items():
        m = midpoint_id(e)
        y.vertices.add(m)
        y.edges[half_id(e, 0)] = (t, m)
        y.edges[half_id(e, 1)] = (m, h)
        prov[("vertex", m)] = ("edge", e)
        prov[("edge", half_id(e, 0))] = ("edge", e)
        prov[("edge", half_id(e, 1))] = ("edge", e)
    for f, word in x.faces.items():
        n = len(word)
        b = barycenter_id(f)
        y.vertices.add(b)
        prov[("vertex", b)] = ("face", f)
        for k in range(2 * n):
            y.edges[spoke_id(f, k)] = (b, station_vertex(x, f, k))
            prov[("edge", spoke_id(f, k))] = ("face", f)
        for i, d in enumerate(word):
            first, second = half_walk(d)
            segments = {2 * i: first, 2 * i + 1: second}
            for k, seg in segments.items():
                tri = triangle_id(f, k)
                y.faces[tri] = (DirectedEdge(spoke_id(f, k), 1), seg,
                                DirectedEdge(spoke_id(f, (k + 1) % (2 * n)), -1))
                prov[("face", tri)] = ("face", f)
    return Subdivision(y, prov)
