"""Corpus construction: presentation complexes, standard examples, standard
actions, and seeded random complexes.

Word grammar for relators: whitespace-separated tokens, each a generator
name, an upper-cased single letter for the inverse of a lower-case
generator, or ``name^-1``.
"""

from __future__ import annotations

import random

from .actions import close_group
from .complexes import (DirectedEdge, TwoComplex, barycentric_subdivision,
                        dart)
from .errors import (NotAutomorphism, ParseError, UnknownGenerator,
                     UnknownName)
from .maps import CellularMap, FaceWitness, find_witness


def parse_word(text: str, generators: list) -> tuple:
    """Parse a relator word into darts over the generator loops."""
    gens = set(generators)
    letters = []
    for pos, token in enumerate(text.split()):
        name, sign = token, 1
        if token.endswith("^-1"):
            name = token[:-3]
            sign = -1
        elif len(token) == 1 and token.isalpha() and token.isupper():
            name = token.lower()
            sign = -1
        if not name:
            raise ParseError(f"empty generator token at position {pos}")
        if name not in gens:
            raise UnknownGenerator(
                f"unknown generator {name!r} at position {pos}")
        letters.append(DirectedEdge(name, sign))
    if not letters:
        raise ParseError("empty relator word")
    for i in range(len(letters) - 1):
        if letters[i + 1] == letters[i].reverse():
            raise ParseError(
                f"word is not freely reduced at position {i}")
    return tuple(letters)


def format_word(word) -> str:
    return " ".join(d.edge if d.sign > 0 else d.edge + "^-1" for d in word)


def presentation_complex(generators: list, relators: list) -> TwoComplex:
    """One vertex, one loop per generator, one face per relator."""
    x = TwoComplex()
    x.vertices.add("v")
    for g in generators:
        x.edges[g] = ("v", "v")
    for i, rel in enumerate(relators, start=1):
        word = parse_word(rel, generators) if isinstance(rel, str) else rel
        x.faces[f"r{i}"] = word
    return x


# -- standard complexes -----------------------------------------------------------

def _triangle_disk() -> TwoComplex:
    x = TwoComplex({"v0", "v1", "v2"},
                   {"e0": ("v0", "v1"), "e1": ("v1", "v2"),
                    "e2": ("v2", "v0")},
                   {"f": (dart("e0"), dart("e1"), dart("e2"))})
    return x


def _n_gon_disk(n: int) -> TwoComplex:
    if n < 1:
        raise UnknownName("n_gon_disk needs n >= 1")
    x = TwoComplex()
    for i in range(n):
        x.vertices.add(f"v{i}")
    for i in range(n):
        x.edges[f"e{i}"] = (f"v{i}", f"v{(i + 1) % n}")
    x.faces["f"] = tuple(dart(f"e{i}") for i in range(n))
    return x


def _bigon_sphere() -> TwoComplex:
    word = (dart("e1"), dart("e2", -1))
    return TwoComplex({"u", "v"},
                      {"e1": ("u", "v"), "e2": ("u", "v")},
                      {"f1": word, "f2": word})


def _torus() -> TwoComplex:
    word = (dart("a"), dart("b"), dart("a", -1), dart("b", -1))
    return TwoComplex({"v"}, {"a": ("v", "v"), "b": ("v", "v")}, {"f": word})


def _theta_graph() -> TwoComplex:
    return TwoComplex({"u", "v"},
                      {"e0": ("u", "v"), "e1": ("u", "v"), "e2": ("u", "v")},
                      {})


def _interval() -> TwoComplex:
    return TwoComplex({"u", "v"}, {"e": ("u", "v")}, {})


def _tree(depth: int, arity: int) -> TwoComplex:
    x = TwoComplex({"t"}, {}, {})
    frontier = ["t"]
    for _level in range(depth):
        nxt = []
        for v in frontier:
            for c in range(arity):
                w = f"{v}.{c}"
                x.vertices.add(w)
                x.edges[w] = (v, w)
                nxt.append(w)
        frontier = nxt
    return x


def _two_triangles() -> TwoComplex:
    return TwoComplex(
        {"v0", "v1", "v2", "v3"},
        {"s": ("v0", "v1"),
         "a1": ("v1", "v2"), "a2": ("v2", "v0"),
         "b1": ("v1", "v3"), "b2": ("v3", "v0")},
        {"f1": (dart("s"), dart("a1"), dart("a2")),
         "f2": (dart("s"), dart("b1"), dart("b2"))})


def _loop_disk() -> TwoComplex:
    return presentation_complex(["a"], ["a"])


STANDARD_COMPLEXES = {
    "triangle_disk": _triangle_disk,
    "bigon_sphere": _bigon_sphere,
    "torus": _torus,
    "theta_graph": _theta_graph,
    "interval": _interval,
    "two_triangles": _two_triangles,
    "loop_disk": _loop_disk,
}


def _automorphism_from_cells(x: TwoComplex, vmap: dict, emap: dict
                             ) -> CellularMap:
    """Fill in face images and witnesses from vertex/edge data by matching
    mapped words against unused target faces (backtracking keeps the
    assignment a bijection; first solution in sorted order wins)."""
    phi = CellularMap(x, x, dict(vmap), dict(emap), {})
    faces = x.sorted_faces()

    def assign(k: int, used: set) -> bool:
        if k == len(faces):
            return True
        f = faces[k]
        mapped = phi.apply_walk(x.faces[f])
        for g in faces:
            if g in used:
                continue
            w = find_witness(mapped, x.faces[g])
            if w is None:
                continue
            phi.face_map[f] = (g, w)
            used.add(g)
            if assign(k + 1, used):
                return True
            used.discard(g)
            del phi.face_map[f]
        return False

    if not assign(0, set()):
        raise NotAutomorphism("cell maps do not extend to the faces")
    problems = phi.validate()
    if problems:
        raise NotAutomorphism(f"bad automorphism: {problems[0]}")
    return phi


def n_gon_rotation(n: int) -> CellularMap:
    x = _n_gon_disk(n)
    vmap = {f"v{i}": f"v{(i + 1) % n}" for i in range(n)}
    emap = {f"e{i}": DirectedEdge(f"e{(i + 1) % n}", 1) for i in range(n)}
    return _automorphism_from_cells(x, vmap, emap)


def n_gon_reflection(n: int) -> CellularMap:
    """Reflection of the n-gon fixing vertex v0."""
    x = _n_gon_disk(n)
    vmap = {f"v{i}": f"v{(n - i) % n}" for i in range(n)}
    emap = {f"e{i}": DirectedEdge(f"e{(n - 1 - i) % n}", -1) for i in range(n)}
    return _automorphism_from_cells(x, vmap, emap)


def _standard_actions() -> dict:
    def cyclic_rotation(n: int = 3):
        gen = n_gon_rotation(n)
        return gen.source, close_group(gen.source, [gen], limit=max(n + 1, 24))

    def dihedral(n: int = 3):
        rot = n_gon_rotation(n)
        refl = n_gon_reflection(n)
        return rot.source, close_group(rot.source, [rot, refl],
                                       limit=max(2 * n + 1, 24))

    def edge_flip():
        x = _interval()
        phi = CellularMap(x, x, {"u": "v", "v": "u"},
                          {"e": DirectedEdge("e", -1)}, {})
        return x, close_group(x, [phi])

    def face_swap():
        # The two faces carry the same attaching word, so they swap over the
        # identity on the 1-skeleton.
        x = _bigon_sphere()
        phi = CellularMap(
            x, x, {"u": "u", "v": "v"},
            {"e1": DirectedEdge("e1", 1), "e2": DirectedEdge("e2", 1)},
            {"f1": ("f2", FaceWitness(0, False)),
             "f2": ("f1", FaceWitness(0, False))})
        return x, close_group(x, [phi])

    def triangle_swap():
        x = _two_triangles()
        phi = _automorphism_from_cells(
            x,
            {"v0": "v0", "v1": "v1", "v2": "v3", "v3": "v2"},
            {"s": DirectedEdge("s", 1),
             "a1": DirectedEdge("b1", 1), "a2": DirectedEdge("b2", 1),
             "b1": DirectedEdge("a1", 1), "b2": DirectedEdge("a2", 1)})
        return x, close_group(x, [phi])

    return {
        "cyclic_rotation": cyclic_rotation,
        "dihedral": dihedral,
        "edge_flip": edge_flip,
        "face_swap": face_swap,
        "triangle_swap": triangle_swap,
    }


def standard(name: str, *parameters):
    """A documented standard complex or (complex, action) pair.

    Complexes: triangle_disk, n_gon_disk(n), bigon_sphere, torus,
    theta_graph, interval, tree(depth, arity), two_triangles, loop_disk,
    subdivided(name, k).  Actions: cyclic_rotation(n), dihedral(n),
    edge_flip, face_swap, triangle_swap.
    """
    if name in STANDARD_COMPLEXES:
        return STANDARD_COMPLEXES[name]()
    if name == "n_gon_disk":
        return _n_gon_disk(int(parameters[0]) if parameters else 3)
    if name == "tree":
        depth = int(parameters[0]) if parameters else 2
        arity = int(parameters[1]) if len(parameters) > 1 else 2
        return _tree(depth, arity)
    if name == "subdivided":
        if not parameters:
            raise UnknownName("subdivided needs a base complex name")
        base = standard(parameters[0])
        if isinstance(base, tuple):
            raise UnknownName("subdivided applies to complexes only")
        k = int(parameters[1]) if len(parameters) > 1 else 1
        for _ in range(k):
            base = barycentric_subdivision(base).complex
        return base
    actions = _standard_actions()
    if name in actions:
        return actions[name](*[int(p) for p in parameters])
    raise UnknownName(f"unknown standard name {name!r}")


# Expected invariants of the standard corpus, used by the acceptance tests.
EXPECTED_INVARIANTS = {
    "triangle_disk": {"chi": 1, "betti": (1, 0, 0), "torsion": (), "dr": "DR"},
    "bigon_sphere": {"chi": 2, "betti": (1, 0, 1), "torsion": (),
                     "dr": "NotDR"},
    "torus": {"chi": 0, "betti": (1, 2, 1), "torsion": (), "dr": "Unknown"},
    "theta_graph": {"chi": -1, "betti": (1, 2, 0), "torsion": ()},
    "interval": {"chi": 1, "betti": (1, 0, 0), "torsion": (), "dr": "DR"},
    "two_triangles": {"chi": 1, "betti": (1, 0, 0), "torsion": (),
                      "dr": "DR"},
    "loop_disk": {"chi": 1, "betti": (1, 0, 0), "torsion": (), "dr": "DR"},
}


# -- seeded random complexes ----------------------------------------------------------

def _random_any(rng: random.Random, max_faces: int,
                max_word_length: int) -> TwoComplex:
    n_vertices = rng.randint(1, 5)
    x = TwoComplex({f"v{i}" for i in range(n_vertices)}, {}, {})
    vs = x.sorted_vertices()
    n_edges = rng.randint(max(0, n_vertices - 1), n_vertices + 3)
    for i in range(n_edges):
        x.edges[f"e{i}"] = (rng.choice(vs), rng.choice(vs))
    n_faces = rng.randint(0, max_faces)
    count = 0
    for _attempt in range(n_faces * 8):
        if count >= n_faces or not x.edges:
            break
        start = rng.choice(vs)
        walk = []
        at = start
        for _step in range(max_word_length):
            options = x.darts_out_of(at)
            if not options:
                break
            d = rng.choice(options)
            walk.append(d)
            at = x.head(d)
            if at == start and walk:
                break
        if walk and at == start and len(walk) <= max_word_length:
            count += 1
            x.faces[f"f{count}"] = tuple(walk)
    return x


def _random_collapsible(rng: random.Random, max_faces: int,
                        max_word_length: int) -> TwoComplex:
    """Grow a complex by inverse collapsing: tree moves add a leaf edge,
    expansion moves add a fresh edge plus a face using it exactly once.
    Every complex built this way collapses to a point, so it is simply
    connected and diagrammatically reducible by construction."""
    x = TwoComplex({"v0"}, {}, {})
    n_moves = rng.randint(1, max_faces + 3)
    edge_count = 0
    face_count = 0
    for _move in range(n_moves):
        vs = x.sorted_vertices()
        grow_tree = face_count >= max_faces or rng.random() < 0.4
        if grow_tree:
            base = rng.choice(vs)
            w = f"v{len(x.vertices)}"
            x.vertices.add(w)
            x.edges[f"e{edge_count}"] = (base, w)
            edge_count += 1
            continue
        u = rng.choice(vs)
        w = rng.choice(vs)
        # Close the new edge u->w with an existing walk from w back to u.
        walk = None
        for _attempt in range(12):
            trial = []
            at = w
            for _step in range(max_word_length - 1):
                if at == u and (trial or u == w):
                    break
                options = x.darts_out_of(at)
                if not options:
                    break
                d = rng.choice(options)
                trial.append(d)
                at = x.head(d)
            if at == u and (trial or u == w):
                walk = trial
                break
        if walk is None:
            continue
        e_new = f"e{edge_count}"
        edge_count += 1
        x.edges[e_new] = (u, w)
        face_count += 1
        x.faces[f"f{face_count}"] = (DirectedEdge(e_new, 1),) + tuple(walk)
    return x


def random_complex(seed: int, max_faces: int = 6, max_word_length: int = 5,
                   require: str = "any") -> TwoComplex:
    """A deterministic pseudo-random complex.

    ``require="simply_connected_dr"`` generates by inverse collapsing, which
    guarantees an empty greedy core and certified simple connectivity (the
    collapsible class, a strict subset of the diagrammatically reducible
    complexes)."""
    rng = random.Random(seed)
    if require == "simply_connected_dr":
        return _random_collapsible(rng, max_faces, max_word_length)
    if require != "any":
        raise ValueError(f"unknown requirement {require!r}")
    return _random_any(rng, max_faces, max_word_length)
