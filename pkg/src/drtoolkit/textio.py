"""Text interchange formats.

Complexes (one declaration per line, ``#`` starts a comment, ids match
``[A-Za-z0-9_.]+``)::

    vertex <id>
    edge <id> <tail> <head>
    face <id> <edge><+|-> ...

Actions list generators, each followed by its cell maps::

    generator <name>
    vmap <v> <v>
    emap <e> <e><+|->
    fmap <f> <f> rot=<k> refl=<0|1>

Diagrams extend the complex format with ``rotation <vertex> <dart> ...``
lines (outgoing darts in cyclic order), ``outer <dart> ...`` for the boundary
walk of a disk, and ``walk <face> <dart> ...`` recording each face's traced
boundary walk.
"""

from __future__ import annotations

import hashlib
import re

from .complexes import DirectedEdge, TwoComplex
from .errors import ParseError
from .maps import CellularMap, FaceWitness

ID_PATTERN = re.compile(r"[A-Za-z0-9_.]+\Z")


def _check_id(token: str, where: str) -> str:
    if not ID_PATTERN.match(token):
        raise ParseError(f"{where}: bad id {token!r}")
    return token


def parse_dart(token: str, where: str) -> DirectedEdge:
    if len(token) < 2 or token[-1] not in "+-":
        raise ParseError(f"{where}: bad dart token {token!r}")
    return DirectedEdge(_check_id(token[:-1], where),
                        1 if token[-1] == "+" else -1)


def format_dart(d: DirectedEdge) -> str:
    return d.token()


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def parse_complex(text: str) -> TwoComplex:
    x = TwoComplex()
    for lineno, tokens in _lines(text):
        where = f"line {lineno}"
        kind, args = tokens[0], tokens[1:]
        if kind == "vertex":
            if len(args) != 1:
                raise ParseError(f"{where}: vertex takes one id")
            v = _check_id(args[0], where)
            if v in x.vertices:
                raise ParseError(f"{where}: duplicate vertex {v}")
            x.vertices.add(v)
        elif kind == "edge":
            if len(args) != 3:
                raise ParseError(f"{where}: edge takes id tail head")
            e = _check_id(args[0], where)
            if e in x.edges:
                raise ParseError(f"{where}: duplicate edge {e}")
            x.edges[e] = (_check_id(args[1], where), _check_id(args[2], where))
        elif kind == "face":
            if len(args) < 2:
                raise ParseError(f"{where}: face takes id and a walk")
            f = _check_id(args[0], where)
            if f in x.faces:
                raise ParseError(f"{where}: duplicate face {f}")
            x.faces[f] = tuple(parse_dart(t, where) for t in args[1:])
        else:
            raise ParseError(f"{where}: unknown declaration {kind!r}")
    return x


def serialize_complex(x: TwoComplex) -> str:
    out = []
    for v in x.sorted_vertices():
        out.append(f"vertex {v}")
    for e in x.sorted_edges():
        t, h = x.edges[e]
        out.append(f"edge {e} {t} {h}")
    for f in x.sorted_faces():
        word = " ".join(format_dart(d) for d in x.faces[f])
        out.append(f"face {f} {word}")
    return "\n".join(out) + "\n"


def complex_sha256(x: TwoComplex) -> str:
    return hashlib.sha256(serialize_complex(x).encode()).hexdigest()


# -- cellular maps -----------------------------------------------------------

def serialize_map(phi: CellularMap) -> str:
    """The cell maps of ``phi`` in vmap/emap/fmap lines (no complexes)."""
    out = []
    for v in sorted(phi.vertex_map):
        out.append(f"vmap {v} {phi.vertex_map[v]}")
    for e in sorted(phi.edge_map):
        out.append(f"emap {e} {format_dart(phi.edge_map[e])}")
    for f in sorted(phi.face_map):
        g, w = phi.face_map[f]
        out.append(f"fmap {f} {g} rot={w[0]} refl={1 if w[1] else 0}")
    return "\n".join(out) + "\n"


def parse_map_lines(lines, source: TwoComplex, target: TwoComplex,
                    where: str = "map") -> CellularMap:
    phi = CellularMap(source, target)
    for tokens in lines:
        kind, args = tokens[0], tokens[1:]
        if kind == "vmap":
            if len(args) != 2:
                raise ParseError(f"{where}: vmap takes two vertices")
            phi.vertex_map[args[0]] = args[1]
        elif kind == "emap":
            if len(args) != 2:
                raise ParseError(f"{where}: emap takes an edge and a dart")
            phi.edge_map[args[0]] = parse_dart(args[1], where)
        elif kind == "fmap":
            if len(args) != 4:
                raise ParseError(f"{where}: fmap takes f g rot= refl=")
            m_rot = re.match(r"rot=(-?\d+)\Z", args[2])
            m_refl = re.match(r"refl=([01])\Z", args[3])
            if not m_rot or not m_refl:
                raise ParseError(f"{where}: bad fmap witness")
            phi.face_map[args[0]] = (args[1],
                                     FaceWitness(int(m_rot.group(1)),
                                                 m_refl.group(1) == "1"))
        else:
            raise ParseError(f"{where}: unknown map line {kind!r}")
    return phi


def parse_map(text: str, source: TwoComplex, target: TwoComplex) -> CellularMap:
    return parse_map_lines((t for _, t in _lines(text)), source, target)


# -- diagrams ------------------------------------------------------------------

def serialize_diagram(d) -> str:
    """Complex text plus rotation/walk/outer lines."""
    out = [serialize_complex(d.complex).rstrip("\n")]
    for v in d.complex.sorted_vertices():
        tokens = " ".join(format_dart(t) for t in d.rotation[v])
        out.append(f"rotation {v} {tokens}".rstrip())
    for f in sorted(d.face_walks):
        tokens = " ".join(format_dart(t) for t in d.face_walks[f])
        out.append(f"walk {f} {tokens}")
    if d.outer is not None:
        tokens = " ".join(format_dart(t) for t in d.outer)
        out.append(f"outer {tokens}".rstrip())
    return "\n".join(out) + "\n"


def parse_diagram(text: str):
    """Parse a serialized diagram; validation is left to the caller."""
    from .diagrams import Diagram
    complex_lines = []
    rotation = {}
    face_walks = {}
    outer = None
    for lineno, tokens in _lines(text):
        where = f"line {lineno}"
        kind = tokens[0]
        if kind in ("vertex", "edge", "face"):
            complex_lines.append(" ".join(tokens))
        elif kind == "rotation":
            if len(tokens) < 2:
                raise ParseError(f"{where}: rotation takes a vertex")
            rotation[tokens[1]] = tuple(parse_dart(t, where)
                                        for t in tokens[2:])
        elif kind == "walk":
            if len(tokens) < 3:
                raise ParseError(f"{where}: walk takes a face and darts")
            face_walks[tokens[1]] = tuple(parse_dart(t, where)
                                          for t in tokens[2:])
        elif kind == "outer":
            outer = tuple(parse_dart(t, where) for t in tokens[1:])
        else:
            raise ParseError(f"{where}: unknown declaration {kind!r}")
    x = parse_complex("\n".join(complex_lines))
    return Diagram(x, rotation, outer, face_walks)


# -- actions -------------------------------------------------------------------

def serialize_generators(named_maps) -> str:
    """Serialize (name, CellularMap) pairs as an action file."""
    out = []
    for name, phi in named_maps:
        out.append(f"generator {name}")
        out.append(serialize_map(phi).rstrip("\n"))
    return "\n".join(out) + "\n"


def parse_generators(text: str, x: TwoComplex) -> list:
    """Parse an action file into (name, CellularMap) pairs on ``x``."""
    groups = []
    current = None
    for lineno, tokens in _lines(text):
        if tokens[0] == "generator":
            if len(tokens) != 2:
                raise ParseError(f"line {lineno}: generator takes a name")
            current = (tokens[1], [])
            groups.append(current)
        else:
            if current is None:
                raise ParseError(f"line {lineno}: map line before generator")
            current[1].append(tokens)
    return [(name, parse_map_lines(lines, x, x, where=f"generator {name}"))
            for name, lines in groups]


def action_sha256(text_or_maps) -> str:
    if isinstance(text_or_maps, str):
        data = text_or_maps
    else:
        data = serialize_generators(text_or_maps)
    return hashlib.sha256(data.encode()).hexdigest()
