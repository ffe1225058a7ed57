"""Replayable certificates.

A certificate is a JSON document embedding the input hash, the claim, and a
witness that a verifier re-executes against the referenced input.  The
verifier never trusts the producer: it uses only primitive operations
(validation, free edges, collapsing, diagram tracing, local injectivity),
not the decision procedures that created the certificate.
"""

from __future__ import annotations

import json

from .complexes import (Cycle, DirectedEdge, TwoComplex, collapse,
                        euler_characteristic, free_edges, is_connected,
                        tree_path)
from .diagrams import (DiagramInX, cyclic_rotation_of, validate_diagram)
from .errors import HashMismatch, ReplayFailure
from .maps import compose, identity_map, is_near_immersion
from .textio import (action_sha256, complex_sha256, format_dart,
                     parse_dart, parse_diagram, parse_map,
                     serialize_diagram, serialize_map)

CERT_FORMAT = "drtoolkit-certificate/1"


def _cycle_json(cyc: Cycle) -> dict:
    return {"start": cyc.start, "darts": [format_dart(d) for d in cyc.darts]}


def _cycle_from_json(data: dict) -> Cycle:
    return Cycle(data["start"],
                 tuple(parse_dart(t, "cycle") for t in data["darts"]))


def _diagram_json(filling: DiagramInX) -> dict:
    return {"diagram": serialize_diagram(filling.diagram),
            "map": serialize_map(filling.map)}


def _sc_witness(sc) -> dict:
    return {
        "tree": sorted(sc.tree),
        "loops": [{"edge": e, "cycle": _cycle_json(loop),
                   **_diagram_json(diagram)}
                  for e, loop, diagram in sc.loops],
    }


def make_certificate(kind: str, x: TwoComplex, claim: dict, witness: dict,
                     bounds: dict, action_maps=None) -> dict:
    cert = {
        "format": CERT_FORMAT,
        "kind": kind,
        "input_sha256": complex_sha256(x),
        "bounds": dict(bounds),
        "claim": claim,
        "witness": witness,
    }
    if action_maps is not None:
        cert["action_sha256"] = action_sha256(action_maps)
    return cert


def emit_dr_certificate(x: TwoComplex, verdict, bounds: dict) -> dict:
    if verdict.status == "DR":
        witness = {
            "collapse_order": [[e, f] for e, f in
                               verdict.certificate.collapse_order],
            "simple_connectivity": _sc_witness(verdict.simple_connectivity),
        }
        return make_certificate("dr", x, {"status": "DR"}, witness, bounds)
    if verdict.status == "NotDR" and hasattr(verdict.certificate, "core"):
        witness = {
            "core": list(verdict.certificate.core),
            "simple_connectivity": _sc_witness(verdict.simple_connectivity),
        }
        return make_certificate("not-dr-core", x, {"status": "NotDR"},
                                witness, bounds)
    if verdict.status == "NotDR":
        witness = {"sphere": _diagram_json(verdict.certificate)}
        return make_certificate("not-dr-sphere", x, {"status": "NotDR"},
                                witness, bounds)
    raise ValueError("no certificate for an Unknown verdict")


def emit_sphere_certificate(x: TwoComplex, sphere: DiagramInX,
                            bounds: dict) -> dict:
    return make_certificate("not-dr-sphere", x, {"status": "NotDR"},
                            {"sphere": _diagram_json(sphere)}, bounds)


def emit_fill_certificate(x: TwoComplex, cyc: Cycle, filling: DiagramInX,
                          bounds: dict) -> dict:
    claim = {"cycle": _cycle_json(cyc), "area": filling.area()}
    return make_certificate("fill", x, claim, _diagram_json(filling), bounds)


def emit_fixed_point_certificate(x: TwoComplex, action_maps, vertex: str,
                                 collapse_log: list, bounds: dict) -> dict:
    witness = {"orbit_collapses": [[[e, f] for e, f in step]
                                   for step in collapse_log]}
    return make_certificate("fixed-point", x, {"vertex": vertex}, witness,
                            bounds, action_maps=action_maps)


# -- verification ----------------------------------------------------------------

def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ReplayFailure(message)


def _verify_filling(x: TwoComplex, data: dict, boundary: Cycle,
                    where: str) -> DiagramInX:
    """Parse and re-validate an embedded filling; the boundary image must be
    the given cycle up to rotation."""
    diagram = parse_diagram(data["diagram"])
    problems = validate_diagram(diagram)
    _require(not problems, f"{where}: diagram invalid: {problems[:1]}")
    the_map = parse_map(data["map"], diagram.complex, x)
    problems = the_map.validate()
    _require(not problems, f"{where}: map invalid: {problems[:1]}")
    filling = DiagramInX(diagram, the_map)
    _require(diagram.outer is not None, f"{where}: not a disk diagram")
    image = the_map.apply_walk(diagram.outer)
    if boundary.darts or image:
        _require(cyclic_rotation_of(image, boundary.darts) is not None,
                 f"{where}: boundary image does not match the cycle")
    else:
        _require(the_map.vertex_map[min(diagram.complex.vertices)]
                 == boundary.start,
                 f"{where}: trivial diagram at the wrong vertex")
    return filling


def _verify_simple_connectivity(x: TwoComplex, witness: dict) -> None:
    tree = set(witness["tree"])
    _require(tree <= set(x.edges), "tree contains unknown edges")
    _require(len(tree) == len(x.vertices) - 1,
             "tree edge count is not |V| - 1")
    reached = {min(x.vertices)}
    frontier = [min(x.vertices)]
    while frontier:
        nxt = []
        for v in frontier:
            for d in x.darts_out_of(v):
                if d.edge in tree and x.head(d) not in reached:
                    reached.add(x.head(d))
                    nxt.append(x.head(d))
        frontier = nxt
    _require(len(reached) == len(x.vertices), "tree does not span")
    non_tree = [e for e in x.sorted_edges() if e not in tree]
    loops = {entry["edge"]: entry for entry in witness["loops"]}
    _require(sorted(loops) == non_tree,
             "loops do not cover the non-tree edges")
    root = min(x.vertices)
    for e in non_tree:
        t, h = x.edges[e]
        expected = (tree_path(x, tree, root, t) + (DirectedEdge(e, 1),)
                    + tree_path(x, tree, h, root))
        loop = Cycle(root, expected)
        _verify_filling(x, loops[e], loop, f"loop at {e}")


def _verify_collapse_order(x: TwoComplex, order: list) -> TwoComplex:
    current = x
    for step, (e, f) in enumerate(order):
        if (e, f) not in free_edges(current):
            raise ReplayFailure(f"collapse step {step}: ({e}, {f}) is not"
                                " a free pair")
        current = collapse(current, e, f)
    return current


def _close_generators(maps: list) -> list:
    """Small closure of automorphisms under composition (verifier-local)."""
    if not maps:
        return []
    identity = identity_map(maps[0].source)
    elements = [identity]
    keys = {identity.key()}
    frontier = [identity]
    while frontier:
        nxt = []
        for phi in frontier:
            for gen in maps:
                prod = compose(phi, gen)
                if prod.key() not in keys:
                    if len(elements) > 4096:
                        raise ReplayFailure("group closure too large")
                    keys.add(prod.key())
                    elements.append(prod)
                    nxt.append(prod)
        frontier = nxt
    return elements


def _local_tree_center(x: TwoComplex) -> str:
    vertices = set(x.vertices)
    edges = dict(x.edges)
    while len(vertices) > 2:
        degree = {v: 0 for v in vertices}
        for t, h in edges.values():
            degree[t] += 1
            degree[h] += 1
        leaves = {v for v, deg in degree.items() if deg <= 1}
        if not leaves:
            raise ReplayFailure("collapsed complex is not a tree")
        vertices -= leaves
        edges = {e: ends for e, ends in edges.items()
                 if ends[0] in vertices and ends[1] in vertices}
    return min(vertices)


def verify_certificate(cert: dict, x: TwoComplex, action_maps=None) -> list:
    """Re-execute a certificate witness against its input.

    Returns a list of human-readable verification steps; raises
    ``HashMismatch`` or ``ReplayFailure`` with the failing step otherwise.
    Structurally broken witnesses (missing fields, unparsable embedded
    documents) are replay failures too.
    """
    from .errors import ParseError
    try:
        return _verify_certificate(cert, x, action_maps)
    except (ParseError, KeyError, TypeError, ValueError) as broken:
        raise ReplayFailure(f"malformed witness: {broken}")


def _verify_certificate(cert: dict, x: TwoComplex, action_maps=None) -> list:
    steps = []
    if cert.get("format") != CERT_FORMAT:
        raise ReplayFailure(f"unknown certificate format {cert.get('format')!r}")
    if cert.get("input_sha256") != complex_sha256(x):
        raise HashMismatch("certificate references a different complex")
    steps.append("input hash matches")
    if "action_sha256" in cert:
        if action_maps is None:
            raise ReplayFailure("certificate needs the action input")
        if cert["action_sha256"] != action_sha256(action_maps):
            raise HashMismatch("certificate references a different action")
        steps.append("action hash matches")
    kind = cert.get("kind")
    witness = cert.get("witness", {})
    claim = cert.get("claim", {})

    if kind == "dr":
        _verify_simple_connectivity(x, witness["simple_connectivity"])
        steps.append("simple connectivity loops replayed")
        final = _verify_collapse_order(x, witness["collapse_order"])
        _require(not final.faces, "collapse order leaves faces behind")
        steps.append(f"collapse order of length"
                     f" {len(witness['collapse_order'])} replayed")
        return steps

    if kind == "not-dr-core":
        _verify_simple_connectivity(x, witness["simple_connectivity"])
        steps.append("simple connectivity loops replayed")
        core = sorted(set(witness["core"]))
        _require(bool(core), "core is empty")
        _require(all(f in x.faces for f in core), "core face missing")
        _require(not free_edges(x, core),
                 "core has a free edge relative to itself")
        steps.append(f"face collection of size {len(core)} has no free edge")
        return steps

    if kind == "not-dr-sphere":
        diagram = parse_diagram(witness["sphere"]["diagram"])
        _require(diagram.outer is None, "witness is not spherical")
        problems = validate_diagram(diagram)
        _require(not problems, f"sphere invalid: {problems[:1]}")
        the_map = parse_map(witness["sphere"]["map"], diagram.complex, x)
        problems = the_map.validate()
        _require(not problems, f"sphere map invalid: {problems[:1]}")
        ok, fold = is_near_immersion(the_map)
        _require(ok, f"sphere map is not a near-immersion (fold {fold})")
        steps.append(f"reduced spherical diagram of area"
                     f" {len(diagram.complex.faces)} re-validated")
        return steps

    if kind == "fill":
        cyc = _cycle_from_json(claim["cycle"])
        filling = _verify_filling(x, witness, cyc, "filling")
        _require(filling.area() == claim["area"],
                 "area claim does not match the diagram")
        steps.append(f"filling of area {filling.area()} re-validated")
        return steps

    if kind == "fixed-point":
        _require(action_maps is not None, "fixed-point needs the action")
        elements = _close_generators([phi for _name, phi in action_maps])
        steps.append(f"group closure of order {len(elements)} rebuilt")
        current = x
        for si, step in enumerate(witness["orbit_collapses"]):
            pairs = {(e, f) for e, f in step}
            free = set(free_edges(current))
            _require(pairs <= free,
                     f"step {si}: a pair is not free")
            faces_of = dict()
            for e, f in sorted(pairs):
                _require(f not in faces_of,
                         f"step {si}: face {f} collapsed twice")
                faces_of[f] = e
            for phi in elements:
                for e, f in pairs:
                    image = (phi.edge_map[e].edge, phi.face_map[f][0])
                    _require(image in pairs,
                             f"step {si}: not closed under the action")
            current = TwoComplex(
                set(current.vertices),
                {e: ends for e, ends in current.edges.items()
                 if e not in {ee for ee, _ in pairs}},
                {f: w for f, w in current.faces.items()
                 if f not in faces_of})
        _require(not current.faces, "collapse log leaves 2-cells")
        _require(is_connected(current)
                 and euler_characteristic(current) == 1,
                 "collapsed complex is not a tree")
        steps.append(f"{len(witness['orbit_collapses'])} orbit collapses"
                     " replayed to a tree")
        center = _local_tree_center(current)
        _require(center == claim["vertex"],
                 f"claimed vertex {claim['vertex']} is not the tree center")
        for phi in elements:
            _require(phi.vertex_map[claim["vertex"]] == claim["vertex"],
                     "claimed vertex is moved by the action")
        steps.append(f"vertex {claim['vertex']} is the center and is fixed")
        return steps

    raise ReplayFailure(f"unknown certificate kind {kind!r}")


def dump_certificate(cert: dict) -> str:
    return json.dumps(cert, indent=2, sort_keys=True) + "\n"


def load_certificate(text: str) -> dict:
    return json.loads(text)
