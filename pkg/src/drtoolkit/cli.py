"""Command-line front end.

Exit codes: 0 success, 1 property refuted (failed verification, violated
expectation), 2 input error, 3 bounds exhausted.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import builders, certificates
from .actions import (close_group, equivariant_collapse, find_fixed_point,
                      fixed_subcomplex, has_inversions, orbits,
                      remove_inversions, verify_classifying_model)
from .complexes import (Cycle, Path, TwoComplex, barycentric_subdivision,
                        euler_characteristic, validate)
from .construct import equivariant_filling, orbit_graph
from .diagrams import fill_cycle
from .drcheck import decide_dr, greedy_core, sphere_search
from .errors import (BoundsExhausted, DrToolkitError, HashMismatch,
                     ParseError, ReplayFailure)
from .homology import homology
from .maps import is_near_immersion
from .textio import (parse_complex, parse_dart, parse_generators,
                     serialize_complex, serialize_generators)

EXIT_OK = 0
EXIT_REFUTED = 1
EXIT_INPUT = 2
EXIT_BOUNDS = 3


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(text)


def _load_complex(path: str) -> TwoComplex:
    x = parse_complex(_read(path))
    problems = validate(x)
    if problems:
        raise ParseError(f"{path}: invalid complex: {problems[0]}")
    return x


def _load_action(cpath: str, apath: str, limit: int):
    x = _load_complex(cpath)
    named = parse_generators(_read(apath), x)
    action = close_group(x, [phi for _n, phi in named], limit=limit)
    return x, named, action


def _parse_cycle(x: TwoComplex, text: str, start: str = None) -> Cycle:
    darts = tuple(parse_dart(t, "--cycle") for t in text.split())
    if not darts:
        if start is None:
            raise ParseError("empty cycle needs --start")
        return Cycle(start, ())
    return Cycle(x.tail(darts[0]), darts)


def _bounds_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--max-area", type=int, default=12)
    parser.add_argument("--max-perimeter", type=int, default=24)


def _emit_cert(args, cert: dict) -> None:
    if getattr(args, "cert", None):
        _write(args.cert, certificates.dump_certificate(cert))
        print(f"certificate written to {args.cert}")


def cmd_validate(args) -> int:
    x = parse_complex(_read(args.complex))
    problems = validate(x)
    for p in problems:
        print(p)
    if problems:
        return EXIT_REFUTED
    print("ok")
    return EXIT_OK


def cmd_euler(args) -> int:
    print(euler_characteristic(_load_complex(args.complex)))
    return EXIT_OK


def cmd_homology(args) -> int:
    profile = homology(_load_complex(args.complex))
    print(f"betti {profile.betti0} {profile.betti1} {profile.betti2}")
    print("torsion1 " + " ".join(str(d) for d in profile.torsion1))
    return EXIT_OK


def cmd_subdivide(args) -> int:
    sub = barycentric_subdivision(_load_complex(args.complex))
    text = serialize_complex(sub.complex)
    if args.output:
        _write(args.output, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_dr(args) -> int:
    x = _load_complex(args.complex)
    if args.dr_command == "core":
        result = greedy_core(x)
        if result.empties:
            print("empties")
            for e, f in result.collapse_order:
                print(f"collapse {e} {f}")
        else:
            print("core " + " ".join(result.core))
        return EXIT_OK
    if args.dr_command == "decide":
        verdict = decide_dr(x, args.max_area, args.max_perimeter,
                            args.sphere_bound)
        print(f"status {verdict.status}")
        for a in verdict.assumptions:
            print(f"assumption {a}")
        if verdict.reason:
            print(f"reason {verdict.reason}")
        if verdict.status != "Unknown":
            cert = certificates.emit_dr_certificate(
                x, verdict, {"max_area": args.max_area,
                             "max_perimeter": args.max_perimeter,
                             "sphere_bound": args.sphere_bound})
            _emit_cert(args, cert)
        if args.expect and args.expect != verdict.status:
            print(f"expected {args.expect}")
            return EXIT_REFUTED
        return EXIT_OK
    # sphere-search
    sphere = sphere_search(x, args.sphere_bound)
    if sphere is None:
        print("none")
        return EXIT_BOUNDS
    print(f"reduced sphere of area {sphere.area()}")
    cert = certificates.emit_sphere_certificate(
        x, sphere, {"sphere_bound": args.sphere_bound})
    _emit_cert(args, cert)
    return EXIT_OK


def cmd_fill(args) -> int:
    x = _load_complex(args.complex)
    cyc = _parse_cycle(x, args.cycle, args.start)
    filling = fill_cycle(x, cyc, args.max_area, args.max_perimeter)
    if filling is None:
        print("no filling: the move system saturated without reaching one")
        return EXIT_REFUTED
    print(f"area {filling.area()}")
    ok, _ = is_near_immersion(filling.map)
    print(f"near_immersion {'true' if ok else 'false'}")
    cert = certificates.emit_fill_certificate(
        x, cyc, filling, {"max_area": args.max_area,
                          "max_perimeter": args.max_perimeter})
    _emit_cert(args, cert)
    return EXIT_OK


def cmd_action(args) -> int:
    x, named, action = _load_action(args.complex, args.action,
                                    args.group_limit)
    if args.action_command == "check":
        print(f"order {action.order}")
        report = has_inversions(action)
        for element, cell, kind in report.entries:
            print(f"inversion element={element} cell={cell} kind={kind}")
        if not report.entries:
            print("no inversions")
        return EXIT_OK
    if args.action_command == "fixed":
        indices = ([int(t) for t in args.elements.split(",")]
                   if args.elements else None)
        fixed = fixed_subcomplex(action, indices)
        sys.stdout.write(serialize_complex(fixed) if fixed.vertices
                         else "# empty fixed subcomplex\n")
        return EXIT_OK
    if args.action_command == "orbits":
        for orbit in orbits(action):
            print(" ".join(f"{kind}:{name}" for kind, name in orbit))
        return EXIT_OK
    if args.action_command == "collapse":
        collapsed, log = equivariant_collapse(action)
        for step in log:
            print("step " + " ".join(f"{e}/{f}" for e, f in step))
        sys.stdout.write(serialize_complex(collapsed.complex))
        return EXIT_OK
    if args.action_command == "fixedpoint":
        inversion_free = (remove_inversions(action)
                          if has_inversions(action) else action)
        vertex = find_fixed_point(inversion_free, args.max_area,
                                  args.max_perimeter)
        print(f"fixed {vertex}")
        if has_inversions(action):
            print("note computed on the barycentric subdivision")
        else:
            _collapsed, log = equivariant_collapse(inversion_free)
            cert = certificates.emit_fixed_point_certificate(
                x, named, vertex, log,
                {"max_area": args.max_area,
                 "max_perimeter": args.max_perimeter})
            _emit_cert(args, cert)
        return EXIT_OK
    # classify
    report = verify_classifying_model(action, args.group_limit,
                                      args.max_area, args.max_perimeter)
    for sub, nonempty, status in report.entries:
        subgroup = ",".join(str(i) for i in sub)
        print(f"subgroup {subgroup} nonempty={'yes' if nonempty else 'no'}"
              f" fixed_set={status}")
    print(f"model {'ok' if report.all_ok else 'refuted'}")
    return EXIT_OK if report.all_ok else EXIT_REFUTED


def cmd_construct(args) -> int:
    x, named, action = _load_action(args.complex, args.action,
                                    args.group_limit)
    if args.construct_command == "orbit-graph":
        darts = tuple(parse_dart(t, "--path") for t in args.path.split())
        start = args.start if args.start else (
            x.tail(darts[0]) if darts else None)
        if start is None:
            raise ParseError("orbit-graph needs --start for an empty path")
        y0 = orbit_graph(action, Path(start, darts))
        sys.stdout.write(serialize_complex(y0))
        return EXIT_OK
    y0 = parse_complex(_read(args.y0))
    result = equivariant_filling(action, y0, args.max_area,
                                 args.max_perimeter)
    sys.stdout.write(serialize_complex(result.complex))
    for cell, origin in sorted(result.provenance.items()):
        print("# provenance", cell[0], cell[1], *origin)
    if result.symmetric_orbits:
        print("# stabilizer-symmetric orbits:",
              " ".join(str(i) for i in result.symmetric_orbits))
    return EXIT_OK


def cmd_gen(args) -> int:
    if args.gen_command == "standard":
        result = builders.standard(args.name, *args.parameters)
        if isinstance(result, tuple):
            x, action = result
            text = serialize_complex(x)
            gens = serialize_generators(
                [(f"g{i}", phi) for i, phi in
                 enumerate(action.elements[1:], start=1)])
            if args.action_output:
                _write(args.action_output, gens)
            if args.output:
                _write(args.output, text)
            else:
                sys.stdout.write(text)
                if not args.action_output:
                    sys.stdout.write(gens)
        else:
            text = serialize_complex(result)
            if args.output:
                _write(args.output, text)
            else:
                sys.stdout.write(text)
        return EXIT_OK
    if args.gen_command == "random":
        seed = args.seed
        if seed is None:
            seed = int(os.environ.get("DRTOOLKIT_SEED", "0"))
        x = builders.random_complex(seed, args.max_faces,
                                    args.max_word_length, args.require)
        text = serialize_complex(x)
        if args.output:
            _write(args.output, text)
        else:
            sys.stdout.write(text)
        return EXIT_OK
    # presentation
    x = builders.presentation_complex(args.generators.split(),
                                      args.relators)
    text = serialize_complex(x)
    if args.output:
        _write(args.output, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    cert = certificates.load_certificate(_read(args.certificate))
    x = _load_complex(args.complex)
    action_maps = None
    if args.action:
        action_maps = parse_generators(_read(args.action), x)
    try:
        steps = certificates.verify_certificate(cert, x, action_maps)
    except (HashMismatch, ReplayFailure) as failure:
        print(f"refuted: {failure}")
        return EXIT_REFUTED
    for step in steps:
        print(step)
    print("verified")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="drtoolkit",
        description="Combinatorial 2-complexes: diagrammatic reducibility,"
                    " fillings, group actions, fixed points.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check complex invariants")
    p.add_argument("complex")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("euler", help="Euler characteristic")
    p.add_argument("complex")
    p.set_defaults(func=cmd_euler)

    p = sub.add_parser("homology", help="Betti numbers and torsion")
    p.add_argument("complex")
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("subdivide", help="barycentric subdivision")
    p.add_argument("complex")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_subdivide)

    p = sub.add_parser("dr", help="diagrammatic reducibility")
    dr_sub = p.add_subparsers(dest="dr_command", required=True)
    for name in ("core", "decide", "sphere-search"):
        q = dr_sub.add_parser(name)
        q.add_argument("complex")
        _bounds_args(q)
        q.add_argument("--sphere-bound", type=int, default=4)
        q.add_argument("--cert")
        if name == "decide":
            q.add_argument("--expect", choices=["DR", "NotDR", "Unknown"])
        q.set_defaults(func=cmd_dr)

    p = sub.add_parser("fill", help="search a disk diagram filling a cycle")
    p.add_argument("complex")
    p.add_argument("--cycle", required=True,
                   help="darts like 'a+ b+ a- b-'")
    p.add_argument("--start", help="base vertex for the empty cycle")
    _bounds_args(p)
    p.add_argument("--cert")
    p.set_defaults(func=cmd_fill)

    p = sub.add_parser("action", help="group actions")
    action_sub = p.add_subparsers(dest="action_command", required=True)
    for name in ("check", "fixed", "orbits", "collapse", "fixedpoint",
                 "classify"):
        q = action_sub.add_parser(name)
        q.add_argument("complex")
        q.add_argument("action")
        q.add_argument("--group-limit", type=int, default=24)
        _bounds_args(q)
        if name == "fixed":
            q.add_argument("--elements", help="comma-separated indices")
        if name == "fixedpoint":
            q.add_argument("--cert")
        q.set_defaults(func=cmd_action)

    p = sub.add_parser("construct", help="equivariant constructions")
    con_sub = p.add_subparsers(dest="construct_command", required=True)
    q = con_sub.add_parser("orbit-graph")
    q.add_argument("complex")
    q.add_argument("action")
    q.add_argument("--path", required=True, help="darts like 'e1+ e2-'")
    q.add_argument("--start")
    q.add_argument("--group-limit", type=int, default=24)
    _bounds_args(q)
    q.set_defaults(func=cmd_construct)
    q = con_sub.add_parser("equivariant-filling")
    q.add_argument("complex")
    q.add_argument("action")
    q.add_argument("--y0", required=True, help="1-complex file")
    q.add_argument("--group-limit", type=int, default=24)
    _bounds_args(q)
    q.set_defaults(func=cmd_construct)

    p = sub.add_parser("gen", help="generate corpus complexes")
    gen_sub = p.add_subparsers(dest="gen_command", required=True)
    q = gen_sub.add_parser("standard")
    q.add_argument("name")
    q.add_argument("parameters", nargs="*")
    q.add_argument("-o", "--output")
    q.add_argument("--action-output")
    q.set_defaults(func=cmd_gen)
    q = gen_sub.add_parser("random")
    q.add_argument("--seed", type=int)
    q.add_argument("--max-faces", type=int, default=6)
    q.add_argument("--max-word-length", type=int, default=5)
    q.add_argument("--require", choices=["any", "simply_connected_dr"],
                   default="any")
    q.add_argument("-o", "--output")
    q.set_defaults(func=cmd_gen)
    q = gen_sub.add_parser("presentation")
    q.add_argument("--generators", required=True)
    q.add_argument("--relators", nargs="+", required=True)
    q.add_argument("-o", "--output")
    q.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="replay a certificate")
    p.add_argument("certificate")
    p.add_argument("complex")
    p.add_argument("action", nargs="?")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as stop:
        return EXIT_INPUT if stop.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except BoundsExhausted as stop:
        print(f"bounds exhausted: {stop}", file=sys.stderr)
        return EXIT_BOUNDS
    except (ParseError, FileNotFoundError, ValueError) as bad:
        print(f"input error: {bad}", file=sys.stderr)
        return EXIT_INPUT
    except DrToolkitError as bad:
        print(f"error: {bad}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
