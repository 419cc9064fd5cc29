"""``tat`` command-line front end.

Exit codes: 0 holds / ok, 1 property fails, 2 input error, 3 the sampling
oracle and the exact checker disagree.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import checker
from .formats import (
    FormatError,
    parse_graph,
    parse_lengths,
    parse_nielsen,
    parse_rational,
    serialize_graph,
    serialize_nielsen,
    to_dot,
)
from .nielsen import delta_schedule, distance_function, is_filtering, split_for_filtering
from .ribbon import (
    AmbiguousDirection,
    DirectedPoint,
    GraphError,
    MetricPoint,
    RibbonGraph,
    edge_of,
    validate,
)
from .surgery import shrink_boundary
from .walk import (
    WalkTrace,
    boundary_mixed_safe_walk,
    boundary_safe_walk,
    mixed_safe_walk,
    safe_walk,
)

OK, FAILS, INPUT_ERROR, DISAGREE = 0, 1, 2, 3


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc


def _load_graph(path: str) -> RibbonGraph:
    g = parse_graph(_read(path))
    report = validate(g)
    if not report:
        raise InputError("invalid graph:\n  " + "\n  ".join(report.violations))
    return g


def _point(g: RibbonGraph, p: MetricPoint) -> str:
    return g.format_point(p)


def _rat(text: str) -> Fraction:
    return parse_rational(text)


# -- commands -------------------------------------------------------------------


def cmd_info(args) -> int:
    g = _load_graph(args.file)
    for level in range(g.depth + 1):
        eu = g.euler_genus(level)
        print(f"level {level}: V {len(g.vertices(level))} E {len(g.edges(level))} "
              f"chi {eu.chi} genus {eu.genus} boundary {eu.boundary_count}")
        lengths = ", ".join(str(g.face_length(f)) for f in g.faces(level))
        print(f"  faces: {lengths}")
        comps = g.components(level)
        print("  components: " + ", ".join(g.edge_names[c] for c in sorted(comps)))
        pieces = g.components(level, exact=True)
        print("  pieces: " + ", ".join(g.edge_names[c] for c in sorted(pieces)))
        if level in g.delta or level == 0:
            vals = ", ".join(f"{g.edge_names[c]}={g.delta_at(level, c)}" for c in sorted(comps))
            print(f"  delta: {vals}")
    for c in g.relative:
        print(f"relative {c.name} level {c.level} length {g.face_length(c.darts)}")
    return OK


def _reproduces(g: RibbonGraph, w: checker.Witness, mode: str, ell: Fraction) -> bool:
    """Rerun a symbolic witness with the pointwise walker."""
    p = w.start
    e = edge_of(p.dart)
    L = g.lengths[e]
    t = p.offset if p.dart == 2 * e else L - p.offset
    try:
        if w.clause in ("2", "III"):
            if mode == "mixed":
                end, need = boundary_mixed_safe_walk(g, p).endpoint, g.levels[e]
            else:
                end, need = boundary_safe_walk(g, p, ell).endpoint, 0
            return not checker._in_relative(g, end, need)
        if mode == "mixed":
            a = mixed_safe_walk(g, DirectedPoint(2 * e, t)).endpoint
            b = mixed_safe_walk(g, DirectedPoint(2 * e + 1, L - t)).endpoint
            return a != b or g.depth_of(a) != g.levels[e]
        a = safe_walk(g, DirectedPoint(2 * e, t), ell).endpoint
        b = safe_walk(g, DirectedPoint(2 * e + 1, L - t), ell).endpoint
        return a != b
    except AmbiguousDirection:
        return False


def cmd_check(args) -> int:
    g = _load_graph(args.file)
    ell = _rat(args.ell)
    verdict = checker.check(g, args.mode, ell)
    if verdict.holds:
        print(f"{args.mode} property holds")
    else:
        w = verdict.witnesses[0]
        other = f" omega -> {_point(g, w.omega_end)}" if w.omega_end is not None else ""
        print(f"{args.mode} property fails: clause {w.clause} at {_point(g, w.start)} "
              f"(gamma -> {_point(g, w.gamma_end)}{other}); {len(verdict.witnesses)} failing pieces")
    if args.oracle:
        oracle = checker.sampling_oracle(g, args.oracle, args.seed, args.mode, ell)
        print(f"oracle: {len(oracle.witnesses)} witnesses in {args.oracle} samples per edge")
        if not oracle.holds and verdict.holds:
            print("oracle disagreement: sampled witness against an exact pass", file=sys.stderr)
            return DISAGREE
        if not verdict.holds and not _reproduces(g, verdict.witnesses[0], args.mode, ell):
            print("oracle disagreement: exact witness does not reproduce", file=sys.stderr)
            return DISAGREE
    return OK if verdict.holds else FAILS


def _print_trace(g: RibbonGraph, tr: WalkTrace) -> None:
    for k, leg in enumerate(tr.legs):
        darts = " ".join(g.dart_label(d) for d in leg.darts)
        print(f"leg {k} level {leg.level} length {leg.length}: {darts}")
    print(f"endpoint {_point(g, tr.endpoint)} depth {g.depth_of(tr.endpoint)}")
    print(f"order {tr.order}")
    print(f"total length {tr.total_length}")


def _parse_start(g: RibbonGraph, text: str) -> MetricPoint:
    label, sep, off = text.partition(":")
    if not sep:
        raise InputError("--start expects <dart>:<p>/<q>")
    try:
        d = g.dart(label)
    except GraphError as exc:
        raise InputError(str(exc)) from exc
    return MetricPoint(d, _rat(off))


def cmd_walk(args) -> int:
    g = _load_graph(args.file)
    p = _parse_start(g, args.start)
    if args.mixed == (args.length is not None):
        raise InputError("give exactly one of --length and --mixed")
    if args.boundary:
        if args.mixed:
            tr = boundary_mixed_safe_walk(g, p)
        else:
            tr = boundary_safe_walk(g, p, _rat(args.length), args.level)
    elif args.mixed:
        tr = mixed_safe_walk(g, DirectedPoint(p.dart, p.offset))
    else:
        tr = safe_walk(g, DirectedPoint(p.dart, p.offset), _rat(args.length), args.level)
    _print_trace(g, tr)
    return OK


def cmd_screw(args) -> int:
    g = _load_graph(args.file)
    entries = checker.screw_numbers(g)
    if not entries:
        print("no screw numbers (depth 0)")
    for s in entries:
        pieces = ",".join(g.edge_names[c] for c in s.pieces)
        print(f"level {s.level} pieces {pieces} face {g.dart_label(s.face[0])} "
              f"length {g.face_length(s.face)} screw {s.value}")
    return OK


def cmd_rotation(args) -> int:
    g = _load_graph(args.file)
    if not g.relative:
        print("no relative circles")
    for c in g.relative:
        r = checker.boundary_rotation(g, c.name)
        print(f"circle {c.name} length {g.face_length(c.darts)} return {r.orbit_length} "
              f"rotation {r.rotation}")
    return OK


def cmd_shrink(args) -> int:
    g = _load_graph(args.file)
    try:
        g.circle(args.circle)
    except KeyError:
        raise InputError(f"unknown relative circle {args.circle}") from None
    out = shrink_boundary(g, args.circle, _rat(args.epsilon), orbit=not args.no_orbit,
                          require_trivalent=not args.allow_nontrivalent)
    text = serialize_graph(out)
    if args.output:
        Path(args.output).write_text(text)
        print(f"wrote {args.output}: circle {args.circle} length "
              f"{out.face_length(out.circle(args.circle).darts)}")
    else:
        sys.stdout.write(text)
    return OK


def cmd_nielsen(args) -> int:
    G = parse_nielsen(_read(args.file))
    if args.check:
        D = distance_function(G)
        print("distance: " + ", ".join(f"{v}={D[v]}" for v in D))
        ok, witness = is_filtering(G, D)
        print("filtering" if ok else f"not filtering: {witness}")
        return OK if ok else FAILS
    if args.modify:
        out = serialize_nielsen(split_for_filtering(G))
        if args.output:
            Path(args.output).write_text(out)
        else:
            sys.stdout.write(out)
        return OK
    lengths = parse_lengths(_read(args.schedule))
    sched = delta_schedule(G, lengths)
    for aid, cand in sched.candidates.items():
        print(f"annuli {aid} candidate {cand}")
    for level, delta in sched.deltas.items():
        print(f"level {level} delta {delta}")
    for aid, target in sched.targets.items():
        print(f"shrink {aid} boundary to {target}")
    if sched.missing:
        print("no boundary length for: " + ", ".join(sched.missing))
    return OK


def cmd_export(args) -> int:
    g = _load_graph(args.file)
    sys.stdout.write(to_dot(g))
    return OK


# -- entry point ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tat", description="Exact tete-a-tete graph toolkit.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", help="per-level counts, faces, components and deltas")
    p.add_argument("file")
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("check", help="decide the pure, relative or mixed property")
    p.add_argument("file")
    p.add_argument("--mode", choices=["pure", "relative", "mixed"], default="mixed")
    p.add_argument("--ell", default="1", help="walk length for pure/relative modes")
    p.add_argument("--oracle", type=int, default=0, metavar="N",
                   help="also sample N random points per edge")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("walk", help="run one safe walk")
    p.add_argument("file")
    p.add_argument("--start", required=True, help="<dart>:<p>/<q>")
    p.add_argument("--length")
    p.add_argument("--level", type=int, default=0)
    p.add_argument("--mixed", action="store_true")
    p.add_argument("--boundary", action="store_true")
    p.set_defaults(func=cmd_walk)

    p = sub.add_parser("screw", help="screw numbers per orbit of pieces")
    p.add_argument("file")
    p.set_defaults(func=cmd_screw)

    p = sub.add_parser("rotation", help="boundary rotations of the relative circles")
    p.add_argument("file")
    p.set_defaults(func=cmd_rotation)

    p = sub.add_parser("shrink", help="shorten a relative circle")
    p.add_argument("file")
    p.add_argument("--circle", required=True)
    p.add_argument("--epsilon", required=True)
    p.add_argument("-o", "--output")
    p.add_argument("--no-orbit", action="store_true", help="rewrite only the named circle")
    p.add_argument("--allow-nontrivalent", action="store_true")
    p.set_defaults(func=cmd_shrink)

    p = sub.add_parser("nielsen", help="Nielsen graph checks and schedules")
    p.add_argument("file")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--check", action="store_true")
    g.add_argument("--modify", action="store_true")
    g.add_argument("--schedule", metavar="LENGTHS")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_nielsen)

    p = sub.add_parser("export", help="DOT text export")
    p.add_argument("file")
    p.add_argument("--dot", action="store_true", required=True)
    p.set_defaults(func=cmd_export)
    return ap


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return INPUT_ERROR if exc.code else OK
    try:
        return args.func(args)
    except (InputError, FormatError, GraphError, AmbiguousDirection, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
