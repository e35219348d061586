"""Command line interface: ``ginlab <subcommand> ...``; every subcommand prints JSON."""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from pathlib import Path
from typing import List, Optional

from .asymptotics import CIType, ci_asymptotic_multiplier_ideal, multiplier_ideal
from .cache import GinCache
from .gin import DEFAULT_HEIGHT, GinError, gin, gin_sequence
from .poly import Field, ParseError, RingSpec, parse_polynomial
from .polytope import complement_volume, newton_polyhedron
from .staircase import MonomialIdeal, ek_betti, hilbert_function, pure_powers
from .verify import DEFAULT_FIELD, IdealSpec, make_ci, verify_ci

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


class IdealFileError(ValueError):
    pass


def _split_top(text: str):
    """Split at commas, yielding (piece, offset)."""
    start = 0
    for m in re.finditer(",", text + ","):
        yield text[start:m.start()], start
        start = m.end()


def parse_ideal_text(text: str, source: str = "<string>") -> IdealSpec:
    """Ideal file: ``ring: Q[x1,x2]`` / ``ring: F32003[...]``, ``gens: f, g, ...``, optional ``type: 2,3``.

    A line without a ``key:`` prefix continues the previous key.
    """
    fields = {}
    # per key: (offset in joined text, line number, column of that offset)
    positions = {}
    key = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        m = re.match(r"\s*(ring|gens|type)\s*:", line)
        if m:
            key = m.group(1)
            if key in fields:
                raise IdealFileError(f"{source}:{lineno}:1: duplicate '{key}' entry")
            fields[key], positions[key], col0 = "", [], m.end()
        elif key is None:
            raise IdealFileError(f"{source}:{lineno}:1: expected 'ring:' header")
        else:
            fields[key] += " "
            col0 = 0
        positions[key].append((len(fields[key]), lineno, col0))
        fields[key] += line[col0:]

    def locate(k: str, offset: int):
        start, lineno, col0 = max(p for p in positions[k] if p[0] <= offset)
        return lineno, col0 + (offset - start) + 1

    if "ring" not in fields:
        raise IdealFileError(f"{source}:1:1: missing 'ring:' line")
    rm = re.fullmatch(r"\s*(Q|F\d+)\s*\[([^\]]*)\]\s*", fields["ring"])
    if not rm:
        raise IdealFileError(f"{source}:{positions['ring'][0][1]}: bad ring '{fields['ring'].strip()}'")
    try:
        ring = RingSpec(tuple(v.strip() for v in rm.group(2).split(",") if v.strip()), Field.parse(rm.group(1)))
    except ValueError as exc:
        raise IdealFileError(f"{source}:{positions['ring'][0][1]}: {exc}") from None
    if "gens" not in fields:
        raise IdealFileError(f"{source}: missing 'gens:' line")
    gens = []
    for piece, off in _split_top(fields["gens"]):
        if not piece.strip():
            continue
        try:
            f = parse_polynomial(piece, ring)
        except ParseError as exc:
            line, col = locate("gens", off + exc.pos)
            raise IdealFileError(f"{source}:{line}:{col}: {exc.args[0]}") from None
        lead = off + len(piece) - len(piece.lstrip())
        if f.is_zero():
            line, col = locate("gens", lead)
            raise IdealFileError(f"{source}:{line}:{col}: zero generator '{piece.strip()}'")
        if not f.is_homogeneous():
            line, col = locate("gens", lead)
            raise IdealFileError(f"{source}:{line}:{col}: generator '{piece.strip()}' is not homogeneous")
        gens.append(f)
    declared = None
    if "type" in fields:
        try:
            declared = CIType.parse(fields["type"], ring.nvars)
        except ValueError as exc:
            raise IdealFileError(f"{source}:{positions['type'][0][1]}: {exc}") from None
    return IdealSpec(ring, tuple(gens), declared)


def load_ideal_file(path) -> IdealSpec:
    path = Path(path)
    return parse_ideal_text(path.read_text(encoding="utf-8"), str(path))


def _with_field(spec: IdealSpec, field: Optional[str]) -> IdealSpec:
    if not field:
        return spec
    return spec.over(Field.parse(field))


def _fmt(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _ideal_json(J: MonomialIdeal, names) -> dict:
    return {
        "nvars": J.nvars,
        "variables": list(names),
        "generators": [list(g) for g in J.gens],
        "text": J.to_string(names),
    }


def _cache(args) -> Optional[GinCache]:
    return None if args.no_cache else GinCache()


def _gin_entry(spec: IdealSpec, power: int, seed: int, cache):
    gens = list(spec.generators)
    hit = cache.get(gens, power, seed, DEFAULT_HEIGHT) if cache else None
    if hit is None:
        hit = gin(gens, seed, power=power)
        if cache:
            cache.put(gens, power, seed, DEFAULT_HEIGHT, *hit)
    return hit


def cmd_gin(args):
    spec = _with_field(load_ideal_file(args.ideal), args.field)
    J, cert = _gin_entry(spec, args.power, args.seed, _cache(args))
    return {
        "ring": str(spec.ring),
        "power": args.power,
        "seed": args.seed,
        "ideal": _ideal_json(J, spec.ring.variables),
        "certificate": cert.to_json(),
    }, EXIT_OK


def cmd_gin_seq(args):
    spec = _with_field(load_ideal_file(args.ideal), args.field)
    seq = gin_sequence(spec.generators, args.nmax, args.seed, cache=_cache(args))
    return {
        "ring": str(spec.ring),
        "seed": args.seed,
        "entries": [
            {"n": n, "ideal": _ideal_json(J, spec.ring.variables), "p": list(pure_powers(J)),
             "certificate": c.to_json()}
            for n, (J, c) in sorted(seq.entries.items())
        ],
        "containment": [{"i": i, "j": j, "holds": ok} for (i, j), ok in sorted(seq.containment.items())],
        "graded_system": seq.is_graded_system(),
    }, EXIT_OK


def cmd_verify_ci(args):
    if args.ideal:
        spec = _with_field(load_ideal_file(args.ideal), args.field)
        if args.type:
            spec = IdealSpec(spec.ring, spec.generators, CIType.parse(args.type, spec.ring.nvars))
        if spec.declared_type is None:
            raise ValueError("ideal file has no 'type:' line and --type was not given")
    else:
        if not args.type or not args.vars:
            raise ValueError("verify-ci needs --ideal or both --type and --vars")
        field = Field.parse(args.field) if args.field else DEFAULT_FIELD
        spec = make_ci(CIType.parse(args.type, args.vars), args.style, args.seed, field)
    report = verify_ci(spec, args.nmax, args.seed, replicate=args.replicate, cache=_cache(args))
    return report.to_json(), EXIT_OK if report.overall else EXIT_FAIL


def cmd_polytope(args):
    spec = _with_field(load_ideal_file(args.ideal), args.field)
    J, _ = _gin_entry(spec, args.power, args.seed, _cache(args))
    P = newton_polyhedron(J)
    out = {"ring": str(spec.ring), "power": args.power, "polyhedron": P.to_json(halfspace=args.halfspace)}
    try:
        out["complement_volume"] = _fmt(complement_volume(P))
    except ValueError:
        out["complement_volume"] = None
    return out, EXIT_OK


def cmd_multiplier(args):
    c = Fraction(args.c)
    if args.type:
        t = CIType.parse(args.type, args.vars)
        res = ci_asymptotic_multiplier_ideal(t, c, args.bound)
        names = [f"x{i + 1}" for i in range(t.m)]
        source = {"type": list(t.degrees), "vars": t.m}
    else:
        if not args.ideal or not args.power:
            raise ValueError("multiplier needs --type or --ideal with --power")
        spec = _with_field(load_ideal_file(args.ideal), args.field)
        J, _ = _gin_entry(spec, args.power, args.seed, _cache(args))
        res = multiplier_ideal(J, c / args.power, args.bound)
        names = spec.ring.variables
        source = {"ideal": str(args.ideal), "power": args.power}
    gens = [MonomialIdeal([g], len(g)).to_string(names)[1:-1] for g in res.ideal.gens]
    return {
        "source": source,
        "c": _fmt(c),
        "bound": args.bound,
        "generators": gens,
        "exponents": [list(g) for g in res.ideal.gens],
        "complete": res.complete,
    }, EXIT_OK


def cmd_betti(args):
    spec = _with_field(load_ideal_file(args.ideal), args.field)
    J, _ = _gin_entry(spec, args.power, args.seed, _cache(args))
    table = ek_betti(J)
    return {
        "ring": str(spec.ring),
        "power": args.power,
        "ideal": _ideal_json(J, spec.ring.variables),
        "betti": [{"i": i, "j": j, "value": v} for (i, j), v in table.items()],
    }, EXIT_OK


def cmd_hilbert(args):
    spec = _with_field(load_ideal_file(args.ideal), args.field)
    J, _ = _gin_entry(spec, args.power, args.seed, _cache(args))
    return {
        "ring": str(spec.ring),
        "power": args.power,
        "ideal": _ideal_json(J, spec.ring.variables),
        "hilbert_function": [str(v) for v in hilbert_function(J, args.dmax)],
    }, EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ginlab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, ideal_required=True):
        p.add_argument("--ideal", required=ideal_required, help="ideal file")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--field", help="q or fp:P (overrides the ideal file)")
        p.add_argument("--out", help="write JSON here instead of stdout")
        p.add_argument("--no-cache", action="store_true", help="bypass the result cache")

    p = sub.add_parser("gin", help="gin(I^N)")
    common(p)
    p.add_argument("--power", type=int, default=1)
    p.set_defaults(func=cmd_gin)

    p = sub.add_parser("gin-seq", help="gin(I^n) for n = 1..N")
    common(p)
    p.add_argument("--nmax", type=int, required=True)
    p.set_defaults(func=cmd_gin_seq)

    p = sub.add_parser("verify-ci", help="check the limiting-polytope predictions")
    common(p, ideal_required=False)
    p.add_argument("--type", help="degrees d1,...,dr")
    p.add_argument("--vars", type=int)
    p.add_argument("--style", choices=["diagonal", "generic"], default="generic")
    p.add_argument("--nmax", type=int, default=4)
    p.add_argument("--replicate", type=int, default=2, help="entries recomputed over Q")
    p.set_defaults(func=cmd_verify_ci)

    p = sub.add_parser("polytope", help="Newton polyhedron of gin(I^N)")
    common(p)
    p.add_argument("--power", type=int, default=1)
    p.add_argument("--halfspace", action="store_true")
    p.set_defaults(func=cmd_polytope)

    p = sub.add_parser("multiplier", help="asymptotic multiplier ideal")
    common(p, ideal_required=False)
    p.add_argument("--power", type=int)
    p.add_argument("--type")
    p.add_argument("--vars", type=int)
    p.add_argument("-c", required=True)
    p.add_argument("--bound", type=int, required=True)
    p.set_defaults(func=cmd_multiplier)

    p = sub.add_parser("betti", help="Eliahou-Kervaire Betti table of gin(I^N)")
    common(p)
    p.add_argument("--power", type=int, default=1)
    p.set_defaults(func=cmd_betti)

    p = sub.add_parser("hilbert", help="Hilbert function of R/gin(I^N)")
    common(p)
    p.add_argument("--power", type=int, default=1)
    p.add_argument("--dmax", type=int, required=True)
    p.set_defaults(func=cmd_hilbert)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    try:
        result, code = args.func(args)
    except (ValueError, GinError, OSError, KeyError) as exc:
        print(f"ginlab: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    text = json.dumps(result, indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
