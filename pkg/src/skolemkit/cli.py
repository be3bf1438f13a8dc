"""Command-line front end.

Exit codes: 0 success, 1 domain error (the operation refused or failed), 2 usage error.
Sequences are read and written in comma form ("1,1,4,2,3,2,4,3"); compressed
notation is accepted only by the decode subcommand.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import builders, designs, notation, search, spectrum
from .seqcore import SequenceSpec, SlotSequence, common_pairs, validate

DEFAULT_SEED = 0


class UsageError(Exception):
    pass


def _emit(args, payload: dict, text_lines) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def cmd_build(args) -> int:
    if args.source == "any":
        seq, recipe = builders.any_langford(args.d, args.n)
    else:
        recipe = builders.LangfordRecipe(args.source, args.d, args.n)
        seq = builders.build_langford(recipe)
    if args.append_ones:
        seq = builders.append_ones(seq, args.append_ones)
    rev = builders.reverse_common_report(seq)
    _emit(args, {"seq": list(seq.slots), "source": recipe.source.value, "d": args.d, "n": args.n,
                 "reverse_common": rev},
          [str(seq), f"source={recipe.source.value}", f"reverse_common={rev}"])
    return 0


def cmd_verify(args) -> int:
    spec = SequenceSpec.parse(args.spec)
    rep = validate(SlotSequence.parse(args.seq), spec)
    _emit(args, {"spec": str(spec), "valid": rep.valid, "violations": rep.violations}, [str(rep)])
    return 0 if rep.valid else 1


def cmd_intersect(args) -> int:
    count, shared = common_pairs(SlotSequence.parse(args.seq1), SlotSequence.parse(args.seq2))
    _emit(args, {"common": count, "pairs": [list(x) for x in shared]},
          [f"common={count}"] + [f"{v}@{a},{b}" for v, a, b in shared])
    return 0


def cmd_realize(args) -> int:
    r = spectrum.realize(args.n, args.p, seed=args.seed)
    lines = [str(r.first), str(r.second), f"common={len(r.common)}"]
    if args.trace:
        lines += r.trace.lines()
    _emit(args, r.to_json(), lines)
    return 0


def cmd_spectrum(args) -> int:
    if args.exhaustive:
        spec = SequenceSpec.parse(f"{args.family}:{args.n}")
        found = sorted(spectrum.exhaustive_spectrum(spec))
    else:
        if args.family != "skolem":
            raise UsageError("the necessary spectrum is only defined for skolem; use --exhaustive")
        found = sorted(spectrum.necessary_spectrum(args.n))
    _emit(args, {"n": args.n, "family": args.family, "spectrum": found}, [",".join(map(str, found))])
    return 0


def cmd_enumerate(args) -> int:
    seqs = search.enumerate_sequences(SequenceSpec.parse(args.spec), cap=args.cap)
    if args.count:
        _emit(args, {"spec": args.spec, "count": len(seqs)}, [str(len(seqs))])
    else:
        _emit(args, {"spec": args.spec, "count": len(seqs), "sequences": [list(s.slots) for s in seqs]},
              [str(s) for s in seqs])
    return 0


def cmd_decode(args) -> int:
    if args.record:
        dec = notation.decode_record(notation.parse_record(args.record))
        _emit(args, {"first": list(dec.first.slots), "second": list(dec.second.slots), "common": dec.common,
                     "stated": dec.record.p, "ok": dec.ok},
              [str(dec.first), str(dec.second), f"common={dec.common} stated={dec.record.p}"])
        return 0 if dec.ok else 1
    if args.tokens is None or args.length is None:
        raise UsageError("decode needs TOKENS and --length, or --record")
    holes = [int(x) for x in args.holes.split(",")] if args.holes else []
    seq = notation.decode(args.tokens, args.length, holes)
    _emit(args, {"seq": list(seq.slots)}, [str(seq)])
    return 0


def cmd_design(args) -> int:
    v, lam = args.v, args.lam
    if lam == 1:
        n = (v - 1) // 6
        if v != 6 * n + 1:
            raise UsageError("lambda 1 builds CTS(6n+1) from Heffter blocks")
        d = designs.Design(v, 1, "CTS", designs.heffter_blocks(designs.base_sequence(n, seed=args.seed + 6),
                                                               args.form))
    else:
        n = (v - 1) // 6
        if lam == 2:
            if args.i is None:
                raise UsageError("lambda 2 needs --i (number of repeated base blocks)")
            blocks = n + 1 if v % 6 == 3 else n
            target = (2 * blocks - 2 * args.i, args.i)
        elif lam == 3:
            target = designs.FineStructure.from_short(3, n, (args.t, args.s)).c
        elif lam == 4:
            target = designs.FineStructure.from_short(4, n, (args.t, args.s, args.u)).c
        else:
            raise UsageError("lambda must be 1, 2, 3 or 4")
        d = designs.fine_cts(v, lam, target)
    if args.kind != "CTS":
        d = designs.expand(d, args.kind)
    rep = designs.validate_coverage(d)
    payload = d.to_json()
    payload["valid"] = rep.valid
    fs = designs.extract_fine_structure(d)
    lines = [" ".join("{" + ",".join(map(str, b.points)) + "}" for b in d.blocks),
             "fine_structure=" + ",".join(map(str, fs.c)), str(rep)]
    _emit(args, payload, lines)
    return 0 if rep.valid else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="skolemkit", description="Skolem sequences, their intersections and triple systems.")
    ap.add_argument("--json", action="store_true", help="emit JSON instead of text")
    ap.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for the search-based steps")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build a Langford sequence from a direct construction")
    p.add_argument("--source", default="any", choices=["any"] + [s.value for s in builders.Source])
    p.add_argument("-d", type=int, required=True, help="defect")
    p.add_argument("-n", type=int, required=True, help="order")
    p.add_argument("--append-ones", choices=["front", "back"])
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", help="validate a sequence against a family spec")
    p.add_argument("--spec", required=True, help="e.g. skolem:4, hooked:3, langford:5:3")
    p.add_argument("seq")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("intersect", help="pairs in common between two sequences")
    p.add_argument("seq1")
    p.add_argument("seq2")
    p.set_defaults(func=cmd_intersect)

    p = sub.add_parser("realize", help="two Skolem sequences of order n with exactly p common pairs")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-p", type=int, required=True)
    p.add_argument("--trace", action="store_true", help="print the realization trace")
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("spectrum", help="intersection spectrum of order n")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--family", default="skolem", help="skolem or hooked")
    p.add_argument("--exhaustive", action="store_true", help="compute by enumerating all sequences")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("enumerate", help="list every sequence of a spec")
    p.add_argument("--spec", required=True)
    p.add_argument("--count", action="store_true")
    p.add_argument("--cap", type=int, default=search.DEFAULT_CAP)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("decode", help="decode compressed notation")
    p.add_argument("tokens", nargs="?")
    p.add_argument("--length", type=int)
    p.add_argument("--holes", help="comma list of declared hole positions")
    p.add_argument("--record", help="a full record line n=..;p=..;first=..;second=..")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("design", help="cyclic triple system with a given fine structure")
    p.add_argument("--v", type=int, required=True)
    p.add_argument("--lambda", dest="lam", type=int, default=1)
    p.add_argument("--i", type=int, help="lambda 2: repeated base blocks")
    p.add_argument("--t", type=int, default=0, help="blocks repeated twice (lambda 3, 4)")
    p.add_argument("--s", type=int, default=0, help="blocks repeated three times (lambda 3, 4)")
    p.add_argument("--u", type=int, default=0, help="blocks repeated four times (lambda 4)")
    p.add_argument("--kind", default="CTS", choices=designs.KINDS)
    p.add_argument("--form", default="offset", choices=["offset", "mixed"], help="lambda 1 block form")
    p.set_defaults(func=cmd_design)
    return ap


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, RuntimeError) as exc:
        # domain failures: NotInSpectrum, NoSuchOrder, OutsideRegion, RecipeOutOfRange, Unresolved, ...
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
