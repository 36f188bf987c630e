"""Command-line interface.

Exit codes: 0 success / equal, 1 distinct (or failed verification),
2 usage or malformed input, 3 not semisimple.
"""

from __future__ import annotations

import argparse
import json
import sys

from .chords import SYMMETRIES, enumerate_diagrams, format_diagram, parse_diagram
from .errors import ChordInvError, NotSemisimple
from .invariants import DISTINCT, compare_algebras, invariant_vector, theorem_bound
from .killing import casimir_theta, is_semisimple, killing_matrix
from .lie_algebra import (
    build_classical,
    change_basis,
    direct_sum,
    dump_algebra,
    load_algebra,
    random_invertible,
    validate_structure,
)
from .linalg_exact import format_rational
from .pictures import evaluate_picture, load_picture, reduce_picture
from .tensor_eval import evaluate_diagram, evaluate_float

EXIT_OK, EXIT_DISTINCT, EXIT_USAGE, EXIT_NOT_SEMISIMPLE = 0, 1, 2, 3
DEFAULT_SEED = 20240611


def _out(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def cmd_new(args) -> int:
    _out(dump_algebra(build_classical(args.family, args.param)))
    return EXIT_OK


def cmd_sum(args) -> int:
    _out(dump_algebra(direct_sum(load_algebra(args.a), load_algebra(args.b))))
    return EXIT_OK


def cmd_transform(args) -> int:
    sc = load_algebra(args.algebra)
    _out(dump_algebra(change_basis(sc, random_invertible(sc.n, args.seed))))
    return EXIT_OK


def cmd_validate(args) -> int:
    rep = validate_structure(load_algebra(args.algebra))
    _out(json.dumps(rep.to_json()))
    if not rep.empty:
        sys.stderr.write(
            f"error: malformed-input: {len(rep.antisymmetry)} antisymmetry and {len(rep.jacobi)} Jacobi violations\n"
        )
        return EXIT_USAGE
    return EXIT_OK


def cmd_killing(args) -> int:
    _out(json.dumps(killing_matrix(load_algebra(args.algebra)).to_json()))
    return EXIT_OK


def cmd_theta(args) -> int:
    _out(json.dumps(casimir_theta(load_algebra(args.algebra)).theta.to_json()))
    return EXIT_OK


def cmd_semisimple(args) -> int:
    ok = is_semisimple(load_algebra(args.algebra))
    _out("true" if ok else "false")
    return EXIT_OK if ok else EXIT_NOT_SEMISIMPLE


def cmd_diagrams(args) -> int:
    _out("\n".join(format_diagram(d) for d in enumerate_diagrams(args.chords, args.symmetry)))
    return EXIT_OK


def cmd_eval(args) -> int:
    d = parse_diagram(args.diagram, canonical=False)
    sc = load_algebra(args.algebra)
    kd = casimir_theta(sc)
    if args.mode == "exact":
        _out(format_rational(evaluate_diagram(d, sc, kd)))
    else:
        _out(repr(evaluate_float(d, sc, kd)))
    return EXIT_OK


def cmd_invariants(args) -> int:
    sc = load_algebra(args.algebra)
    vec = invariant_vector(sc, args.max_chords, mode=args.mode, jobs=args.jobs)
    sys.stdout.write(vec.to_csv())
    return EXIT_OK


def cmd_compare(args) -> int:
    a, b = load_algebra(args.a), load_algebra(args.b)
    v = compare_algebras(a, b, args.max_chords, prescreen=args.prescreen)
    _out(str(v))
    return EXIT_DISTINCT if v.kind == DISTINCT else EXIT_OK


def cmd_reduce(args) -> int:
    p = load_picture(args.picture)
    comb = reduce_picture(p)
    _out(str(comb))
    if args.verify:
        sc = load_algebra(args.verify)
        kd = casimir_theta(sc)
        lhs = evaluate_picture(p, sc, kd)
        rhs = comb.evaluate(sc, kd)
        if lhs != rhs:
            sys.stderr.write(f"error: verification-failed: picture={format_rational(lhs)} reduced={format_rational(rhs)}\n")
            return EXIT_DISTINCT
        _out(f"verified {format_rational(lhs)}")
    return EXIT_OK


def cmd_bound(args) -> int:
    k = theorem_bound(args.dim)
    _out(format_rational(k))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="chordinv", description="Chord-diagram invariants of semisimple Lie algebras.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("new", help="write structure constants of a classical algebra")
    p.add_argument("--family", required=True, choices=["sl", "so", "sp", "special_linear", "orthogonal", "symplectic"])
    p.add_argument("--param", required=True, type=int)
    p.set_defaults(func=cmd_new)

    p = sub.add_parser("sum", help="direct sum of two algebras")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_sum)

    p = sub.add_parser("transform", help="apply a seeded random basis change")
    p.add_argument("algebra")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_transform)

    for name, fn in (("validate", cmd_validate), ("killing", cmd_killing), ("theta", cmd_theta), ("semisimple", cmd_semisimple)):
        p = sub.add_parser(name)
        p.add_argument("algebra")
        p.set_defaults(func=fn)

    p = sub.add_parser("diagrams", help="list chord diagrams")
    p.add_argument("--chords", required=True, type=int)
    p.add_argument("--symmetry", choices=SYMMETRIES, default="rotation")
    p.set_defaults(func=cmd_diagrams)

    p = sub.add_parser("eval", help="evaluate one chord diagram")
    p.add_argument("--algebra", required=True)
    p.add_argument("--diagram", required=True)
    p.add_argument("--mode", choices=["exact", "float"], default="exact")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("invariants", help="CSV of all invariants up to a chord count")
    p.add_argument("--algebra", required=True)
    p.add_argument("--max-chords", required=True, type=int)
    p.add_argument("--mode", choices=["exact", "float"], default="exact")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("compare", help="compare two algebras")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--max-chords", required=True, type=int)
    p.add_argument("--prescreen", action="store_true", help="scan in floating point first")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("reduce", help="reduce a closed picture to chord diagrams")
    p.add_argument("--picture", required=True)
    p.add_argument("--verify", metavar="ALGEBRA")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("bound", help="chord-count bound k(n)")
    p.add_argument("--dim", required=True, type=int)
    p.set_defaults(func=cmd_bound)
    return ap


def run(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NotSemisimple as exc:
        sys.stderr.write(f"error: {exc.code}: {exc}\n")
        return EXIT_NOT_SEMISIMPLE
    except ChordInvError as exc:
        sys.stderr.write(f"error: {exc.code}: {exc}\n")
        return EXIT_USAGE
    except (OSError, ValueError) as exc:
        sys.stderr.write(f"error: malformed-input: {exc}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
