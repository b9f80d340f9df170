"""Command line interface.

Exit codes: 0 success (or positive check), 1 semantic negative (not an
identity, failed check, no witness), 2 usage or parse error, 3 missing
ring capability.
"""

from __future__ import annotations

import argparse
import json
import sys
from itertools import permutations

from .comodule import (
    MultilinearPoly,
    comodule_rank,
    freeness_certificate,
    is_identity,
    matrix_dump,
    spanning_terms,
    unit_words,
)
from .epsilon import CoeffRing
from .expr import ExprSyntaxError, compile_grass, compile_trace_poly, compile_word_poly, parse
from .grassmann import GrassAlgebra, esgn
from .hull import all_sign_maps, idempotent_system_check, projected_commutation_check
from .rings import CapabilityError, ring_from_spec
from .supertrace import (
    NonMultilinearError,
    SuperTraceContext,
    TraceArgumentError,
    eval_trace_poly,
    trace_normalize,
    witness_search,
)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_CAPABILITY = 3


def _common_flags(sub):
    sub.add_argument("--ring", default="z", help="base ring: z, q or mod:<m>")
    sub.add_argument("--format", default="text", choices=("text", "json"))
    sub.add_argument("--seed", type=int, default=0, help="seed for randomized searches")
    sub.add_argument(
        "--truncated",
        action="store_true",
        help="work in the quotient killing all generator squares",
    )


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="epsgrass",
        description="exact computations in sign-twisted Grassmann algebras",
    )
    subs = ap.add_subparsers(dest="command", required=True)

    p = subs.add_parser("normalize", help="normal form of an algebra expression")
    p.add_argument("expr")
    _common_flags(p)

    p = subs.add_parser("check-identity", help="multilinear identity test")
    p.add_argument("expr")
    p.add_argument("--vars", type=int, required=True)
    _common_flags(p)

    p = subs.add_parser("comodule", help="sign module rank and freeness certificate")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--dump-matrix", action="store_true")
    _common_flags(p)

    p = subs.add_parser("signs", help="table of generalized signs of S_n")
    p.add_argument("--n", type=int, required=True)
    _common_flags(p)

    p = subs.add_parser("idempotents", help="idempotent system report")
    p.add_argument("--X", type=int, required=True, dest="x_size")
    _common_flags(p)

    p = subs.add_parser("trace-check", help="trace identity test and standard form")
    p.add_argument("expr")
    _common_flags(p)

    p = subs.add_parser("trace-witness", help="search for a nonzero matrix witness")
    p.add_argument("expr")
    p.add_argument("--max-n", type=int, default=3)
    _common_flags(p)

    return ap


def _emit(args, payload: dict, text_lines: list[str]) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _run(args) -> int:
    ring = ring_from_spec(args.ring)
    command = args.command

    if command == "normalize":
        algebra = GrassAlgebra(CoeffRing(ring), truncated=args.truncated)
        elem = compile_grass(parse(args.expr), algebra, vars_as_generators=True)
        payload = {
            "command": command,
            "ring": ring.name,
            "result": elem.render(),
            "details": {"expr": elem.render_expr(), "zero": elem.is_zero()},
        }
        _emit(args, payload, [elem.render()])
        return EXIT_OK

    if command == "check-identity":
        poly = compile_word_poly(parse(args.expr), ring)
        try:
            f = MultilinearPoly.from_word_poly(poly, args.vars)
        except ValueError as err:
            raise _Usage(str(err)) from None
        verdict = f.is_zero() or is_identity(f, truncated=args.truncated)
        payload = {
            "command": command,
            "ring": ring.name,
            "result": bool(verdict),
            "details": {"vars": args.vars},
        }
        _emit(args, payload, ["identity" if verdict else "not an identity"])
        return EXIT_OK if verdict else EXIT_NEGATIVE

    if command == "comodule":
        rank = comodule_rank(args.n, ring)
        free = freeness_certificate(args.n)
        basis = [t.render() for t in spanning_terms(args.n)]
        payload = {
            "command": command,
            "ring": ring.name,
            "result": rank,
            "details": {"free": free, "basis": basis, "n": args.n},
        }
        lines = [f"rank {rank}", f"free: {'yes' if free else 'no'}", "basis:"]
        lines.extend(f"  {b}" for b in basis)
        if args.dump_matrix:
            lines.append(matrix_dump(args.n))
        _emit(args, payload, lines)
        return EXIT_OK if free else EXIT_NEGATIVE

    if command == "signs":
        coeff = CoeffRing(ring)
        words = unit_words(args.n)
        table = []
        for sigma in sorted(permutations(range(1, args.n + 1))):
            table.append((sigma, esgn(coeff, words, sigma).render()))
        payload = {
            "command": command,
            "ring": ring.name,
            "result": [
                {"sigma": list(sigma), "esgn": value} for sigma, value in table
            ],
            "details": {"n": args.n},
        }
        _emit(
            args,
            payload,
            [f"{''.join(map(str, sigma))}: {value}" for sigma, value in table],
        )
        return EXIT_OK

    if command == "idempotents":
        coeff = CoeffRing(ring)
        indices = range(1, args.x_size + 1)
        complete = idempotent_system_check(coeff, indices)
        algebra = GrassAlgebra(coeff)
        commutation = all(
            projected_commutation_check(algebra, signs)
            for signs in all_sign_maps(indices)
        )
        ok = complete and commutation
        payload = {
            "command": command,
            "ring": ring.name,
            "result": bool(ok),
            "details": {
                "complete_system": complete,
                "projected_commutation": commutation,
                "count": 2 ** args.x_size,
            },
        }
        _emit(
            args,
            payload,
            [
                f"complete system: {'yes' if complete else 'no'}",
                f"projected commutation: {'yes' if commutation else 'no'}",
            ],
        )
        return EXIT_OK if ok else EXIT_NEGATIVE

    if command == "trace-check":
        f = compile_trace_poly(parse(args.expr), ring)
        form = trace_normalize(f)
        verdict = form.is_zero()
        payload = {
            "command": command,
            "ring": ring.name,
            "result": bool(verdict),
            "details": {"standard_form": form.render()},
        }
        _emit(
            args,
            payload,
            [
                "identity" if verdict else "not an identity",
                f"standard form: {form.render()}",
            ],
        )
        return EXIT_OK if verdict else EXIT_NEGATIVE

    if command == "trace-witness":
        f = compile_trace_poly(parse(args.expr), ring)
        form = trace_normalize(f)
        if form.is_zero():
            payload = {
                "command": command,
                "ring": ring.name,
                "result": None,
                "details": {"identity": True},
            }
            _emit(args, payload, ["identity; no witness exists"])
            return EXIT_NEGATIVE
        witness = witness_search(f, max_n=args.max_n, seed=args.seed)
        if witness is None:
            payload = {
                "command": command,
                "ring": ring.name,
                "result": None,
                "details": {"identity": False, "max_n": args.max_n},
            }
            _emit(args, payload, [f"no witness found up to size {args.max_n}"])
            return EXIT_NEGATIVE
        algebra = GrassAlgebra(CoeffRing(ring))
        ctx = SuperTraceContext(witness.size, algebra)
        value = eval_trace_poly(f, ctx, witness.matrices(ctx))
        payload = {
            "command": command,
            "ring": ring.name,
            "result": witness.render(),
            "details": {
                "size": witness.size,
                "nonzero": not value.is_zero(),
            },
        }
        _emit(args, payload, [f"witness: {witness.render()}"])
        return EXIT_OK

    raise AssertionError(command)


class _Usage(Exception):
    pass


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as err:
        return EXIT_USAGE if err.code else EXIT_OK
    try:
        return _run(args)
    except (ExprSyntaxError, NonMultilinearError, TraceArgumentError, _Usage, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except CapabilityError as err:
        print(f"capability error: {err}", file=sys.stderr)
        return EXIT_CAPABILITY


if __name__ == "__main__":
    sys.exit(main())
