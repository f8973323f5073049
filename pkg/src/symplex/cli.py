"""``symplex`` command line: JSON in, JSON out.

Exit codes: 0 success, 1 domain failure (a check came out false, a
factorization left a residual, ...), 2 usage or input-format error.
Diagnostics go to stderr; SYMPLEX_LOG=error|info|debug sets their level.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys

from . import jsonio
from .errors import Simplicial, SymplexError, UnknownLemmaId
from .factorization import factor
from .geometry import (
    cone_of,
    interior_monoid,
    is_c_divisible,
    pyramid_split,
    shipped_polarized_example,
    validate_polarized,
)
from .lab import CHECKS, run_suite
from .rings import BaseRing, scalars
from .symplectic import IndexSet, delta_conjugate, random_word

log = logging.getLogger("symplex")

USAGE_ERROR = 2
DOMAIN_FAILURE = 1


class UsageError(Exception):
    pass


def _read(args) -> object:
    if args.input in (None, "-"):
        text = sys.stdin.read()
    else:
        try:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {args.input}: {exc}") from exc
    if not text.strip():
        raise UsageError("empty input document")
    return jsonio.loads(text)


def _write(args, doc):
    text = jsonio.dumps(doc)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- subcommands --------------------------------------------------------------


def cmd_mult(args) -> int:
    """Product of a JSON array of ring elements or of matrices, left to right."""
    doc = _read(args)
    items = doc.get("factors") if isinstance(doc, dict) else doc
    if not isinstance(items, list) or not items:
        raise jsonio.FormatError("mult expects a non-empty array (or {\"factors\": [...]})")
    if all(isinstance(x, dict) and "entries" in x for x in items):
        mats = [jsonio.matrix_from_json(x) for x in items]
        acc = mats[0]
        for m in mats[1:]:
            acc = acc @ m
        _write(args, jsonio.matrix_to_json(acc))
    else:
        elems = [jsonio.element_from_json(x) for x in items]
        acc = elems[0]
        for e in elems[1:]:
            acc = acc * e
        _write(args, jsonio.element_to_json(acc))
    return 0


def cmd_sp_check(args) -> int:
    M = jsonio.matrix_from_json(_read(args))
    ok = M.is_symplectic()
    _write(args, {"symplectic": ok})
    return 0 if ok else DOMAIN_FAILURE


def cmd_factor(args) -> int:
    M = jsonio.matrix_from_json(_read(args))
    res = factor(M, local_prime=args.local_prime)
    log.info("factored with %d tokens, %d pivot steps", res.stats["token_count"], res.stats["pivot_steps"])
    _write(args, jsonio.factorization_to_json(res))
    return 0 if res.residual.is_identity() else DOMAIN_FAILURE


def cmd_conj_delta(args) -> int:
    """Input: {"matrix": ..., "I": [...], "t": ring element, "direction": +-1}."""
    doc = _read(args)
    try:
        M = jsonio.matrix_from_json(doc["matrix"])
        I = IndexSet.of(M.n, doc["I"])
        t = jsonio.element_from_json(doc["t"], M.ring)
        direction = int(doc.get("direction", 1))
    except KeyError as exc:
        raise jsonio.FormatError(f"conj-delta input misses {exc}") from exc
    _write(args, jsonio.matrix_to_json(delta_conjugate(I, M, t, direction)))
    return 0


def cmd_verify(args) -> int:
    report = run_suite(args.lemma or None, args.seed)
    for key, rep in report["results"].items():
        log.info("%s: %s (%d instances)", key, "pass" if rep["pass"] else "FAIL", rep["instances_run"])
    _write(args, report)
    return 0 if report["pass"] else DOMAIN_FAILURE


def cmd_monoid_info(args) -> int:
    M = jsonio.monoid_from_json(_read(args))
    bound = args.bound if args.bound is not None else 4
    C = cone_of(M)
    doc = {
        "monoid": jsonio.monoid_to_json(M),
        "rank": M.rank,
        "denominator": M.denominator,
        "positive": M.is_positive,
        "cone": jsonio.cone_to_json(C),
        "pointed": C.is_pointed,
        "interior": jsonio.monoid_to_json(interior_monoid(M, bound)),
        "bound": bound,
    }
    if args.c is not None:
        rep = is_c_divisible(M, args.c, bound)
        doc["c_divisible"] = {
            "c": args.c,
            "holds_on_sample": rep.holds_on_sample,
            "failures": [[str(x) for x in v] for v in rep.failures],
            "truncation_failures": [[str(x) for x in v] for v in rep.truncation_failures],
        }
    _write(args, doc)
    return 0


def cmd_polarized_check(args) -> int:
    if args.example:
        T = shipped_polarized_example()
    else:
        T = jsonio.polarized_from_json(_read(args))
    if args.bound is not None:
        from dataclasses import replace

        T = replace(T, generation_bound=args.bound)
    rep = validate_polarized(T)
    _write(args, {"triple": jsonio.polarized_to_json(T), "axioms": rep.summary(), "pass": rep.passed})
    return 0 if rep.passed else DOMAIN_FAILURE


def cmd_pyramid_split(args) -> int:
    C = jsonio.cone_from_json(_read(args))
    try:
        split, code = pyramid_split(C), 0
    except Simplicial as exc:
        log.error("%s", exc)
        split, code = exc.split, DOMAIN_FAILURE
    _write(
        args,
        {
            "delta": jsonio.cone_to_json(split.delta),
            "gamma": jsonio.cone_to_json(split.gamma),
            "apex": list(split.apex),
            "face": jsonio.cone_to_json(split.face),
            "simplicial": bool(code),
        },
    )
    return code


def cmd_random_word(args) -> int:
    if args.length is None or args.length < 0:
        raise UsageError("random-word needs --length >= 0")
    if args.n is None or args.n < 1:
        raise UsageError("random-word needs --n >= 1")
    ring = scalars(BaseRing.parse(args.ring))
    _write(args, jsonio.word_to_json(random_word(args.n, args.length, ring, args.seed)))
    return 0


COMMANDS = {
    "mult": cmd_mult,
    "sp-check": cmd_sp_check,
    "factor": cmd_factor,
    "conj-delta": cmd_conj_delta,
    "verify": cmd_verify,
    "monoid-info": cmd_monoid_info,
    "polarized-check": cmd_polarized_check,
    "pyramid-split": cmd_pyramid_split,
    "random-word": cmd_random_word,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input", nargs="?", help="input JSON file (default: stdin)")
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--bound", type=int, help="enumeration bound for geometry commands")
    common.add_argument("--ring", default="Q", help="base ring: Z, Q or Fp:<p>")
    common.add_argument("--n", type=int, help="half-size of the matrices")

    parser = argparse.ArgumentParser(prog="symplex", description="Exact symplectic-group toolkit over monoid algebras.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    helps = {
        "mult": "multiply ring elements or matrices",
        "sp-check": "test alpha^T psi alpha = psi",
        "factor": "factor a symplectic matrix into elementary generators",
        "conj-delta": "conjugate a matrix by delta_I",
        "verify": "run identity checks",
        "monoid-info": "cone, positivity and interior of a monoid",
        "polarized-check": "validate a polarized triple",
        "pyramid-split": "split a cone into a pyramid and the rest",
        "random-word": "emit a seeded random generator word",
    }
    subs = {name: sub.add_parser(name, parents=[common], help=helps[name]) for name in COMMANDS}
    subs["factor"].add_argument("--local-prime", type=int, help="factor over Z localized at this prime")
    subs["verify"].add_argument(
        "--lemma", action="append", help=f"check id (repeatable; default all): {', '.join(CHECKS)}, l2-table"
    )
    subs["monoid-info"].add_argument("--c", type=int, help="also test c-divisibility")
    subs["polarized-check"].add_argument("--example", action="store_true", help="use the shipped example")
    subs["random-word"].add_argument("--length", type=int)
    return parser


def _configure_logging():
    level = {"error": logging.ERROR, "info": logging.INFO, "debug": logging.DEBUG}.get(
        os.environ.get("SYMPLEX_LOG", "error").lower(), logging.ERROR
    )
    logging.basicConfig(level=level, format="symplex: %(levelname)s: %(message)s", stream=sys.stderr)


def dispatch(argv=None) -> int:
    _configure_logging()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, UnknownLemmaId, jsonio.FormatError) as exc:
        msg = exc.args[0] if isinstance(exc, UnknownLemmaId) else exc
        sys.stderr.write(f"symplex: usage error: {msg}\n")
        parser.print_usage(sys.stderr)
        return USAGE_ERROR
    except SymplexError as exc:
        sys.stderr.write(f"symplex: {type(exc).__name__}: {exc}\n")
        return DOMAIN_FAILURE
    except ValueError as exc:
        sys.stderr.write(f"symplex: invalid input: {exc}\n")
        return USAGE_ERROR


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
