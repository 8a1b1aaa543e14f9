"""Command-line interface: ``e10pairs <command> [options]``.

Exit codes: 0 success, 1 verification failure, 2 usage or domain error,
3 degenerate lattice, 4 unsupported configuration, 5 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Sequence

from . import e10
from .arith import d_profile
from .errors import DomainError, E10PairsError
from .genus import genus_of_gram, predicted_K_genus
from .lattice import (
    anti_isometries,
    det_signature,
    discriminant_form,
    glue_lattice,
    gram_from_json,
    is_even,
)
from .mass import MassValue, mass_closed_form, mass_stepwise, numeric_mass
from .padic import jordan_symbol
from .verify import SUITES, Envelope, run_suite

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_DEGENERATE, EXIT_UNSUPPORTED, EXIT_IO = range(6)

CSV_HEADER = ("k", "d", "e2_case", "coeff_num", "coeff_den", "mass_lo", "mass_hi", "bound_lo", "bound_hi")


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _dump(obj: object) -> str:
    return json.dumps(obj, indent=2)


def _read_gram(path: str):
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        return gram_from_json(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"{path}: invalid JSON: {exc}") from exc


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")


def _mass_dict(m: MassValue) -> dict:
    lo, hi = numeric_mass(m).decimal_bounds()
    return {**m.to_dict(), "numeric": [lo, hi]}


def _pair(k: int, method: str, max_height: int):
    if method == "construct":
        found = e10.construct_pairs(k, 1)
        return found[0] if found else None
    return e10.find_pair(k, max_height, saturated=k >= 3)


# -- commands -------------------------------------------------------------------


def cmd_symbol(args: argparse.Namespace) -> int:
    g = _read_gram(args.gram)
    if args.p is None:
        _emit(_dump(genus_of_gram(g).to_dict()), args.out)
    else:
        s = jordan_symbol(g, args.p)
        _emit(_dump({**s.to_dict(), "text": str(s)}), args.out)
    return EXIT_OK


def cmd_mass(args: argparse.Namespace) -> int:
    if (args.k is None) == (args.gram is None):
        raise DomainError("give exactly one of --k and --gram")
    out: dict = {}
    if args.gram is not None:
        if args.method != "stepwise":
            raise DomainError("the closed form needs --k")
        m = mass_stepwise(genus_of_gram(_read_gram(args.gram)))
        out["stepwise"] = _mass_dict(m)
        exact = m.exact()
        if exact is not None:
            out["exact"] = str(exact)
    else:
        out["k"] = args.k
        if args.method in ("stepwise", "both"):
            step = mass_stepwise(predicted_K_genus(args.k))
            out["stepwise"] = _mass_dict(step)
        if args.method in ("closed", "both"):
            closed = mass_closed_form(args.k, corrected=args.corrected)
            out["closed"] = _mass_dict(closed)
        if args.method == "both":
            out["equal"] = step == closed
    _emit(_dump(out), args.out)
    return EXIT_OK


def cmd_bound(args: argparse.Namespace) -> int:
    k_min = args.k_min if args.k_min is not None else args.k
    k_max = args.k_max if args.k_max is not None else k_min
    if k_min is None:
        raise DomainError("give --k or --k-min")
    if k_min < 3 or k_max < k_min:
        raise DomainError("need 3 <= k_min <= k_max (k = 1, 2 only carry a positivity statement)")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for k in range(k_min, k_max + 1):
        prof = d_profile(k)
        m = mass_closed_form(k, corrected=args.corrected)
        mlo, mhi = numeric_mass(m).decimal_bounds()
        blo, bhi = e10.n_lower_bound(k).bound.decimal_bounds()
        writer.writerow((k, prof.d, prof.e2_case.value, m.coeff.numerator, m.coeff.denominator, mlo, mhi, blo, bhi))
    _emit(buf.getvalue(), args.out)
    return EXIT_OK


def cmd_pair(args: argparse.Namespace) -> int:
    p = _pair(args.k, args.method, args.max_height)
    out = {"k": args.k, "found": p is not None}
    if p is not None:
        out.update(p.to_dict())
        out["prenilpotent"] = e10.is_prenilpotent(p.r, p.r2)
        out["saturated"] = p.embedding().is_saturated()
        if args.max_word_len is not None:
            for name, sign in (("positivize", 1), ("negativize", -1)):
                w = e10.positivity_search(p.r, p.r2, sign, args.max_word_len)
                out[name] = None if w is None else list(w)
    _emit(_dump(out), args.out)
    return EXIT_OK


def cmd_complement(args: argparse.Namespace) -> int:
    p = _pair(args.k, args.method, args.max_height)
    if p is None:
        raise DomainError(f"no saturated pair with k={args.k} found; try --method construct")
    K = e10.complement_of_pair(p)
    det, sig = det_signature(K)
    out = {
        "pair": p.to_dict(),
        "gram": [list(r) for r in K],
        "det": det,
        "sig": list(sig),
        "even": is_even(K),
        "genus": genus_of_gram(K).to_dict(),
    }
    _emit(_dump(out), args.out)
    return EXIT_OK


def cmd_glue(args: argparse.Namespace) -> int:
    L = ((2, args.k), (args.k, 2))
    if args.gram is not None:
        K = _read_gram(args.gram)
    else:
        p = _pair(args.k, args.method, args.max_height)
        if p is None:
            raise DomainError(f"no saturated pair with k={args.k} found; try --method construct")
        K = e10.complement_of_pair(p)
    glues = []
    for f in anti_isometries(discriminant_form(L), discriminant_form(K)):
        M = glue_lattice(L, K, f)
        det, sig = det_signature(M)
        glues.append({"images": [list(x) for x in f.images], "det": det, "sig": list(sig), "even": is_even(M)})
    _emit(_dump({"k": args.k, "anti_isometries": len(glues), "glues": glues}), args.out)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    env = Envelope(k_max=args.k_max, max_height=args.max_height, max_word_len=args.max_word_len)
    names = SUITES if args.suite == "all" else (args.suite,)
    reports = [run_suite(n, env) for n in names]
    passed = all(r.passed for r in reports)
    first = next((f"{r.suite}:{r.first_failure}" for r in reports if not r.passed), None)
    out = {"passed": passed, "first_failure": first, "suites": [r.to_dict() for r in reports]}
    _emit(_dump(out), args.out)
    if not passed:
        print(f"verification failed: {first}", file=sys.stderr)
    return EXIT_OK if passed else EXIT_VERIFY


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="e10pairs", description="Root pairs in E10: genus symbols, masses and bounds.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--out", help="write output to this file instead of stdout")

    p = sub.add_parser("symbol", help="local or global genus symbol of a Gram matrix")
    p.add_argument("--gram", required=True, help='JSON file {"n": N, "gram": [[...]]}')
    p.add_argument("--p", type=int, help="prime; omit for the full genus symbol")
    common(p)
    p.set_defaults(func=cmd_symbol)

    p = sub.add_parser("mass", help="mass of the complement genus or of a Gram matrix")
    p.add_argument("--k", type=int)
    p.add_argument("--gram")
    p.add_argument("--method", choices=("stepwise", "closed", "both"), default="both")
    p.add_argument("--corrected", action="store_true", help="use the corrected e2=0 closed-form branch")
    common(p)
    p.set_defaults(func=cmd_mass)

    p = sub.add_parser("bound", help="CSV table of masses and N(k) lower bounds")
    p.add_argument("--k", type=int, help="single k (same as --k-min K --k-max K)")
    p.add_argument("--k-min", type=int)
    p.add_argument("--k-max", type=int)
    p.add_argument("--corrected", action="store_true", help="use the corrected e2=0 closed-form branch")
    common(p)
    p.set_defaults(func=cmd_bound)

    for name, fn, help_ in (
        ("pair", cmd_pair, "find a root pair with inner product k"),
        ("complement", cmd_complement, "orthogonal complement of a saturated pair"),
        ("glue", cmd_glue, "glue L(k) to a complement along every anti-isometry"),
    ):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--k", type=int, required=True)
        p.add_argument("--method", choices=("search", "construct"), default="search")
        p.add_argument("--max-height", type=int, default=4)
        if name == "pair":
            p.add_argument("--max-word-len", type=int, help="also search positivizing/negativizing words")
        if name == "glue":
            p.add_argument("--gram", help="complement Gram file instead of a computed one")
        common(p)
        p.set_defaults(func=fn)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--k-max", type=int, default=200)
    p.add_argument("--max-height", type=int, default=4)
    p.add_argument("--max-word-len", type=int, default=30)
    common(p)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except E10PairsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    raise SystemExit(main())
