"""Command-line front end.

Exit codes: 0 verified/success, 1 falsified/negative verdict, 2 unknown or
budget exhausted, 3 input error (one diagnostic line on stderr).
"""
from __future__ import annotations

import argparse
import os
import random
import sys
from fractions import Fraction

from . import certificates as certs
from . import quasimorphisms as qm
from . import scl
from .errors import GentorError, NotConjugateIntoFactorError
from .presentations.core import commutator
from .presentations import (alexander_polynomial, check_derivation, dehn_filling,
                            format_derivation, format_polynomial, format_presentation,
                            homology_h1, meridian_gt_search, parse_derivation,
                            parse_presentation, prove_trivial, simplify, twist_sum)
from .words import INF, parse_group, parse_word, random_word

EXIT_OK, EXIT_NEGATIVE, EXIT_UNKNOWN, EXIT_INPUT = 0, 1, 2, 3


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _budget(args, default):
    if args.budget is not None:
        return args.budget
    env = os.environ.get("GENTOR_BUDGET")
    if env:
        try:
            return int(env)
        except ValueError as exc:
            raise InputError(f"GENTOR_BUDGET must be an integer, got {env!r}") from exc
    return default


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _words(args, group):
    texts = list(args.word or [])
    if getattr(args, "words_file", None):
        texts += [ln.strip() for ln in _read(args.words_file).splitlines() if ln.strip()]
    if not texts:
        raise InputError("no word given (-w or --words-file)")
    return [parse_word(t, group) for t in texts]


class _Out:
    def __init__(self, machine):
        self.machine = machine
        self.chunks = []

    def emit(self, text):
        self.chunks.append(text if text.endswith("\n") else text + "\n")

    def note(self, text):
        if not self.machine:
            self.emit(f"# {text}")

    def flush(self):
        sys.stdout.write("".join(self.chunks))
        sys.stdout.flush()


# ---------------------------------------------------------------------------
# commands

def cmd_reduce(args, out):
    group = parse_group(args.group)
    for w in _words(args, group):
        out.emit(str(w))
    return EXIT_OK


def _search_block(search):
    if search.certificate is not None:
        return certs.format_certificate(search.certificate), EXIT_OK
    lb = "inf" if search.lower_bound == INF else str(search.lower_bound)
    text = f"result: none\nlower_bound: {lb}\n{search.budget_line()}\n"
    return text, EXIT_NEGATIVE if search.lower_bound == INF else EXIT_UNKNOWN


def cmd_order_search(args, out):
    group = parse_group(args.group)
    words = _words(args, group)
    code = EXIT_OK
    emitted = []
    for g in words:
        search = certs.search_order(group, g, args.max_k, args.max_conj_len, args.max_exp,
                                    jobs=args.jobs)
        text, c = _search_block(search)
        code = max(code, c)
        if len(words) > 1:
            out.emit(f"word: {g}")
        out.emit(text)
        if search.certificate is not None:
            emitted.append(text)
            if search.exact:
                out.note(f"order is exactly {search.certificate.k}")
            else:
                out.note(f"order <= {search.certificate.k}; {search.budget_line()}")
    if args.emit and emitted:
        with open(args.emit, "w", encoding="utf-8") as fh:
            fh.write(emitted[0])
    return code


def _load_cert(path):
    return certs.parse_certificate(_read(path))


def cmd_verify(args, out):
    ok = certs.verify(_load_cert(args.file))
    out.emit(f"verified: {'true' if ok else 'false'}")
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_normalize(args, out):
    cert = _load_cert(args.file)
    if not certs.verify(cert):
        out.emit("verified: false")
        return EXIT_NEGATIVE
    out.emit(certs.format_certificate(certs.normalize(certs.certify(cert))))
    return EXIT_OK


def cmd_transport(args, out):
    cert = _load_cert(args.file)
    if not certs.verify(cert):
        out.emit("verified: false")
        return EXIT_NEGATIVE
    try:
        moved = certs.transport_to_factor(certs.certify(cert))
    except NotConjugateIntoFactorError as exc:
        out.emit(f"transport: failed\nreason: {exc.code}")
        return EXIT_NEGATIVE
    out.emit(certs.format_certificate(moved))
    return EXIT_OK


def _family(args, group):
    if args.qm:
        return qm.parse_family(args.qm, group)
    return qm.default_family(group)


def _scl_budget(args):
    return scl.Budget(args.max_k, args.max_conj_len, args.max_exp)


def cmd_scl_bounds(args, out):
    group = parse_group(args.group)
    words = _words(args, group)
    for g in words:
        b = scl.bounds(group, g, _family(args, group), _scl_budget(args), args.N, jobs=args.jobs)
        if len(words) > 1:
            out.emit(f"word: {g}")
        out.emit("\n".join(b.lines()))
    return EXIT_OK


def cmd_classify(args, out):
    group = parse_group(args.group)
    words = _words(args, group)
    family = _family(args, group) if args.qm else None
    code = EXIT_OK
    for g in words:
        v = scl.classify(group, g, _scl_budget(args), family, args.N, jobs=args.jobs)
        if len(words) > 1:
            out.emit(f"word: {g}")
        out.emit(scl.format_verdict(v))
        code = max(code, v.exit_code)
    return code


def cmd_qm_check(args, out):
    group = parse_group(args.group)
    family = _family(args, group)
    rng = random.Random(args.seed)
    pairs = [(random_word(group, rng, args.max_syllables, args.max_exp),
              random_word(group, rng, args.max_syllables, args.max_exp))
             for _ in range(args.samples)]
    out.emit(f"family: {len(family)}")
    try:
        worst = qm.defect_sample_family(family, pairs)
        out.emit(f"defect_max: {scl.format_rational(max(worst, default=Fraction(0)))}")
        report = qm.axiom_checks(family, pairs, N=args.N, raise_on_failure=False)
    except GentorError as exc:
        if exc.code != "E_DEFECT_VIOLATION":
            raise
        out.emit(f"violation: {exc}")
        return EXIT_NEGATIVE
    out.emit("\n".join(report.lines()))
    return EXIT_OK if report.ok else EXIT_NEGATIVE


def _slope(text):
    num, _, den = text.partition("/")
    try:
        return int(num), int(den) if den else 1
    except ValueError as exc:
        raise InputError(f"bad slope {text!r}") from exc


def cmd_present(args, out):
    if args.kind != "twist-sum":
        raise InputError(f"unknown presentation family {args.kind!r}")
    try:
        ps = [int(x) for x in args.p.split(",") if x.strip()]
    except ValueError as exc:
        raise InputError(f"bad --p list {args.p!r}") from exc
    P = twist_sum(ps)
    if args.slope is not None:
        P = dehn_filling(P, *_slope(args.slope))
    if args.simplify:
        P = simplify(P)
    out.emit(format_presentation(P))
    return EXIT_OK


def _load_pres(path):
    return parse_presentation(_read(path))


def cmd_h1(args, out):
    out.emit(str(homology_h1(_load_pres(args.file))))
    return EXIT_OK


def cmd_alexander(args, out):
    out.emit(format_polynomial(alexander_polynomial(_load_pres(args.file))))
    return EXIT_OK


def cmd_prove_trivial(args, out):
    P = _load_pres(args.file)
    if args.replay:
        d = parse_derivation(P, _read(args.replay))
        ok = check_derivation(P.relators, d.word, d.steps)
        out.emit(f"replay: {'valid' if ok else 'invalid'}")
        return EXIT_OK if ok else EXIT_NEGATIVE
    if args.peripheral:
        if P.peripheral is None:
            raise InputError("presentation has no peripheral pair")
        u = commutator(P.mu, P.lam)
    elif not args.word or len(args.word) != 1:
        raise InputError("prove-trivial needs exactly one -w word or --peripheral")
    else:
        u = P.parse(args.word[0])
    budget = _budget(args, 10 ** 6)
    d = prove_trivial(P, u, budget)
    if d is None:
        out.emit(f"result: unknown\nsearched: budget={budget}")
        return EXIT_UNKNOWN
    out.emit(format_derivation(P, d))
    return EXIT_OK


def cmd_gt_meridian(args, out):
    P = _load_pres(args.file)
    m, _ = _slope(args.slope)
    budget = _budget(args, 20000)
    res = meridian_gt_search(P, m, budget=budget, max_k=args.max_k_meridian,
                             max_conj_len=args.max_conj_len, jobs=args.jobs)
    if res.record is None:
        out.emit(f"result: none\nh1_order: {res.h1_order}\n{res.budget_line()}")
        return EXIT_UNKNOWN
    rec = res.record
    Q = rec.presentation
    lines = ["result: found", f"h1_order: {res.h1_order}", f"k: {rec.k}",
             f"g: {Q.format(rec.element)}"]
    lines += [f"x: {Q.format(x)}" for x in rec.conjugators]
    out.emit("\n".join(lines))
    out.emit(format_presentation(Q))
    out.emit(format_derivation(Q, rec.derivation))
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("-g", "--group")
    common.add_argument("-w", "--word", action="append")
    common.add_argument("--words-file")
    common.add_argument("--max-k", type=int, default=12)
    common.add_argument("--max-conj-len", type=int, default=2)
    common.add_argument("--max-exp", type=int, default=2)
    common.add_argument("--qm")
    common.add_argument("--N", type=int, default=qm.DEFAULT_N)
    common.add_argument("--budget", type=int)
    common.add_argument("--machine", action="store_true")
    common.add_argument("--jobs", type=int, default=1)

    parser = _Parser(prog="gentor", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, **kw):
        p = sub.add_parser(name, parents=[common], **kw)
        p.set_defaults(fn=fn)
        return p

    add("reduce", cmd_reduce)
    p = add("order-search", cmd_order_search)
    p.add_argument("--emit", help="write the found certificate to this file")
    for name, fn in (("verify", cmd_verify), ("normalize", cmd_normalize),
                     ("transport", cmd_transport)):
        add(name, fn).add_argument("file")
    add("scl-bounds", cmd_scl_bounds)
    add("classify", cmd_classify)
    p = add("qm-check", cmd_qm_check)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-syllables", type=int, default=6)
    p = add("present", cmd_present)
    p.add_argument("kind", choices=["twist-sum"])
    p.add_argument("--p", required=True, help="comma-separated twist parameters")
    p.add_argument("--slope", help="m or m/n")
    p.add_argument("--simplify", action="store_true")
    add("h1", cmd_h1).add_argument("file")
    add("alexander", cmd_alexander).add_argument("file")
    p = add("prove-trivial", cmd_prove_trivial)
    p.add_argument("file")
    p.add_argument("--replay", help="derivation file to check instead of searching")
    p.add_argument("--peripheral", action="store_true", help="prove [mu, lambda] = 1")
    p = add("gt-meridian", cmd_gt_meridian)
    p.add_argument("file")
    p.add_argument("--slope", required=True)
    p.add_argument("--max-k-meridian", type=int, default=None)
    return parser


def main(argv=None) -> int:
    out = _Out(machine=True)
    try:
        args = build_parser().parse_args(argv)
        out.machine = args.machine
        if args.jobs < 1:
            raise InputError("--jobs must be >= 1")
        needs_group = args.command in ("reduce", "order-search", "scl-bounds", "classify",
                                       "qm-check")
        if needs_group and not args.group:
            raise InputError(f"{args.command} needs -g GROUP")
        code = args.fn(args, out)
    except (InputError, GentorError, OSError, ValueError) as exc:
        tag = getattr(exc, "code", "E_INPUT")
        sys.stderr.write(f"error: {tag}: {exc}\n")
        return EXIT_INPUT
    out.flush()
    return code


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    main_exit()
