"""Command-line front end.

Every command reads a presentation file

    {"p": 2, "vars": ["x", "y"], "order": "grevlex", "A": ["x*y"]}

and writes one report. Exit codes: 0 success, 1 input error, 2 failed
precondition (for example a ring that is not F-pure), 3 a computation that
could not be certified (decomposition capability, resource caps, invariant
breaches).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from dataclasses import dataclass, field

from fcompat import fsing, matlis
from fcompat.decomp import EXACT, DecompLimits, minimal_primes
from fcompat.errors import (CapabilityError, ExponentOverflowError, FcompatError, InvariantError, ParseError,
                            PreconditionError, ResourceExhausted, RingMismatchError, TruncationOverflow)
from fcompat.frobenius import (colon_identity, colon_multiplier_containment, intersection_identity,
                               prime_multiplier_containment)
from fcompat.groebner import Ideal, intersect
from fcompat.poly import Ring, is_prime
from fcompat.sampling import random_ideal

EXIT_OK, EXIT_INPUT, EXIT_PRECONDITION, EXIT_CAPABILITY = 0, 1, 2, 3

COMMANDS = ("check-fpure", "compat-test", "compat-list", "splitting-prime", "big-test-ideal", "s-test-ideal",
            "chain", "localize", "verify", "matlis-check")
VERIFY_TARGETS = ("pa4", "pa1", "lattice", "routes")


class InputError(FcompatError, ValueError):
    """Bad command line or presentation file."""


# presentation files


def parse_presentation(text: str, config: fsing.FsingConfig = fsing.FsingConfig()) -> fsing.Presentation:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", position=exc.colno, line=exc.lineno) from None
    if not isinstance(data, dict):
        raise InputError("presentation must be a JSON object")
    unknown = set(data) - {"p", "vars", "order", "A"}
    if unknown:
        raise InputError(f"unknown presentation keys: {', '.join(sorted(unknown))}")
    for key in ("p", "vars", "A"):
        if key not in data:
            raise InputError(f"presentation is missing {key!r}")
    p = data["p"]
    if not isinstance(p, int) or isinstance(p, bool) or not (2 <= p < 2**31) or not is_prime(p):
        raise InputError(f"p = {p!r} is not a prime below 2^31")
    names = data["vars"]
    if not isinstance(names, list) or not names or not all(isinstance(v, str) for v in names):
        raise InputError("vars must be a nonempty list of names")
    order = data.get("order", "grevlex")
    if order not in ("grevlex", "lex"):
        raise InputError(f"order must be grevlex or lex, not {order!r}")
    try:
        ring = Ring(p, names, order)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    gens = data["A"]
    if not isinstance(gens, list) or not all(isinstance(g, str) for g in gens):
        raise InputError("A must be a list of polynomial strings")
    polys = []
    for i, g in enumerate(gens):
        try:
            f = ring.parse(g)
        except ParseError as exc:
            raise ParseError(f"A[{i}]: {exc.detail}", exc.position, exc.line) from None
        if f.constant_term():
            raise InputError(f"A[{i}] = {g!r} has a nonzero constant term, so A is not inside M")
        polys.append(f)
    A = Ideal(ring, polys)
    if A.is_unit():
        raise InputError("A is the unit ideal")
    return fsing.Presentation(ring, A, config)


def load_presentation(path: str, config: fsing.FsingConfig = fsing.FsingConfig()) -> fsing.Presentation:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return parse_presentation(text, config)


# reports


@dataclass
class Report:
    command: str
    config: dict
    presentation: dict
    result: dict = field(default_factory=dict)
    error: dict | None = None
    exit_code: int = EXIT_OK
    seconds: float | None = None

    def payload(self) -> dict:
        out = {"command": self.command, "config": self.config, "presentation": self.presentation,
               "result": self.result, "exit_code": self.exit_code}
        if self.error is not None:
            out["error"] = self.error
        return out


def ideal_out(I: Ideal) -> list[str]:
    """Reduced Gröbner basis as text; the zero ideal is ["0"]."""
    return I.strings() or ["0"]


def ideals_out(ideals) -> list[list[str]]:
    return [ideal_out(I) for I in ideals]


def emit_report(report: Report, fmt: str = "text", timing: bool = False) -> str:
    """Canonical rendering. JSON is key-sorted and newline-terminated; timing
    never enters JSON, so equal runs give equal bytes."""
    if fmt == "json":
        return json.dumps(report.payload(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    lines = [f"command: {report.command}"]
    cfg = report.config
    lines.append("config: " + " ".join(f"{k}={cfg[k]}" for k in sorted(cfg)))
    pres = report.presentation
    if pres:
        lines.append(f"ring: F_{pres['p']}[{', '.join(pres['vars'])}] {pres['order']}")
        lines.append(f"A: {_ideal_text(pres['A'])}")
    if report.error is not None:
        lines.append(f"error: {report.error['kind']}: {report.error['message']}")
    for key in sorted(report.result):
        lines.extend(_text_lines(key, report.result[key], 0))
    if timing and report.seconds is not None:
        lines.append(f"time: {report.seconds:.3f}s")
    return "\n".join(lines) + "\n"


def _is_ideal(v) -> bool:
    return isinstance(v, list) and bool(v) and all(isinstance(s, str) for s in v)


def _ideal_text(gens) -> str:
    return "(" + ", ".join(gens) + ")"


def _text_lines(key, value, depth):
    pad = "  " * depth
    if isinstance(value, list) and not value and key == "primes":
        return [f"{pad}{key}: no compatible primes found"]
    if _is_ideal(value):
        return [f"{pad}{key}: {_ideal_text(value)}"]
    if isinstance(value, list) and value and all(_is_ideal(v) for v in value):
        return [f"{pad}{key}:"] + [f"{pad}  {_ideal_text(v)}" for v in value]
    if isinstance(value, list):
        out = [f"{pad}{key}:"]
        for i, v in enumerate(value):
            out.extend(_text_lines(f"[{i}]", v, depth + 1))
        if not value:
            out[-1] += " none"
        return out
    if isinstance(value, dict):
        out = [f"{pad}{key}:"]
        for k in sorted(value):
            out.extend(_text_lines(k, value[k], depth + 1))
        return out
    if isinstance(value, bool):
        value = "true" if value else "false"
    return [f"{pad}{key}: {value}"]


# commands


def _ideal_arg(pres: fsing.Presentation, text: str | None, name: str) -> Ideal:
    if text is None:
        raise InputError(f"--{name} is required for this command")
    try:
        return pres.lift(Ideal.parse(pres.ring, text))
    except ParseError as exc:
        raise ParseError(f"--{name}: {exc.detail}", exc.position, exc.line) from None


def cmd_check_fpure(pres, args):
    return {"fpure": fsing.fedder_is_f_pure(pres), "level_set": ideal_out(fsing.fedder_level_sets(pres, 1)[0])}


def cmd_compat_test(pres, args):
    B = _ideal_arg(pres, args.ideal, "ideal")
    colon_levels = fsing.colon_levels(pres, B)
    cartier_levels = fsing.cartier_levels(pres, B)
    return {"ideal": ideal_out(B), "compatible": all(colon_levels), "colon_levels": colon_levels,
            "cartier_levels": cartier_levels, "routes_agree": colon_levels == cartier_levels}


def cmd_compat_list(pres, args):
    lattice = fsing.compatible_ideals(pres)
    proper = lattice.proper_members()
    return {"primes": ideals_out(lattice.primes), "members": ideals_out(proper),
            "member_count": len(proper), "splitting_prime": ideal_out(fsing.splitting_prime(pres, lattice)),
            "big_test_ideal": ideal_out(fsing.big_test_ideal(pres)),
            "provenance": [{"prime": ideal_out(P), "found_as": lattice.provenance[str(P)]} for P in lattice.primes]}


def cmd_splitting_prime(pres, args):
    Q = fsing.splitting_prime(pres)
    return {"splitting_prime": ideal_out(Q), "fedder_level_sets": ideals_out(fsing.fedder_level_sets(pres)),
            "level_set_intersection": ideal_out(fsing.aberbach_enescu_bound(pres))}


def cmd_big_test_ideal(pres, args):
    return {"big_test_ideal": ideal_out(fsing.big_test_ideal(pres))}


def cmd_s_test_ideal(pres, args):
    if not args.avoid:
        raise InputError("--avoid is required for s-test-ideal")
    avoided = [_ideal_arg(pres, t, "avoid") for t in args.avoid]
    lattice = fsing.compatible_ideals(pres)
    return {"avoided": ideals_out(avoided), "s_test_ideal": ideal_out(fsing.s_test_ideal(pres, lattice, avoided))}


def cmd_chain(pres, args):
    chain = fsing.big_test_chain(pres)
    return {"stages": ideals_out(chain.stages), "length": chain.length, "fpure": chain.fpure}


def cmd_localize(pres, args):
    at = _ideal_arg(pres, args.at, "at")
    lattice = fsing.compatible_ideals(pres)
    loc = fsing.localize_compatible(pres, lattice, at)
    return {"at": ideal_out(at), "primes": ideals_out(loc.primes), "big_test_ideal": ideal_out(loc.big_test_ideal),
            "consistent": loc.consistent}


def cmd_matlis_check(pres, args):
    fsing.require_fpure(pres)
    if args.ideal is not None:
        ideals = [_ideal_arg(pres, args.ideal, "ideal")]
    else:
        ideals = fsing.compatible_ideals(pres).members
    rows = []
    for B in ideals:
        D = matlis.default_bound(B, pres.config.e_max) if args.trunc == "auto" else int(args.trunc)
        socle = matlis.verify_fully_special_socle(pres, B, pres.config.e_max, D)
        compatible = fsing.is_compatible(pres, B)
        rows.append({"ideal": ideal_out(B), "trunc": D, "socle_check": socle, "compatible": compatible,
                     "agree": socle == compatible})
    return {"checks": rows, "all_agree": all(r["agree"] for r in rows)}


def verify_pa4(pres, args):
    rng = random.Random(pres.config.seed)
    ring = pres.ring
    e_max = pres.config.e_max
    counts = {"intersection": 0, "colon": 0, "colon_multiplier": 0, "minimal_prime": 0}
    failures = []
    for trial in range(args.count):
        I = random_ideal(ring, rng)
        J = random_ideal(ring, rng)
        c = random_ideal(ring, rng)
        for e in range(1, e_max + 1):
            for name, ok in (("intersection", intersection_identity(I, J, e)),
                             ("colon", colon_identity(I, J, e)),
                             ("colon_multiplier", colon_multiplier_containment(pres.A, c, e))):
                counts[name] += 1
                if not ok:
                    failures.append({"trial": trial, "check": name, "e": e})
    res = minimal_primes(pres.A, pres.config.decomp) if not pres.A.is_zero() else None
    if res is not None and res.capability == EXACT:
        for P in res.primes:
            for e in range(1, e_max + 1):
                counts["minimal_prime"] += 1
                if not prime_multiplier_containment(pres.A, P, e):
                    failures.append({"prime": ideal_out(P), "check": "minimal_prime", "e": e})
    return {"checks": counts, "failures": failures, "trials": args.count, "ok": not failures}


def verify_pa1(pres, args):
    B = _ideal_arg(pres, args.ideal, "ideal") if args.ideal is not None else pres.A
    rows = []
    for n in range(1, pres.config.e_max + 1):
        D = matlis.default_bound(B, n) if args.trunc == "auto" else int(args.trunc)
        r = matlis.verify_lemma_pa1(pres.ring, B, n, D)
        rows.append({"n": n, "trunc": D, "source_depth": r.source_depth,
                     "bracket": {"image_dim": r.image_dim, "annihilator_dim": r.annihilator_dim, "equal": r.part_i},
                     "colon": {"image_dim": r.colon_image_dim, "annihilator_dim": r.colon_annihilator_dim,
                               "equal": r.part_ii}})
    return {"ideal": ideal_out(B), "levels": rows, "ok": all(r["bracket"]["equal"] and r["colon"]["equal"]
                                                           for r in rows)}


def verify_lattice(pres, args):
    lattice = fsing.compatible_ideals(pres, verify=False)
    problems = fsing.lattice_problems(pres, lattice)
    tau = fsing.big_test_ideal(pres)
    minimal = [P for P in lattice.primes if lattice.provenance[str(P)].endswith("stage 0")]
    positive = [P for P in lattice.primes if not any(P == Q for Q in minimal)]
    expected = Ideal.unit(pres.ring)
    for P in positive:
        expected = intersect(expected, P)
    tau_ok = tau == expected
    quotients = []
    for c in lattice.proper_members():
        q = fsing.verify_quotient(pres, lattice, c)
        quotients.append({"member": ideal_out(c), "fpure": q.fpure, "primes_in_lattice": q.primes_in_lattice,
                          "big_test_in_lattice": q.big_test_in_lattice, "witnesses": q.witnesses})
    chain = lattice.chain
    return {"problems": problems, "big_test_is_positive_height_intersection": tau_ok,
            "quotients": quotients, "chain_stages": ideals_out(chain.stages), "chain_fpure": chain.fpure,
            "ok": not problems and tau_ok and all(q["fpure"] and q["primes_in_lattice"]
                                                  and q["big_test_in_lattice"] for q in quotients)}


def verify_routes(pres, args):
    lattice = fsing.compatible_ideals(pres)
    ideals = list(lattice.members)
    if args.ideal is not None:
        ideals.append(_ideal_arg(pres, args.ideal, "ideal"))
    rows = []
    for B in ideals:
        a = fsing.colon_levels(pres, B)
        b = fsing.cartier_levels(pres, B)
        rows.append({"ideal": ideal_out(B), "colon_levels": a, "cartier_levels": b, "agree": a == b})
    return {"checks": rows, "disagreements": sum(not r["agree"] for r in rows)}


HANDLERS = {
    "check-fpure": cmd_check_fpure,
    "compat-test": cmd_compat_test,
    "compat-list": cmd_compat_list,
    "splitting-prime": cmd_splitting_prime,
    "big-test-ideal": cmd_big_test_ideal,
    "s-test-ideal": cmd_s_test_ideal,
    "chain": cmd_chain,
    "localize": cmd_localize,
    "matlis-check": cmd_matlis_check,
}
VERIFY_HANDLERS = {"pa4": verify_pa4, "pa1": verify_pa1, "lattice": verify_lattice, "routes": verify_routes}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("-i", "--input", required=True, help="presentation file (JSON)")
    common.add_argument("--emax", type=int, default=2, help="highest Frobenius level checked (default 2)")
    common.add_argument("--max-iter", type=int, default=64, help="closure iteration cap (default 64)")
    common.add_argument("--trunc", default="auto", help="inverse-polynomial truncation bound D (default auto)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized searches (default 0)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--timing", action="store_true", help="append wall time (text format only)")
    common.add_argument("--ideal", help="comma-separated generators of an ideal B (read as B + A)")

    parser = _Parser(prog="fcompat", description="Uniformly F-compatible ideals of S/A over F_p.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common])
        if name == "verify":
            sp.add_argument("target", choices=VERIFY_TARGETS)
            sp.add_argument("--count", type=int, default=20, help="random trials for pa4 (default 20)")
        if name == "s-test-ideal":
            sp.add_argument("--avoid", action="append", help="prime to avoid; repeatable")
        if name == "localize":
            sp.add_argument("--at", help="compatible prime to localize at")
    return parser


def _config(args) -> fsing.FsingConfig:
    if args.emax < 1:
        raise InputError("--emax must be >= 1")
    if args.max_iter < 1:
        raise InputError("--max-iter must be >= 1")
    if args.trunc != "auto" and not (args.trunc.isdigit() and int(args.trunc) >= 1):
        raise InputError("--trunc must be 'auto' or a positive integer")
    return fsing.FsingConfig(e_max=args.emax, max_iter=args.max_iter, seed=args.seed,
                             decomp=DecompLimits(seed=args.seed))


def _error(kind, exc) -> dict:
    return {"kind": kind, "message": str(exc)}


def run_command(argv) -> tuple[int, Report | None, str]:
    """Parse argv and run; returns (exit code, report or None, format)."""
    fmt = "text"
    try:
        args = build_parser().parse_args(argv)
        fmt = args.format
        config = _config(args)
        pres = load_presentation(args.input, config)
    except (InputError, ParseError, RingMismatchError, ExponentOverflowError, PreconditionError) as exc:
        return EXIT_INPUT, Report("", {}, {}, error=_error("input", exc), exit_code=EXIT_INPUT), fmt
    command = args.command if args.command != "verify" else f"verify {args.target}"
    report = Report(
        command=command,
        config={"e_max": config.e_max, "max_iter": config.max_iter, "trunc": args.trunc, "seed": config.seed},
        presentation={"p": pres.p, "vars": list(pres.ring.variables), "order": pres.ring.order.kind,
                      "A": ideal_out(pres.A)},
    )
    start = time.perf_counter()
    try:
        if args.command == "verify":
            report.result = VERIFY_HANDLERS[args.target](pres, args)
        else:
            report.result = HANDLERS[args.command](pres, args)
    except (InputError, ParseError, RingMismatchError, ExponentOverflowError) as exc:
        report.error, report.exit_code = _error("input", exc), EXIT_INPUT
    except TruncationOverflow as exc:
        report.error, report.exit_code = _error("truncation", exc), EXIT_PRECONDITION
    except PreconditionError as exc:
        report.error, report.exit_code = _error("precondition", exc), EXIT_PRECONDITION
    except CapabilityError as exc:
        report.error, report.exit_code = _error("capability", exc), EXIT_CAPABILITY
    except ResourceExhausted as exc:
        report.error, report.exit_code = _error("resource", exc), EXIT_CAPABILITY
    except InvariantError as exc:
        report.error, report.exit_code = _error("invariant", exc), EXIT_CAPABILITY
    report.seconds = time.perf_counter() - start
    if report.exit_code == EXIT_OK and report.result.get("ok") is False:
        report.exit_code = EXIT_CAPABILITY
    return report.exit_code, report, fmt


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    if argv in ([], ["-h"], ["--help"]):
        build_parser().print_help()
        return EXIT_OK if argv else EXIT_INPUT
    code, report, fmt = run_command(argv)
    if report.command:
        sys.stdout.write(emit_report(report, fmt, timing="--timing" in argv))
    if report.error is not None:
        sys.stderr.write(f"fcompat: {report.error['kind']}: {report.error['message']}\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
