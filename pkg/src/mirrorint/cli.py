"""Command-line front end.

Subcommands: delta, series, verify, exponents, padic, zhou, corpus.  All
reports are emitted as JSON (schema 1) with rationals serialized as decimal
strings {"num": ..., "den": ...} so downstream consumers never hit 64-bit
overflow.  Identical invocations produce byte-identical output.

Exit codes: 0 all checks passed, 1 a verification failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from . import landau, mirror, padic, zhou
from .landau import FactorialRatioSpec
from .series import IntegralityReport, TruncatedSeries

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


def parse_spec(text: str) -> FactorialRatioSpec:
    """Parse the "e1,e2,.../f1,f2,..." spec format."""
    parts = text.split("/")
    if len(parts) != 2:
        raise ValueError(f"spec must look like '6/3,2,1', got {text!r}")
    try:
        e = tuple(int(tok) for tok in parts[0].split(","))
        f = tuple(int(tok) for tok in parts[1].split(","))
    except ValueError as exc:
        raise ValueError(f"malformed spec {text!r}: {exc}") from None
    return FactorialRatioSpec(e=e, f=f)


def rational_json(x: Fraction) -> dict:
    x = Fraction(x)
    return {"num": str(x.numerator), "den": str(x.denominator)}


def valuation_json(v) -> object:
    return "inf" if v == math.inf else int(v)


def series_json(ser: TruncatedSeries) -> list[dict]:
    return [rational_json(c) for c in ser.coeffs]


def integrality_json(report: IntegralityReport) -> dict:
    out = {
        "integral": report.integral,
        "order_checked": report.order_checked,
        "first_bad_index": report.first_bad_index,
    }
    if report.first_bad_coefficient is not None:
        out["first_bad_coefficient"] = rational_json(report.first_bad_coefficient)
    return out


def membership_json(report: padic.PadicMembershipReport) -> dict:
    return {
        "prime": report.prime,
        "required_valuation": report.required_valuation,
        "value_description": report.value_description,
        "actual_valuation": valuation_json(report.actual_valuation),
        "member": report.member,
        "witness": list(report.witness) if report.witness else None,
    }


def profile_json(prof: landau.LandauProfile) -> dict:
    return {
        "breakpoints": [rational_json(b) for b in prof.breakpoints],
        "values": list(prof.values),
        "jumps": [[rational_json(b), j] for b, j in prof.jumps],
    }


def emit(payload: dict, output: Optional[str]) -> None:
    payload = {"schema": SCHEMA_VERSION, **payload}
    text = json.dumps(payload, indent=2) + "\n"
    if output:
        with open(output, "w") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands


def cmd_delta(args) -> int:
    spec = parse_spec(args.spec)
    prof = landau.profile(spec)
    verdict = landau.classify(spec)
    emit(
        {
            "command": "delta",
            "spec": str(spec),
            "profile": profile_json(prof),
            "classification": {
                "landau_integral": verdict.landau_integral,
                "case_i": verdict.case_i,
                "negative_witnesses": [
                    rational_json(w) for w in verdict.negative_witnesses
                ],
                "zero_witnesses": [
                    rational_json(w) for w in verdict.zero_witnesses
                ],
            },
        },
        args.output,
    )
    return EXIT_OK


def cmd_series(args) -> int:
    spec = parse_spec(args.spec)
    level = args.level if args.target == "qL" else None
    levels = (level,) if level else ()
    bundle = mirror.build_bundle(spec, args.order, levels=levels)
    if args.target == "F":
        ser = bundle.F
    elif args.target == "G":
        ser = bundle.G
    elif args.target == "q":
        ser = bundle.q_reduced
    else:
        if level is None:
            raise ValueError("--target qL requires --L")
        ser = bundle.q_L[level]
    emit(
        {
            "command": "series",
            "spec": str(spec),
            "target": args.target,
            "level": level,
            "order": args.order,
            "coefficients": series_json(ser),
        },
        args.output,
    )
    return EXIT_OK


def cmd_verify(args) -> int:
    spec = parse_spec(args.spec)
    verdict = landau.classify(spec)
    root = args.root
    if args.target == "qL":
        if args.level is None:
            raise ValueError("--target qL requires --L")
        if root is None:
            root = landau.root_bound_dl(spec, args.level)
    elif root is None:
        root = 1

    if root > 1 and not verdict.case_i:
        emit(
            {
                "command": "verify",
                "spec": str(spec),
                "refused": True,
                "reason": "spec is not in case (i); roots cannot be integral "
                "for almost all primes",
                "zero_witnesses": [
                    rational_json(w) for w in verdict.zero_witnesses
                ],
            },
            args.output,
        )
        return EXIT_FAILED

    levels = (args.level,) if args.target == "qL" else ()
    bundle = mirror.build_bundle(spec, args.order, levels=levels)
    ser = bundle.q_reduced if args.target == "q" else bundle.q_L[args.level]
    report = ser.vth_root(root).integrality()
    emit(
        {
            "command": "verify",
            "spec": str(spec),
            "target": args.target,
            "level": args.level,
            "root": root,
            "order": args.order,
            "report": integrality_json(report),
        },
        args.output,
    )
    return EXIT_OK if report.integral else EXIT_FAILED


def cmd_exponents(args) -> int:
    spec = parse_spec(args.spec)
    ref = mirror.reference_exponents(spec)
    payload = {
        "command": "exponents",
        "spec": str(spec),
        "D": {
            str(level): landau.root_bound_dl(spec, level)
            for level in range(1, spec.max_entry + 1)
        },
        "Theta": {str(level): v for level, v in sorted(ref.theta_l.items())},
        "Q1_over_Theta": {
            str(level): rational_json(v)
            for level, v in sorted(ref.q_one_over_theta.items())
        },
    }
    if ref.xi is not None:
        payload["Xi"] = rational_json(ref.xi)
        payload["Xi_exponent"] = rational_json(ref.xi_exponent)
        payload["Omega"] = rational_json(ref.omega)
        payload["Omega_exponent"] = rational_json(ref.omega_exponent)
    emit(payload, args.output)
    return EXIT_OK


def cmd_padic(args) -> int:
    spec = parse_spec(args.spec)
    reports = []
    ok = True
    for p in args.primes:
        if args.what == "phi":
            levels = [args.level] if args.level else range(1, spec.max_entry + 1)
            for level in levels:
                reports.append(
                    padic.phi_membership_scan(spec, level, p, args.a_max, args.k_max)
                )
        elif args.what == "s":
            reports.append(
                padic.s_membership_scan(
                    spec, p, args.a_max, args.k_max, args.s_max, args.m_max
                )
            )
        elif args.what == "harmonic":
            levels = [args.level] if args.level else range(1, spec.max_entry + 1)
            for level in levels:
                for s in range(args.s_max + 1):
                    for m in range(args.m_max + 1):
                        rep = padic.lemma_harmonic_check(spec, level, p, s, m)
                        if not rep.member:
                            reports.append(rep)
            reports.append(
                padic.PadicMembershipReport(
                    prime=p,
                    required_valuation=0,
                    value_description=(
                        f"harmonic lemma grid s<={args.s_max}, m<={args.m_max}"
                    ),
                    actual_valuation=0,
                    member=not any(
                        not r.member for r in reports if r.prime == p
                    ),
                    witness=None,
                )
            )
        elif args.what == "lemma24":
            member = True
            witness = None
            for s in (1, 2):
                for a in range(p**s):
                    for level in range(1, spec.max_entry + 1):
                        for m in range(args.m_max + 1):
                            if not padic.lemma24_check(
                                p, s, a, spec.max_entry, m, level
                            ):
                                member = False
                                if witness is None:
                                    witness = (s, a, level, m)
            reports.append(
                padic.PadicMembershipReport(
                    prime=p,
                    required_valuation=0,
                    value_description=f"lemma24 grid m<={args.m_max}",
                    actual_valuation=0,
                    member=member,
                    witness=witness,
                )
            )
        ok = ok and all(r.member for r in reports)
    emit(
        {
            "command": "padic",
            "spec": str(spec),
            "what": args.what,
            "reports": [membership_json(r) for r in reports],
        },
        args.output,
    )
    return EXIT_OK if ok else EXIT_FAILED


def _zhou_rows(summary: zhou.BatchSummary) -> list[dict]:
    rows = []
    for v in summary.verdicts:
        report = v.report
        rows.append(
            {
                "ks": ",".join(map(str, v.instance.ks)),
                "k": v.instance.k,
                "ws": ",".join(map(str, v.instance.ws)),
                "case_i": v.case_i,
                "exponent": v.exponent,
                "order": v.order,
                "integral": bool(report and report.integral),
                "first_bad_index": report.first_bad_index if report else None,
            }
        )
    return rows


def cmd_zhou(args) -> int:
    summary = zhou.batch(args.n_max, args.order)
    rows = _zhou_rows(summary)
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(rows[0].keys()))
        writer.writeheader()
        writer.writerows(rows)
        text = buf.getvalue()
        if args.output:
            with open(args.output, "w") as handle:
                handle.write(text)
        else:
            sys.stdout.write(text)
    else:
        emit(
            {
                "command": "zhou",
                "n_max": args.n_max,
                "order": args.order,
                "total": summary.total,
                "passed": summary.passed,
                "instances": rows,
            },
            args.output,
        )
    return EXIT_OK if summary.all_passed else EXIT_FAILED


# The worked examples from the source material, plus the case-(ii) probe.
CORPUS = (
    ("6/3,2,1", 40, "case_i"),
    ("12/4,3,3,2", 30, "case_i"),
    ("3/1,1,1", 40, "case_i"),
    ("2/1,1", 40, "case_i"),
    ("30,1/15,10,6", 40, "case_ii"),
)


@dataclass
class CorpusEntry:
    name: str
    passed: bool
    detail: str


def corpus_runner(
    order: Optional[int] = None,
    corrupt: Optional[Callable[[str, TruncatedSeries], TruncatedSeries]] = None,
    zhou_n_max: int = 4,
    zhou_order: int = 30,
) -> list[CorpusEntry]:
    """Run the built-in regression corpus and return per-entry verdicts.

    corrupt, when given, maps (entry name, root series) to a replacement
    series before the integrality check; used to prove the runner actually
    detects failures.
    """
    entries: list[CorpusEntry] = []
    for text, default_order, kind in CORPUS:
        spec = parse_spec(text)
        n = order or default_order
        verdict = landau.classify(spec)
        if kind == "case_i":
            if not (verdict.landau_integral and verdict.case_i):
                entries.append(
                    CorpusEntry(text, False, "expected case (i) classification")
                )
                continue
            reports = mirror.verify_theorem1(spec, n)
            bad = [level for level, rep in reports.items() if not rep.integral]
            if corrupt is not None:
                bundle = mirror.build_bundle(spec, n, levels=(1,))
                root = bundle.q_L[1].vth_root(landau.root_bound_dl(spec, 1))
                root = corrupt(text, root)
                if not root.integrality().integral:
                    bad.append(1)
            ok = not bad
            entries.append(
                CorpusEntry(
                    text,
                    ok,
                    "all level roots integral" if ok else f"bad levels {sorted(set(bad))}",
                )
            )
        else:
            ok = verdict.landau_integral and not verdict.case_i
            witness = (
                mirror.nonintegrality_witness(spec, prime_bound=200, order=n)
                if ok
                else None
            )
            ok = ok and witness is not None
            entries.append(
                CorpusEntry(
                    text,
                    ok,
                    f"witness p={witness.prime} {witness.target} index {witness.index}"
                    if witness
                    else "expected a case-(ii) nonintegrality witness",
                )
            )
    summary = zhou.batch(zhou_n_max, zhou_order)
    for v in summary.verdicts:
        entries.append(
            CorpusEntry(
                f"zhou {','.join(map(str, v.instance.ks))}",
                v.passed,
                f"root {v.exponent} at order {v.order}",
            )
        )
    return entries


def cmd_corpus(args) -> int:
    entries = corpus_runner(order=args.order)
    for entry in entries:
        status = "pass" if entry.passed else "FAIL"
        sys.stdout.write(f"{status}  {entry.name}: {entry.detail}\n")
    failed = sum(1 for e in entries if not e.passed)
    sys.stdout.write(f"{len(entries) - failed}/{len(entries)} corpus entries passed\n")
    return EXIT_OK if failed == 0 else EXIT_FAILED


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mirrorint",
        description="Exact integrality certificates for canonical q-coordinates",
    )
    parser.add_argument(
        "--seed",
        help="rejected: all computation is deterministic",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, spec_required=True):
        p.add_argument("--spec", required=spec_required, help="e.g. 6/3,2,1")
        p.add_argument("--output", help="write the report here instead of stdout")

    p = sub.add_parser("delta", help="profile and classify the step function")
    add_common(p)
    p.set_defaults(func=cmd_delta)

    p = sub.add_parser("series", help="print exact coefficients of F, G, q or qL")
    add_common(p)
    p.add_argument("--order", type=int, default=40)
    p.add_argument("--target", choices=["F", "G", "q", "qL"], default="q")
    p.add_argument("--L", dest="level", type=int)
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("verify", help="integrality of a v-th root at an order")
    add_common(p)
    p.add_argument("--order", type=int, default=40)
    p.add_argument("--target", choices=["q", "qL"], default="q")
    p.add_argument("--L", dest="level", type=int)
    p.add_argument("--root", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("exponents", help="D_L, Theta_L and the shape exponents")
    add_common(p)
    p.set_defaults(func=cmd_exponents)

    p = sub.add_parser("padic", help="membership scans over finite grids")
    add_common(p)
    p.add_argument("--p", dest="primes", type=int, action="append", required=True)
    p.add_argument(
        "--what", choices=["phi", "s", "harmonic", "lemma24"], required=True
    )
    p.add_argument("--L", dest="level", type=int)
    p.add_argument("--a-max", type=int, default=6)
    p.add_argument("--k-max", type=int, default=10)
    p.add_argument("--s-max", type=int, default=2)
    p.add_argument("--m-max", type=int, default=10)
    p.set_defaults(func=cmd_padic)

    p = sub.add_parser("zhou", help="batch-verify unit-fraction instances")
    p.add_argument("--n-max", type=int, default=4)
    p.add_argument("--order", type=int, default=30)
    p.add_argument("--out", dest="output")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(func=cmd_zhou)

    p = sub.add_parser("corpus", help="run the built-in regression corpus")
    p.add_argument("--order", type=int)
    p.set_defaults(func=cmd_corpus)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.seed is not None:
        parser.error("--seed is not supported: all computation is deterministic")
    threads = os.environ.get("MIRRORINT_THREADS")
    if threads is not None and (not threads.isdigit() or int(threads) < 1):
        parser.error("MIRRORINT_THREADS must be a positive integer")
    try:
        for p in getattr(args, "primes", None) or ():
            if not padic.is_prime(p):
                parser.error(f"--p {p} is not prime")
        return args.func(args)
    except (ValueError, mirror.CaseTwoError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
