"""Command-line surface: every headline fact reproducible by one subcommand.

Exit codes: 0 success, 1 usage error, 2 computation limit or ambiguity,
3 invariant failure.  JSON reports are byte-deterministic for a fixed
configuration and version.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import __version__
from .errors import (
    AmbiguousCodingError,
    FieldMismatchError,
    HorizonExceededError,
    InconclusiveError,
    InsufficientProfileError,
    InternalConsistencyError,
    InvalidRotationError,
    UndecidableWindowError,
)
from .exact_angle import RotationParams, parse_qi
from .sturmian_gen import ApproxRotation, Word, generate, generate_approx
from .order_analysis import (
    DistanceProfile,
    distance_profile,
    factor_complexity,
    is_balanced,
    is_most_homogeneous,
    profile_structure,
)
from .discrepancy import component_intervals, frequency, strict_boundary_check
from .characterization import enumerate_legal_stable, periodic_exclusion
from .lattice_gas import build_interaction, energy_open, ground_state_search
from .verify import run_suites

USAGE_EXIT = 1
LIMIT_EXIT = 2
INVARIANT_EXIT = 3

_LIMIT_ERRORS = (
    AmbiguousCodingError,
    HorizonExceededError,
    InconclusiveError,
    InsufficientProfileError,
    UndecidableWindowError,
)
_INVARIANT_ERRORS = (InternalConsistencyError,)


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        self.print_usage(sys.stderr)
        self.exit(USAGE_EXIT, f"{self.prog}: error: {message}\n")


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a fraction: {text!r}") from exc


def _decimal(x) -> str:
    return f"{float(x):.12g}"


def build_parser() -> _Parser:
    parser = _Parser(prog="sturmgas", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--gamma",
        default="fib",
        help="rotation angle: 'fib', 'a,b,c,d', or 'ratio:p/q' (generate only)",
    )
    common.add_argument(
        "--psi", default="0,0,1,0", help="phase: 'fib' or 'a,b,c,d' (default 0)"
    )
    common.add_argument("--horizon", type=int, default=200, help="profile horizon")
    common.add_argument(
        "--format", choices=("json", "csv", "text"), default="text", dest="fmt"
    )
    common.add_argument("--out", help="write the report to this file")

    sub = parser.add_subparsers(dest="command", required=True)

    def add_parser(name, help_text):
        return sub.add_parser(name, help=help_text, parents=[common])

    p = add_parser("generate", "emit the coded word over an index window")
    p.add_argument("--from", dest="i_from", type=int, required=True)
    p.add_argument("--to", dest="i_to", type=int, required=True)
    p.add_argument(
        "--err-bound",
        type=_fraction,
        default=None,
        help="error bound for ratio:p/q mode (default 1/q^2)",
    )

    add_parser("distances", "spacing sequence with allowed/forbidden split")

    p = add_parser("complexity", "distinct factor counts per length")
    p.add_argument("--n-max", type=int, default=12)

    for name, help_text in (
        ("balance", "factor 1-count spread check"),
        ("homogeneous", "particle spacing spread check"),
    ):
        p = add_parser(name, help_text)
        p.add_argument("--word", help="explicit word; otherwise a window is generated")
        p.add_argument("--from", dest="i_from", type=int, default=0)
        p.add_argument("--to", dest="i_to", type=int, default=499)

    p = add_parser("intervals", "arcs in bijection with length-n words")
    p.add_argument("--n", type=int, required=True)

    p = add_parser("frequency", "exact occurrence frequency of a word")
    p.add_argument("--word", required=True)

    p = add_parser("discrepancy", "deviation maxima over segments")
    p.add_argument("--word", required=True)
    p.add_argument("--max-len", type=int, default=1000)
    p.add_argument("--trials", type=int, default=None, help="sampled lengths (default all)")

    p = add_parser("characterize", "stable legal-word enumeration at length n")
    p.add_argument("--n", type=int, required=True)

    p = add_parser("exclusion", "first forbidden multiple of a period")
    p.add_argument("--period", type=int, required=True)

    p = add_parser("energy", "exact energy of a word under the couplings")
    p.add_argument("--word", required=True)
    p.add_argument("--decay", type=_fraction, default=Fraction(1, 2))
    p.add_argument("--penalty", type=_fraction, default=Fraction(1))

    p = add_parser("ground-state", "exhaustive minimum over all configurations")
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--decay", type=_fraction, default=Fraction(1, 2))
    p.add_argument("--penalty", type=_fraction, default=Fraction(1))
    p.add_argument("--workers", type=int, default=1)

    p = add_parser("verify", "run an invariant suite")
    p.add_argument(
        "--suite",
        choices=("order", "discrepancy", "characterize", "energy", "all"),
        default="all",
    )
    p.add_argument("--profile", help="JSON distance-profile file overriding the computed one")
    p.add_argument("--workers", type=int, default=1)

    return parser


@dataclass(frozen=True)
class RunConfig:
    """Parsed invocation parameters shared by every subcommand."""

    gamma_spec: str
    psi_spec: str
    horizon: int
    output_format: str
    #: deterministic sampling descriptor (reports are reproducible from it)
    seed_plan: str

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        trials = getattr(args, "trials", None)
        plan = "segments=all-lengths" if trials is None else f"segments=trials:{trials}"
        return cls(args.gamma, args.psi, args.horizon, args.fmt, plan)

    @property
    def is_approx(self) -> bool:
        return self.gamma_spec.startswith("ratio:")

    def exact_params(self) -> RotationParams:
        if self.is_approx:
            raise ValueError("this command needs an exact angle, not ratio:p/q")
        return RotationParams(parse_qi(self.gamma_spec), parse_qi(self.psi_spec))

    def approx_rotation(self, err_bound: Optional[Fraction]) -> ApproxRotation:
        frac = Fraction(self.gamma_spec[len("ratio:") :])
        err = err_bound if err_bound is not None else Fraction(1, frac.denominator**2)
        return ApproxRotation(frac.numerator, frac.denominator, err)


def _exact_params(args) -> RotationParams:
    return RunConfig.from_args(args).exact_params()


def _config(args) -> dict:
    cfg = {}
    for key, value in sorted(vars(args).items()):
        if key == "out":
            continue
        if isinstance(value, Fraction):
            value = f"{value.numerator}/{value.denominator}"
        cfg[key] = value
    return cfg


# --- command implementations: each returns (results, csv_rows, text) ---


def cmd_generate(args):
    cfg = RunConfig.from_args(args)
    if cfg.is_approx:
        approx = cfg.approx_rotation(args.err_bound)
        psi_qi = parse_qi(args.psi)
        word = generate_approx(approx, psi_qi.as_fraction(), args.i_from, args.i_to)
        mode = f"certified approximation {approx.value} (err bound {approx.err_bound})"
    else:
        word = generate(cfg.exact_params(), args.i_from, args.i_to)
        mode = "exact"
    results = {"origin": word.origin, "symbols": word.symbols, "mode": mode}
    return results, [results], word.symbols


def cmd_distances(args):
    profile = distance_profile(_exact_params(args), args.horizon)
    structure = profile_structure(profile)
    results = {
        "d": list(profile.d),
        "allowed": sorted(profile.allowed),
        "forbidden": sorted(profile.forbidden),
        "horizon": profile.horizon,
        "blocks": [list(b) for b in structure.blocks],
    }
    rows = [
        {"rank": j, "d": dv, "kind": structure.classification[dv]}
        for j, dv in enumerate(profile.d, start=1)
    ]
    text = (
        f"d: {' '.join(str(x) for x in profile.d)}\n"
        f"allowed:   {' '.join(str(x) for x in sorted(profile.allowed))}\n"
        f"forbidden: {' '.join(str(x) for x in sorted(profile.forbidden))}"
    )
    return results, rows, text


def cmd_complexity(args):
    report = factor_complexity(_exact_params(args), args.n_max)
    results = {"p": {str(n): c for n, c in sorted(report.p.items())}, "window": report.window_len}
    rows = [{"n": n, "p_n": c} for n, c in sorted(report.p.items())]
    text = "\n".join(f"p_{n} = {c}" for n, c in sorted(report.p.items()))
    return results, rows, text


def _word_from_args(args) -> Word:
    if args.word is not None:
        return Word(args.word)
    return generate(_exact_params(args), args.i_from, args.i_to)


def cmd_balance(args):
    w = _word_from_args(args)
    verdict = is_balanced(w)
    results = {"balanced": verdict.balanced, "length": len(w)}
    if verdict.witness:
        results["witness"] = [verdict.witness[0].symbols, verdict.witness[1].symbols]
    text = "balanced" if verdict.balanced else f"unbalanced: {results['witness']}"
    return results, [results], text


def cmd_homogeneous(args):
    w = _word_from_args(args)
    verdict = is_most_homogeneous(w)
    results = {"homogeneous": verdict.homogeneous, "length": len(w)}
    if verdict.gap_map:
        results["spacings"] = {str(j): m for j, m in sorted(verdict.gap_map.items())[:12]}
    if verdict.witness:
        j, lo, hi = verdict.witness
        results["witness"] = {"rank": j, "pair_low": list(lo), "pair_high": list(hi)}
    text = "homogeneous" if verdict.homogeneous else f"inhomogeneous: {results['witness']}"
    return results, [results], text


def cmd_intervals(args):
    ci = component_intervals(_exact_params(args), args.n)
    rows = []
    for (lo, hi), w in zip(ci.intervals, ci.words):
        rows.append(
            {
                "word": w.symbols,
                "low": str(lo),
                "high": str(hi),
                "length_decimal": _decimal(hi - lo),
            }
        )
    results = {"n": args.n, "count": len(rows), "intervals": rows}
    text = "\n".join(f"{r['word']}  |C| = {r['length_decimal']}" for r in rows)
    return results, rows, text


def cmd_frequency(args):
    w = Word(args.word)
    xi = frequency(_exact_params(args), w)
    results = {"word": w.symbols, "frequency": str(xi), "frequency_decimal": _decimal(xi)}
    return results, [results], f"freq({w.symbols}) = {_decimal(xi)}  [{xi}]"


def cmd_discrepancy(args):
    rep = strict_boundary_check(
        _exact_params(args), Word(args.word), args.max_len, trials=args.trials
    )
    results = {
        "word": rep.word.symbols,
        "frequency": str(rep.frequency),
        "frequency_decimal": _decimal(rep.frequency),
        "max_dev": _decimal(rep.max_dev),
        "c_w_estimate": _decimal(rep.c_w_estimate),
        "stabilized": rep.stabilized,
        "segments": rep.segments_tested,
    }
    row = {
        "word": rep.word.symbols,
        "frequency_decimal": _decimal(rep.frequency),
        "max_dev": _decimal(rep.max_dev),
        "horizon": args.max_len,
    }
    text = (
        f"max deviation {results['max_dev']} at horizon {args.max_len}; "
        f"doubled horizon gives {results['c_w_estimate']} "
        f"({'stable' if rep.stabilized else 'GREW'})"
    )
    return results, [row], text


def cmd_characterize(args):
    params = _exact_params(args)
    profile = distance_profile(params, args.horizon)
    legal, used = enumerate_legal_stable(args.n, profile)
    words = sorted(w.symbols for w in legal)
    window = generate(params, 0, 4 * max(args.n, 64) - 1)
    from .order_analysis import factor_set

    factors = sorted(w.symbols for w in factor_set(window, args.n))
    results = {
        "n": args.n,
        "M_used": used,
        "legal_words": words,
        "count": len(words),
        "matches_factor_set": words == factors,
    }
    rows = [{"word": w} for w in words]
    text = f"{len(words)} legal words at n={args.n} (enclosing length {used}); " + (
        "matches factors" if results["matches_factor_set"] else "DIFFERS from factors"
    )
    return results, rows, text


def cmd_exclusion(args):
    profile = distance_profile(_exact_params(args), args.horizon)
    i = periodic_exclusion(args.period, profile)
    results = {"period": args.period, "multiple": i, "distance": i * args.period}
    text = f"{i} * {args.period} = {i * args.period} is a forbidden distance"
    return results, [results], text


def cmd_energy(args):
    profile = distance_profile(_exact_params(args), args.horizon)
    spec = build_interaction(profile, args.decay, args.penalty)
    breakdown = energy_open(Word(args.word), spec)
    results = {
        "word": args.word,
        "total": f"{breakdown.total.numerator}/{breakdown.total.denominator}",
        "pair_part": f"{breakdown.pair_part.numerator}/{breakdown.pair_part.denominator}",
        "zero_run_part": f"{breakdown.zero_run_part.numerator}/{breakdown.zero_run_part.denominator}",
        "violating_pairs": [list(t) for t in breakdown.violating_pairs],
        "violating_runs": list(breakdown.violating_runs),
    }
    text = f"energy({args.word}) = {results['total']}"
    return results, [results], text


def cmd_ground_state(args):
    profile = distance_profile(_exact_params(args), max(args.horizon, args.length))
    spec = build_interaction(profile, args.decay, args.penalty)
    result = ground_state_search(args.length, spec, workers=args.workers)
    words = sorted(w.symbols for w in result.argmin)
    results = {
        "length": args.length,
        "min_energy": f"{result.min_energy.numerator}/{result.min_energy.denominator}",
        "argmin": words,
        "count": len(words),
        "states_scanned": result.states_scanned,
    }
    rows = [{"word": w} for w in words]
    text = (
        f"minimum energy {results['min_energy']} over {result.states_scanned} states; "
        f"{len(words)} ground words"
    )
    return results, rows, text


def cmd_verify(args):
    params = _exact_params(args)
    names = (
        ["order", "discrepancy", "characterize", "energy"]
        if args.suite == "all"
        else [args.suite]
    )
    profile: Optional[DistanceProfile] = None
    if args.profile:
        with open(args.profile, encoding="utf-8") as fh:
            profile = DistanceProfile.from_json(fh.read())
    suites = run_suites(names, params, profile=profile, workers=args.workers)
    all_passed = all(c.passed for checks in suites.values() for c in checks)
    results = {
        "passed": all_passed,
        "suites": {
            name: [c.to_dict() for c in checks] for name, checks in suites.items()
        },
    }
    rows = [
        {"suite": name, "check": c.name, "passed": c.passed, "details": c.details}
        for name, checks in suites.items()
        for c in checks
    ]
    lines = [
        f"{'PASS' if c.passed else 'FAIL'}  {name}/{c.name}: {c.details}"
        for name, checks in suites.items()
        for c in checks
    ]
    lines.append("all checks passed" if all_passed else "FAILURES PRESENT")
    return results, rows, "\n".join(lines)


_COMMANDS = {
    "generate": cmd_generate,
    "distances": cmd_distances,
    "complexity": cmd_complexity,
    "balance": cmd_balance,
    "homogeneous": cmd_homogeneous,
    "intervals": cmd_intervals,
    "frequency": cmd_frequency,
    "discrepancy": cmd_discrepancy,
    "characterize": cmd_characterize,
    "exclusion": cmd_exclusion,
    "energy": cmd_energy,
    "ground-state": cmd_ground_state,
    "verify": cmd_verify,
}


def _render(args, results, rows, text) -> str:
    if args.fmt == "json":
        report = {
            "tool_version": __version__,
            "config": _config(args),
            "results": results,
        }
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    if args.fmt == "csv":
        buf = io.StringIO()
        if rows:
            writer = csv.DictWriter(buf, fieldnames=list(rows[0].keys()))
            writer.writeheader()
            writer.writerows(rows)
        return buf.getvalue()
    return text + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE_EXIT
    try:
        results, rows, text = _COMMANDS[args.command](args)
    except _INVARIANT_ERRORS as exc:
        print(f"invariant failure: {exc}", file=sys.stderr)
        return INVARIANT_EXIT
    except _LIMIT_ERRORS as exc:
        print(f"computation limit: {type(exc).__name__}: {exc}", file=sys.stderr)
        return LIMIT_EXIT
    except (ValueError, FieldMismatchError, InvalidRotationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_EXIT
    output = _render(args, results, rows, text)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(output)
    else:
        sys.stdout.write(output)
    if args.command == "verify" and not results["passed"]:
        return INVARIANT_EXIT
    return 0


if __name__ == "__main__":
    sys.exit(main())
