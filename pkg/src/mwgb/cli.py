"""Command-line front end: ``mwgb gb | analyze | random``."""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass

from .algebra import buchberger_oracle, leading_monomials
from .errors import MwgbError, ParseError, ValidationError, VerifyMismatch
from .f5 import RunStats
from .grading import poly_mdeg
from .hilbert import (
    classify_sequence,
    hs_algebra,
    hs_quotient_oracle,
    hs_regular,
    hs_semiregular,
    ideal_basis,
    random_system,
    series_table,
)
from .steps import STRATEGIES, truncated_groebner
from .systemfile import SystemFile, emit_system, format_polynomial, parse_system

EXIT_OK, EXIT_USAGE, EXIT_VALIDATION, EXIT_VERIFY = 0, 1, 2, 3


@dataclass
class StatsReport:
    strategy: str
    d_max: int
    elapsed: float
    max_degree: int
    stats: RunStats

    def fields(self) -> dict:
        out = {"strategy": self.strategy, "d_max": self.d_max, "max_degree": self.max_degree}
        out.update(self.stats.as_dict())
        return out

    def kv(self, with_time: bool = True) -> str:
        items = list(self.fields().items())
        if with_time:
            items.append(("elapsed_seconds", f"{self.elapsed:.3f}"))
        return "".join(f"{k}={v}\n" for k, v in items)

    def table(self) -> str:
        items = list(self.fields().items()) + [("elapsed_seconds", f"{self.elapsed:.3f}")]
        width = max(len(k) for k, _ in items)
        return "\n".join(f"{k:<{width}}  {v}" for k, v in items) + "\n"


def run_gb(sf: SystemFile, strategy: str, d_max: int, threads: int = 1, verify: bool = False):
    """Returns (basis text, StatsReport); raises VerifyMismatch in verify mode."""
    F = sf.polynomials()
    t0 = time.perf_counter()
    G, stats = truncated_groebner(F, sf.weights, d_max, strategy, threads=threads)
    elapsed = time.perf_counter() - t0
    basis = G.reduced()
    if verify:
        want = leading_monomials(buchberger_oracle(F, degree_bound=d_max))
        got = G.leading_monomials()
        if want != got:
            raise VerifyMismatch(want - got, got - want)
    W1 = sf.weights.w1_degree
    report = StatsReport(strategy, d_max, elapsed, max((W1(g.lm) for g in basis), default=0), stats)
    text = "".join(format_polynomial(g) + "\n" for g in basis)
    return text, report


def analyze_text(sf: SystemFile, kind: str, bound: int) -> str:
    W = sf.weights
    F = sf.polynomials()
    if kind == "classify":
        return classify_sequence(W, F, bound).format() + "\n"
    degrees = [poly_mdeg(W, f) for f in F]
    if None in degrees:
        raise ValidationError("generators must be W-homogeneous")
    series = {
        "algebra": hs_algebra(W, bound),
        "regular": hs_regular(W, degrees, bound),
        "semiregular": hs_semiregular(W, degrees, bound),
        "quotient": hs_quotient_oracle(W, ideal_basis(W, F, bound), bound),
    }
    return series_table(series) + "\n"


def _parse_degrees(text: str) -> list:
    try:
        return [tuple(int(x) for x in part.split(",")) for part in text.split(";") if part.strip()]
    except ValueError:
        raise ParseError(f"bad --degrees value {text!r}; expected e.g. '10,5;10,5'") from None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="mwgb", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gb", help="truncated Gröbner basis with run statistics")
    g.add_argument("file")
    g.add_argument("--strategy", choices=STRATEGIES, default="mwh-gcd")
    g.add_argument("--dmax", type=int, help="W_1-degree bound (falls back to the file's dmax)")
    g.add_argument("--threads", type=int, default=1)
    g.add_argument("--verify", action="store_true", help="cross-check against Buchberger")
    g.add_argument("--stats", metavar="OUT", help="write key=value statistics to OUT")
    g.add_argument("--no-stats", action="store_true", help="print only the basis")

    a = sub.add_parser("analyze", help="Hilbert series or regularity report")
    a.add_argument("file")
    a.add_argument("kind", choices=("hilbert", "classify"))
    a.add_argument("--bound", type=int, required=True)

    r = sub.add_parser("random", help="emit a random system file")
    r.add_argument("--weights-file", required=True)
    r.add_argument("--degrees", required=True)
    r.add_argument("--seed", type=int, required=True)
    r.add_argument("--dmax", type=int)
    return ap


def _read(path: str) -> SystemFile:
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_system(fh.read())
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # usage errors and --help
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    out = sys.stdout
    try:
        if args.command == "gb":
            sf = _read(args.file)
            d_max = args.dmax if args.dmax is not None else sf.dmax
            if d_max is None:
                print("mwgb: error: no degree bound; pass --dmax or add a dmax line", file=sys.stderr)
                return EXIT_USAGE
            if args.threads < 1:
                print("mwgb: error: --threads must be at least 1", file=sys.stderr)
                return EXIT_USAGE
            text, report = run_gb(sf, args.strategy, d_max, args.threads, args.verify)
            out.write(text)
            if not args.no_stats:
                out.write("\n" + report.table())
            if args.stats:
                with open(args.stats, "w", encoding="utf-8") as fh:
                    fh.write(report.kv())
        elif args.command == "analyze":
            out.write(analyze_text(_read(args.file), args.kind, args.bound))
        else:
            base = _read(args.weights_file)
            degrees = _parse_degrees(args.degrees)
            F = random_system(base.weights, degrees, args.seed, base.p)
            dmax = args.dmax if args.dmax is not None else base.dmax
            out.write(emit_system(SystemFile.from_polynomials(base.weights, F, base.p, dmax)))
    except ParseError as exc:
        print(f"mwgb: parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except VerifyMismatch as exc:
        print(f"mwgb: verify failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except MwgbError as exc:
        print(f"mwgb: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
