"""Command-line front end: ``compute``, ``verify``, ``bench`` and ``rates``.

Exit codes: 0 success, 1 verification found no coinciding digit, 2 usage
error, 3 precision-policy error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Sequence

from .analysis import digits_per_term, emit_report, epsilon_parts, rate_context
from .formulas import (
    Formula,
    PiResult,
    compare_to_reference,
    pi_classic_radical,
    pi_fixed_mmax_sweep,
    pi_machin,
    pi_nested_arctan,
    pi_viete,
    predicted_accuracy,
    required_target_digits,
)
from .precision import DomainError, PrecisionError, make_context, render_decimal

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_PRECISION = 0, 1, 2, 3
DEFAULT_MACHIN_DIGITS = 100
AUTO_MARGIN = 50
LINE_DIGITS, BLOCK_DIGITS = 50, 10


class UsageError(Exception):
    pass


@dataclass
class CliConfig:
    subcommand: str
    formula: Formula | None = None
    k: int | None = None
    m_max: int | None = None
    K: int | None = None
    digits: int | None = None
    k_range: tuple[int, int] | None = None
    m_range: tuple[int, int] | None = None
    K_range: tuple[int, int] | None = None
    m_probe: int = 10
    out_path: str | None = None
    format: str = "text"

    def validate(self) -> None:
        given = {
            name
            for name in ("k", "m_max", "K", "k_range", "m_range", "K_range")
            if getattr(self, name) is not None
        }
        if self.subcommand == "rates":
            if self.k is None:
                raise UsageError("rates needs --k")
            return
        bench = self.subcommand == "bench"
        needs = {
            Formula.NESTED_ARCTAN: ({"k_range"}, {"m_max", "m_range"}) if bench else ({"k"}, {"m_max"}),
            Formula.CLASSIC_RADICAL: ({"k_range"},) if bench else ({"k"},),
            Formula.VIETE: ({"K_range"},) if bench else ({"K"},),
            Formula.MACHIN: (),
        }[self.formula]
        allowed = set().union(*needs) if needs else set()
        extra = given - allowed
        if extra:
            flags = ", ".join("--" + e.replace("_", "-") for e in sorted(extra))
            raise UsageError(f"{flags} not accepted with --formula {self.formula.value}")
        for group in needs:
            hits = group & given
            if not hits:
                raise UsageError("missing " + " or ".join("--" + g.replace("_", "-") for g in sorted(group)))
            if len(hits) > 1:
                raise UsageError("use only one of " + ", ".join("--" + g.replace("_", "-") for g in sorted(hits)))
        for name in ("k", "m_max", "K", "digits"):
            v = getattr(self, name)
            if v is not None and v < 1:
                raise UsageError(f"--{name.replace('_', '-')} must be >= 1")


def parse_range(text: str) -> tuple[int, int]:
    """``"a:b"`` (inclusive) or a single ``"a"``."""
    try:
        lo, _, hi = text.partition(":")
        a, b = int(lo), int(hi) if hi else int(lo)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad range {text!r}, expected a:b") from None
    if a < 1 or b < a:
        raise argparse.ArgumentTypeError(f"bad range {text!r}")
    return a, b


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nested-pi", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)
    formulas = [f.value for f in Formula]

    compute = sub.add_parser("compute", help="write the decimal expansion of one approximation")
    verify = sub.add_parser("verify", help="compare one approximation with the Machin oracle")
    for p in (compute, verify):
        p.add_argument("--formula", choices=formulas, required=True)
        p.add_argument("--k", type=int)
        p.add_argument("--m-max", type=int)
        p.add_argument("--K", type=int)
        p.add_argument("--digits", type=int, help="decimal places (compute) / compared digits (verify)")
    compute.add_argument("--out", dest="out_path")
    compute.add_argument("--format", choices=["text", "json", "csv"], default="text")

    bench = sub.add_parser("bench", help="run parameter sweeps and emit a convergence report")
    bench.add_argument("--formula", choices=formulas, default=Formula.NESTED_ARCTAN.value)
    bench.add_argument("--k-range", type=parse_range)
    bench.add_argument("--m-max", type=int)
    bench.add_argument("--m-range", type=parse_range)
    bench.add_argument("--K-range", type=parse_range)
    bench.add_argument("--digits", type=int, help="target digits (default: sized from the sweep)")
    bench.add_argument("--out", dest="out_path")
    bench.add_argument("--format", choices=["text", "json", "csv"], default="text")

    rates = sub.add_parser("rates", help="digits gained per extra series term at fixed k")
    rates.add_argument("--k", type=int)
    rates.add_argument("--m-probe", type=int, default=10)
    rates.add_argument("--digits", type=int)
    rates.add_argument("--format", choices=["text", "json"], default="text")
    return parser


def parse_config(argv: Sequence[str] | None = None) -> CliConfig:
    parser = build_parser()
    ns = parser.parse_args(argv)
    fields = {k: v for k, v in vars(ns).items() if k in CliConfig.__dataclass_fields__}
    if fields.get("formula") is not None:
        fields["formula"] = Formula(fields["formula"])
    config = CliConfig(**fields)
    try:
        config.validate()
    except UsageError as exc:
        parser.error(str(exc))
    return config


def _single_run(config: CliConfig, target: int) -> PiResult:
    f = config.formula
    ctx = make_context(target, config.k or config.K or 0)
    if f is Formula.NESTED_ARCTAN:
        return pi_nested_arctan(config.k, config.m_max, ctx)
    if f is Formula.CLASSIC_RADICAL:
        return pi_classic_radical(config.k, ctx)
    if f is Formula.VIETE:
        return pi_viete(config.K, ctx)
    return pi_machin(ctx)


def _auto_digits(config: CliConfig) -> int:
    acc = predicted_accuracy(config.formula, k=config.k, m_max=config.m_max, K=config.K)
    return DEFAULT_MACHIN_DIGITS if acc is None else acc + AUTO_MARGIN


def _params(config: CliConfig) -> str:
    parts = [f"formula={config.formula.value}"]
    for name in ("k", "m_max", "K"):
        v = getattr(config, name)
        if v is not None:
            parts.append(f"{name}={v}")
    return " ".join(parts)


def format_digits(text: str) -> str:
    """``"3."`` then 50 decimals per line in blocks of 10."""
    whole, _, frac = text.partition(".")
    lines = [whole + "."]
    for i in range(0, len(frac), LINE_DIGITS):
        chunk = frac[i : i + LINE_DIGITS]
        lines.append(" ".join(chunk[j : j + BLOCK_DIGITS] for j in range(0, len(chunk), BLOCK_DIGITS)))
    return "\n".join(lines) + "\n"


def _write(data: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(data)
    else:
        sys.stdout.write(data)


def cmd_compute(config: CliConfig) -> int:
    decimals = config.digits or _auto_digits(config)
    result = _single_run(config, decimals + 1)
    if config.format != "text":
        _write(emit_report([result], config.format).decode(), config.out_path)
        return EXIT_OK
    body = format_digits(render_decimal(result.value, decimals + 1))
    _write(body + f"# {_params(config)} digits={decimals}\n", config.out_path)
    return EXIT_OK


def cmd_verify(config: CliConfig) -> int:
    target = config.digits or _auto_digits(config)
    result = _single_run(config, target)
    cmp = compare_to_reference(result)
    mantissa, exponent, _ = epsilon_parts(result.epsilon)
    eps = "0" if exponent is None else f"{mantissa}e{exponent}"
    print(_params(config))
    print(f"digits compared: {target}")
    print(f"coinciding_digits = {cmp.coinciding_digits}")
    print(f"|eps| = {eps}")
    print(f"approximation: ...{cmp.approx_prefix} | {cmp.approx_continuation}...")
    print(f"reference:     ...{cmp.approx_prefix} | {cmp.reference_continuation}...")
    return EXIT_OK if cmp.coinciding_digits >= 1 else EXIT_MISMATCH


def _bench_runs(config: CliConfig) -> list[PiResult]:
    f = config.formula
    if f is Formula.NESTED_ARCTAN:
        k_from, k_to = config.k_range
        m_values = range(config.m_range[0], config.m_range[1] + 1) if config.m_range else [config.m_max]
        target = config.digits or max(required_target_digits(k_to, m) for m in m_values)
        ctx = make_context(target, k_to)
        runs: list[PiResult] = []
        for m in m_values:
            runs.extend(pi_fixed_mmax_sweep(k_from, k_to, m, ctx))
        return runs
    if f is Formula.MACHIN:
        return [pi_machin(make_context(config.digits or DEFAULT_MACHIN_DIGITS))]
    lo, hi = config.k_range if f is Formula.CLASSIC_RADICAL else config.K_range
    target = config.digits or predicted_accuracy(f, k=hi, K=hi) + AUTO_MARGIN
    ctx = make_context(target, hi)
    engine = pi_classic_radical if f is Formula.CLASSIC_RADICAL else pi_viete
    return [engine(n, ctx) for n in range(lo, hi + 1)]


def cmd_bench(config: CliConfig) -> int:
    _write(emit_report(_bench_runs(config), config.format).decode(), config.out_path)
    return EXIT_OK


def cmd_rates(config: CliConfig) -> int:
    ctx = make_context(config.digits, config.k) if config.digits else rate_context(config.k, config.m_probe)
    measured, predicted = digits_per_term(config.k, config.m_probe, ctx)
    if config.format == "json":
        doc = {
            "k": config.k,
            "m_probe": config.m_probe,
            "target_digits": ctx.target_digits,
            "measured_digits_per_term": round(measured, 6),
            "predicted_digits_per_term": round(predicted, 6),
        }
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    else:
        print(f"k={config.k} m_probe={config.m_probe} digits={ctx.target_digits}")
        print(f"measured digits per term:  {measured:.4f} (~{round(measured)})")
        print(f"predicted digits per term: {predicted:.4f}")
    return EXIT_OK


COMMANDS = {"compute": cmd_compute, "verify": cmd_verify, "bench": cmd_bench, "rates": cmd_rates}


def main(argv: Sequence[str] | None = None) -> int:
    config = parse_config(argv)
    try:
        return COMMANDS[config.subcommand](config)
    except PrecisionError as exc:
        print(f"nested-pi: precision error: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except (DomainError, ValueError) as exc:
        print(f"nested-pi: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
