"""Command-line front end.

Subcommands cover single word computations (reduce, delta, syllables,
appal-check, witness, lower-bound, defect), the verification sweeps
(check-lemma, check-prop1, check-prop2), and the width experiments
(width, theorem-table).  Numeric parameters are flags; words are the only
positional arguments.  Identical invocations (including the seed) produce
byte-identical output.

Exit status: 0 on success, 1 when a bound violation is detected, 2 on a
usage error (malformed words, bad flag values, exceeded enumeration caps).
"""

import argparse
import os
import sys
from dataclasses import dataclass
from typing import Optional

from .delta import (
    BoundViolationError,
    check_lemma,
    check_prop_product,
    check_prop_single,
    defect,
    delta,
)
from .palindromes import (
    ApConfig,
    EnumerationCapError,
    is_m_almost_palindrome,
)
from .report import ExperimentReport
from .width import (
    WidthBudget,
    ap_length_upper,
    lower_bound_c,
    theorem_table,
    witness,
)
from .words import ParseError, format_word, parse, reduce

__all__ = ["RunConfig", "main", "run"]

_DEFAULT_SEED = 0


@dataclass
class RunConfig:
    """One fully resolved CLI invocation."""

    command: str
    words: tuple[str, ...] = ()
    rank: int = 2
    m: int = 0
    n: Optional[int] = None
    trials: Optional[int] = None
    seed: int = _DEFAULT_SEED
    max_len: int = 50
    gen_len: int = 4
    max_c: int = 3
    ball_cap: int = 1_000_000
    fmt: str = "plain"
    out: Optional[str] = None
    threads: int = 1


def _nonnegative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _add_flags(sub: argparse.ArgumentParser, *names: str) -> None:
    if "rank" in names:
        sub.add_argument("--rank", type=_positive, default=2)
    if "m" in names:
        sub.add_argument("--m", type=_nonnegative, default=0)
    if "n" in names:
        sub.add_argument("--n", type=_nonnegative, default=None)
    if "trials" in names:
        sub.add_argument("--trials", type=_nonnegative, default=None)
    if "seed" in names:
        sub.add_argument("--seed", type=int, default=None)
    if "max-len" in names:
        sub.add_argument("--max-len", dest="max_len", type=_nonnegative, default=50)
    if "gen-len" in names:
        sub.add_argument("--gen-len", dest="gen_len", type=_nonnegative, default=4)
    if "max-c" in names:
        sub.add_argument("--max-c", dest="max_c", type=_nonnegative, default=3)
    if "ball-cap" in names:
        sub.add_argument("--ball-cap", dest="ball_cap", type=_nonnegative, default=1_000_000)
    if "threads" in names:
        sub.add_argument("--threads", type=_positive, default=None)
    sub.add_argument("--format", dest="fmt", choices=("plain", "csv", "json"), default="plain")
    sub.add_argument("--out", default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="apw",
        description="Free-group word utilities and almost-palindromic width experiments.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reduce", help="reduce a word to canonical syllable form")
    p.add_argument("word")
    _add_flags(p, "rank")

    p = sub.add_parser("delta", help="evaluate the syllable-growth map on a word")
    p.add_argument("word")
    _add_flags(p, "rank")

    p = sub.add_parser("syllables", help="syllables of the reduction of a word")
    p.add_argument("word")
    _add_flags(p, "rank")

    p = sub.add_parser("appal-check", help="is the word an m-almost-palindrome")
    p.add_argument("word")
    _add_flags(p, "rank", "m")

    p = sub.add_parser("witness", help="emit the n-th witness word")
    p.add_argument("--n", type=_positive, required=True)
    _add_flags(p)

    p = sub.add_parser("defect", help="additivity defect of a factor tuple")
    p.add_argument("words", nargs="*")
    _add_flags(p, "rank")

    p = sub.add_parser("check-lemma", help="randomized sweep of the 6n defect bound")
    _add_flags(p, "rank", "n", "trials", "seed", "max-len", "threads")

    p = sub.add_parser(
        "check-prop1",
        help="single-factor bound sweep; exhaustive unless --trials is given",
    )
    _add_flags(p, "rank", "m", "trials", "seed", "max-len", "threads")

    p = sub.add_parser(
        "check-prop2",
        help="product bound sweep over --n factors of --max-len letters each",
    )
    _add_flags(p, "rank", "m", "n", "trials", "seed", "max-len", "threads")

    p = sub.add_parser("width", help="budgeted decomposition search for a word")
    p.add_argument("word")
    _add_flags(p, "rank", "m", "gen-len", "max-c", "ball-cap")

    p = sub.add_parser(
        "lower-bound", help="factor-count lower bound for a word or witness --n"
    )
    p.add_argument("word", nargs="?")
    _add_flags(p, "rank", "m", "n")

    p = sub.add_parser("theorem-table", help="tabulate bounds for witnesses up to --n")
    _add_flags(p, "rank", "m", "n", "gen-len", "max-c", "ball-cap")

    return parser


def parse_args(argv: Optional[list[str]] = None) -> RunConfig:
    ns = build_parser().parse_args(argv)
    values = vars(ns)
    words: tuple[str, ...] = ()
    if "word" in values and values["word"] is not None:
        words = (values["word"],)
    elif "words" in values:
        words = tuple(values["words"])
    seed = values.get("seed")
    if seed is None:
        seed = int(os.environ.get("APW_SEED", _DEFAULT_SEED))
    threads = values.get("threads")
    if threads is None:
        threads = os.cpu_count() or 1
    cfg = RunConfig(command=values["command"], words=words, seed=seed, threads=threads)
    for name in ("rank", "m", "n", "trials", "max_len", "gen_len", "max_c", "ball_cap", "fmt", "out"):
        if name in values and values[name] is not None:
            setattr(cfg, name, values[name])
    if "n" in values:
        cfg.n = values["n"]
    if "trials" in values:
        cfg.trials = values["trials"]
    return cfg


def _emit(text: str, cfg: RunConfig) -> None:
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _emit_report(report: ExperimentReport, cfg: RunConfig) -> None:
    if cfg.fmt == "json":
        _emit(report.to_json(), cfg)
    elif cfg.fmt == "csv":
        _emit(report.to_csv(), cfg)
    elif report.rows:
        _emit(report.to_csv(), cfg)
    else:
        _emit(str(report.observed_max), cfg)


def _emit_value(value, payload: dict, cfg: RunConfig) -> None:
    if cfg.fmt == "json":
        import json

        _emit(json.dumps(payload, sort_keys=True), cfg)
    elif cfg.fmt == "csv":
        keys = sorted(payload)
        _emit(",".join(keys) + "\n" + ",".join(str(payload[k]) for k in keys), cfg)
    else:
        _emit(str(value), cfg)


def run(cfg: RunConfig) -> int:
    """Execute one resolved invocation; returns the process exit status."""
    if cfg.command == "reduce":
        rw = reduce(parse(cfg.words[0], rank=cfg.rank))
        _emit_value(format_word(rw), {"reduced": format_word(rw)}, cfg)
    elif cfg.command == "delta":
        value = delta(parse(cfg.words[0], rank=cfg.rank))
        _emit_value(value, {"delta": value}, cfg)
    elif cfg.command == "syllables":
        rw = reduce(parse(cfg.words[0], rank=cfg.rank))
        text = format_word(rw)
        _emit_value(
            text,
            {"syllables": [[g, k] for g, k in zip(rw.generators.tolist(), rw.exponents.tolist())]},
            cfg,
        )
    elif cfg.command == "appal-check":
        ok = is_m_almost_palindrome(parse(cfg.words[0], rank=cfg.rank), cfg.m)
        _emit_value("true" if ok else "false", {"m": cfg.m, "is_almost_palindrome": ok}, cfg)
    elif cfg.command == "witness":
        text = format_word(witness(cfg.n))
        _emit_value(text, {"n": cfg.n, "witness": text}, cfg)
    elif cfg.command == "defect":
        sample = defect([parse(w, rank=cfg.rank) for w in cfg.words])
        _emit_value(
            sample.defect,
            {
                "factors": [format_word(w) for w in sample.factors],
                "delta_product": sample.delta_product,
                "delta_sum": sample.delta_sum,
                "defect": sample.defect,
                "bound": sample.bound,
            },
            cfg,
        )
    elif cfg.command == "check-lemma":
        n = cfg.n if cfg.n is not None else 2
        trials = cfg.trials if cfg.trials is not None else 10_000
        report = check_lemma(cfg.rank, n, cfg.max_len, trials, seed=cfg.seed, threads=cfg.threads)
        _emit_report(report, cfg)
    elif cfg.command == "check-prop1":
        mode = "random" if cfg.trials else "exhaustive"
        report = check_prop_single(
            cfg.m,
            cfg.rank,
            cfg.max_len,
            mode=mode,
            trials=cfg.trials or 0,
            seed=cfg.seed,
            threads=cfg.threads,
        )
        _emit_report(report, cfg)
    elif cfg.command == "check-prop2":
        c = cfg.n if cfg.n is not None else 2
        trials = cfg.trials if cfg.trials is not None else 10_000
        report = check_prop_product(
            cfg.m, c, cfg.rank, cfg.max_len, trials, seed=cfg.seed, threads=cfg.threads
        )
        _emit_report(report, cfg)
    elif cfg.command == "width":
        budget = WidthBudget(gen_len=cfg.gen_len, max_c=cfg.max_c, ball_cap=cfg.ball_cap)
        answer = ap_length_upper(
            parse(cfg.words[0], rank=cfg.rank), cfg.m, budget, rank=cfg.rank
        )
        if cfg.fmt == "json":
            _emit(answer.to_json(), cfg)
        elif cfg.fmt == "csv":
            _emit(answer.to_csv(), cfg)
        else:
            _emit(str(answer.c) if answer.found else answer.kind, cfg)
    elif cfg.command == "lower-bound":
        if cfg.words:
            g = reduce(parse(cfg.words[0], rank=cfg.rank))
        elif cfg.n is not None:
            g = witness(cfg.n)
        else:
            raise ParseError("lower-bound needs a word argument or --n")
        value = lower_bound_c(g, cfg.m)
        _emit_value(value, {"m": cfg.m, "lower_bound": value}, cfg)
    elif cfg.command == "theorem-table":
        n_max = cfg.n if cfg.n is not None else 50
        budget = WidthBudget(gen_len=cfg.gen_len, max_c=cfg.max_c, ball_cap=cfg.ball_cap)
        report = theorem_table(cfg.m, n_max, budget, rank=cfg.rank)
        _emit_report(report, cfg)
    else:
        raise ValueError(f"unknown command {cfg.command!r}")
    return 0


def main(argv: Optional[list[str]] = None) -> int:
    try:
        cfg = parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return run(cfg)
    except BoundViolationError as exc:
        print(f"bound violation: {exc}", file=sys.stderr)
        return 1
    except (ParseError, EnumerationCapError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
