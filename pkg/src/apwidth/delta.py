"""The syllable-growth map and its bounded-defect checks.

For a reduced word with syllable exponents ``k_1, ..., k_n`` the map is

    delta(w) = sum over i of sign(|k_{i+1}| - |k_i|)

with value 0 on words of at most one syllable; on a raw word it is
evaluated on the reduction.  The map is nearly additive: the defect

    |delta(w_1 ... w_n) - sum of delta(w_i)|

never exceeds ``6*n``, and products of m-almost-palindromes obey the
sharper bounds ``delta <= 24*m + 12`` (single factor) and
``delta <= 24*m*c + 18*c`` (c factors).  The check functions in this
module hammer those inequalities with exhaustive and seeded randomized
sweeps; any observed violation falsifies the implementation and aborts
the run with the offending words serialized in canonical form.
"""

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .palindromes import (
    DEFAULT_ENUMERATION_CAP,
    ApConfig,
    _random_ap,
    enumerate_aps,
)
from .report import ExperimentReport
from .words import ReducedWord, Word, _reduce_codes, _wrap, format_word

__all__ = [
    "BoundViolationError",
    "DefectSample",
    "check_lemma",
    "check_prop_product",
    "check_prop_single",
    "defect",
    "delta",
    "delta_reduced",
    "sign",
]

# Trials per independently-seeded chunk; chunk seeds are base seed plus
# chunk index, and reports merge by max/sum, so results do not depend on
# the execution schedule.
_CHUNK_TRIALS = 10_000

# Above this syllable count the sign sum runs vectorised.
_VECTOR_THRESHOLD = 4096


class BoundViolationError(RuntimeError):
    """An inequality the implementation must satisfy was observed to fail."""


def sign(x: int) -> int:
    """-1, 0, or +1 according to the sign of ``x``."""
    return (x > 0) - (x < 0)


def _sign_sum(exps: Sequence[int]) -> int:
    total = 0
    prev = abs(exps[0])
    for k in exps[1:]:
        mag = abs(k)
        if mag > prev:
            total += 1
        elif mag < prev:
            total -= 1
        prev = mag
    return total


def _delta_codes(codes: Iterable[int]) -> int:
    _, exps = _reduce_codes(codes)
    if len(exps) <= 1:
        return 0
    return _sign_sum(exps)


def delta(w: Word) -> int:
    """The map evaluated on a raw word, i.e. on its reduction."""
    if isinstance(w, ReducedWord):
        return delta_reduced(w)
    return _delta_codes(w.codes)


def delta_reduced(w: ReducedWord) -> int:
    """The map evaluated directly on a reduced word's syllables."""
    n = w.syllable_count
    if n <= 1:
        return 0
    if n <= _VECTOR_THRESHOLD:
        return _sign_sum(w.exponents.tolist())
    mags = np.abs(w.exponents)
    return int(np.sign(mags[1:] - mags[:-1]).sum())


@dataclass(frozen=True)
class DefectSample:
    """Additivity defect of one factor tuple.

    Construction validates the defect arithmetic and the ``6 * n`` bound;
    a violating sample raises instead of being stored silently.
    """

    factors: tuple[Word, ...]
    delta_product: int
    delta_sum: int
    defect: int
    bound: int

    def __post_init__(self) -> None:
        if self.defect != abs(self.delta_product - self.delta_sum):
            raise ValueError("defect must equal |delta_product - delta_sum|")
        if self.defect > self.bound:
            raise BoundViolationError(
                f"defect {self.defect} exceeds bound {self.bound} for factors: "
                + _describe(self.factors)
            )


def _describe(factors: Iterable[Word]) -> str:
    return " | ".join(format_word(w) for w in factors) or "(empty)"


def _defect_codes(code_seqs: Sequence[Sequence[int]]) -> tuple[int, int, int]:
    ds = 0
    for codes in code_seqs:
        ds += _delta_codes(codes)
    dp = _delta_codes(itertools.chain.from_iterable(code_seqs))
    return dp, ds, abs(dp - ds)


def defect(factors: Sequence[Word]) -> DefectSample:
    """Evaluate the additivity defect of a factor tuple against ``6 * n``."""
    factors = tuple(factors)
    dp, ds, d = _defect_codes([w.codes for w in factors])
    return DefectSample(
        factors=factors,
        delta_product=dp,
        delta_sum=ds,
        defect=d,
        bound=6 * len(factors),
    )


def _random_factor_batch(
    rng: np.random.Generator, count: int, rank: int, max_len: int
) -> list[list[int]]:
    """Sample ``count`` words of length at most ``max_len``, mixing uniform
    reduced words with words spoiled by cancelling infixes.

    Reduced words come from a uniform non-backtracking walk: first letter
    uniform over the ``2*rank`` letters, every following letter uniform
    over the ``2*rank - 1`` letters that do not cancel its predecessor.
    Every other word (on average) instead takes a shorter walk and splices
    in one to three cancelling pairs ``x x^-1`` at random positions, so
    both reduced and unreduced inputs appear.
    """
    letters = 2 * rank
    lengths = rng.integers(0, max_len + 1, size=count)
    spoil = rng.integers(0, 2, size=count)
    pair_counts = rng.integers(1, 4, size=count)
    pair_letters = rng.integers(0, letters, size=(count, 3))
    pair_positions = rng.random(size=(count, 3))

    # Non-backtracking walk over the whole batch, one column at a time.
    # Letters are coded 0..2*rank-1 with code^1 as the inverse, so the
    # step "uniform over everything except the inverse of the previous
    # letter" is one draw from a range one smaller plus a shift.
    if max_len > 0:
        walk = np.empty((count, max_len), dtype=np.int64)
        walk[:, 0] = rng.integers(0, letters, size=count)
        for col in range(1, max_len):
            u = rng.integers(0, letters - 1, size=count)
            walk[:, col] = u + (u >= (walk[:, col - 1] ^ 1))
        signed = np.where(walk % 2 == 0, (walk >> 1) + 1, -((walk >> 1) + 1))
        rows = signed.tolist()
    else:
        rows = [[] for _ in range(count)]

    out: list[list[int]] = []
    for i in range(count):
        total = int(lengths[i])
        if spoil[i] and total >= 2:
            pairs = min(int(pair_counts[i]), total // 2)
        else:
            pairs = 0
        word = rows[i][: total - 2 * pairs]
        for p in range(pairs):
            g = int(pair_letters[i, p])
            code = (g >> 1) + 1 if g % 2 == 0 else -((g >> 1) + 1)
            pos = int(pair_positions[i, p] * (len(word) + 1))
            word[pos:pos] = [code, -code]
        out.append(word)
    return out


def _lemma_chunk(
    rank: int, n: int, max_len: int, count: int, seed: int
) -> tuple[int, dict[int, int]]:
    rng = np.random.default_rng(seed)
    if n == 0:
        return 0, {0: count}
    factors = _random_factor_batch(rng, count * n, rank, max_len)
    bound = 6 * n
    observed = 0
    hist: dict[int, int] = {}
    for t in range(count):
        chunk = factors[t * n : (t + 1) * n]
        dp, ds, d = _defect_codes(chunk)
        if d > bound:
            raise BoundViolationError(
                f"defect {d} exceeds bound {bound} for factors: "
                + _describe([_wrap(tuple(c)) for c in chunk])
            )
        if d > observed:
            observed = d
        hist[d] = hist.get(d, 0) + 1
    return observed, hist


def _run_chunks(worker, trials: int, seed: int, threads: int):
    """Split ``trials`` into fixed-size chunks seeded ``seed + index`` and
    merge (max, histogram) results; identical output for any schedule."""
    jobs = []
    index = 0
    remaining = trials
    while remaining > 0:
        size = min(_CHUNK_TRIALS, remaining)
        jobs.append((size, seed + index))
        remaining -= size
        index += 1
    if threads > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda job: worker(*job), jobs))
    else:
        results = [worker(*job) for job in jobs]
    observed = 0
    hist: dict[int, int] = {}
    for chunk_max, chunk_hist in results:
        observed = max(observed, chunk_max)
        for value, n in chunk_hist.items():
            hist[value] = hist.get(value, 0) + n
    return observed, hist


def check_lemma(
    rank: int,
    n: int,
    max_len: int,
    trials: int,
    seed: int = 0,
    threads: int = 1,
) -> ExperimentReport:
    """Randomized sweep of the additivity defect bound ``6 * n``.

    Samples ``trials`` n-tuples of random words (mixed reduced and
    unreduced, lengths at most ``max_len``) and verifies every defect; a
    violation raises ``BoundViolationError``.  Deterministic per seed.
    """
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    observed, hist = _run_chunks(
        lambda count, s: _lemma_chunk(rank, n, max_len, count, s),
        trials,
        seed,
        threads,
    )
    return ExperimentReport(
        kind="check-lemma",
        params={"rank": rank, "n": n, "max_len": max_len},
        trials=trials,
        observed_max=observed,
        bound=6 * n,
        violations=0,
        seed=seed,
        histogram=hist,
    )


def check_prop_single(
    m: int,
    rank: int,
    max_len: int,
    mode: str = "exhaustive",
    trials: int = 0,
    seed: int = 0,
    cap: int = DEFAULT_ENUMERATION_CAP,
    threads: int = 1,
) -> ExperimentReport:
    """Verify ``delta <= 24*m + 12`` on m-almost-palindromes.

    ``exhaustive`` mode scans every almost-palindrome of length up to
    ``max_len`` (subject to the enumeration cap); ``random`` mode samples
    ``trials`` words of uniform length in ``0..max_len``.
    """
    if mode not in ("exhaustive", "random"):
        raise ValueError(f"mode must be 'exhaustive' or 'random', got {mode!r}")
    bound = 24 * m + 12
    cfg = ApConfig(rank=rank, m=m, max_len=max_len)
    if mode == "exhaustive":
        observed = 0
        hist: dict[int, int] = {}
        count = 0
        for length in range(max_len + 1):
            for w in enumerate_aps(cfg, length, cap=cap):
                d = _delta_codes(w.codes)
                if d > bound:
                    raise BoundViolationError(
                        f"delta {d} exceeds bound {bound} for almost-palindrome "
                        + format_word(w)
                    )
                if d > observed:
                    observed = d
                hist[d] = hist.get(d, 0) + 1
                count += 1
        trials = count
    else:

        def chunk(count: int, s: int) -> tuple[int, dict[int, int]]:
            rng = np.random.default_rng(s)
            chunk_max = 0
            chunk_hist: dict[int, int] = {}
            for _ in range(count):
                length = int(rng.integers(0, max_len + 1))
                w = _random_ap(rng, rank, m, length)
                d = _delta_codes(w.codes)
                if d > bound:
                    raise BoundViolationError(
                        f"delta {d} exceeds bound {bound} for almost-palindrome "
                        + format_word(w)
                    )
                if d > chunk_max:
                    chunk_max = d
                chunk_hist[d] = chunk_hist.get(d, 0) + 1
            return chunk_max, chunk_hist

        observed, hist = _run_chunks(chunk, trials, seed, threads)
    return ExperimentReport(
        kind="check-prop1",
        params={"m": m, "rank": rank, "max_len": max_len, "mode": mode},
        trials=trials,
        observed_max=observed,
        bound=bound,
        violations=0,
        seed=seed,
        histogram=hist,
    )


def check_prop_product(
    m: int,
    c: int,
    rank: int,
    len_per_factor: int,
    trials: int,
    seed: int = 0,
    threads: int = 1,
) -> ExperimentReport:
    """Verify ``delta <= 24*m*c + 18*c`` on products of c sampled
    m-almost-palindromes of ``len_per_factor`` letters each."""
    if c < 0:
        raise ValueError(f"c must be nonnegative, got {c}")
    bound = 24 * m * c + 18 * c

    def chunk(count: int, s: int) -> tuple[int, dict[int, int]]:
        rng = np.random.default_rng(s)
        chunk_max = 0
        chunk_hist: dict[int, int] = {}
        for _ in range(count):
            factors = [
                _random_ap(rng, rank, m, len_per_factor).codes for _ in range(c)
            ]
            d = _delta_codes(itertools.chain.from_iterable(factors))
            if d > bound:
                raise BoundViolationError(
                    f"delta {d} exceeds bound {bound} for almost-palindrome product: "
                    + _describe([_wrap(f) for f in factors])
                )
            if d > chunk_max:
                chunk_max = d
            chunk_hist[d] = chunk_hist.get(d, 0) + 1
        return chunk_max, chunk_hist

    observed, hist = _run_chunks(chunk, trials, seed, threads)
    return ExperimentReport(
        kind="check-prop2",
        params={"m": m, "c": c, "rank": rank, "len_per_factor": len_per_factor},
        trials=trials,
        observed_max=observed,
        bound=bound,
        violations=0,
        seed=seed,
        histogram=hist,
    )
