"""Palindromes, m-almost-palindromes, and their enumeration.

A word is an m-almost-palindrome when it can be turned into a palindrome
by changing at most ``m`` letters; equivalently, when it disagrees with
its own reversal in at most ``2*m`` positions.  Detection therefore costs
one pass over half the word instead of a search over candidate
palindromes.
"""

import itertools
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .words import Word, _wrap

__all__ = [
    "ApConfig",
    "DEFAULT_ENUMERATION_CAP",
    "EnumerationCapError",
    "enumerate_aps",
    "is_m_almost_palindrome",
    "is_palindrome",
    "min_changes_to_palindrome",
    "random_ap",
]

# Guard against accidentally enumerating an astronomically large cube of
# words; (2*rank)**length must stay below this.
DEFAULT_ENUMERATION_CAP = 20_000_000


class EnumerationCapError(RuntimeError):
    """An exhaustive enumeration would exceed its configured cap."""


@dataclass(frozen=True)
class ApConfig:
    """Parameters for almost-palindrome sweeps.

    rank: number of generators in the basis.
    m: number of letter changes allowed relative to a palindrome.
    max_len: letter budget for enumeration.
    """

    rank: int
    m: int
    max_len: int

    def __post_init__(self) -> None:
        if self.rank < 1:
            raise ValueError(f"rank must be at least 1, got {self.rank}")
        if self.m < 0:
            raise ValueError(f"m must be nonnegative, got {self.m}")
        if self.max_len < 0:
            raise ValueError(f"max_len must be nonnegative, got {self.max_len}")


def is_palindrome(w: Word) -> bool:
    """True iff the word equals its own reversal letter by letter."""
    c = w.codes
    return c == c[::-1]


def min_changes_to_palindrome(w: Word) -> int:
    """Least number of letter changes that turn ``w`` into a palindrome.

    Equals half the Hamming distance between ``w`` and its reversal:
    each mismatched mirror pair needs exactly one change.
    """
    c = w.codes
    n = len(c)
    return sum(1 for i in range(n // 2) if c[i] != c[n - 1 - i])


def is_m_almost_palindrome(w: Word, m: int) -> bool:
    """True iff at most ``m`` letter changes separate ``w`` from a palindrome."""
    if m < 0:
        raise ValueError(f"m must be nonnegative, got {m}")
    return min_changes_to_palindrome(w) <= m


def _alphabet(rank: int) -> list[int]:
    """Letter codes in canonical order: a < A < b < B < ..."""
    codes = []
    for g in range(rank):
        codes.append(g + 1)
        codes.append(-(g + 1))
    return codes


def enumerate_aps(
    cfg: ApConfig, exact_len: int, cap: int = DEFAULT_ENUMERATION_CAP
) -> Iterator[Word]:
    """Yield every m-almost-palindrome of exactly ``exact_len`` letters.

    Words appear once each, in lexicographic letter order with
    ``a < A < b < B < ...``; the stream is deterministic.  Raises
    ``EnumerationCapError`` when ``(2*rank)**exact_len`` exceeds ``cap``.
    """
    if exact_len < 0:
        raise ValueError(f"exact_len must be nonnegative, got {exact_len}")
    if exact_len > cfg.max_len:
        raise ValueError(
            f"exact_len {exact_len} exceeds the configured budget {cfg.max_len}"
        )
    total = (2 * cfg.rank) ** exact_len
    if total > cap:
        raise EnumerationCapError(
            f"enumerating {total} words of length {exact_len} exceeds the cap {cap}"
        )
    m = cfg.m
    half = exact_len // 2
    last = exact_len - 1
    for tup in itertools.product(_alphabet(cfg.rank), repeat=exact_len):
        mismatches = 0
        for i in range(half):
            if tup[i] != tup[last - i]:
                mismatches += 1
                if mismatches > m:
                    break
        if mismatches <= m:
            yield _wrap(tup)


def _random_ap(rng: np.random.Generator, rank: int, m: int, length: int) -> Word:
    """Sample one m-almost-palindrome: a uniform palindrome of the given
    length followed by ``j`` changes at distinct positions, ``j`` uniform
    in ``0..m``.  A change may pick any of the ``2*rank - 1`` other
    letters, so results cover all of the m-almost-palindromes rather than
    only the boundary."""
    if length == 0:
        return _wrap(())
    half = (length + 1) // 2
    raw = rng.integers(0, 2 * rank, size=half).tolist()
    head = [(c >> 1) + 1 if c % 2 == 0 else -((c >> 1) + 1) for c in raw]
    codes = head + head[: length // 2][::-1]
    j = min(int(rng.integers(0, m + 1)), length) if m else 0
    if j:
        positions = rng.choice(length, size=j, replace=False)
        alphabet = _alphabet(rank)
        for pos in positions.tolist():
            others = [c for c in alphabet if c != codes[pos]]
            codes[pos] = others[int(rng.integers(0, len(others)))]
    return _wrap(tuple(codes))


def random_ap(cfg: ApConfig, length: int, seed: int) -> Word:
    """Deterministically sample an m-almost-palindrome of ``length`` letters."""
    if length < 0:
        raise ValueError(f"length must be nonnegative, got {length}")
    rng = np.random.default_rng(seed)
    return _random_ap(rng, cfg.rank, cfg.m, length)
