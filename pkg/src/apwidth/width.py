"""Width experiments: how many almost-palindromes a group element needs.

The reduced images of m-almost-palindromes generate the free group, but
the syllable-growth map is bounded on products of ``c`` of them by
``24*m*c + 18*c``, while the witness family

    w_n = a^1 b^1 a^2 b^2 ... a^n b^n

has ``delta(w_n) = n - 1``.  Dividing gives a lower bound on the number
of factors that grows without bound in ``n``; ``lower_bound_c`` and
``theorem_table`` tabulate it.  The upper-bound side is a budgeted exact
search: breadth-first closure of a budgeted generating set up to
``max_c`` factors, meet-in-the-middle once ``max_c`` reaches 4.  A
budgeted search can only prove upper bounds; when nothing is found within
budget the answer says so and never claims nonexistence.
"""

import json
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .delta import delta_reduced
from .palindromes import (
    DEFAULT_ENUMERATION_CAP,
    ApConfig,
    enumerate_aps,
    is_m_almost_palindrome,
)
from .report import ExperimentReport
from .words import (
    ReducedWord,
    Word,
    _from_arrays,
    format_word,
    group_mul,
    invert,
    reduce,
    shortlex_key,
)

__all__ = [
    "WidthAnswer",
    "WidthBudget",
    "ap_generators",
    "ap_length_upper",
    "lower_bound_c",
    "theorem_table",
    "witness",
    "witness_delta",
]


@dataclass(frozen=True)
class WidthBudget:
    """Finite search budget.

    gen_len: letter length cap on almost-palindromes admitted as generators.
    max_c: largest factor count searched.
    ball_cap: largest number of distinct group elements stored; exceeding
        it aborts the search with a not-found answer, never a wrong one.
    """

    gen_len: int
    max_c: int
    ball_cap: int

    def __post_init__(self) -> None:
        for name in ("gen_len", "max_c", "ball_cap"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative")


@dataclass(frozen=True)
class WidthAnswer:
    """Outcome of a budgeted decomposition search.

    ``kind`` is ``found`` or ``not_found_within_budget``.  When found,
    ``certificate`` holds almost-palindrome words whose reductions multiply
    to the query element, and ``c`` is their count; ``c`` is an upper bound
    on the true factor count and is never below ``lower_bound``.
    """

    kind: str
    c: Optional[int]
    certificate: Optional[tuple[Word, ...]]
    lower_bound: int

    @property
    def found(self) -> bool:
        return self.kind == "found"

    def to_json(self) -> str:
        payload = {
            "kind": self.kind,
            "c": self.c,
            "certificate": None
            if self.certificate is None
            else [format_word(w) for w in self.certificate],
            "lower_bound": self.lower_bound,
        }
        return json.dumps(payload, sort_keys=True)

    def to_csv(self) -> str:
        cert = (
            ""
            if self.certificate is None
            else " ".join(format_word(w) for w in self.certificate)
        )
        c = "" if self.c is None else str(self.c)
        return f"kind,c,lower_bound,certificate\n{self.kind},{c},{self.lower_bound},{cert}"


def witness(n: int) -> ReducedWord:
    """The witness word ``a^1 b^1 a^2 b^2 ... a^n b^n`` (generators 0, 1).

    Letter length ``n*(n+1)``, syllable count ``2*n``; needs rank >= 2.
    """
    if n < 1:
        raise ValueError(f"witness index must be positive, got {n}")
    gens = np.tile(np.array([0, 1], dtype=np.int64), n)
    exps = np.repeat(np.arange(1, n + 1, dtype=np.int64), 2)
    return _from_arrays(gens, exps)


def witness_delta(n: int) -> int:
    """Evaluate the map on the n-th witness word and confirm it is n - 1."""
    d = delta_reduced(witness(n))
    if d != n - 1:
        raise AssertionError(f"witness delta mismatch: expected {n - 1}, got {d}")
    return d


def lower_bound_c(g: Union[Word, ReducedWord], m: int) -> int:
    """Least factor count admitted by the product bound ``24*m*c + 18*c``.

    Returns the smallest ``c`` with ``(24*m + 18) * c >= delta(g)``, raised
    to 1 for any nonidentity element (and 0 for the identity, which needs
    no factors at all).
    """
    if m < 0:
        raise ValueError(f"m must be nonnegative, got {m}")
    rw = g if isinstance(g, ReducedWord) else reduce(g)
    if rw.is_identity:
        return 0
    d = delta_reduced(rw)
    if d <= 0:
        return 1
    per_factor = 24 * m + 18
    return max(1, -(-d // per_factor))


def _generator_reps(
    m: int, rank: int, gen_len: int, cap: int
) -> list[tuple[ReducedWord, Word]]:
    """Reduced images of almost-palindromes of length at most ``gen_len``,
    paired with a representative almost-palindrome, sorted canonically.

    The identity is excluded.  The set is closed under inversion; the
    inverse of each representative is itself an almost-palindrome and is
    registered explicitly alongside it.
    """
    cfg = ApConfig(rank=rank, m=m, max_len=gen_len)
    reps: dict[ReducedWord, Word] = {}
    for length in range(gen_len + 1):
        for p in enumerate_aps(cfg, length, cap=cap):
            rw = reduce(p)
            if rw.is_identity:
                continue
            if rw not in reps:
                reps[rw] = p
            inv = rw.inverse()
            if inv not in reps:
                reps[inv] = invert(p)
    for rw in reps:
        if rw.inverse() not in reps:
            raise AssertionError(
                f"generator set not closed under inversion at {format_word(rw)}"
            )
    return sorted(reps.items(), key=lambda item: shortlex_key(item[0]))


def ap_generators(
    m: int, rank: int, gen_len: int, cap: int = DEFAULT_ENUMERATION_CAP
) -> set[ReducedWord]:
    """The budgeted generating set: reductions of almost-palindromes of
    length at most ``gen_len``, identity excluded."""
    return {rw for rw, _ in _generator_reps(m, rank, gen_len, cap)}


def _identity() -> ReducedWord:
    return _from_arrays(np.empty(0, np.int64), np.empty(0, np.int64))


class _Ball:
    """One side of the search: elements keyed by canonical bytes, each with
    (level, parent key, generator index) back-pointers, plus the ordered
    frontier of the last completed level."""

    def __init__(self, root: ReducedWord):
        self.seen: dict[bytes, tuple[int, Optional[bytes], int]] = {
            root._bytes_key(): (0, None, -1)
        }
        self.frontier: list[ReducedWord] = [root]
        self.depth = 0

    def grow(
        self, steps: list[ReducedWord], stored_budget: int
    ) -> tuple[Optional[list[ReducedWord]], int]:
        """Expand one level by right-multiplying the frontier with every
        step element; returns (new frontier, remaining budget), or
        (None, budget) when the element budget runs out."""
        level = self.depth + 1
        new: list[ReducedWord] = []
        for elem in self.frontier:
            parent_key = elem._bytes_key()
            for gi, step in enumerate(steps):
                child = group_mul(elem, step)
                key = child._bytes_key()
                if key in self.seen:
                    continue
                if stored_budget <= 0:
                    return None, stored_budget
                stored_budget -= 1
                self.seen[key] = (level, parent_key, gi)
                new.append(child)
        self.depth = level
        self.frontier = new
        return new, stored_budget

    def chain_to_root(self, key: bytes) -> list[int]:
        """Generator indices along the back-pointer chain, walking from
        ``key`` toward the root."""
        out: list[int] = []
        cur = key
        while True:
            level, parent, gi = self.seen[cur]
            if level == 0:
                break
            out.append(gi)
            cur = parent
        return out


def _forward_search(
    target_key: bytes,
    steps: list[ReducedWord],
    max_c: int,
    ball_cap: int,
) -> Optional[tuple[int, list[int]]]:
    """Plain breadth-first closure from the identity, exact up to
    ``max_c`` factors.  Frontier order plus generator order make the first
    hit the lexicographically least certificate."""
    ball = _Ball(_identity())
    budget = ball_cap - 1
    for level in range(1, max_c + 1):
        new: list[ReducedWord] = []
        for elem in ball.frontier:
            parent_key = elem._bytes_key()
            for gi, step in enumerate(steps):
                child = group_mul(elem, step)
                key = child._bytes_key()
                if key in ball.seen:
                    continue
                if budget <= 0:
                    return None
                budget -= 1
                ball.seen[key] = (level, parent_key, gi)
                if key == target_key:
                    return level, ball.chain_to_root(key)[::-1]
                new.append(child)
        if not new:
            return None
        ball.frontier = new
        ball.depth = level
    return None


def _mitm_search(
    target: ReducedWord,
    steps: list[ReducedWord],
    max_c: int,
    ball_cap: int,
) -> Optional[tuple[int, list[int]]]:
    """Meet-in-the-middle: grow a ball from the identity and a ball from
    the target (right-multiplying by generator inverses) and look for
    meets whose level sum equals the candidate factor count.

    For the minimal ``c`` every decomposition splits at position
    ceil(c/2) into a prefix at forward level exactly ceil(c/2) and a
    suffix at backward level exactly floor(c/2), so only the freshly grown
    level needs scanning at each step.  Among the meets the combined
    certificate least in generator order is returned.
    """
    inverse_steps = [g.inverse() for g in steps]
    fwd = _Ball(_identity())
    bwd = _Ball(target)
    budget = ball_cap - 2
    for c in range(1, max_c + 1):
        fwd_depth = (c + 1) // 2
        bwd_depth = c // 2
        if fwd.depth < fwd_depth:
            grown, budget = fwd.grow(steps, stored_budget=budget)
            other, other_level = bwd, bwd_depth
        else:
            grown, budget = bwd.grow(inverse_steps, stored_budget=budget)
            other, other_level = fwd, fwd_depth
        if grown is None:
            return None
        best: Optional[list[int]] = None
        for elem in grown:
            key = elem._bytes_key()
            entry = other.seen.get(key)
            if entry is None or entry[0] != other_level:
                continue
            # Forward chains read root-to-leaf, backward chains leaf-to-root;
            # a backward step by the inverse of generator x prepends x to
            # the suffix, so the walk order is already the factor order.
            cert = fwd.chain_to_root(key)[::-1] + bwd.chain_to_root(key)
            if best is None or cert < best:
                best = cert
        if best is not None:
            return c, best
    return None


def ap_length_upper(
    g: Union[Word, ReducedWord],
    m: int,
    budget: WidthBudget,
    rank: int = 2,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> WidthAnswer:
    """Budgeted exact search for a decomposition of ``g`` into reductions
    of almost-palindromes of length at most ``budget.gen_len``.

    Exact relative to the budget: within ``max_c`` factors over the
    budgeted generating set nothing is missed, so a found ``c`` is an
    upper bound for the unbudgeted factor count as well.  Every result is
    checked before being returned: certificate words must be
    almost-palindromes within the length budget, their reductions must
    multiply to the query, and the count must dominate the lower bound.
    """
    target = g if isinstance(g, ReducedWord) else reduce(g)
    lb = lower_bound_c(target, m)
    if target.is_identity:
        return WidthAnswer(kind="found", c=0, certificate=(), lower_bound=0)
    if budget.max_c == 0 or budget.gen_len == 0:
        return WidthAnswer(
            kind="not_found_within_budget", c=None, certificate=None, lower_bound=lb
        )
    gens = _generator_reps(m, rank, budget.gen_len, cap)
    if not gens:
        return WidthAnswer(
            kind="not_found_within_budget", c=None, certificate=None, lower_bound=lb
        )
    steps = [rw for rw, _ in gens]
    if budget.max_c >= 4:
        hit = _mitm_search(target, steps, budget.max_c, budget.ball_cap)
    else:
        hit = _forward_search(target._bytes_key(), steps, budget.max_c, budget.ball_cap)
    if hit is None:
        return WidthAnswer(
            kind="not_found_within_budget", c=None, certificate=None, lower_bound=lb
        )
    c, indices = hit
    certificate = tuple(gens[i][1] for i in indices)
    _check_certificate(target, m, budget.gen_len, c, certificate, lb)
    return WidthAnswer(kind="found", c=c, certificate=certificate, lower_bound=lb)


def _check_certificate(
    target: ReducedWord,
    m: int,
    gen_len: int,
    c: int,
    certificate: tuple[Word, ...],
    lb: int,
) -> None:
    """Soundness gate run on every search result."""
    if len(certificate) != c:
        raise AssertionError("certificate length does not match the factor count")
    if c < lb:
        raise AssertionError(
            f"found factor count {c} undercuts the lower bound {lb}"
        )
    product = _from_arrays(np.empty(0, np.int64), np.empty(0, np.int64))
    for w in certificate:
        if len(w) > gen_len:
            raise AssertionError("certificate word exceeds the generator budget")
        if not is_m_almost_palindrome(w, m):
            raise AssertionError(
                f"certificate word {format_word(w)} is not an {m}-almost-palindrome"
            )
        product = group_mul(product, reduce(w))
    if product != target:
        raise AssertionError("certificate product does not equal the query element")


def theorem_table(
    m: int,
    n_max: int,
    budget: WidthBudget,
    rank: int = 2,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> ExperimentReport:
    """Tabulate, for n up to ``n_max``: the witness word's map value, the
    factor-count lower bound, and the budgeted upper bound when one exists.

    The lower-bound column grows without bound in ``n``; no budget makes
    the upper-bound column catch up, which is the point of the table.
    """
    if rank < 2:
        raise ValueError("the witness family needs rank at least 2")
    if n_max < 0:
        raise ValueError(f"n_max must be nonnegative, got {n_max}")
    levels: dict[bytes, int] = {}
    completed_depth = 0
    if budget.gen_len > 0 and budget.max_c > 0:
        gens = _generator_reps(m, rank, budget.gen_len, cap)
        if gens:
            steps = [rw for rw, _ in gens]
            ball = _Ball(_identity())
            budget_left = budget.ball_cap - 1
            for _ in range(budget.max_c):
                grown, budget_left = ball.grow(steps, stored_budget=budget_left)
                if grown is None:
                    break
                completed_depth = ball.depth
                if not grown:
                    break
            levels = {key: entry[0] for key, entry in ball.seen.items()}
    rows = []
    max_lb = 0
    for n in range(1, n_max + 1):
        w = witness(n)
        d = delta_reduced(w)
        lb = lower_bound_c(w, m)
        level = levels.get(w._bytes_key())
        if level is not None and level <= completed_depth:
            if level < lb:
                raise AssertionError(
                    f"upper bound {level} undercuts lower bound {lb} at n={n}"
                )
            upper: Optional[int] = level
            status = "found"
        else:
            upper = None
            status = "not_found_within_budget"
        max_lb = max(max_lb, lb)
        rows.append(
            {
                "n": n,
                "delta": d,
                "lower_bound_c": lb,
                "upper_c": upper,
                "status": status,
            }
        )
    return ExperimentReport(
        kind="theorem-table",
        params={
            "m": m,
            "rank": rank,
            "n_max": n_max,
            "gen_len": budget.gen_len,
            "max_c": budget.max_c,
            "ball_cap": budget.ball_cap,
        },
        trials=n_max,
        observed_max=max_lb,
        bound=0,
        violations=0,
        seed=0,
        rows=tuple(rows),
        row_fields=("n", "delta", "lower_bound_c", "upper_c", "status"),
    )
