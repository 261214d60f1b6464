"""Word algebra for free monoids and free groups of finite rank.

A word is a finite sequence of letters over a basis of ``rank`` generators,
where each letter is a generator index together with a sign.  Internally a
letter is packed into the nonzero integer ``sign * (generator + 1)``, so
negation is inversion and letter comparisons are plain integer comparisons.
A reduced word is stored in run-length form: two parallel integer arrays
holding the generator and the signed exponent of each syllable.  This keeps
words such as ``a^1 b^1 a^2 b^2 ... a^n b^n`` (letter length ``n*(n+1)``)
at ``2*n`` machine words and lets bulk operations run vectorised.

All values are immutable after construction; every operation is a pure
function of its inputs and safe to use from any number of threads.
"""

import re
from typing import Iterable, Iterator, NamedTuple, Union

import numpy as np

__all__ = [
    "Letter",
    "ParseError",
    "ReducedWord",
    "Syllable",
    "Word",
    "concat",
    "expand",
    "format_word",
    "group_mul",
    "hamming",
    "invert",
    "parse",
    "reduce",
    "reverse",
    "shortlex_key",
    "syllables",
]

# The text grammar maps a..z onto generator indices 0..25; the core itself
# is agnostic to rank.
_TEXT_RANK_LIMIT = 26

# Hard ceiling on the number of letters a single parse may expand to.
_PARSE_LETTER_LIMIT = 100_000_000

_TOKEN = re.compile(r"([a-zA-Z])(?:\^([+-]?\d+))?")


class ParseError(ValueError):
    """Word text that does not conform to the grammar."""


class Letter(NamedTuple):
    """A single alphabet symbol: generator index plus a sign.

    ``sign`` is ``+1`` for the generator itself and ``-1`` for its inverse.
    """

    generator: int
    sign: int

    def inverse(self) -> "Letter":
        return Letter(self.generator, -self.sign)

    @property
    def code(self) -> int:
        """Packed integer form ``sign * (generator + 1)``; never zero."""
        return self.sign * (self.generator + 1)

    @classmethod
    def from_code(cls, code: int) -> "Letter":
        if code > 0:
            return cls(code - 1, 1)
        if code < 0:
            return cls(-code - 1, -1)
        raise ValueError("letter code must be nonzero")


class Syllable(NamedTuple):
    """A maximal run ``g^k`` inside a reduced word; ``k`` is never zero."""

    generator: int
    exponent: int


def _letter_code(generator: int, sign: int) -> int:
    if sign not in (1, -1):
        raise ValueError(f"letter sign must be +1 or -1, got {sign!r}")
    if generator < 0:
        raise ValueError(f"generator index must be nonnegative, got {generator!r}")
    return sign * (generator + 1)


class Word:
    """An element of the free monoid: a raw, not necessarily reduced word.

    Two words are equal only letter by letter; ``Word("aA" parsed)`` and the
    empty word are distinct monoid elements even though they reduce to the
    same group element.
    """

    __slots__ = ("_codes",)

    def __init__(self, letters: Iterable[Union[Letter, tuple[int, int]]] = ()):
        self._codes = tuple(_letter_code(g, s) for g, s in letters)

    @classmethod
    def from_codes(cls, codes: Iterable[int]) -> "Word":
        """Build a word from packed letter codes ``sign * (generator + 1)``."""
        codes = tuple(codes)
        if any(c == 0 for c in codes):
            raise ValueError("letter codes must be nonzero")
        return _wrap(codes)

    @property
    def codes(self) -> tuple[int, ...]:
        """The packed letter codes; the fastest way to inspect a word."""
        return self._codes

    @property
    def letters(self) -> tuple[Letter, ...]:
        return tuple(Letter.from_code(c) for c in self._codes)

    def __len__(self) -> int:
        return len(self._codes)

    def __iter__(self) -> Iterator[Letter]:
        return (Letter.from_code(c) for c in self._codes)

    def __getitem__(self, index: int) -> Letter:
        return Letter.from_code(self._codes[index])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Word):
            return NotImplemented
        return self._codes == other._codes

    def __hash__(self) -> int:
        return hash(self._codes)

    def __add__(self, other: "Word") -> "Word":
        if not isinstance(other, Word):
            return NotImplemented
        return _wrap(self._codes + other._codes)

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r})"


def _wrap(codes: tuple[int, ...]) -> Word:
    """Trusted constructor: wrap already-validated letter codes."""
    w = object.__new__(Word)
    w._codes = codes
    return w


class ReducedWord:
    """A reduced word in syllable form; the canonical free-group element.

    Invariants: every exponent is nonzero and adjacent syllables use
    distinct generators, so the letter expansion has no cancelling pair.
    """

    __slots__ = ("_gens", "_exps", "_key")

    def __init__(self, syllables: Iterable[Union[Syllable, tuple[int, int]]] = ()):
        gens: list[int] = []
        exps: list[int] = []
        for g, k in syllables:
            if k == 0:
                raise ValueError("syllable exponent must be nonzero")
            if g < 0:
                raise ValueError(f"generator index must be nonnegative, got {g!r}")
            if gens and gens[-1] == g:
                raise ValueError("adjacent syllables must use distinct generators")
            gens.append(g)
            exps.append(k)
        self._gens = _freeze(np.asarray(gens, dtype=np.int64))
        self._exps = _freeze(np.asarray(exps, dtype=np.int64))
        self._key = None

    @property
    def syllables(self) -> tuple[Syllable, ...]:
        return tuple(
            Syllable(int(g), int(k))
            for g, k in zip(self._gens.tolist(), self._exps.tolist())
        )

    @property
    def syllable_count(self) -> int:
        return int(self._gens.size)

    @property
    def letter_length(self) -> int:
        return int(np.abs(self._exps).sum()) if self._exps.size else 0

    @property
    def is_identity(self) -> bool:
        return self._gens.size == 0

    @property
    def exponents(self) -> np.ndarray:
        """Read-only array of signed syllable exponents."""
        return self._exps

    @property
    def generators(self) -> np.ndarray:
        """Read-only array of syllable generator indices."""
        return self._gens

    def expand(self) -> Word:
        """Materialise the letter sequence of this reduced word."""
        if self._gens.size == 0:
            return _wrap(())
        base = np.where(self._exps > 0, self._gens + 1, -(self._gens + 1))
        codes = np.repeat(base, np.abs(self._exps))
        return _wrap(tuple(codes.tolist()))

    def inverse(self) -> "ReducedWord":
        gens = np.ascontiguousarray(self._gens[::-1])
        exps = np.ascontiguousarray(-self._exps[::-1])
        return _from_arrays(gens, exps)

    def _bytes_key(self) -> bytes:
        key = self._key
        if key is None:
            key = self._gens.tobytes() + self._exps.tobytes()
            self._key = key
        return key

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ReducedWord):
            return NotImplemented
        return self._bytes_key() == other._bytes_key()

    def __hash__(self) -> int:
        return hash(self._bytes_key())

    def __mul__(self, other: "ReducedWord") -> "ReducedWord":
        if not isinstance(other, ReducedWord):
            return NotImplemented
        return group_mul(self, other)

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"ReducedWord({format_word(self)!r})"


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


def _from_arrays(gens: np.ndarray, exps: np.ndarray) -> ReducedWord:
    """Trusted constructor for syllable arrays that already satisfy the
    reduced-word invariants."""
    w = object.__new__(ReducedWord)
    w._gens = _freeze(gens)
    w._exps = _freeze(exps)
    w._key = None
    return w


def _reduce_codes(codes: Iterable[int]) -> tuple[list[int], list[int]]:
    """Freely reduce a letter-code sequence straight into syllable lists.

    One left-to-right pass with a syllable stack: a letter either extends
    the top syllable, cancels one letter off it (popping it at zero), or
    starts a new syllable.  Confluence of free reduction makes the result
    independent of cancellation order.
    """
    gens: list[int] = []
    exps: list[int] = []
    for c in codes:
        if c > 0:
            g = c - 1
            s = 1
        else:
            g = -c - 1
            s = -1
        if gens and gens[-1] == g:
            e = exps[-1] + s
            if e:
                exps[-1] = e
            else:
                gens.pop()
                exps.pop()
        else:
            gens.append(g)
            exps.append(s)
    return gens, exps


def reduce(w: Word) -> ReducedWord:
    """Map a word to its reduced form (the free-group element it spells)."""
    gens, exps = _reduce_codes(w.codes)
    return _from_arrays(
        np.asarray(gens, dtype=np.int64), np.asarray(exps, dtype=np.int64)
    )


def expand(w: ReducedWord) -> Word:
    """Letter expansion of a reduced word; inverse to ``reduce`` on its image."""
    return w.expand()


def concat(u: Word, v: Word) -> Word:
    """Free-monoid product: the letters of ``u`` followed by those of ``v``."""
    return _wrap(u.codes + v.codes)


def group_mul(u: ReducedWord, v: ReducedWord) -> ReducedWord:
    """Free-group product: concatenate and cancel at the seam.

    Equals ``reduce(concat(expand(u), expand(v)))`` without materialising
    letters.  Exponent sums are checked; values beyond 64-bit signed range
    raise ``OverflowError`` rather than wrapping.
    """
    gens = u._gens.tolist()
    exps = u._exps.tolist()
    for g, k in zip(v._gens.tolist(), v._exps.tolist()):
        if gens and gens[-1] == g:
            e = exps[-1] + k
            if e:
                exps[-1] = e
            else:
                gens.pop()
                exps.pop()
        else:
            gens.append(g)
            exps.append(k)
    return _from_arrays(
        np.asarray(gens, dtype=np.int64), np.asarray(exps, dtype=np.int64)
    )


def invert(w: Word) -> Word:
    """Formal inverse: letters reversed with every sign flipped."""
    return _wrap(tuple(-c for c in reversed(w.codes)))


def reverse(w: Word) -> Word:
    """The word read back to front (signs untouched)."""
    return _wrap(w.codes[::-1])


def syllables(w: ReducedWord) -> tuple[Syllable, ...]:
    """The maximal generator runs of a reduced word, in order."""
    return w.syllables


def hamming(u: Word, v: Word) -> int:
    """Number of positions at which two equal-length words differ.

    Words of different letter counts are incomparable and raise
    ``ValueError``.
    """
    a = u.codes
    b = v.codes
    if len(a) != len(b):
        raise ValueError(
            f"hamming distance needs words of equal length, got {len(a)} and {len(b)}"
        )
    return sum(1 for x, y in zip(a, b) if x != y)


def _gen_char(g: int) -> str:
    if g >= _TEXT_RANK_LIMIT:
        raise ValueError(
            f"the text grammar covers generators a..z; index {g} is out of range"
        )
    return chr(ord("a") + g)


def format_word(w: Union[Word, ReducedWord]) -> str:
    """Canonical text form: ``g^k`` tokens joined by single spaces.

    For a reduced word the tokens are its syllables.  For a raw word they
    are the maximal runs of one letter, so the exact letter sequence
    round-trips through ``parse``.  The empty word prints as ``1``.
    """
    if isinstance(w, ReducedWord):
        runs = list(zip(w._gens.tolist(), w._exps.tolist()))
    else:
        runs = []
        for c in w.codes:
            g = abs(c) - 1
            s = 1 if c > 0 else -1
            if runs and runs[-1][0] == g and (runs[-1][1] > 0) == (s > 0):
                runs[-1] = (g, runs[-1][1] + s)
            else:
                runs.append((g, s))
    if not runs:
        return "1"
    return " ".join(f"{_gen_char(g)}^{k}" for g, k in runs)


def parse(text: str, rank: Union[int, None] = None) -> Word:
    """Parse word text into a ``Word``.

    Grammar: a sequence of tokens with optional whitespace between them.
    A token is a letter ``a``-``z`` (or ``A``-``Z`` for the inverse),
    optionally followed by ``^`` and a signed decimal exponent; the
    exponent form requires a lowercase letter and applies to it, so
    ``a^-2`` spells the two letters ``A A``.  The input ``1`` on its own
    denotes the empty word.  When ``rank`` is given, generators at or
    beyond it are rejected.
    """
    s = text.strip()
    if s == "1":
        return _wrap(())
    codes: list[int] = []
    total = 0
    pos = 0
    end = len(s)
    while pos < end:
        if s[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(s, pos)
        if m is None:
            raise ParseError(f"malformed token at position {pos} in {text!r}")
        sym = m.group(1)
        exp_text = m.group(2)
        g = ord(sym.lower()) - ord("a")
        if rank is not None and g >= rank:
            raise ParseError(f"unknown generator {sym!r} for rank {rank}")
        if exp_text is None:
            k = 1 if sym.islower() else -1
        else:
            if not sym.islower():
                raise ParseError(
                    f"exponent form requires a lowercase generator, got {m.group(0)!r}"
                )
            k = int(exp_text)
        total += abs(k)
        if total > _PARSE_LETTER_LIMIT:
            raise ParseError(
                f"exponent overflow: word expands beyond {_PARSE_LETTER_LIMIT} letters"
            )
        if k:
            codes.extend([g + 1 if k > 0 else -(g + 1)] * abs(k))
        pos = m.end()
    return _wrap(tuple(codes))


def shortlex_key(w: Union[Word, ReducedWord]) -> tuple:
    """Sort key for the canonical word order: by length, then letterwise
    with ``a < A < b < B < ...``."""
    codes = w.codes if isinstance(w, Word) else w.expand().codes
    return (len(codes), tuple(2 * (abs(c) - 1) + (c < 0) for c in codes))
