"""Word combinatorics in free groups: reduction, almost-palindromes, the
syllable-growth map with its defect bounds, and width experiments showing
that bounded products of almost-palindromes cannot exhaust a non-abelian
free group at any fixed factor count."""

from .delta import (
    BoundViolationError,
    DefectSample,
    check_lemma,
    check_prop_product,
    check_prop_single,
    defect,
    delta,
    delta_reduced,
    sign,
)
from .palindromes import (
    DEFAULT_ENUMERATION_CAP,
    ApConfig,
    EnumerationCapError,
    enumerate_aps,
    is_m_almost_palindrome,
    is_palindrome,
    min_changes_to_palindrome,
    random_ap,
)
from .report import ExperimentReport
from .width import (
    WidthAnswer,
    WidthBudget,
    ap_generators,
    ap_length_upper,
    lower_bound_c,
    theorem_table,
    witness,
    witness_delta,
)
from .words import (
    Letter,
    ParseError,
    ReducedWord,
    Syllable,
    Word,
    concat,
    expand,
    format_word,
    group_mul,
    hamming,
    invert,
    parse,
    reduce,
    reverse,
    shortlex_key,
    syllables,
)

__version__ = "0.1.0"

__all__ = [
    "ApConfig",
    "BoundViolationError",
    "DEFAULT_ENUMERATION_CAP",
    "DefectSample",
    "EnumerationCapError",
    "ExperimentReport",
    "Letter",
    "ParseError",
    "ReducedWord",
    "Syllable",
    "WidthAnswer",
    "WidthBudget",
    "Word",
    "ap_generators",
    "ap_length_upper",
    "check_lemma",
    "check_prop_product",
    "check_prop_single",
    "concat",
    "defect",
    "delta",
    "delta_reduced",
    "enumerate_aps",
    "expand",
    "format_word",
    "group_mul",
    "hamming",
    "invert",
    "is_m_almost_palindrome",
    "is_palindrome",
    "lower_bound_c",
    "min_changes_to_palindrome",
    "parse",
    "random_ap",
    "reduce",
    "reverse",
    "shortlex_key",
    "sign",
    "syllables",
    "theorem_table",
    "witness",
    "witness_delta",
]
