"""Exact evaluation and explicit bounds for mixed character sums mod p^m."""
from .bounds import BoundReport, best_bound, classify
from .charmod import Character, all_chars, make_char, principal
from .errors import ConstantPhase, DomainError, NotApplicable
from .evaluate import Classification, SumValue, brute_sum, fast_eval
from .polyrat import ParseError, RatFunc

__all__ = [
    "BoundReport", "Character", "Classification", "ConstantPhase", "DomainError",
    "NotApplicable", "ParseError", "RatFunc", "SumValue", "all_chars", "best_bound",
    "brute_sum", "classify", "fast_eval", "make_char", "principal",
]
__version__ = "0.1.0"
