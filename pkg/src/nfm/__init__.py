"""A lazy functional language with pattern matching against non-free data types."""

from .errors import NfmError
from .evaluator import Interpreter

__all__ = ["Interpreter", "NfmError", "evaluate_text"]


def evaluate_text(text, stdlib=True, print_limit=100):
    """Evaluate a program in a fresh interpreter and return its printed values."""
    return Interpreter(stdlib=stdlib, print_limit=print_limit).eval_text(text)
