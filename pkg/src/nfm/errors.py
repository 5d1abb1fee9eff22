"""Exception hierarchy shared by every stage of the interpreter.

Each error carries a ``kind`` used by the REPL and the golden harness when
rendering ``Error: <kind>: <detail>``.
"""


class NfmError(Exception):
    kind = "Error"

    def __init__(self, detail=""):
        super().__init__(detail)
        self.detail = detail

    def render(self):
        return f"Error: {self.kind}: {self.detail}"


# reader / parser

class ReadError(NfmError):
    def __init__(self, detail, position=None):
        super().__init__(detail if position is None else f"{detail} at {position}")
        self.position = position


class UnbalancedDelimiter(ReadError):
    kind = "UnbalancedDelimiter"


class UnexpectedEnd(UnbalancedDelimiter):
    """Input ended inside an open group; more text may complete it."""


class StrayToken(ReadError):
    kind = "StrayToken"


class NfmSyntaxError(NfmError):
    kind = "SyntaxError"


class MisplacedEllipsis(NfmSyntaxError):
    kind = "MisplacedEllipsis"


# evaluation

class EvalError(NfmError):
    kind = "EvalError"


class UnboundVariable(EvalError):
    kind = "UnboundVariable"


class NotAFunction(EvalError):
    kind = "NotAFunction"


class ArityMismatch(EvalError):
    kind = "ArityMismatch"


class BlackHole(EvalError):
    kind = "BlackHole"


class TypeMismatch(EvalError):
    kind = "TypeMismatch"


class RecursionDepth(EvalError):
    kind = "RecursionDepth"


class NegativeCount(EvalError):
    kind = "NegativeCount"


# matching

class NoMatch(EvalError):
    kind = "NoMatch"


class MatcherMismatch(EvalError):
    kind = "MatcherMismatch"


class DuplicateBinding(EvalError):
    kind = "DuplicateBinding"


class NonIntegerLoopBound(EvalError):
    kind = "NonIntegerLoopBound"


class ValuePatternUnderSomething(EvalError):
    kind = "ValuePatternUnderSomething"


class EqualityTooLarge(EvalError):
    kind = "EqualityTooLarge"


class DuplicateConstructor(EvalError):
    kind = "DuplicateConstructor"


class UnknownFieldMatcher(EvalError):
    kind = "UnknownFieldMatcher"


class OracleTooLarge(NfmError):
    kind = "OracleTooLarge"
