"""Exception hierarchy shared by every module."""


class ChordKnotError(Exception):
    """Base class; the CLI maps these to exit code 2."""


# chord diagram text / structure
class DiagramParseError(ChordKnotError):
    pass


class DuplicateSign(DiagramParseError):
    pass


class MissingSign(DiagramParseError):
    pass


class OddOccurrence(DiagramParseError):
    pass


class HasBandChord(ChordKnotError):
    pass


class HasXSymbols(ChordKnotError):
    pass


# word sequences
class WordError(ChordKnotError):
    pass


class UnknownToken(WordError):
    pass


class Rule1Violation(WordError):
    pass


class Rule2Violation(WordError):
    pass


class Rule3Violation(WordError):
    pass


class Rule4Violation(WordError):
    pass


class NoTargetSymbol(WordError):
    pass


class NotAnX0Token(WordError):
    pass


class InvalidPoint(WordError):
    pass


class UnknownIndex(WordError):
    pass


# knot codes and geometry
class CodeParseError(ChordKnotError):
    pass


class NonGeneric(ChordKnotError):
    pass


class BasePointOnCrossing(ChordKnotError):
    pass


class MalformedGrid(ChordKnotError):
    pass


class InvalidWord(ChordKnotError):
    pass


# invariants
class TooManyCrossings(ChordKnotError):
    pass


class NotAKnot(ChordKnotError):
    pass


# moves
class NotIsolated(ChordKnotError):
    pass


class PreconditionFailed(ChordKnotError):
    pass


class NotPositive(ChordKnotError):
    pass


class NotIndexBlocks(ChordKnotError):
    pass


class NotDisjoint(ChordKnotError):
    pass


# finite type
class OrderMismatch(ChordKnotError):
    pass


class BadConfiguration(ChordKnotError):
    pass


class RecursionBudgetExceeded(ChordKnotError):
    pass
