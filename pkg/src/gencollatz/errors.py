"""Exception hierarchy. Every error carries a short machine-readable ``code``."""


class CollatzError(Exception):
    code = "COLLATZ_ERROR"


class BadModulus(CollatzError):
    code = "BAD_MODULUS"


class MissingResidue(CollatzError):
    code = "MISSING_RESIDUE"


class InvalidEntry(CollatzError):
    code = "INVALID_ENTRY"


class DivisibilityError(CollatzError):
    code = "DIVISIBILITY"


class NonpositiveMultiplier(CollatzError):
    code = "NONPOSITIVE_MULTIPLIER"


class RankMismatch(CollatzError):
    code = "RANK_MISMATCH"


class InternalDivisibility(CollatzError):
    code = "INTERNAL_DIVISIBILITY"


class SizeGuard(CollatzError):
    code = "SIZE_GUARD"


class StateGuard(CollatzError):
    code = "STATE_GUARD"


class ShiftsDontSpan(CollatzError):
    code = "SHIFTS_DONT_SPAN"


class TooManyForms(CollatzError):
    code = "TOO_MANY_FORMS"


class NotAcute(CollatzError):
    code = "NOT_ACUTE"


class NotRelativelyPrime(CollatzError):
    code = "NOT_RELATIVELY_PRIME"


class ZeroPoint(CollatzError):
    code = "ZERO_POINT"


class EmptySample(CollatzError):
    code = "EMPTY_SAMPLE"


class FeasibilityBlowup(CollatzError):
    code = "FEASIBILITY_BLOWUP"


class ParseError(CollatzError):
    code = "PARSE"
