"""Exception hierarchy shared by all modules.

Every error carries a short machine-readable ``code`` so the CLI can emit
structured error JSON on stderr.
"""


class TopographError(Exception):
    code = "error"

    def __init__(self, message=""):
        super().__init__(message or self.code)


class TagMismatchError(TopographError):
    code = "tag-mismatch"


class UnsupportedRingError(TopographError):
    code = "unsupported-ring"


class NotInvertibleError(TopographError):
    code = "not-invertible"


class NotASuperbaseError(TopographError):
    code = "not-a-superbase"


class InconsistentInputError(TopographError):
    code = "inconsistent-input"


class NotUnimodularError(TopographError):
    code = "not-unimodular"


class ClassificationError(TopographError):
    code = "classification"


class SquareDiscriminantError(TopographError):
    code = "square-or-invalid-discriminant"


class InvalidDiscriminantError(TopographError):
    code = "invalid-discriminant"


class DivisibilityError(TopographError):
    code = "divisibility"


class NotPrimitiveError(TopographError):
    code = "not-primitive"


class DibasisError(TopographError):
    code = "dibasis"


class SearchExhaustedError(TopographError):
    code = "search-exhausted"


class DegenerateFormError(TopographError):
    code = "degenerate"


class IntegralityError(TopographError):
    code = "invariant-violation"


class PreconditionError(TopographError):
    code = "precondition"


class BudgetError(TopographError):
    code = "budget"
