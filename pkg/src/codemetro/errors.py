"""Exception types shared across the package."""


class CodeMetroError(Exception):
    """Base class for all package errors."""


class DomainError(CodeMetroError, ValueError):
    """An argument lies outside the domain an operation is defined on."""


class RankError(CodeMetroError, ValueError):
    pass


class SizeError(CodeMetroError, ValueError):
    """A configured size or enumeration cap would be exceeded."""


class EmptyClassError(CodeMetroError, KeyError):
    pass


class DisjointnessError(CodeMetroError):
    """The shortened codes of a family overlap, so the bounds are not proven."""


class PreconditionError(CodeMetroError, ValueError):
    pass


class MalformedStateError(CodeMetroError, ValueError):
    """Density operator is not Hermitian, not PSD, or not unit trace."""


class NormalizationError(CodeMetroError, ValueError):
    pass


class DegenerateFamilyError(CodeMetroError, ZeroDivisionError):
    pass
