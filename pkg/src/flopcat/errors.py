"""Exception types shared across the engine."""


class FlopcatError(Exception):
    pass


class PreconditionError(FlopcatError, ValueError):
    """An operation was called outside its stated domain."""


class CertificationError(FlopcatError):
    """The truncation window is too small to certify a result.

    ``required_cutoff`` names the smallest cutoff known to be needed, when
    that can be computed.
    """

    def __init__(self, message, required_cutoff=None):
        super().__init__(message)
        self.required_cutoff = required_cutoff


class NoClassError(FlopcatError):
    """Requested an Ext class in a degree where Ext vanishes."""


class InvalidCurveError(PreconditionError):
    pass


class NotInSubcategoryError(PreconditionError):
    pass
