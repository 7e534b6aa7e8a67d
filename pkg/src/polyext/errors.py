class PolyextError(ValueError):
    """Base class for input and precondition failures."""


class DegenerateBallError(PolyextError):
    """Generators do not span: the hull has empty interior."""


class SeminormError(PolyextError):
    """Functionals do not separate points; ``witness`` is a nonzero kernel vector."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class PreconditionError(PolyextError):
    pass


class ResourceError(PolyextError):
    """A configured size cap would be exceeded."""


class EmbeddingError(PolyextError):
    """A map fails to be an embedding of partial isometries."""

    def __init__(self, message, vector=None):
        super().__init__(message)
        self.vector = vector
