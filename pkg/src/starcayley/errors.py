"""Exception types shared across the package."""


class InvalidArgument(ValueError):
    """Parameters outside an operation's domain."""


class CapacityError(InvalidArgument):
    """Requested object is larger than the configured capacity."""


class NotBipartiteError(ValueError):
    """Raised by ``bipartition`` when no proper 2-coloring exists.

    ``witness`` is an edge ``(u, v)`` (``u == v`` for a loop) closing an odd walk.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class CertificationError(RuntimeError):
    """An exact eigenvector or rank check failed."""

    def __init__(self, message, eigenvalue=None, vector_id=None, coordinate=None):
        super().__init__(message)
        self.eigenvalue = eigenvalue
        self.vector_id = vector_id
        self.coordinate = coordinate
