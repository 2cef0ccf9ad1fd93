"""Exception types shared across modules."""


class BoundExceeded(RuntimeError):
    """A configured resource bound (degree, dimension, field size) was hit.

    ``item`` names the offending input, e.g. a Hall triple, so callers and the
    command line can report exactly what was out of range.
    """

    def __init__(self, message: str, item=None):
        super().__init__(message)
        self.item = item
