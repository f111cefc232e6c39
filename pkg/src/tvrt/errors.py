"""Exceptions shared by the two invariant engines."""


class ResourceLimitError(RuntimeError):
    """A computation would exceed its configured work ceiling.

    ``estimate`` is the projected amount of work (colourings, states or
    cabled crossings, depending on the engine) and ``ceiling`` the limit.
    """

    def __init__(self, message: str, estimate=None, ceiling=None):
        super().__init__(message)
        self.estimate = estimate
        self.ceiling = ceiling
