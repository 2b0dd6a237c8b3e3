"""Exception hierarchy shared by every engine module."""


class KhovanovError(Exception):
    pass


class DiagramError(KhovanovError):
    """Invalid diagram, braid word, PD text or crossing selection."""

    def __init__(self, message: str, line: int = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class CubeLimitError(KhovanovError):
    """The diagram has more crossings than the configured cube limit."""

    def __init__(self, crossings: int, limit: int):
        self.crossings = crossings
        self.limit = limit
        super().__init__(f"diagram has {crossings} crossings, cube limit is {limit}")


class ConsistencyError(KhovanovError):
    """An identity that must hold by construction failed (sign or shift convention bug)."""
