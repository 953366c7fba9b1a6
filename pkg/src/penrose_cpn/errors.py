"""Exception types shared across the package."""


class PenroseError(ValueError):
    """Base class for every error raised by this package."""


class NodeOutOfRange(PenroseError):
    def __init__(self, node: int, n: int):
        super().__init__(f"node {node} out of range 1..{n}")
        self.node = node
        self.n = n


class MalformedSegments(PenroseError):
    pass


class NotDominant(PenroseError):
    pass


class RankMismatch(PenroseError):
    pass


class NotLeviDominant(PenroseError):
    """A bundle label is negative on an uncrossed node."""

    def __init__(self, node: int, label=None):
        where = f" in label {label}" if label is not None else ""
        super().__init__(f"NotLeviDominant({node}): uncrossed node {node} carries a negative coefficient{where}")
        self.node = node


class BundleSyntaxError(PenroseError):
    def __init__(self, text: str, position: int, reason: str):
        super().__init__(f"syntax error at position {position} in {text!r}: {reason}")
        self.text = text
        self.position = position


class PeelingFailure(PenroseError):
    """Highest-weight peeling produced a negative multiplicity."""


class NotNested(PenroseError):
    pass


class NotCollapsed(PenroseError):
    """The E1 page has nonzero entries above the bottom row."""

    def __init__(self, page):
        super().__init__("E1 page has nonzero q > 0 cells; the spectral sequence does not collapse to a single row")
        self.page = page
