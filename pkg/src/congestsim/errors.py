"""Exception types shared across the package."""


class CongestError(Exception):
    """Base class for every error raised by this package."""


class ParseError(CongestError):
    """Malformed graph or pattern text."""


class InvalidGraph(CongestError):
    """Input violates the simple-graph constraints (self loop, asymmetry, bad id)."""


class InvalidParams(CongestError):
    """Arguments outside an operation's documented domain."""


class EmptyGraph(CongestError):
    """The operation needs at least one edge."""


class AnchorNotAnEdge(CongestError):
    """Anchored operations require the anchor pair to be an edge of the graph."""


class ProtocolError(CongestError):
    """A node program broke the messaging contract (bad recipient or payload)."""


class BudgetExceeded(ProtocolError):
    """A single message exceeded the per-edge per-round bit budget."""


class RoundLimitExceeded(CongestError):
    """The simulation hit max_rounds before every node produced an output."""


class NotASubfamily(CongestError):
    """Witness verification was given sets that are not members of the family."""


class PatternTooLarge(CongestError):
    """Pattern exceeds the oracle's exhaustive-search cap."""


class TooLarge(CongestError):
    """Instance exceeds an exact oracle's size cap."""


class IterationBudgetExceeded(CongestError):
    """Randomized detection would need more phases than the configured cap."""


class TrialBudgetExceeded(CongestError):
    """The property tester would need more trials than the configured cap."""


class EnumerationLimitExceeded(CongestError):
    """Witness gluing would enumerate more tuples than the configured cap."""
