"""Exception vocabulary shared by all wirtlab modules.

The CLI maps ResourceLimit to exit code 2 and every other WirtlabError to
exit code 1; the HTTP service maps them to 429 and 422 respectively.
"""


class WirtlabError(Exception):
    """Base class for all domain errors raised by wirtlab."""


class ParseError(WirtlabError):
    """A textual code, word, or cycle expression could not be tokenized."""


class ValidationError(WirtlabError):
    """Structurally invalid data (e.g. a crossing visited once, sign clash)."""


class UnknownCrossing(WirtlabError):
    pass


class UnknownStrand(WirtlabError):
    pass


class UnknownGenerator(WirtlabError):
    pass


class UnknownVertex(WirtlabError):
    pass


class NotAKnot(WirtlabError):
    """A builder produced more than one component."""


class NotInTwistRegion(WirtlabError):
    """A balanced flank was requested at a crossing outside a bigon chain."""


class BadParameter(WirtlabError):
    pass


class NotCoprime(WirtlabError):
    pass


class NotAReflection(WirtlabError):
    pass


class InconsistentLabeling(WirtlabError):
    """A label clash during propagation; the message reports the location."""


class NotSurjective(WirtlabError):
    """Some graph vertex never occurs verbatim as a strand label."""


class NotPCycle(WirtlabError):
    pass


class OddPermutation(WirtlabError):
    pass


class EulerMismatch(WirtlabError):
    pass


class OutOfInterval(WirtlabError):
    pass


class HypothesisNotAsserted(WirtlabError):
    """A geometric hypothesis the tool cannot check was not asserted."""


class ResourceLimit(WirtlabError):
    """A configured search or size cap was exceeded."""
