"""Exception hierarchy shared by the solvers and the CLI."""


class MinMaxDelayError(Exception):
    """Base class for all package errors."""


class InstanceError(MinMaxDelayError):
    """An instance violates the model invariants."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("invalid instance: " + "; ".join(self.violations))


class InstanceParseError(MinMaxDelayError):
    """The instance document could not be parsed."""


class PathError(MinMaxDelayError):
    """A path is not a simple source-sink path of the instance."""


class FlowError(MinMaxDelayError):
    """A flow is empty, malformed, or violates rate/capacity constraints."""


class ResourceError(MinMaxDelayError):
    """A search or enumeration budget was exceeded."""


class InfeasibleError(MinMaxDelayError):
    """The requested rate cannot be routed."""
