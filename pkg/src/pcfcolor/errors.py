class PcfError(Exception):
    """Base class for all package errors."""


class ParameterError(PcfError, ValueError):
    """A value violates an operation's stated domain or hypothesis."""


class FormatError(PcfError, ValueError):
    """A text artifact (graph, hypergraph, coloring, lists) failed to parse."""
