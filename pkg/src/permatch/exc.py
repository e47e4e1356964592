class PermatchException(Exception):
    pass


class GraphException(PermatchException):
    pass


class SelfLoopException(GraphException):
    pass


class OutOfRangeException(GraphException):
    pass


class GraphSyntaxException(GraphException):
    """
    Raised when a graph file cannot be parsed.

    :param message: what went wrong
    :param line: the 1-based line number of the offending line (``None`` for JSON input)
    """

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = "line {}: {}".format(line, message)
        super(GraphSyntaxException, self).__init__(message)


class NotPerfectMatchingException(GraphException):
    pass


class NotOnGraphException(GraphException):
    pass


class NotHamiltonException(GraphException):
    pass


class IsDirectedCycleException(GraphException):
    pass


class BadParamsException(PermatchException):
    pass


class BadKException(BadParamsException):
    pass


class TooLargeException(PermatchException):
    """
    Raised when an input exceeds the size an exact computation is capped at.

    :param message: what was too large
    :param limit: the cap that was exceeded
    """

    def __init__(self, message, limit=None):
        self.limit = limit
        super(TooLargeException, self).__init__(message)


class PermutationException(PermatchException):
    pass


class NotDerangementException(PermutationException):
    pass


class NotInImageException(PermutationException):
    pass


class UniquenessViolation(PermatchException):
    pass


class CounterexampleException(PermatchException):
    """
    Raised when a proved statement fails on a concrete input.

    :param report: the failing :class:`permatch.checkers.base.TheoremReport`
    """

    def __init__(self, report):
        self.report = report
        super(CounterexampleException, self).__init__(
            "{} violated on {}".format(report.theorem, report.instance))


class VerificationException(PermatchException):
    pass
