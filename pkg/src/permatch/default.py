from permatch.base import BaseTheoremVerifier
from permatch.checkers.bipartite import Theorem1Checker, Theorem6Checker
from permatch.checkers.directed import CorollaryChecker, InjectionChecker, Theorem3Checker
from permatch.checkers.general import Theorem2Checker
from permatch.checkers.matrix import BlowupChecker, BoundsChecker, SubpermanentChecker


class DefaultTheoremVerifier(BaseTheoremVerifier):
    """
    The default verifier class.

    """

    DEFAULT_CHECKERS = [
        Theorem1Checker(),  # bipartite
        Theorem2Checker(),  # graph
        Theorem3Checker(),  # digraph, graph, bipartite
        Theorem6Checker(),  # bipartite
        InjectionChecker(),  # digraph, graph
        BlowupChecker(),  # (k, l)
        SubpermanentChecker(),  # any square matrix
        BoundsChecker(),  # regular 0/1 matrices
        CorollaryChecker(),  # digraph, graph
    ]
    """
    Default checkers for the default implementation. These will be added to
    the `BaseTheoremVerifier` ``checkers`` attribute in the order listed, so
    order matters!
    """

    def __init__(self, *args, **kwargs):
        super(DefaultTheoremVerifier, self).__init__(*args, default_checkers=self.DEFAULT_CHECKERS, **kwargs)


# shorter name for interactive use
Permatch = DefaultTheoremVerifier
