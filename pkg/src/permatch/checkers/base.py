from collections import namedtuple

from permatch.graphs.base import BipartiteGraph
from permatch.graphs.utils import hex_rows


class TheoremReport(namedtuple('TheoremReport', ['theorem', 'instance', 'holds', 'equality', 'witness', 'details'])):
    """
    The outcome of checking one statement on one instance.

    ``witness`` carries the data that refutes the statement and is present exactly
    when ``holds`` is false. ``equality`` flags instances where an inequality is
    tight. ``details`` holds whatever the checker computed along the way.

    :param theorem: the statement id (``theorem1``, ``injection``, ...)
    :type theorem: str
    :param instance: a short description of the input
    :type instance: str
    :param holds: whether the statement held
    :type holds: bool
    :param equality: whether it held with equality
    :type equality: bool
    :param witness: counterexample data when ``holds`` is false
    :type witness: dict
    :param details: the computed quantities
    :type details: dict
    """

    @property
    def status(self):
        if not self.holds:
            return 'violated'
        return 'holds (equality)' if self.equality else 'holds (strict)'

    def to_json(self):
        return {
            'theorem': self.theorem,
            'instance': self.instance,
            'holds': self.holds,
            'equality': self.equality,
            'witness': self.witness,
            'details': self.details or {},
        }


def new_report(theorem, instance, holds, equality=False, details=None, witness=None):
    """
    Builds a :class:`TheoremReport`, defaulting the witness to ``details`` when the
    statement failed.
    """
    if holds:
        witness = None
    elif witness is None:
        witness = dict(details or {})
    return TheoremReport(theorem, instance, bool(holds), bool(holds and equality), witness, details or {})


def describe(graph):
    """
    ``"<kind> n=<n> <hex rows>"``, the instance label used in reports.
    """
    if isinstance(graph, BipartiteGraph):
        return 'bipartite {}x{} {}'.format(graph.n_left, graph.n_right, hex_rows(graph.rows, graph.n_right))
    return '{} n={} {}'.format(graph.kind, graph.n, hex_rows(graph.rows, graph.n))


class TheoremChecker(object):
    """
    Theorem checking interface.
    """

    def is_applicable(self, instance, *args, **kwargs):
        """
        Indicates if the given instance is something this checker can check.

        :param instance: the graph (or parameters) to check
        """
        raise NotImplementedError()

    def check(self, instance, *args, **kwargs):
        """
        Checks the statement on the given instance.

        :param instance: the graph (or parameters) to check
        :return: a list of :class:`TheoremReport`
        """
        raise NotImplementedError()


class BaseTheoremChecker(TheoremChecker):
    """
    Base checker; applicability is decided by the instance type via
    ``applicable_types``.
    """

    theorem = None
    """
    The id this checker registers under (``'3'``, ``'injection'``, ...).
    """

    applicable_types = []
    """
    The instance types this checker should be used on, e.g.
    ``applicable_types = [Digraph, UndirectedGraph]``.
    """

    def is_applicable(self, instance, *args, **kwargs):
        return isinstance(instance, tuple(self.applicable_types))
