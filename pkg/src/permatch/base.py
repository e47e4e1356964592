import logging

from permatch.exc import BadParamsException, CounterexampleException, VerificationException

logger = logging.getLogger(__name__)


class AbstractTheoremVerifier(object):
    """
    The abstract base verifier class. Makes no assumptions about the checkers used.
    """

    def verify(self, instance, *args, **kwargs):
        """
        Checks every applicable statement on ``instance``.

        :param instance: the graph (or parameters) to check
        :return: a list of :class:`~permatch.checkers.base.TheoremReport`
        """
        raise NotImplementedError()


class BaseTheoremVerifier(AbstractTheoremVerifier):
    """
    The base verifier class. Statements are checked by the checkers registered in
    ``checkers``, a mapping of statement ids to lists of checkers. It is populated from
    ``default_checkers``; more can be registered with ``add_checker`` and
    ``insert_checker``.

    For each statement the checkers in its list are tried in order and the first one
    whose ``is_applicable`` accepts the instance does the check.

    Use the ``suppress_exceptions`` option to treat checker exceptions (an instance too
    large for a checker, say) as skipped checks. Without it they are re-raised wrapped
    in :class:`~permatch.exc.VerificationException`.

    :keyword suppress_exceptions: whether or not to suppress exceptions raised by checkers
    :type suppress_exceptions: bool
    :keyword default_checkers: the checkers to populate ``checkers`` with. Order matters here!
    :type default_checkers: list
    :keyword workers: worker processes handed to checkers that can use them
    :type workers: int
    """

    def __init__(self, suppress_exceptions=False, default_checkers=None, workers=1, *args, **kwargs):
        self.suppress_exceptions = suppress_exceptions
        self.workers = workers
        self.checkers = {}
        """
        A mapping of statement ids to the checkers to try for them
        """

        for checker in default_checkers or []:
            self.add_checker(checker)
        super(BaseTheoremVerifier, self).__init__()

    def insert_checker(self, theorem, checker, position=None, *args, **kwargs):
        """
        Insert a checker into the list of checkers for a statement.

        :param theorem: the statement id (e.g. ``'3'``)
        :type theorem: str
        :param checker: the checker object to insert
        :type checker: permatch.checkers.base.TheoremChecker
        :param position: where to insert the checker in the list
        :type position: int
        """
        candidates = self.checkers.get(theorem, [])
        if position is not None:
            candidates.insert(position, checker)
        else:
            candidates.append(checker)
        self.checkers[theorem] = candidates

    def add_checker(self, checker, *args, **kwargs):
        """
        Add a checker to ``self.checkers`` under the checker's ``theorem``.

        :param checker: the checker object to add
        :type checker: permatch.checkers.base.BaseTheoremChecker
        """
        self.insert_checker(checker.theorem, checker)

    def verify(self, instance, theorems=None, *args, **kwargs):
        """
        Checks the given statements (all registered ones by default) on ``instance``,
        skipping statements with no applicable checker.

        :param instance: the graph (or parameters) to check
        :param theorems: statement ids to check
        :type theorems: list[str]
        :return: the reports, statement by statement
        """
        reports = []
        for theorem in theorems or list(self.checkers):
            result = self._attempt_check(theorem, instance)
            if result is not None:
                reports.extend(result)
        return reports

    def verify_theorem(self, theorem, instance, *args, **kwargs):
        """
        Checks one statement, which must apply to ``instance``.

        :raises BadParamsException: for an unknown statement or an instance no checker
            for it accepts
        """
        if theorem not in self.checkers:
            raise BadParamsException("unknown theorem {!r}; expected one of {}".format(
                theorem, ', '.join(self.checkers)))
        result = self._attempt_check(theorem, instance)
        if result is None:
            raise BadParamsException("theorem {} does not apply to {}".format(
                theorem, getattr(instance, 'kind', type(instance).__name__)))
        return result

    def assert_holds(self, instance, theorems=None, *args, **kwargs):
        """
        Like ``verify``, but raises on the first failed report.

        :raises CounterexampleException: carrying the failed report
        """
        reports = self.verify(instance, theorems)
        for report in reports:
            if not report.holds:
                raise CounterexampleException(report)
        return reports

    def _attempt_check(self, theorem, instance):
        """
        Runs the first applicable checker for ``theorem``; ``None`` when none applies.
        """
        for checker in self.checkers.get(theorem, []):
            try:
                if checker.is_applicable(instance):
                    reports = checker.check(instance, workers=self.workers)
                    for report in reports:
                        if not report.holds:
                            logger.warning("%s violated on %s", report.theorem, report.instance)
                    return reports
            except Exception as exc:
                if self.suppress_exceptions:
                    logger.debug("skipping %s on %r: %s", theorem, instance, exc)
                    continue
                raise VerificationException(exc) from exc
        return None
