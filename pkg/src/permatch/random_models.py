"""
Random graphs and digraphs, the exact expectations for digraphs with a fixed number
of arcs, and Monte Carlo estimates of ``(d/p)``.

Every sample is drawn from its own Philox stream keyed by ``(seed, index)``, so a
sample depends only on the model, the seed and its index, never on how samples are
spread over workers.
"""
from collections import namedtuple
from fractions import Fraction
import logging
import math

import numpy as np

from permatch.checkers.base import new_report
from permatch.counting import ExactRatio, dp_ratio
from permatch.exc import BadParamsException, CounterexampleException, PermatchException, TooLargeException
from permatch.graphs.base import Digraph, UndirectedGraph
from permatch.graphs.utils import full_mask, hex_rows, popcount
from permatch.parallel import chunk_ranges, ordered_map
from permatch.permanent import IntMatrix

logger = logging.getLogger(__name__)

SAMPLE_MAX_N = 30
MC_MAX_N = 24
SEED_LIMIT = 1 << 64
MODEL_KINDS = ('graph', 'digraph', 'digraph_fixed_arcs')


class ModelSpec(namedtuple('ModelSpec', ['kind', 'n', 'q', 'm'])):
    """
    A random graph model: ``graph`` (each edge with probability ``q``), ``digraph``
    (each arc with probability ``q``) or ``digraph_fixed_arcs`` (a uniform set of
    exactly ``m`` arcs).

    ``q`` is kept as an exact :class:`~fractions.Fraction`; strings such as ``"0.5"``
    are accepted.
    """

    def __new__(cls, kind, n, q=None, m=None):
        if kind not in MODEL_KINDS:
            raise BadParamsException("unknown model {!r}; expected one of {}".format(kind, ', '.join(MODEL_KINDS)))
        if not isinstance(n, int) or not 1 <= n <= SAMPLE_MAX_N:
            raise BadParamsException("model size must lie in [1, {}], got {!r}".format(SAMPLE_MAX_N, n))
        if kind == 'digraph_fixed_arcs':
            if m is None or not 0 <= m <= n * (n - 1):
                raise BadParamsException("arc count must lie in [0, {}], got {!r}".format(n * (n - 1), m))
            q = None
        else:
            try:
                q = Fraction(q)
            except (TypeError, ValueError):
                raise BadParamsException("edge probability must be a number, got {!r}".format(q))
            if not 0 <= q <= 1:
                raise BadParamsException("edge probability must lie in [0, 1], got {}".format(q))
            m = None
        return super(ModelSpec, cls).__new__(cls, kind, n, q, m)

    @classmethod
    def graph(cls, n, q):
        return cls('graph', n, q=q)

    @classmethod
    def digraph(cls, n, q):
        return cls('digraph', n, q=q)

    @classmethod
    def fixed_arcs(cls, n, m):
        return cls('digraph_fixed_arcs', n, m=m)

    def slots(self):
        """
        The candidate arcs (or edges) in the row-major order draws are taken in.
        """
        if self.kind == 'graph':
            return [(u, v) for u in range(self.n) for v in range(u + 1, self.n)]
        return [(u, v) for u in range(self.n) for v in range(self.n) if u != v]


class McSummary(namedtuple('McSummary', ['model', 'samples', 'mean', 'stddev', 'target', 'ratios'])):
    """
    :param model: the sampled :class:`ModelSpec`
    :param samples: the sample count
    :param mean: the exact mean of the sample ratios
    :param stddev: their population standard deviation
    :param target: ``e^(-1/q)``, the limit the mean approaches
    :param ratios: the exact per-sample ratios, or ``None``
    """

    def to_json(self):
        q = self.model.q
        return {
            'model': self.model.kind,
            'n': self.model.n,
            'q': None if q is None else float(q),
            'samples': self.samples,
            'mean': float(self.mean),
            'stddev': self.stddev,
            'target': self.target,
        }


def _check_seed(seed, index=0):
    if not 0 <= seed < SEED_LIMIT or not 0 <= index < SEED_LIMIT:
        raise BadParamsException("seed and sample index must be 64-bit unsigned integers")


def stream(seed, index=0):
    """
    The generator for sample ``index`` under ``seed``.
    """
    _check_seed(seed, index)
    return np.random.Generator(np.random.Philox(key=seed | index << 64))


def sample(model, seed=0, index=0):
    """
    Draws one graph from ``model``.

    Probability models take one uniform draw per slot in row-major order and keep the
    slot iff the draw is below ``q``. The fixed-arc model picks ``m`` distinct slots.

    :return: a :class:`Digraph` or, for the ``graph`` model, an :class:`UndirectedGraph`
    """
    rng = stream(seed, index)
    n = model.n
    slots = model.slots()
    if model.kind == 'digraph_fixed_arcs':
        chosen = rng.choice(len(slots), size=model.m, replace=False) if model.m else []
        picked = [slots[int(slot)] for slot in chosen]
    else:
        draws = rng.random(len(slots))
        threshold = float(model.q)
        picked = [slot for slot, draw in zip(slots, draws) if draw < threshold]
    rows = [0] * n
    for u, v in picked:
        rows[u] |= 1 << v
        if model.kind == 'graph':
            rows[v] |= 1 << u
    digraph = Digraph(n, rows)
    return UndirectedGraph(digraph) if model.kind == 'graph' else digraph


def derangement_number(n):
    """
    The subfactorial ``Der(n)``: ``Der(0) = 1``, ``Der(1) = 0`` and
    ``Der(n) = (n - 1) (Der(n - 1) + Der(n - 2))``.
    """
    if n < 0:
        raise BadParamsException("Der(n) needs n >= 0, got {}".format(n))
    previous, current = 1, 0
    if n == 0:
        return previous
    for size in range(2, n + 1):
        previous, current = current, (size - 1) * (current + previous)
    return current


def inclusion_probability_f(n, m, t):
    """
    The probability that a fixed set of ``t`` arcs lies in a uniform ``m``-arc digraph
    on ``n`` vertices: ``C(N - t, m - t) / C(N, m)`` with ``N = n(n - 1)``; 0 for
    ``t > m``.
    """
    total = n * (n - 1)
    if n < 1 or not 0 <= m <= total or t < 0:
        raise BadParamsException("need 0 <= m <= {} and t >= 0; got m={}, t={}".format(total, m, t))
    if t > m:
        return ExactRatio(0)
    return ExactRatio(math.comb(total - t, m - t), math.comb(total, m))


def expected_counts_dgnm(n, m):
    """
    Expected derangements ``f(n) Der(n)`` and permutations
    ``sum_k f(n - k) C(n, k) Der(n - k)`` of a uniform ``m``-arc digraph on ``n``
    vertices, as exact fractions.

    :return: ``(expected_derangements, expected_permutations)``
    """
    if not 1 <= n <= SAMPLE_MAX_N:
        raise BadParamsException("n must lie in [1, {}], got {}".format(SAMPLE_MAX_N, n))
    derangements = inclusion_probability_f(n, m, n) * derangement_number(n)
    permutations = sum(inclusion_probability_f(n, m, n - k) * math.comb(n, k) * derangement_number(n - k)
                       for k in range(n + 1))
    return derangements, ExactRatio(permutations)


def density(n, m, directed=True):
    """
    Arc density ``m / (n(n - 1))``; for graphs ``2m / n^2``.
    """
    if n < 2:
        raise BadParamsException("density needs n >= 2, got {}".format(n))
    if directed:
        return ExactRatio(m, n * (n - 1))
    return ExactRatio(2 * m, n * n)


def target_ratio(q):
    """
    ``e^(-1/q)``, the value ``(d/p)`` concentrates around for large random graphs
    with edge probability ``q`` (0 for ``q = 0``).
    """
    q = Fraction(q)
    return math.exp(-1 / q) if q else 0.0


def _random_permutation_within(rng, allowed):
    """
    A random permutation ``sigma`` with bit ``sigma[i]`` set in ``allowed[i]`` for
    every row. Backtracks over rows, always taking the open row with the fewest free
    columns (ties in shuffled order) and trying its columns in shuffled order.
    """
    n = len(allowed)
    rank = [int(row) for row in rng.permutation(n)]
    sigma = [None] * n

    def extend(open_rows, used):
        if not open_rows:
            return True
        row = min(open_rows, key=lambda r: (popcount(allowed[r] & ~used), rank[r]))
        rest = [r for r in open_rows if r != row]
        for column in (int(column) for column in rng.permutation(n)):
            if allowed[row] >> column & 1 and not used >> column & 1:
                sigma[row] = column
                if extend(rest, used | 1 << column):
                    return True
        return False

    return sigma if extend(list(range(n)), 0) else None


def sample_regular_matrix(n, k, seed=0):
    """
    A random ``n x n`` 0/1 matrix with every row and column sum ``k``, built as a sum
    of ``k`` random pairwise disjoint permutation matrices. Each new permutation is
    drawn inside the complement of the support so far, which is regular and so always
    has one.
    """
    if not 1 <= k <= n:
        raise BadParamsException("need 1 <= k <= n, got n={}, k={}".format(n, k))
    rng = stream(seed)
    support = [0] * n
    for _ in range(k):
        sigma = _random_permutation_within(rng, [full_mask(n) & ~row for row in support])
        if sigma is None:
            raise PermatchException("no permutation avoids the support {}".format(hex_rows(support, n)))
        for row, column in enumerate(sigma):
            support[row] |= 1 << column
    return IntMatrix.from_bitmasks(support)


def _mc_chunk(args):
    model, seed, start, stop = args
    return [dp_ratio(sample(model, seed, index)) for index in range(start, stop)]


def mc_dp_ratio(model, samples, seed=0, workers=1, keep_ratios=False, progress=False):
    """
    Averages the exact ``(d/p)`` of ``samples`` independent draws from ``model``.

    :raises CounterexampleException: if a sample has ``d/p > 1/2``
    :raises TooLargeException: for ``n > 24``
    """
    if samples < 1:
        raise BadParamsException("need at least one sample, got {}".format(samples))
    if model.n > MC_MAX_N:
        raise TooLargeException("Monte Carlo is capped at n = {}".format(MC_MAX_N), MC_MAX_N)
    _check_seed(seed)
    items = [(model, seed, start, stop) for start, stop in chunk_ranges(samples, max(1, samples // (4 * workers)))]
    ratios = []
    for chunk in ordered_map(_mc_chunk, items, workers, progress=progress, desc='mc'):
        ratios.extend(chunk)
    for index, ratio in enumerate(ratios):
        if ratio > Fraction(1, 2):
            graph = sample(model, seed, index)
            instance = 'sample {} of {} n={} ({})'.format(index, model.kind, model.n, hex_rows(graph.rows, model.n))
            raise CounterexampleException(new_report('theorem3', instance, False, details={'ratio': str(ratio)}))
    mean = sum(ratios, Fraction(0)) / samples
    variance = sum(((ratio - mean) ** 2 for ratio in ratios), Fraction(0)) / samples
    target = target_ratio(model.q) if model.q is not None else target_ratio(density(model.n, model.m))
    logger.info("mc %s n=%d: mean %.6f over %d samples (target %.6f)", model.kind, model.n, float(mean),
                samples, target)
    return McSummary(model, samples, mean, math.sqrt(float(variance)), target, ratios if keep_ratios else None)
