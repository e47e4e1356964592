"""
Exact permanents of nonnegative integer matrices.

:func:`permanent_naive` sums over all permutations and is the oracle.
:func:`permanent_ryser` evaluates Ryser's inclusion-exclusion formula

    per(A) = sum over S ⊆ [n] of (-1)^(n - |S|) * prod_i (sum_{j in S} a_ij)

with one of three kernels:

* a Gray-code walk over subsets with big-integer row sums (any matrix);
* a bitmask walk for 0/1 matrices, where a row sum is a popcount;
* a vectorised numpy walk in wrapping ``uint64`` arithmetic. Its result is the
  permanent modulo 2^64, so it is only used when the Minc-Brégman bound (or the product
  of row sums for general matrices) proves the permanent is below 2^63.

Every kernel walks a range of subset indices and can be split across workers.
"""
from collections import namedtuple
from itertools import combinations, permutations
import logging
import math

import numpy as np

from permatch.exc import BadKException, BadParamsException, PermatchException, TooLargeException
from permatch.graphs.utils import popcount
from permatch.parallel import chunk_ranges, ordered_map

logger = logging.getLogger(__name__)

NAIVE_MAX_N = 10
RYSER_MAX_N = 30
SUBPERMANENT_MAX_N = 8

WRAPPED_MIN_N = 12
"""
Below this size the pure-Python kernels are faster than the numpy set-up cost.
"""

WRAPPED_LOW_BITS = 14
"""
Subsets are processed in blocks of ``2^WRAPPED_LOW_BITS`` sharing their high bits.
"""

LOG_WRAP_LIMIT = 63 * math.log(2)


class IntMatrix(namedtuple('IntMatrix', ['n', 'entries'])):
    """
    A square matrix of nonnegative integers (``0 x 0`` is allowed; its permanent is 1).

    :param n: the dimension
    :param entries: ``n`` rows of ``n`` integers
    """

    def __new__(cls, n, entries):
        entries = tuple(tuple(int(value) for value in row) for row in entries)
        if len(entries) != n or any(len(row) != n for row in entries):
            raise BadParamsException("matrix must be {0} x {0}".format(n))
        if any(value < 0 for row in entries for value in row):
            raise BadParamsException("matrix entries must be nonnegative")
        return super(IntMatrix, cls).__new__(cls, n, entries)

    @classmethod
    def from_rows(cls, rows):
        rows = [list(row) for row in rows]
        return cls(len(rows), rows)

    @classmethod
    def from_bitmasks(cls, masks):
        """
        A 0/1 matrix whose row ``i`` has ones at the set bits of ``masks[i]``.
        """
        n = len(masks)
        return cls(n, [[mask >> j & 1 for j in range(n)] for mask in masks])

    @classmethod
    def identity(cls, n):
        return cls(n, [[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def ones(cls, n):
        return cls(n, [[1] * n for _ in range(n)])

    def is_binary(self):
        return all(value in (0, 1) for row in self.entries for value in row)

    def bitmasks(self):
        """
        Row bitmasks of a 0/1 matrix.
        """
        return tuple(sum(1 << j for j, value in enumerate(row) if value) for row in self.entries)

    def row_sums(self):
        return [sum(row) for row in self.entries]

    def column_sums(self):
        return [sum(column) for column in zip(*self.entries)] if self.n else []

    def is_regular(self, k):
        return all(total == k for total in self.row_sums() + self.column_sums())

    def plus_identity(self):
        return IntMatrix(self.n, [[value + (i == j) for j, value in enumerate(row)]
                                  for i, row in enumerate(self.entries)])

    def submatrix(self, rows, columns):
        if len(rows) != len(columns):
            raise BadParamsException("a subpermanent needs as many rows as columns")
        return IntMatrix(len(rows), [[self.entries[i][j] for j in columns] for i in rows])

    def permuted(self, row_order, column_order):
        return self.submatrix(row_order, column_order)

    def direct_sum(self, other):
        n = self.n + other.n
        rows = [list(row) + [0] * other.n for row in self.entries]
        rows += [[0] * self.n + list(row) for row in other.entries]
        return IntMatrix(n, rows)


def permanent_naive(matrix):
    """
    The permanent as a sum over all ``n!`` permutations. Oracle use only.

    :raises TooLargeException: for ``n > 10``
    """
    if matrix.n > NAIVE_MAX_N:
        raise TooLargeException("naive permanent is capped at n = {}".format(NAIVE_MAX_N), NAIVE_MAX_N)
    total = 0
    rows = matrix.entries
    for sigma in permutations(range(matrix.n)):
        product = 1
        for i, j in enumerate(sigma):
            product *= rows[i][j]
            if not product:
                break
        total += product
    return total


def _gray(index):
    return index ^ (index >> 1)


def _flipped_bit(index):
    return (index & -index).bit_length() - 1


def _ryser_gray_chunk(args):
    """
    Signed Ryser partial sum over Gray-code indices ``[start, stop)``. The first
    subset's row sums are rebuilt from its index; later ones are updated one column
    at a time.
    """
    entries, start, stop = args
    n = len(entries)
    start = max(start, 1)
    if start >= stop:
        return 0
    columns = list(zip(*entries))
    subset = _gray(start)
    sums = [sum(row[j] for j in range(n) if subset >> j & 1) for row in entries]
    size = popcount(subset)
    total = 0
    index = start
    while True:
        product = 1
        for value in sums:
            product *= value
            if not product:
                break
        total += -product if (n - size) & 1 else product
        index += 1
        if index >= stop:
            return total
        bit = _flipped_bit(index)
        column = columns[bit]
        if _gray(index) >> bit & 1:
            sums = [s + c for s, c in zip(sums, column)]
            size += 1
        else:
            sums = [s - c for s, c in zip(sums, column)]
            size -= 1


def _ryser_bitmask_chunk(args):
    """
    Signed Ryser partial sum of a 0/1 matrix over subset bitmasks ``[start, stop)``.
    """
    masks, start, stop = args
    n = len(masks)
    total = 0
    for subset in range(max(start, 1), stop):
        product = 1
        for mask in masks:
            product *= popcount(mask & subset)
            if not product:
                break
        if product:
            total += -product if (n - popcount(subset)) & 1 else product
    return total


def _ryser_wrapped_chunk(args):
    """
    Ryser partial sum modulo 2^64 over the high-bit Gray-code indices
    ``[start, stop)``; each index stands for a block of ``2^low_bits`` subsets.
    """
    entries, low_bits, start, stop = args
    n = len(entries)
    columns = np.array(entries, dtype=np.uint64).T
    low = np.zeros((1 << low_bits, n), dtype=np.uint64)
    parity = np.zeros(1 << low_bits, dtype=bool)
    for bit in range(low_bits):
        half = 1 << bit
        low[half:2 * half] = low[:half] + columns[bit]
        parity[half:2 * half] = ~parity[:half]

    subset = _gray(start)
    high = np.zeros(n, dtype=np.uint64)
    for bit in range(n - low_bits):
        if subset >> bit & 1:
            high += columns[low_bits + bit]
    high_parity = popcount(subset) & 1

    total = 0
    index = start
    while index < stop:
        if index > start:
            bit = _flipped_bit(index)
            if _gray(index) >> bit & 1:
                high += columns[low_bits + bit]
            else:
                high -= columns[low_bits + bit]
            high_parity ^= 1
        products = np.multiply.reduce(low + high, axis=1)
        even = int(products[~parity].sum())
        odd = int(products[parity].sum())
        total += odd - even if high_parity else even - odd
        index += 1
    return total % (1 << 64)


def _log_bound(matrix):
    """
    Natural log of an upper bound on the permanent: Minc-Brégman for 0/1 matrices,
    the product of row sums otherwise. ``None`` when some row is zero.
    """
    sums = matrix.row_sums()
    if not all(sums):
        return None
    if matrix.is_binary():
        return sum(math.lgamma(r + 1) / r for r in sums)
    return sum(math.log(r) for r in sums)


def bregman_bound_log(matrix):
    """
    The Minc-Brégman bound ``prod_i (r_i!)^(1/r_i)`` of a 0/1 matrix in log space
    (``-inf`` when a row is empty, as the permanent is then 0).
    """
    if not matrix.is_binary():
        raise BadParamsException("the Minc-Brégman bound needs a 0/1 matrix")
    bound = _log_bound(matrix)
    return float('-inf') if bound is None else bound


def permanent_ryser(matrix, workers=1):
    """
    The permanent by Ryser's formula; agrees with :func:`permanent_naive` on every
    matrix.

    :param matrix: an :class:`IntMatrix`
    :param workers: processes to split the subset range over
    :raises TooLargeException: for ``n > 30``
    """
    n = matrix.n
    if n > RYSER_MAX_N:
        raise TooLargeException("Ryser permanent is capped at n = {}".format(RYSER_MAX_N), RYSER_MAX_N)
    if n == 0:
        return 1
    bound = _log_bound(matrix)
    if bound is None:
        return 0

    if n >= WRAPPED_MIN_N and bound < LOG_WRAP_LIMIT:
        low_bits = min(n, WRAPPED_LOW_BITS)
        ranges = chunk_ranges(1 << (n - low_bits), max(1, (1 << (n - low_bits)) // max(1, workers)))
        items = [(matrix.entries, low_bits, start, stop) for start, stop in ranges]
        total = sum(ordered_map(_ryser_wrapped_chunk, items, workers)) % (1 << 64)
        result = total if n % 2 == 0 else (-total) % (1 << 64)
        logger.debug("wrapped Ryser kernel, n=%d, per=%d", n, result)
        return result

    pieces = max(1, workers) * 4 if workers > 1 else 1
    ranges = chunk_ranges(1 << n, -(-(1 << n) // pieces))
    if matrix.is_binary():
        masks = matrix.bitmasks()
        items = [(masks, start, stop) for start, stop in ranges]
        total = sum(ordered_map(_ryser_bitmask_chunk, items, workers))
    else:
        items = [(matrix.entries, start, stop) for start, stop in ranges]
        total = sum(ordered_map(_ryser_gray_chunk, items, workers))
    if total < 0:
        raise PermatchException("Ryser sum came out negative ({})".format(total))
    return total


def subpermanent_sides(matrix, k):
    """
    Both sides of the subpermanent expansion

        C(n, k) per(M) = sum over S, S' in C([n], k) of per(M(S, S')) per(M(S̄, S̄'))

    where ``S̄`` is the complement of ``S``.

    :return: ``(lhs, rhs)``; they are equal for every matrix and every ``k``
    :raises BadKException: unless ``0 <= k <= n``
    :raises TooLargeException: for ``n > 8``
    """
    n = matrix.n
    if not 0 <= k <= n:
        raise BadKException("k must lie in [0, {}], got {}".format(n, k))
    if n > SUBPERMANENT_MAX_N:
        raise TooLargeException("subpermanent identity is capped at n = {}".format(SUBPERMANENT_MAX_N),
                                SUBPERMANENT_MAX_N)
    everything = set(range(n))
    lhs = math.comb(n, k) * permanent_ryser(matrix)
    rhs = 0
    for rows in combinations(range(n), k):
        other_rows = sorted(everything.difference(rows))
        for columns in combinations(range(n), k):
            inner = permanent_ryser(matrix.submatrix(rows, columns))
            if not inner:
                continue
            other_columns = sorted(everything.difference(columns))
            rhs += inner * permanent_ryser(matrix.submatrix(other_rows, other_columns))
    return lhs, rhs


def log_bounds(n, k):
    """
    Log-space bounds for the permanent of an ``n x n`` 0/1 matrix with every row and
    column sum equal to ``k``: the van der Waerden corollary ``n! (k/n)^n`` below and
    Minc-Brégman ``(k!)^(n/k)`` above. They meet at ``k = n``.

    :return: ``(log_lower, log_upper)``
    :raises BadParamsException: unless ``1 <= k <= n``
    """
    if not 1 <= k <= n:
        raise BadParamsException("bounds need 1 <= k <= n, got n={}, k={}".format(n, k))
    log_upper = (n / k) * math.lgamma(k + 1)
    log_lower = math.lgamma(n + 1) + n * math.log(k / n)
    return log_lower, log_upper


def exact_log(value):
    """
    Natural log of a (possibly huge) positive integer.
    """
    if value <= 0:
        raise BadParamsException("log of a nonpositive count")
    shift = max(0, value.bit_length() - 64)
    return math.log(value >> shift) + shift * math.log(2)
