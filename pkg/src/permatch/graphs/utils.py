"""
Bit helpers shared by the graph types and the counting kernels. Adjacency rows are
plain Python integers used as bitsets: bit ``j`` of row ``i`` is set iff ``(i, j)``
is present.
"""

MAX_VERTICES = 64
"""
Vertex cap; adjacency rows fit in one machine word.
"""


if hasattr(int, 'bit_count'):
    def popcount(mask):
        return mask.bit_count()
else:  # pragma: no cover
    def popcount(mask):
        return bin(mask).count('1')


def iter_bits(mask):
    """
    Yields the indices of the set bits of ``mask`` in increasing order.
    """
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def lowest_bit(mask):
    """
    Index of the lowest set bit of ``mask``; ``-1`` for zero.
    """
    return (mask & -mask).bit_length() - 1


def full_mask(n):
    return (1 << n) - 1


def mask_of(indices):
    mask = 0
    for index in indices:
        mask |= 1 << index
    return mask


def hex_rows(rows, n):
    """
    Encodes bitmask rows as fixed-width lowercase hex joined with ``-`` (the adjacency
    encoding of survey records). Width is ``ceil(n / 4)`` digits, at least one.
    """
    width = max(1, (n + 3) // 4)
    return '-'.join('{:0{}x}'.format(row, width) for row in rows)
