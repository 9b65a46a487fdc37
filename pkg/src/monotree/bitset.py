"""Python ints as vertex bitsets.

Bit ``v`` of a mask is set iff vertex ``v`` is a member.  Arbitrary precision
ints make intersection/union a single C-level operation for any ``n``.
"""

import numpy as np

_NUMPY_CUTOFF = 512


def to_mask(vertices):
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def bits(mask):
    """Sorted list of members of ``mask``."""
    if mask.bit_length() > _NUMPY_CUTOFF:
        nbytes = (mask.bit_length() + 7) // 8
        raw = np.frombuffer(mask.to_bytes(nbytes, "little"), dtype=np.uint8)
        return np.flatnonzero(np.unpackbits(raw, bitorder="little")).tolist()
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def lowest(mask):
    return (mask & -mask).bit_length() - 1


def popcount(mask):
    return mask.bit_count()


def full(n):
    return (1 << n) - 1


def row_to_mask(row):
    """Boolean numpy row -> int mask."""
    return int.from_bytes(np.packbits(row, bitorder="little").tobytes(), "little")


def masks_from_pairs(n, us, vs):
    """Symmetric adjacency masks from parallel arrays of endpoints."""
    us = np.asarray(us, dtype=np.int64)
    vs = np.asarray(vs, dtype=np.int64)
    if us.size == 0:
        return (0,) * n
    a = np.concatenate([us, vs])
    b = np.concatenate([vs, us])
    order = np.argsort(a, kind="stable")
    a, b = a[order], b[order]
    starts = np.searchsorted(a, np.arange(n + 1))
    row = np.zeros(n, dtype=bool)
    masks = []
    for v in range(n):
        lo, hi = starts[v], starts[v + 1]
        if lo == hi:
            masks.append(0)
            continue
        if hi - lo < 16:
            m = 0
            for w in b[lo:hi].tolist():
                m |= 1 << w
            masks.append(m)
            continue
        row[:] = False
        row[b[lo:hi]] = True
        masks.append(row_to_mask(row))
    return tuple(masks)
