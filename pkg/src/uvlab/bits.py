"""Small helpers for subsets stored as int bitmasks."""


def iter_bits(mask: int):
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits(mask: int) -> list[int]:
    return list(iter_bits(mask))


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def from_ids(ids) -> int:
    mask = 0
    for i in ids:
        mask |= 1 << i
    return mask


def family_key(mask: int):
    """Size first, then lexicographic on the sorted member ids."""
    return (popcount(mask), bits(mask))


def sort_family(masks):
    return sorted(set(masks), key=family_key)
