"""Subsets of `0..n-1` stored as Python ints (bit `e` set iff `e` is a member)."""

from itertools import combinations
from typing import Iterable, Iterator, Sequence


def from_elements(elements: Iterable[int]) -> int:
    mask = 0
    for e in elements:
        mask |= 1 << e
    return mask


def elements(mask: int) -> list[int]:
    """Return the members of `mask` in increasing order."""
    out = []
    e = 0
    while mask:
        if mask & 1:
            out.append(e)
        mask >>= 1
        e += 1
    return out


def full(n: int) -> int:
    return (1 << n) - 1


def submasks(mask: int) -> Iterator[int]:
    """Yield every subset of `mask`, including 0 and `mask` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def k_subsets(mask: int, k: int) -> Iterator[int]:
    for combo in combinations(elements(mask), k):
        yield from_elements(combo)


def compress(mask: int, support: Sequence[int]) -> int:
    """Relabel `mask` onto `0..len(support)-1`; `support[i]` becomes bit `i`.

    Members of `mask` outside `support` are dropped.
    """
    out = 0
    for i, e in enumerate(support):
        if mask >> e & 1:
            out |= 1 << i
    return out


def expand(mask: int, support: Sequence[int]) -> int:
    """Inverse of `compress`: bit `i` becomes `support[i]`."""
    out = 0
    for i, e in enumerate(support):
        if mask >> i & 1:
            out |= 1 << e
    return out


def permute(mask: int, perm: Sequence[int]) -> int:
    """Image of `mask` under the permutation `e -> perm[e]`."""
    out = 0
    for e in elements(mask):
        out |= 1 << perm[e]
    return out


def sort_key(mask: int) -> tuple[int, ...]:
    """Lexicographic key on the sorted member list."""
    return tuple(elements(mask))
