"""Named and random matroids used as fixtures and in the acceptance suite.

Small geometries are built as cyclic-flat presentations (their lines are the
only nontrivial cyclic flats), which keeps rank queries cheap. Linear
matroids over a prime field are built from their bases.
"""

import json
import logging
import random
from importlib import resources
from itertools import product
from typing import Callable, Sequence

from cyclic_tutte import bitset
from cyclic_tutte.condensation import CondensedConfiguration
from cyclic_tutte.errors import MatroidError
from cyclic_tutte.matroid import Matroid, strip_loops_coloops

logger = logging.getLogger(__name__)

# Swaps the two disjoint lines of M2.
M2_SWAP = (3, 4, 5, 0, 1, 2)

FANO_LINES = ((0, 1, 3), (1, 2, 4), (2, 3, 5), (3, 4, 6), (4, 5, 0), (5, 6, 1), (6, 0, 2))


def plane(n: int, lines: Sequence[Sequence[int]]) -> Matroid:
    """Rank-3 matroid on `0..n-1` whose nontrivial cyclic flats are `lines` (rank 2)."""
    records = [(0, 0)] + [(list(line), 2) for line in lines] + [(bitset.full(n), 3)]
    return Matroid.from_cyclic_flats(n, records)


def m1() -> Matroid:
    """Two 3-point lines sharing a point, plus a free point."""
    return plane(6, [(0, 1, 2), (0, 3, 4)])


def m2() -> Matroid:
    """Two disjoint 3-point lines. Same configuration as `m1`, not isomorphic."""
    return plane(6, [(0, 1, 2), (3, 4, 5)])


def fano() -> Matroid:
    return plane(7, FANO_LINES)


def concurrent_lines_8() -> Matroid:
    """Three 3-point lines through point 0, plus a free point."""
    return plane(8, [(0, 1, 2), (0, 3, 4), (0, 5, 6)])


def mixed_lines_8() -> Matroid:
    """Two 3-point lines through point 0 and a third line missing both."""
    return plane(8, [(0, 1, 2), (0, 3, 4), (5, 6, 7)])


def split_planes_10() -> Matroid:
    """Rank 4 on ten points: two disjoint 5-point planes, one of them holding a 3-point line.

    The planes share a label but not their position in the lattice, so the
    coarsest condensation separates them.
    """
    records = [
        (0, 0),
        ([0, 1, 2], 2),
        ([0, 1, 2, 3, 4], 3),
        ([5, 6, 7, 8, 9], 3),
        (bitset.full(10), 4),
    ]
    return Matroid.from_cyclic_flats(10, records)


def _require_prime(q: int) -> None:
    if q < 2 or any(q % d == 0 for d in range(2, int(q ** 0.5) + 1)):
        raise MatroidError(f"Only prime field orders are supported, got {q}.")


def projective_plane(q: int) -> Matroid:
    """PG(2, q) for prime q: `q^2 + q + 1` points, lines of `q + 1` points."""
    _require_prime(q)
    points = [
        v for v in product(range(q), repeat=3)
        if any(v) and v[next(i for i, c in enumerate(v) if c)] == 1
    ]
    lines = [
        [p for p, point in enumerate(points) if sum(a * b for a, b in zip(line, point)) % q == 0]
        for line in points
    ]
    return plane(len(points), lines)


def affine_plane(q: int) -> Matroid:
    """AG(2, q) for prime q >= 3: `q^2` points, lines of q points.

    For q = 2 lines have two points and are not cyclic; use `Matroid.uniform(3, 4)`.
    """
    _require_prime(q)
    if q < 3:
        raise MatroidError("AG(2, 2) has no cyclic lines; it is U(3, 4).")
    index = {(x, y): x * q + y for x in range(q) for y in range(q)}
    lines = [[index[x, (m * x + b) % q] for x in range(q)] for m in range(q) for b in range(q)]
    lines += [[index[c, y] for y in range(q)] for c in range(q)]
    return plane(q * q, lines)


def rank_mod_p(columns: Sequence[Sequence[int]], p: int) -> int:
    """Rank over GF(p) of the matrix with the given columns."""
    rows = [list(col) for col in columns]
    rank = 0
    width = len(rows[0]) if rows else 0
    for c in range(width):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][c] % p), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = pow(rows[rank][c], -1, p)
        rows[rank] = [v * inv % p for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][c] % p:
                factor = rows[i][c]
                rows[i] = [(a - factor * b) % p for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def linear_matroid(columns: Sequence[Sequence[int]], p: int) -> Matroid:
    """Column matroid over GF(p) of a matrix given as its list of columns."""
    _require_prime(p)
    n = len(columns)
    r = rank_mod_p(columns, p)
    bases = [
        b for b in bitset.k_subsets(bitset.full(n), r)
        if rank_mod_p([columns[e] for e in bitset.elements(b)], p) == r
    ]
    return Matroid.from_bases(n, bases, check=False)


def random_matroid(rng: random.Random, max_n: int = 9, p: int = 3) -> Matroid:
    """A random loop- and coloop-free linear matroid with 2 to `max_n` elements.

    Random columns over GF(p) are drawn and loops and coloops removed; draws
    that leave fewer than two elements or rank 0 are repeated.
    """
    while True:
        n = rng.randint(3, max_n)
        r = rng.randint(1, n - 1)
        columns = [[rng.randrange(p) for _ in range(r)] for _ in range(n)]
        stripped, _, _ = strip_loops_coloops(linear_matroid(columns, p))
        if stripped.n >= 2 and stripped.rank_of_matroid >= 1:
            return Matroid.from_bases(stripped.n, stripped.bases, check=False)


def random_corpus(count: int, seed: int = 0, max_n: int = 9) -> list[Matroid]:
    rng = random.Random(seed)
    return [random_matroid(rng, max_n) for _ in range(count)]


def golay() -> CondensedConfiguration:
    """Orbit condensation of the cyclic flats of the extended binary Golay code matroid."""
    text = resources.files("cyclic_tutte").joinpath("data/golay.json").read_text(encoding="utf-8")
    data = json.loads(text)
    return CondensedConfiguration.build(
        [(block["size"], block["rank"]) for block in data["blocks"]],
        data["A"],
    )


NAMED: dict[str, Callable[[], Matroid]] = {
    "m1": m1,
    "m2": m2,
    "fano": fano,
    "pg23": lambda: projective_plane(3),
    "ag23": lambda: affine_plane(3),
    "concurrent8": concurrent_lines_8,
    "mixed8": mixed_lines_8,
    "split10": split_planes_10,
}
