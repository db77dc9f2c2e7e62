"""Ground-truth polynomials computed straight from the definitions.

Nothing here is clever: `rgp_bruteforce` visits every subset, `cloud_direct`
every flat and `flock_direct` every subset of one cyclic flat. The engines in
`cloudflock` and `condensation` are tested against these functions.

Subsets are visited in increasing bitset order. With `jobs > 1` the range is
cut into contiguous chunks evaluated in worker processes and the partial
sums are added in chunk order, so the result does not depend on scheduling.
"""

import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor

from cyclic_tutte import bitset
from cyclic_tutte.errors import EnumerationLimitError, MatroidError
from cyclic_tutte.matroid import Matroid
from cyclic_tutte.poly import BivarPoly, UnivarPoly
from cyclic_tutte.settings import get_settings

logger = logging.getLogger(__name__)

# Below this many subsets the process pool costs more than it saves.
_PARALLEL_THRESHOLD = 1 << 14


def _partial_rgp(m: Matroid, lo: int, hi: int) -> Counter:
    r = m.rank_of_matroid
    counts: Counter = Counter()
    for subset in range(lo, hi):
        rk = m.rank(subset)
        counts[r - rk, subset.bit_count() - rk] += 1
    return counts


def _partial_rgp_star(args) -> Counter:
    return _partial_rgp(*args)


def rgp_bruteforce(m: Matroid, *, limit: int | None = None, jobs: int | None = None) -> BivarPoly:
    """S(M; x, y) as the sum of `x^(r(E) - r(X)) y^(|X| - r(X))` over all subsets X.

    Args:
        m: Any matroid (loops and coloops allowed).
        limit: Largest admissible ground set; defaults to `CYCLIC_TUTTE_ORACLE_LIMIT`.
        jobs: Worker processes; defaults to `CYCLIC_TUTTE_JOBS`.

    Raises:
        EnumerationLimitError: If `m.n` exceeds the limit.
    """
    settings = get_settings()
    limit = settings.oracle_limit if limit is None else limit
    jobs = settings.jobs if jobs is None else jobs
    if m.n > limit:
        raise EnumerationLimitError("Brute-force rank generating polynomial", m.n, limit)
    total = 1 << m.n
    if jobs > 1 and total < _PARALLEL_THRESHOLD:
        logger.warning("jobs=%d ignored: %d subsets are enumerated in one process", jobs, total)
    if jobs <= 1 or total < _PARALLEL_THRESHOLD:
        counts = _partial_rgp(m, 0, total)
    else:
        step = -(-total // jobs)
        chunks = [(m, lo, min(lo + step, total)) for lo in range(0, total, step)]
        logger.debug("Oracle over %d subsets in %d chunks", total, len(chunks))
        counts = Counter()
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for partial in pool.map(_partial_rgp_star, chunks):
                counts.update(partial)
    return BivarPoly(dict(counts))


def _require_cyclic_flat(m: Matroid, flat: int) -> None:
    if not m.is_flat(flat) or m.ess(flat) != flat:
        raise MatroidError(f"{bitset.elements(flat)} is not a cyclic flat.")


def cloud_direct(m: Matroid, flat, *, limit: int | None = None) -> UnivarPoly:
    """Cloud polynomial: sum of `x^(r(E) - r(Y))` over flats Y with `ess(Y) = X`.

    Raises:
        MatroidError: If `flat` is not a cyclic flat.
        EnumerationLimitError: If flats cannot be enumerated.
    """
    mask = m._mask(flat)
    _require_cyclic_flat(m, mask)
    r = m.rank_of_matroid
    counts: Counter = Counter()
    for y in m.flats(limit):
        if y & mask == mask and m.ess(y) == mask:
            counts[r - m.rank(y)] += 1
    return UnivarPoly(dict(counts))


def flock_direct(m: Matroid, flat, *, limit: int | None = None) -> UnivarPoly:
    """Flock polynomial: sum of `y^(|Y| - r(Y))` over subsets Y with `cl(Y) = X`.

    Only subsets of X can close to X, so the enumeration is over `2^|X|` sets.

    Raises:
        MatroidError: If `flat` is not a cyclic flat.
        EnumerationLimitError: If `|X|` exceeds the oracle limit.
    """
    mask = m._mask(flat)
    _require_cyclic_flat(m, mask)
    limit = get_settings().oracle_limit if limit is None else limit
    if mask.bit_count() > limit:
        raise EnumerationLimitError("Flock enumeration", mask.bit_count(), limit)
    counts: Counter = Counter()
    for y in bitset.submasks(mask):
        if m.closure(y) == mask:
            counts[y.bit_count() - m.rank(y)] += 1
    return UnivarPoly(dict(counts))
