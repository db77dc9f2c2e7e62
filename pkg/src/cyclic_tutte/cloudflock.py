"""Cloud and flock polynomials of every cyclic flat, computed from the configuration alone.

For an interval `[lo, hi]` with size gap `n` and rank gap `r`, let
`S'` be the sum of `cloud(X, hi) * flock(lo, X)` over the nodes X strictly
between `lo` and `hi`. Then

    cloud(lo, hi) = A * bx(n, r) - delta_x(S')
    flock(lo, hi) = A * by(n, r) - delta_y(S')

and `cloud(X, X) = flock(X, X) = 1`. For a configuration `A = 1`; the
averaged recursion in `cyclic_tutte.condensation` passes its block counts.
`solve_intervals` runs this recursion bottom-up through an `IntervalQueue`.

`cloud(X, top)` is the cloud polynomial of X in M and `flock(bottom, X)` the
flock polynomial of X, so

    S(M; x, y) = sum over cyclic flats X of cloud(X) * flock(X).

Example:
    ```python
    from cyclic_tutte import corpus
    from cyclic_tutte.configuration import extract_configuration
    from cyclic_tutte.cloudflock import rgp_from_configuration

    rgp_from_configuration(extract_configuration(corpus.m1()))
    # x^3 + 6x^2 + 15x + 18 + 2xy + 15y + 6y^2 + y^3
    ```
"""

import logging
from dataclasses import dataclass
from typing import Callable, Sequence

from cyclic_tutte.configuration import Configuration
from cyclic_tutte.errors import NotRealizableError
from cyclic_tutte.interval_queue import IntervalOrder, IntervalQueue
from cyclic_tutte.poly import BivarPoly, UnivarPoly, bx, by, cross, delta_x, delta_y

logger = logging.getLogger(__name__)

Pair = tuple[UnivarPoly, UnivarPoly]
ONE = UnivarPoly.constant(1)


def _check(poly: UnivarPoly, key: tuple[int, int], which: str, strict: bool,
           problems: list[NotRealizableError]) -> None:
    if poly.min_coefficient() >= 0:
        return
    error = NotRealizableError(key, which, f"Got {poly.format('x' if which == 'cloud' else 'y')}.")
    if strict:
        raise error
    problems.append(error)


def solve_intervals(order: IntervalOrder, labels: Sequence[tuple[int, int]],
                    weight: Callable[[int, int], int] | None = None, *,
                    strict: bool = True) -> tuple[dict[tuple[int, int], Pair], list[NotRealizableError]]:
    """Run the cloud/flock recursion over every comparable pair of `order`.

    Args:
        order: A lattice exposing `comparable_pairs` and `open_interval`.
        labels: `(size, rank)` per node.
        weight: Multiplier `A(lo, hi)` of the binomial terms; 1 if omitted.
        strict: Raise on the first negative coefficient. Otherwise collect
            every offending interval and keep going.

    Returns:
        `(table, problems)` where `table[lo, hi] = (cloud, flock)`.

    Raises:
        NotRealizableError: In strict mode, on the first negative coefficient.
    """
    queue: IntervalQueue[Pair] = IntervalQueue(order)
    problems: list[NotRealizableError] = []
    while not queue.done:
        batch_num = queue.current_batch_number
        batch = queue.next_batch()
        logger.debug("Interval batch %d: %d intervals", batch_num, len(batch))
        results = []
        for task in batch:
            if task.lo == task.hi:
                results.append((ONE, ONE))
                continue
            inner = BivarPoly.zero()
            for x in task.inner:
                inner = inner + cross(queue.result(x, task.hi)[0], queue.result(task.lo, x)[1])
            (s0, r0), (s1, r1) = labels[task.lo], labels[task.hi]
            a = 1 if weight is None else weight(task.lo, task.hi)
            cloud = bx(s1 - s0, r1 - r0).scale(a) - delta_x(inner)
            flock = by(s1 - s0, r1 - r0).scale(a) - delta_y(inner)
            _check(cloud, task.key, "cloud", strict, problems)
            _check(flock, task.key, "flock", strict, problems)
            results.append((cloud, flock))
        queue.submit_results(results)
    return queue.results, problems


@dataclass(frozen=True)
class CloudFlockTable:
    """Cloud and flock polynomials for every interval of a configuration.

    Attributes:
        configuration: The source configuration.
        table: `(cloud, flock)` of each comparable pair `(lo, hi)`.
    """
    configuration: Configuration
    table: dict[tuple[int, int], Pair]

    def cloud(self, node: int) -> UnivarPoly:
        """Cloud polynomial of `node` in the whole matroid."""
        return self.table[node, self.configuration.top][0]

    def flock(self, node: int) -> UnivarPoly:
        """Flock polynomial of `node` in the whole matroid."""
        return self.table[self.configuration.bottom, node][1]

    def interval_cloud(self, lo: int, hi: int) -> UnivarPoly:
        return self.table[lo, hi][0]

    def interval_flock(self, lo: int, hi: int) -> UnivarPoly:
        return self.table[lo, hi][1]

    def rgp(self) -> BivarPoly:
        total = BivarPoly.zero()
        for node in range(len(self.configuration)):
            total = total + cross(self.cloud(node), self.flock(node))
        return total


def cloud_flock_from_configuration(c: Configuration) -> CloudFlockTable:
    """Cloud and flock polynomials of every node of `c`.

    Raises:
        NotRealizableError: If a negative coefficient appears; `c` is then not
            the configuration of any matroid.
    """
    table, _ = solve_intervals(c, c.labels)
    logger.debug("Solved %d intervals over %d nodes", len(table), len(c))
    return CloudFlockTable(configuration=c, table=table)


def rgp_from_configuration(c: Configuration) -> BivarPoly:
    """S(M; x, y) for any matroid M (loop- and coloop-free) with configuration `c`."""
    return cloud_flock_from_configuration(c).rgp()
