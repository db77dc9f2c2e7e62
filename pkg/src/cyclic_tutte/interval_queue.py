"""Bottom-up batched scheduling of the intervals of a finite lattice.

The cloud/flock recursion for an interval `[lo, hi]` reads the results of
every strictly smaller interval inside it. `IntervalQueue` groups the
comparable pairs of an order into batches by the number of nodes in the
closed interval: batch 1 holds the trivial intervals `[X, X]`, batch 2 the
covering pairs, and so on. Members of the same batch never depend on each
other, so a batch can be solved in any order; each batch depends on all
earlier ones.

Both `Configuration` and `CondensedConfiguration` satisfy `IntervalOrder`.

See Also:
    `cyclic_tutte.cloudflock.solve_intervals`: The recursion driven by this queue.
"""

from typing import Generic, Iterable, Protocol, TypeVar

T = TypeVar("T")


class IntervalOrder(Protocol):
    def comparable_pairs(self) -> Iterable[tuple[int, int]]: ...

    def open_interval(self, lo: int, hi: int) -> list[int]: ...


class IntervalTask:
    """One comparable pair `lo <= hi` waiting for its result."""

    def __init__(self, lo: int, hi: int, inner: tuple[int, ...]):
        """Initialize a task for the interval `[lo, hi]`.

        Args:
            lo: Bottom node.
            hi: Top node.
            inner: Nodes strictly between `lo` and `hi`.
        """
        self.lo = lo
        self.hi = hi
        self.inner = inner

    @property
    def batch(self) -> int:
        """Number of nodes in the closed interval."""
        return 1 if self.lo == self.hi else len(self.inner) + 2

    @property
    def key(self) -> tuple[int, int]:
        return (self.lo, self.hi)

    def __repr__(self) -> str:
        return f"IntervalTask({self.lo}, {self.hi}, batch={self.batch})"


class IntervalQueue(Generic[T]):
    """Queue of interval batches in increasing interval size.

    Results are submitted one batch at a time and can be looked up by
    `(lo, hi)` as soon as their batch has been submitted.
    """

    def __init__(self, order: IntervalOrder):
        self._tasks = [
            IntervalTask(lo, hi, tuple(order.open_interval(lo, hi)) if lo != hi else ())
            for lo, hi in order.comparable_pairs()
        ]
        self._batch_numbers = sorted({t.batch for t in self._tasks})
        self._batch_index = 0
        self._results: dict[tuple[int, int], T] = {}

    def __len__(self) -> int:
        return len(self._tasks)

    @property
    def done(self) -> bool:
        return self._batch_index >= len(self._batch_numbers)

    @property
    def current_batch_number(self) -> int | None:
        """Interval size of the current batch, or None once every batch is submitted."""
        if self.done:
            return None
        return self._batch_numbers[self._batch_index]

    def next_batch(self) -> list[IntervalTask]:
        """Return the tasks of the current batch, ordered by `(lo, hi)`."""
        if self.done:
            raise StopIteration("All batches have been processed.")
        batch_num = self._batch_numbers[self._batch_index]
        return sorted((t for t in self._tasks if t.batch == batch_num), key=lambda t: t.key)

    def submit_results(self, results: list[T]) -> None:
        """Accept results for the current batch, in `next_batch` order, and advance.

        Raises:
            ValueError: If the number of results does not match the batch.
        """
        batch = self.next_batch()
        if len(results) != len(batch):
            raise ValueError(
                f"Expected {len(batch)} results for batch {self.current_batch_number}, "
                f"got {len(results)}."
            )
        for task, result in zip(batch, results):
            self._results[task.key] = result
        self._batch_index += 1

    def result(self, lo: int, hi: int) -> T:
        """Look up a submitted result.

        Raises:
            KeyError: If `[lo, hi]` is not comparable or its batch is still pending.
        """
        return self._results[lo, hi]

    @property
    def results(self) -> dict[tuple[int, int], T]:
        return dict(self._results)
