import pytest

from cyclic_tutte import corpus
from cyclic_tutte.configuration import extract_configuration
from cyclic_tutte.interval_queue import IntervalQueue, IntervalTask


@pytest.fixture
def diamond():
    return extract_configuration(corpus.m1())


class TestIntervalTask:

    def test_creation(self):
        task = IntervalTask(0, 3, (1, 2))
        assert task.lo == 0
        assert task.hi == 3
        assert task.inner == (1, 2)
        assert task.key == (0, 3)

    def test_batch_of_trivial_interval(self):
        assert IntervalTask(2, 2, ()).batch == 1

    def test_batch_of_cover(self):
        assert IntervalTask(0, 1, ()).batch == 2

    def test_batch_counts_inner_nodes(self):
        assert IntervalTask(0, 3, (1, 2)).batch == 4


class TestIntervalQueue:

    def test_parses_tasks(self, diamond):
        assert len(IntervalQueue(diamond)) == 9

    def test_batch_ordering(self, diamond):
        queue = IntervalQueue(diamond)
        assert queue._batch_numbers == [1, 2, 4]
        assert queue.current_batch_number == 1

    def test_first_batch_is_diagonal(self, diamond):
        batch = IntervalQueue(diamond).next_batch()
        assert [t.key for t in batch] == [(0, 0), (1, 1), (2, 2), (3, 3)]

    def test_submit_advances(self, diamond):
        queue = IntervalQueue(diamond)
        queue.submit_results(["a", "b", "c", "d"])
        assert queue.current_batch_number == 2
        assert queue.result(1, 1) == "b"
        assert [t.key for t in queue.next_batch()] == [(0, 1), (0, 2), (1, 3), (2, 3)]

    def test_wrong_result_count(self, diamond):
        queue = IntervalQueue(diamond)
        with pytest.raises(ValueError, match="Expected 4 results"):
            queue.submit_results(["a"])

    def test_pending_result_lookup(self, diamond):
        queue = IntervalQueue(diamond)
        with pytest.raises(KeyError):
            queue.result(0, 3)

    def test_runs_to_completion(self, diamond):
        queue = IntervalQueue(diamond)
        while not queue.done:
            queue.submit_results([t.batch for t in queue.next_batch()])
        assert queue.current_batch_number is None
        assert queue.result(0, 3) == 4
        assert len(queue.results) == 9
        with pytest.raises(StopIteration):
            queue.next_batch()

    def test_inner_nodes_precede_interval(self, diamond):
        queue = IntervalQueue(diamond)
        solved = set()
        while not queue.done:
            batch = queue.next_batch()
            for task in batch:
                for x in task.inner:
                    assert (x, task.hi) in solved
                    assert (task.lo, x) in solved
            solved.update(t.key for t in batch)
            queue.submit_results([None] * len(batch))
