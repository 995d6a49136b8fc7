from itertools import count

import pytest

from scavenger.workers import first_result, parallel_map


def square(n):
    return n * n


def multiple_of_seven(n):
    return n // 7 if n > 0 and n % 7 == 0 else None


@pytest.mark.parametrize("workers", [1, 2, 3])
def test_parallel_map_keeps_input_order(workers):
    assert parallel_map(square, range(10), workers) == [n * n for n in range(10)]


@pytest.mark.parametrize("workers", [1, 2, 3])
def test_first_result_returns_the_earliest_hit(workers):
    assert first_result(multiple_of_seven, [3, 14, 21, 7], workers) == (1, 2)
    assert first_result(multiple_of_seven, range(1, 6), workers) is None


def test_first_result_stops_on_an_endless_iterable():
    assert first_result(multiple_of_seven, count(1), 2) == (6, 1)


def test_bad_worker_count():
    with pytest.raises(ValueError):
        parallel_map(square, [1, 2], 0)
    with pytest.raises(ValueError):
        first_result(square, [1, 2], 0)
