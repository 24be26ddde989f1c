import math

import pytest
from hypothesis import given, settings, strategies as st

from primesum.sieve import (
    PrimeSumCheckpoint, SieveConfig, checkpoint_stream, checkpoints_csv, nth_prime_upper_bound,
    sum_first_n_primes,
)

from conftest import naive_primes

SMALL = SieveConfig(segment_size=1 << 10)


def test_hand_values():
    assert sum_first_n_primes(1) == PrimeSumCheckpoint(1, 2, 2)
    assert sum_first_n_primes(5) == PrimeSumCheckpoint(5, 11, 28)
    assert sum_first_n_primes(3).sum == 10


def test_stream_hand_values():
    assert [c.sum for c in checkpoint_stream([5, 10])] == [28, 129]
    assert checkpoint_stream([1]) == [PrimeSumCheckpoint(1, 2, 2)]
    assert checkpoint_stream([]) == []


def test_agrees_with_trial_division_up_to_ten_thousand(naive_prefix_sums):
    cps = checkpoint_stream(range(1, 10_001), SMALL)
    assert [c.sum for c in cps] == naive_prefix_sums
    primes = naive_primes(10_000)
    assert [c.last_prime for c in cps] == primes


def test_large_checkpoint_matches_naive_prefix(naive_prefix_sums):
    cps = checkpoint_stream([10_000, 100_000, 1_000_000])
    assert cps[0].sum == naive_prefix_sums[-1]
    assert cps[1] == PrimeSumCheckpoint(100_000, 1_299_709, 62_260_698_721)
    assert cps[2] == PrimeSumCheckpoint(1_000_000, 15_485_863, 7_472_966_967_499)


@pytest.mark.parametrize("segment", [1 << 10, 1 << 13, 1 << 16, 1 << 20])
def test_segment_size_independent(segment):
    grid = [1, 2, 999, 1000, 1001, 54_321]
    assert checkpoint_stream(grid, SieveConfig(segment)) == checkpoint_stream(grid)


def test_bound_shortfall_is_recovered(monkeypatch):
    import primesum.sieve as mod
    monkeypatch.setattr(mod, "nth_prime_upper_bound", lambda n: 20)
    assert mod.sum_first_n_primes(5000, SMALL).last_prime == naive_primes(5000)[-1]


def test_upper_bound_holds():
    primes = naive_primes(3000)
    for n in range(1, 3001):
        assert primes[n - 1] <= nth_prime_upper_bound(n)


def test_invalid_input():
    with pytest.raises(ValueError):
        sum_first_n_primes(0)
    with pytest.raises(ValueError):
        checkpoint_stream([5, 5])
    with pytest.raises(ValueError):
        checkpoint_stream([10, 5])
    with pytest.raises(ValueError):
        SieveConfig(segment_size=100)


def test_checkpoints_csv():
    text = checkpoints_csv(checkpoint_stream([5, 10]))
    assert text == "n,p_n,sum\n5,11,28\n10,29,129\n"


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(1, 20_000), min_size=1, max_size=6, unique=True))
def test_stream_equals_single_calls(grid):
    grid = sorted(grid)
    stream = checkpoint_stream(grid, SMALL)
    assert stream == [sum_first_n_primes(n, SMALL) for n in grid]
    for a, b in zip(stream, stream[1:]):
        assert b.sum > a.sum and b.last_prime > a.last_prime
        assert b.sum - a.sum >= (b.count - a.count) * (a.last_prime + 1)
    assert all(c.sum >= 2 * c.count for c in stream)


def test_landau_ratio():
    for c in checkpoint_stream([10_000, 100_000, 1_000_000]):
        ratio = c.sum / (c.count**2 / 2 * math.log(c.count))
        assert 0.8 < ratio < 1.2
