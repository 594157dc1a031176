import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import staircodes as sc
from staircodes import UnrecoverableError, sim
from conftest import sweep_configs
from test_stair_encoding import REFERENCE_UPSTAIRS


def _encoded(cfg, rng, symbol_size=8):
    return sc.encode(cfg, sc.Stripe.random(cfg, symbol_size, rng))


def test_empty_pattern_is_identity(exemplar, rng):
    stripe = _encoded(exemplar, rng)
    restored = sc.decode(exemplar, stripe, sc.FailurePattern.make())
    assert np.array_equal(restored.cells, stripe.cells)


def test_worst_case_roundtrip_and_reference_trace(exemplar, rng):
    stripe = _encoded(exemplar, rng)
    pattern = sc.worst_case_pattern(exemplar)
    damaged = sim.inject(stripe, pattern)
    trace = []
    restored = sc.decode(exemplar, damaged, pattern, practical=False, trace=trace)
    assert np.array_equal(restored.cells, stripe.cells)
    assert [s.signature for s in trace] == REFERENCE_UPSTAIRS


def test_practical_path_prefers_local_repair(exemplar, rng):
    stripe = _encoded(exemplar, rng)
    pattern = sc.worst_case_pattern(exemplar)
    damaged = sim.inject(stripe, pattern)
    trace = []
    restored = sc.decode(exemplar, damaged, pattern, trace=trace)
    assert np.array_equal(restored.cells, stripe.cells)
    # rows 0 and 1 lose only the two parity chunks, so they repair locally
    assert [s.signature[0] for s in trace[:2]] == ["row", "row"]
    assert trace[0].outputs == ((0, 6), (0, 7))
    assert trace[1].outputs == ((1, 6), (1, 7))


def test_worst_case_roundtrip_across_sweep(rng):
    for cfg in sweep_configs():
        stripe = _encoded(cfg, rng, symbol_size=4)
        pattern = sc.worst_case_pattern(cfg)
        restored = sc.decode(cfg, sim.inject(stripe, pattern), pattern)
        assert np.array_equal(restored.cells, stripe.cells), cfg


def test_decode_leaves_damaged_stripe_untouched(exemplar, rng):
    stripe = _encoded(exemplar, rng)
    pattern = sc.worst_case_pattern(exemplar)
    damaged = sim.inject(stripe, pattern)
    snapshot = damaged.cells.copy()
    sc.decode(exemplar, damaged, pattern)
    assert np.array_equal(damaged.cells, snapshot)


def test_sector_failures_at_arbitrary_rows(exemplar, rng):
    stripe = _encoded(exemplar, rng)
    pattern = sc.FailurePattern.make((6, 7), {0: (0,), 2: (1,), 4: (0, 2)})
    assert sc.pattern_within_coverage(exemplar, pattern)
    restored = sc.decode(exemplar, sim.inject(stripe, pattern), pattern)
    assert np.array_equal(restored.cells, stripe.cells)


def test_sector_failures_in_parity_chunks(exemplar, rng):
    stripe = _encoded(exemplar, rng)
    pattern = sc.FailurePattern.make((0, 1), {6: (3,), 7: (0, 2)})
    assert sc.pattern_within_coverage(exemplar, pattern)
    restored = sc.decode(exemplar, sim.inject(stripe, pattern), pattern)
    assert np.array_equal(restored.cells, stripe.cells)


def test_sampled_patterns_roundtrip(rng):
    for cfg in sweep_configs():
        stripe = _encoded(cfg, rng, symbol_size=2)
        for k in range(25):
            pattern = sim.sample_pattern(cfg, 1000 * k + 7, within=True)
            restored = sc.decode(cfg, sim.inject(stripe, pattern), pattern)
            assert np.array_equal(restored.cells, stripe.cells), (cfg, pattern)


def test_beyond_coverage_chunk_failures_raise(exemplar, rng):
    stripe = _encoded(exemplar, rng)
    pattern = sc.FailurePattern.make((0, 1, 2))      # m + 1 chunks, r > s
    with pytest.raises(UnrecoverableError):
        sc.decode(exemplar, sim.inject(stripe, pattern), pattern)


def test_beyond_coverage_sector_overload_raises(exemplar, rng):
    # m full chunks plus s+1 extra losses exceeds the total redundancy
    stripe = _encoded(exemplar, rng)
    pattern = sc.FailurePattern.make((6, 7), {0: (0, 1), 1: (0, 1), 3: (3,)})
    assert not sc.pattern_within_coverage(exemplar, pattern)
    with pytest.raises(UnrecoverableError):
        sc.decode(exemplar, sim.inject(stripe, pattern), pattern)


def test_pure_mode_rejects_too_many_failed(exemplar, rng):
    stripe = _encoded(exemplar, rng)
    pattern = sc.FailurePattern.make((0, 1, 2))
    with pytest.raises(UnrecoverableError):
        sc.decode(exemplar, sim.inject(stripe, pattern), pattern, practical=False)


def test_exhaustive_roundtrip_tiny_config(rng):
    """Every within-coverage pattern for n=4, r=2, m=1, e=(1,1)."""
    from oracles import iter_within_coverage_patterns
    cfg = sc.config_new(4, 2, 1, (1, 1))
    stripe = _encoded(cfg, rng, symbol_size=2)
    seen = 0
    for pattern in iter_within_coverage_patterns(cfg):
        restored = sc.decode(cfg, sim.inject(stripe, pattern), pattern)
        assert np.array_equal(restored.cells, stripe.cells), pattern
        seen += 1
    assert seen > 100


@given(st.integers(0, 2 ** 32 - 1), st.integers(0, 24))
@settings(max_examples=60, deadline=None)
def test_roundtrip_randomised(seed, pick):
    cfg = sweep_configs()[pick % len(sweep_configs())]
    gen = np.random.default_rng(seed)
    stripe = sc.encode(cfg, sc.Stripe.random(cfg, 2, gen))
    pattern = sim.sample_pattern(cfg, seed ^ 0xABCDEF, within=True)
    restored = sc.decode(cfg, sim.inject(stripe, pattern), pattern)
    assert np.array_equal(restored.cells, stripe.cells)
