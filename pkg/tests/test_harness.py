import csv
import io

import numpy as np
import pytest

from graphdecode import BACKEND
from graphdecode.code import CapabilityError
from graphdecode.graph import cycle_graph
from graphdecode import build_code
from graphdecode.harness import (
    CSV_HEADER,
    DEFAULT_P_GRID,
    SweepConfigError,
    estimate_logical_error_rate,
    exact_logical_error_rate,
    failure_polynomial,
    latency_benchmark,
    log_log_slope,
    parse_sweep_config,
    run_sweep,
    sample_syndrome_corpus,
    sweep_records,
)
from graphdecode.noise import bit_flip, depolarizing, iid_pauli
from graphdecode.code import Syndrome


def test_zero_noise(c5):
    assert exact_logical_error_rate(c5, depolarizing(0.0)) == 0.0
    rec = estimate_logical_error_rate(c5, depolarizing(0.0), trials=5000)
    assert rec.failures == 0 and rec.p_L == 0.0


def test_polynomial_counts_weight_one_never_fail(c5):
    counts = failure_polynomial(c5)
    assert counts.sum() < 4**5
    for a, b, c in np.argwhere(counts):
        assert a + b + c >= 2


def test_polynomial_matches_brute_force_sum(c5):
    # channel-weighted sum of every error, independently of the polynomial form
    from graphdecode import LogicalClass, hierarchical_decode, residual_class, syndrome_of
    from graphdecode.pauli import PauliOperator

    ch = iid_pauli(0.02, 0.05, 0.07)
    probs = {(0, 0): 1 - ch.p_error, (1, 0): ch.px, (1, 1): ch.py, (0, 1): ch.pz}
    total = 0.0
    for x in range(32):
        for z in range(32):
            e = PauliOperator(5, x, z)
            corr = hierarchical_decode(c5, syndrome_of(c5, e)).correction
            if residual_class(c5, e, corr) is not LogicalClass.I:
                pr = 1.0
                for q in range(5):
                    pr *= probs[(x >> q & 1, z >> q & 1)]
                total += pr
    assert exact_logical_error_rate(c5, ch) == pytest.approx(total, rel=1e-12)


def test_leading_order_p_squared(c5):
    ps = [1e-4, 2e-4, 4e-4]
    assert log_log_slope(ps, [exact_logical_error_rate(c5, depolarizing(p)) for p in ps]) == pytest.approx(2.0, abs=0.01)


def test_no_decoding_fails_on_any_syndrome(c5):
    # identity correction: only stabilizer-group errors survive
    p = 0.05
    exact = exact_logical_error_rate(c5, depolarizing(p), decoder="none")
    any_error = 1 - (1 - p) ** 5
    assert 0.99 * any_error < exact < any_error


def test_mld_equals_unlimited(codes):
    c5 = codes["c5"]
    assert np.array_equal(failure_polynomial(c5), failure_polynomial(c5, decoder="mld"))
    for key in ("c5", "c9"):
        code = codes[key]
        ch = depolarizing(0.03)
        assert exact_logical_error_rate(code, ch, 0) >= exact_logical_error_rate(code, ch)


def test_equal_weight_ties_can_land_in_other_cosets(codes):
    # n=9: same weight per syndrome, different tie choices, slightly different p_L
    code = codes["c9"]
    ch = depolarizing(0.03)
    h = exact_logical_error_rate(code, ch)
    m = exact_logical_error_rate(code, ch, decoder="mld")
    assert h != m and abs(h - m) / m < 0.15


def test_capability_guard():
    code = build_code(cycle_graph(12), range(1, 13))
    with pytest.raises(CapabilityError):
        failure_polynomial(code)


def test_mc_within_three_sigma(c5):
    ch = depolarizing(0.05)
    rec = estimate_logical_error_rate(c5, ch, trials=40_000, seed=3)
    exact = exact_logical_error_rate(c5, ch)
    assert abs(rec.p_L - exact) <= 3 * np.sqrt(exact * (1 - exact) / rec.trials)


def test_worker_partitioning_is_invisible(codes):
    code = codes["c9"]
    ch = depolarizing(0.08)
    counts = {w: estimate_logical_error_rate(code, ch, 1, 30_000, 5, workers=w).failures for w in (1, 2, 3)}
    assert len(set(counts.values())) == 1


def test_seed_changes_sample(c5):
    ch = depolarizing(0.1)
    a = estimate_logical_error_rate(c5, ch, trials=20_000, seed=1).failures
    b = estimate_logical_error_rate(c5, ch, trials=20_000, seed=2).failures
    assert a != b


def test_record_row_format(c5):
    rec = estimate_logical_error_rate(c5, bit_flip(0.1), None, 1000, 0)
    row = rec.row()
    assert row[0] == c5.label and row[1] == "bitflip:0.1" and row[3] == "inf"
    assert len(row) == len(CSV_HEADER)


def _strip_timing(text):
    rows = list(csv.reader(io.StringIO(text)))
    return [r[:-1] for r in rows]


CONFIG = """
# small sweep
graph = cycle:5
logical_x = 1,2,3,4,5
channel = depolarizing
caps = 0,1,2,inf
trials = 2000
seed = 4
"""


def test_sweep_cardinality_and_determinism():
    cfg = parse_sweep_config(CONFIG)
    assert len(cfg.p_grid) == 7 and cfg.p_grid == DEFAULT_P_GRID
    first = run_sweep(cfg)
    rows = list(csv.reader(io.StringIO(first)))
    assert rows[0] == list(CSV_HEADER)
    assert len(rows) == 29
    assert {r[3] for r in rows[1:]} == {"0", "1", "2", "inf"}
    assert _strip_timing(run_sweep(cfg)) == _strip_timing(first)


@pytest.mark.parametrize(
    "text, field",
    [
        ("logical_x = 1,2\n", "graph"),
        ("graph = cycle:5\n", "logical_x"),
        ("graph = cycle:5\nlogical_x = 5\np_grid = 0.1,x\n", "p_grid"),
        ("graph = cycle:5\nlogical_x = 5\np_grid = 2\n", "p_grid"),
        ("graph = cycle:5\nlogical_x = 5\ncaps = -3\n", "caps"),
        ("graph = cycle:5\nlogical_x = 5\ntrials = 0\n", "trials"),
        ("graph = cycle:5\nlogical_x = 5\nseed = abc\n", "seed"),
        ("graph = cycle:5\nlogical_x = 5\nchannel = amplitude\n", "channel"),
        ("graph = cycle:5\nlogical_x = 5\ncolour = red\n", "colour"),
        ("graph = cycle:5\nlogical_x = a\n", "logical_x"),
    ],
)
def test_config_errors_name_the_field(text, field):
    with pytest.raises(SweepConfigError) as info:
        parse_sweep_config(text)
    assert info.value.field == field


def test_bad_code_in_config():
    cfg = parse_sweep_config("graph = cycle:5\nlogical_x = 1,2\ntrials = 10\n")
    with pytest.raises(SweepConfigError):
        sweep_records(cfg)


def test_latency_benchmark_on_trivial_corpus(codes):
    # both searches stop at weight 0, so neither can be much faster
    code = codes["c9"]
    corpus = [Syndrome((1,) * 8)] * 2000
    res = latency_benchmark(code, corpus, repetitions=3)
    assert res.weights_match
    bound = 1_000 if BACKEND == "numba" else 500_000
    assert res.hierarchical_ns < bound and res.exact_mld_ns < bound


def test_latency_benchmark_on_heavy_corpus(codes):
    code = codes["c11"]
    corpus = [Syndrome.from_mask(m, 10) for m in range(1, 1 << 10)]
    res = latency_benchmark(code, corpus, repetitions=3)
    assert res.weights_match
    assert res.hierarchical_ns < res.exact_mld_ns
    with pytest.raises(ValueError):
        latency_benchmark(code, [])


def test_corpus_weights_match(codes):
    code = codes["c11"]
    corpus = sample_syndrome_corpus(code, depolarizing(0.05), 2000, 0)
    res = latency_benchmark(code, corpus, repetitions=1)
    assert res.weights_match and res.mismatches == 0
