"""Logical error rates, the exact enumeration oracle, latency, and CSV sweeps."""

from __future__ import annotations

import csv
import io
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ._backend import kernels
from .code import MAX_ENUMERATION_QUBITS, CapabilityError, GraphCode, Syndrome, build_code
from .decoder import _z_part, hierarchical_table, mld_table, normalize_level_cap
from .graph import load_graph
from .noise import BLOCK_SIZE, PauliChannel, channel_family, sample_errors

__all__ = [
    "SweepRecord",
    "SweepConfig",
    "SweepConfigError",
    "estimate_logical_error_rate",
    "exact_logical_error_rate",
    "failure_polynomial",
    "evaluate_failure_polynomial",
    "sample_syndrome_corpus",
    "latency_benchmark",
    "LatencyResult",
    "parse_sweep_config",
    "run_sweep",
    "sweep_records",
    "records_to_csv",
    "log_log_slope",
    "CSV_HEADER",
]

MAX_EXACT_QUBITS = 11
DECODERS = ("hierarchical", "mld", "none")
CSV_HEADER = ["code", "channel", "p", "level_cap", "trials", "failures", "p_L", "stderr", "mean_decode_ns"]


@dataclass(frozen=True)
class SweepRecord:
    code_id: str
    channel: str
    p: float
    level_cap: int  # -1 = unlimited
    trials: int
    failures: int
    mean_decode_ns: float = 0.0

    @property
    def p_L(self) -> float:
        return self.failures / self.trials

    @property
    def stderr(self) -> float:
        q = self.p_L
        return math.sqrt(q * (1 - q) / self.trials)

    def row(self) -> list[str]:
        return [
            self.code_id,
            self.channel,
            f"{self.p:.9g}",
            "inf" if self.level_cap < 0 else str(self.level_cap),
            str(self.trials),
            str(self.failures),
            f"{self.p_L:.9g}",
            f"{self.stderr:.9g}",
            f"{self.mean_decode_ns:.9g}",
        ]


def _fail_mask(code: GraphCode, rx: np.ndarray, rz: np.ndarray) -> np.ndarray:
    """True where the residual is not in the stabilizer group (up to phase)."""
    xbar_z = np.int64(code.logical_x.z)
    zbar_x = np.int64(code.logical_z.x)
    zbar_z = np.int64(code.logical_z.z)
    anti_x = np.bitwise_count(rx & xbar_z) & 1
    anti_z = np.bitwise_count((rx & zbar_z) ^ (rz & zbar_x)) & 1
    outside = kernels.syndrome_masks(rx, rz, code.gen_x, code.gen_z) != 0
    return (anti_x | anti_z).astype(bool) | outside


class _DecodeCache:
    """Correction per syndrome mask plus the amortized time its decode took.

    Concurrent writers store identical values, so races are harmless.
    """

    def __init__(self, code: GraphCode, decoder: str, level_cap: int):
        self.code = code
        self.decoder = decoder
        self.cap = level_cap
        self.entries: dict[int, tuple[int, int, float]] = {}
        # keep JIT loading out of the timings
        probe = np.zeros(1, np.int64)
        if decoder == "hierarchical":
            kernels.hierarchical_batch(code.adjacency, probe, np.int64(code.logical_x.z), code.n, level_cap)
        elif decoder == "mld":
            kernels.mld_batch(code.gen_x, code.gen_z, code.n, probe)

    def lookup(self, masks: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        fresh = np.array([m for m in masks.tolist() if m not in self.entries], dtype=np.int64)
        if fresh.size:
            code = self.code
            t0 = time.perf_counter_ns()
            if self.decoder == "hierarchical":
                i_masks, a, _ = kernels.hierarchical_batch(
                    code.adjacency, fresh, np.int64(code.logical_x.z), code.n, self.cap
                )
                cx, cz = i_masks, _z_part(code, fresh, i_masks, a)
            elif self.decoder == "mld":
                cx, cz, _ = kernels.mld_batch(code.gen_x, code.gen_z, code.n, fresh)
            else:
                cx = cz = np.zeros(fresh.size, np.int64)
            per = (time.perf_counter_ns() - t0) / fresh.size if self.decoder != "none" else 0.0
            for m, x, z in zip(fresh.tolist(), cx.tolist(), cz.tolist()):
                self.entries[m] = (x, z, per)
        rows = [self.entries[m] for m in masks.tolist()]
        return tuple(np.array([r[k] for r in rows], dtype=np.float64 if k == 2 else np.int64) for k in range(3))


def _run_blocks(code, channel, cache, seed, trials, blocks):
    failures = 0
    weighted_ns = 0.0
    for b in blocks:
        start = b * BLOCK_SIZE
        count = min(BLOCK_SIZE, trials - start)
        ex, ez = sample_errors(channel, code.n, seed, start, count)
        syn = kernels.syndrome_masks(ex, ez, code.gen_x, code.gen_z)
        uniq, inv, counts = np.unique(syn, return_inverse=True, return_counts=True)
        cx, cz, ns = cache.lookup(uniq)
        weighted_ns += float((ns * counts).sum())
        failures += int(_fail_mask(code, ex ^ cx[inv], ez ^ cz[inv]).sum())
    return failures, weighted_ns


def estimate_logical_error_rate(
    code: GraphCode,
    channel: PauliChannel,
    level_cap=None,
    trials: int = 10**6,
    seed: int = 0,
    *,
    decoder: str = "hierarchical",
    workers: int = 1,
    p: float | None = None,
) -> SweepRecord:
    """Monte Carlo p_L: sample, take the syndrome, decode, score the residual.

    Trial t always sees the same error for a given seed, independent of
    ``workers``. ``mean_decode_ns`` is the per-trial expected decoder time,
    measured once per distinct syndrome and weighted by its frequency.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if decoder not in DECODERS:
        raise ValueError(f"decoder must be one of {DECODERS}")
    cap = normalize_level_cap(level_cap)
    cache = _DecodeCache(code, decoder, cap)
    n_blocks = -(-trials // BLOCK_SIZE)
    parts = [list(range(k, n_blocks, workers)) for k in range(max(workers, 1))]
    if workers <= 1:
        results = [_run_blocks(code, channel, cache, seed, trials, range(n_blocks))]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda bl: _run_blocks(code, channel, cache, seed, trials, bl), parts))
    failures = sum(r[0] for r in results)
    ns = sum(r[1] for r in results) / trials
    if p is None:
        p = channel.param[0] if len(channel.param) == 1 else channel.p_error
    return SweepRecord(code.label, channel.describe(), float(p), cap, trials, failures, ns)


def failure_polynomial(code: GraphCode, level_cap=None, decoder: str = "hierarchical") -> np.ndarray:
    """Failure counts ``c[a, b, c]`` over all 4^n Paulis with a X's, b Y's, c Z's.

    ``p_L = sum c[a,b,c] px^a py^b pz^c (1 - px - py - pz)^(n-a-b-c)``.
    """
    if code.n > MAX_EXACT_QUBITS:
        raise CapabilityError(f"exact enumeration limited to n <= {MAX_EXACT_QUBITS}")
    if decoder == "hierarchical":
        cx, cz, _ = hierarchical_table(code, level_cap)
    elif decoder == "mld":
        cx, cz, _ = mld_table(code)
    elif decoder == "none":
        size = 1 << (code.n - 1)
        cx = np.zeros(size, np.int64)
        cz = np.zeros(size, np.int64)
    else:
        raise ValueError(f"decoder must be one of {DECODERS}")
    corr_syn = kernels.syndrome_masks(cx, cz, code.gen_x, code.gen_z)
    return kernels.failure_counts(
        code.gen_x,
        code.gen_z,
        code.n,
        cx,
        cz,
        corr_syn,
        np.int64(code.logical_x.z),
        np.int64(code.logical_z.x),
        np.int64(code.logical_z.z),
    )


def evaluate_failure_polynomial(counts: np.ndarray, channel: PauliChannel) -> float:
    n = counts.shape[0] - 1
    a, b, c = np.nonzero(counts)
    p_id = 1.0 - channel.p_error
    terms = (
        counts[a, b, c]
        * np.power(channel.px, a)
        * np.power(channel.py, b)
        * np.power(channel.pz, c)
        * np.power(p_id, n - a - b - c)
    )
    return float(terms.sum())


def exact_logical_error_rate(
    code: GraphCode, channel: PauliChannel, level_cap=None, decoder: str = "hierarchical"
) -> float:
    """Exact p_L by enumerating all 4^n error patterns (n <= 11)."""
    return evaluate_failure_polynomial(failure_polynomial(code, level_cap, decoder), channel)


def log_log_slope(ps: Sequence[float], p_ls: Sequence[float]) -> float:
    slope, _ = np.polyfit(np.log(ps), np.log(p_ls), 1)
    return float(slope)


# --- latency ---------------------------------------------------------------


def sample_syndrome_corpus(code: GraphCode, channel: PauliChannel, size: int, seed: int) -> list[Syndrome]:
    ex, ez = sample_errors(channel, code.n, seed, 0, size)
    masks = kernels.syndrome_masks(ex, ez, code.gen_x, code.gen_z)
    return [Syndrome.from_mask(int(m), code.n - 1) for m in masks]


@dataclass(frozen=True)
class LatencyResult:
    hierarchical_ns: float
    exact_mld_ns: float
    weights_match: bool
    mismatches: int = 0

    @property
    def speedup(self) -> float:
        return self.exact_mld_ns / self.hierarchical_ns


def _median_of_means(fn, masks, repetitions):
    means = []
    for _ in range(repetitions):
        t0 = time.perf_counter_ns()
        fn(masks)
        means.append((time.perf_counter_ns() - t0) / len(masks))
    return float(np.median(means))


def latency_benchmark(code: GraphCode, syndromes: Sequence[Syndrome], repetitions: int = 5) -> LatencyResult:
    """Mean per-syndrome decode time of both optimal decoders on one corpus.

    Both run as compiled batch loops over the corpus so per-call dispatch
    does not mask the search cost. One warm-up pass (whose weights are
    compared), then the median over ``repetitions`` of the corpus mean.
    """
    if not syndromes:
        raise ValueError("syndrome corpus is empty")
    if code.n > MAX_ENUMERATION_QUBITS:
        raise CapabilityError(f"exact MLD limited to n <= {MAX_ENUMERATION_QUBITS}")
    masks = np.array([s.mask for s in syndromes], dtype=np.int64)
    adj, xbar, n = code.adjacency, np.int64(code.logical_x.z), code.n
    gx, gz = code.gen_x, code.gen_z

    def hier(m):
        return kernels.hierarchical_batch(adj, m, xbar, n, -1)

    def mld(m):
        return kernels.mld_batch(gx, gz, n, m)

    mismatches = int(np.count_nonzero(hier(masks)[2] != mld(masks)[2]))
    h = _median_of_means(hier, masks, repetitions)
    m = _median_of_means(mld, masks, repetitions)
    return LatencyResult(h, m, mismatches == 0, mismatches)


# --- sweeps ----------------------------------------------------------------


class SweepConfigError(ValueError):
    def __init__(self, field_name: str, message: str):
        super().__init__(f"{field_name}: {message}")
        self.field = field_name


DEFAULT_P_GRID = tuple(float(p) for p in np.geomspace(1e-3, 1e-1, 7))
DEFAULT_CAPS = (0, 1, 2, -1)


@dataclass(frozen=True)
class SweepConfig:
    graph: str
    logical_x: tuple[int, ...]
    channel: str = "depolarizing"
    p_grid: tuple[float, ...] = DEFAULT_P_GRID
    caps: tuple[int, ...] = DEFAULT_CAPS
    trials: int = 10**6
    seed: int = 0
    code: str | None = None
    workers: int = 1

    def build(self) -> GraphCode:
        return build_code(load_graph(self.graph), self.logical_x)


_KEYS = {"code", "graph", "logical_x", "channel", "p_grid", "caps", "trials", "seed", "workers"}


def _parse_ints(name, value):
    try:
        return tuple(int(v) for v in value.replace(",", " ").split())
    except ValueError:
        raise SweepConfigError(name, f"expected integers, got {value!r}") from None


def parse_sweep_config(text: str) -> SweepConfig:
    """Flat ``key = value`` document; ``#`` comments; lists comma-separated."""
    raw: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            key, sep, value = line.partition(":")
        key = key.strip()
        if not sep:
            raise SweepConfigError(f"line {lineno}", f"expected 'key = value', got {line!r}")
        if key not in _KEYS:
            raise SweepConfigError(key, "unknown key")
        raw[key] = value.strip()
    return sweep_config_from_mapping(raw)


def sweep_config_from_mapping(raw: dict) -> SweepConfig:
    for required in ("graph", "logical_x"):
        if not raw.get(required):
            raise SweepConfigError(required, "missing")
    kwargs: dict = {"graph": str(raw["graph"]), "logical_x": _parse_ints("logical_x", str(raw["logical_x"]))}
    if raw.get("code"):
        kwargs["code"] = str(raw["code"])
    if raw.get("channel"):
        fam = str(raw["channel"]).partition(":")[0]
        try:
            channel_family(fam)
        except ValueError as exc:
            raise SweepConfigError("channel", str(exc)) from None
        kwargs["channel"] = fam
    if raw.get("p_grid"):
        try:
            grid = tuple(float(v) for v in str(raw["p_grid"]).split(","))
        except ValueError:
            raise SweepConfigError("p_grid", f"non-numeric entry in {raw['p_grid']!r}") from None
        if not grid or any(not 0 <= p <= 1 for p in grid):
            raise SweepConfigError("p_grid", "probabilities must lie in [0, 1]")
        kwargs["p_grid"] = grid
    if raw.get("caps"):
        try:
            kwargs["caps"] = tuple(normalize_level_cap(c.strip()) for c in str(raw["caps"]).split(","))
        except ValueError as exc:
            raise SweepConfigError("caps", str(exc)) from None
    for name in ("trials", "seed", "workers"):
        if raw.get(name) not in (None, ""):
            try:
                kwargs[name] = int(raw[name])
            except ValueError:
                raise SweepConfigError(name, f"expected an integer, got {raw[name]!r}") from None
    if kwargs.get("trials", 1) < 1:
        raise SweepConfigError("trials", "must be >= 1")
    if kwargs.get("workers", 1) < 1:
        raise SweepConfigError("workers", "must be >= 1")
    return SweepConfig(**kwargs)


def sweep_records(config: SweepConfig) -> list[SweepRecord]:
    try:
        code = config.build()
    except ValueError as exc:
        raise SweepConfigError("graph/logical_x", str(exc)) from None
    family = channel_family(config.channel)
    code_id = config.code or code.label
    records = []
    for p in config.p_grid:
        ch = family(p)
        for cap in config.caps:
            rec = estimate_logical_error_rate(code, ch, None if cap < 0 else cap, config.trials, config.seed, workers=config.workers, p=p)
            records.append(
                SweepRecord(code_id, rec.channel, rec.p, rec.level_cap, rec.trials, rec.failures, rec.mean_decode_ns)
            )
    return records


def records_to_csv(records: Sequence[SweepRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in records:
        w.writerow(r.row())
    return buf.getvalue()


def run_sweep(config: SweepConfig) -> str:
    return records_to_csv(sweep_records(config))
