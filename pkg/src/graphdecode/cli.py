"""Command-line entry point: ``graphdecode <subcommand> ...``.

Exit status: 0 success, 1 runtime failure (including a failed verification),
2 invalid input.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from pathlib import Path

import numpy as np

from ._backend import BACKEND
from .code import (
    CodeConstructionError,
    GraphCode,
    Syndrome,
    build_code,
    distance_via_normalizer,
    generator_rank,
    parse_code_definition,
)
from .decoder import (
    exact_mld_decode,
    graph_state_phase_correction,
    hierarchical_decode,
    hierarchical_table,
    mld_table,
)
from .gf2 import gf2_in_rowspan
from .graph import GraphParseError, graph_state_stabilizers, load_graph
from .harness import (
    SweepConfigError,
    latency_benchmark,
    parse_sweep_config,
    run_sweep,
    sample_syndrome_corpus,
    sweep_config_from_mapping,
)
from .noise import parse_channel
from .pauli import PauliOperator, commutes, multiply


class UsageError(Exception):
    """Bad input detected before any computation."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _vertex_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.replace(" ", "").split(",") if v]
    except ValueError:
        raise UsageError(f"--logical-x expects a comma list of vertices, got {text!r}") from None


def _load_code(args) -> GraphCode:
    try:
        if getattr(args, "code", None):
            path = Path(args.code)
            return parse_code_definition(path.read_text(encoding="utf-8"), base_dir=path.parent)
        if not args.graph:
            raise UsageError("--graph is required")
        g = load_graph(args.graph)
        lx = _vertex_list(args.logical_x) if args.logical_x else list(range(1, g.n + 1))
        return build_code(g, lx)
    except (GraphParseError, CodeConstructionError, OSError) as exc:
        raise UsageError(str(exc)) from None


def _emit(args, rows: list[list], header: list[str], text_lines: list[str]) -> None:
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        out = buf.getvalue()
    else:
        out = "\n".join(text_lines) + "\n"
    if getattr(args, "out", None):
        Path(args.out).write_text(out, encoding="utf-8")
    else:
        sys.stdout.write(out)


def cmd_code_info(args) -> int:
    code = _load_code(args)
    d = code.distance
    gens = [k.compact() for k in code.generators]
    lines = [
        f"n={code.n} k=1 d={d}",
        f"logical X: {code.logical_x.compact()}",
        f"logical Z: {code.logical_z.compact()}",
        "generators:",
        *(f"  K{i}: {g}" for i, g in enumerate(gens, start=1)),
    ]
    rows = [["n", code.n], ["k", 1], ["d", d], ["logical_x", code.logical_x.compact()],
            ["logical_z", code.logical_z.compact()]]
    rows += [[f"K{i}", g] for i, g in enumerate(gens, start=1)]
    _emit(args, rows, ["field", "value"], lines)
    return 0


def cmd_decode(args) -> int:
    code = _load_code(args)
    try:
        s = Syndrome.parse(args.syndrome)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if len(s) != code.n - 1:
        raise UsageError(f"syndrome length {len(s)} does not match n-1={code.n - 1}")
    try:
        cap = None if args.level_cap in ("inf", None) else int(args.level_cap)
    except ValueError:
        raise UsageError(f"--level-cap must be an integer or 'inf', got {args.level_cap!r}") from None
    if cap is not None and cap < 0:
        raise UsageError("--level-cap must be non-negative")
    out = exact_mld_decode(code, s) if args.decoder == "mld" else hierarchical_decode(code, s, cap)
    c = out.correction
    lines = [
        f"correction: {c.compact()}",
        f"weight: {out.weight}",
        f"level: {out.level_used}",
        f"optimal: {str(out.optimal).lower()}",
    ]
    rows = [[str(s), c.compact(), out.weight, out.level_used, str(out.optimal).lower()]]
    _emit(args, rows, ["syndrome", "correction", "weight", "level", "optimal"], lines)
    return 0


def _graph_state_check(g, trials: int, seed: int, statevector_max: int = 8) -> tuple[int, int]:
    """Random Pauli errors on |G>; returns (checked, failures) for the Z_{V^-} correction."""
    stabs = graph_state_stabilizers(g)
    rows = [s.x | (s.z << g.n) for s in stabs]
    rng = np.random.default_rng(seed)
    use_sv = g.n <= statevector_max
    if use_sv:
        from .statevector import apply_pauli, measure_all, prepare_graph_state, same_up_to_phase

        ref = prepare_graph_state(g)
    failures = 0
    for _ in range(trials):
        x = int(rng.integers(0, 1 << g.n))
        z = int(rng.integers(0, 1 << g.n))
        err = PauliOperator(g.n, x, z)
        s_full = [1 if commutes(s, err) else -1 for s in stabs]
        corr = graph_state_phase_correction(g, s_full)
        res = multiply(corr, err)
        ok = gf2_in_rowspan(res.x | (res.z << g.n), rows)
        if use_sv:
            measured, post = measure_all(apply_pauli(ref, err), stabs, rng)
            fixed = apply_pauli(post, graph_state_phase_correction(g, measured))
            ok = ok and list(measured) == s_full and same_up_to_phase(fixed, ref)
        failures += not ok
    return trials, failures


def cmd_verify_graph_state(args) -> int:
    try:
        g = load_graph(args.graph)
    except GraphParseError as exc:
        raise UsageError(str(exc)) from None
    checked, failures = _graph_state_check(g, args.trials, args.seed)
    verdict = "PASS" if failures == 0 else "FAIL"
    _emit(
        args,
        [[g.n, checked, failures, verdict]],
        ["n", "errors_checked", "failures", "verdict"],
        [f"{verdict}: {checked - failures}/{checked} Pauli errors corrected by Z on -1 vertices"],
    )
    return 0 if failures == 0 else 1


def _code_checks(code: GraphCode) -> list[tuple[str, bool, str]]:
    gens = code.generators
    checks = []
    comm = all(commutes(a, b) for a in gens for b in gens)
    log_ok = all(commutes(k, code.logical_x) and commutes(k, code.logical_z) for k in gens)
    checks.append(("generators commute", comm and log_ok, ""))
    checks.append(("logical X/Z anticommute", not commutes(code.logical_x, code.logical_z), ""))
    r = generator_rank(code)
    checks.append(("generator rank n-1", r == code.n - 1, f"rank={r}"))
    d1 = code.distance
    d2 = distance_via_normalizer(code)
    checks.append(("distance (two routes agree)", d1 == d2, f"d={d1}/{d2}"))
    if code.n <= 12:
        hw = hierarchical_table(code)[2]
        mw = mld_table(code)[2]
        bad = int(np.count_nonzero(hw != mw))
        checks.append(("hierarchical == exact MLD weight", bad == 0, f"mismatches={bad}"))
    return checks


def cmd_verify_code(args) -> int:
    code = _load_code(args)
    checks = _code_checks(code)
    lines = [f"{'PASS' if ok else 'FAIL'}  {name} {info}".rstrip() for name, ok, info in checks]
    rows = [[name, "PASS" if ok else "FAIL", info] for name, ok, info in checks]
    _emit(args, rows, ["check", "verdict", "detail"], lines)
    return 0 if all(ok for _, ok, _ in checks) else 1


def cmd_enumerate(args) -> int:
    code = _load_code(args)
    size = 1 << (code.n - 1)
    _, _, hw = hierarchical_table(code)
    _, _, mw = mld_table(code)
    rows = []
    for m in range(size):
        rows.append([str(Syndrome.from_mask(m, code.n - 1)), int(hw[m]), int(mw[m]), int(hw[m] == mw[m])])
    mism = sum(1 for r in rows if not r[3])
    lines = [f"{r[0]}  hierarchical={r[1]} exact={r[2]}" for r in rows]
    lines.append(f"mismatches: {mism}")
    _emit(args, rows, ["syndrome", "hierarchical_weight", "exact_weight", "match"], lines)
    return 0 if mism == 0 else 1


def cmd_sweep(args) -> int:
    try:
        if args.config:
            config = parse_sweep_config(Path(args.config).read_text(encoding="utf-8"))
        else:
            raw = {
                "graph": args.graph,
                "logical_x": args.logical_x,
                "channel": args.channel,
                "p_grid": args.p_grid,
                "caps": args.caps,
                "trials": args.trials,
                "seed": args.seed,
            }
            if raw["graph"] and not raw["logical_x"]:
                raw["logical_x"] = ",".join(str(v) for v in range(1, load_graph(args.graph).n + 1))
            config = sweep_config_from_mapping({k: v for k, v in raw.items() if v is not None})
        config.build()
    except (SweepConfigError, GraphParseError, CodeConstructionError, OSError) as exc:
        raise UsageError(str(exc)) from None
    text = run_sweep(config)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def cmd_bench(args) -> int:
    code = _load_code(args)
    try:
        channel = parse_channel(args.channel)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    corpus = sample_syndrome_corpus(code, channel, args.trials, args.seed)
    res = latency_benchmark(code, corpus, args.repetitions)
    lines = [
        f"code: {code.label}  backend: {BACKEND}  corpus: {len(corpus)} syndromes from {channel}",
        f"hierarchical mean: {res.hierarchical_ns:.1f} ns",
        f"exact MLD mean:    {res.exact_mld_ns:.1f} ns",
        f"speedup: {res.speedup:.2f}x  weights match: {str(res.weights_match).lower()}",
    ]
    rows = [[code.label, str(channel), len(corpus), f"{res.hierarchical_ns:.9g}", f"{res.exact_mld_ns:.9g}",
             f"{res.speedup:.9g}", str(res.weights_match).lower()]]
    _emit(args, rows, ["code", "channel", "corpus", "hierarchical_ns", "exact_mld_ns", "speedup", "weights_match"],
          lines)
    return 0 if res.weights_match else 1


def _build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="graphdecode", description="Graph-code construction and decoding.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, code=True):
        if code:
            sp.add_argument("--graph", help="edge-list file or cycle:<n>")
            sp.add_argument("--logical-x", help="comma list of vertices for the Z-type logical X (default: all)")
            sp.add_argument("--code", help="code-definition file (graph line + 'Lx ...')")
        sp.add_argument("--format", choices=("text", "csv"), default="text")
        sp.add_argument("--out", help="write output to this path")

    sp = sub.add_parser("code-info", help="print code parameters and operators")
    common(sp)
    sp.set_defaults(func=cmd_code_info)

    sp = sub.add_parser("decode", help="decode one syndrome")
    common(sp)
    sp.add_argument("--syndrome", required=True, help="'+-++' or binary '0100' (1 = -1 eigenvalue)")
    sp.add_argument("--level-cap", default="inf")
    sp.add_argument("--decoder", choices=("hierarchical", "mld"), default="hierarchical")
    sp.set_defaults(func=cmd_decode)

    sp = sub.add_parser("verify-graph-state", help="check Z-on-(-1) correction of graph states")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--trials", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=0)
    common(sp, code=False)
    sp.set_defaults(func=cmd_verify_graph_state)

    sp = sub.add_parser("verify-code", help="structural and decoder checks for one code")
    common(sp)
    sp.set_defaults(func=cmd_verify_code)

    sp = sub.add_parser("enumerate-syndromes", help="hierarchical vs exact weight for every syndrome")
    common(sp)
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("sweep", help="Monte Carlo logical error rates as CSV")
    sp.add_argument("--config", help="key = value config file")
    sp.add_argument("--graph")
    sp.add_argument("--logical-x")
    sp.add_argument("--channel", help="channel family: depolarizing, bitflip, phaseflip")
    sp.add_argument("--p-grid", help="comma list of physical error rates")
    sp.add_argument("--caps", help="comma list of level caps, 'inf' for unlimited")
    sp.add_argument("--trials", type=int)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--out")
    sp.add_argument("--format", choices=("csv",), default="csv")
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("bench", help="latency of hierarchical vs exact MLD decoding")
    common(sp)
    sp.add_argument("--channel", default="depolarizing:0.05")
    sp.add_argument("--trials", type=int, default=10_000, help="corpus size")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--repetitions", type=int, default=5)
    sp.set_defaults(func=cmd_bench)
    return p


def _glue_syndrome(argv: list[str]) -> list[str]:
    # "+-" strings starting with "-" would otherwise be read as flags
    out = []
    it = iter(argv)
    for a in it:
        if a == "--syndrome":
            nxt = next(it, None)
            out.append(a if nxt is None else f"--syndrome={nxt}")
        else:
            out.append(a)
    return out


def main(argv=None) -> int:
    parser = _build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = parser.parse_args(_glue_syndrome(argv))
        for name in ("trials", "repetitions"):
            v = getattr(args, name, None)
            if v is not None and v < 1:
                raise UsageError(f"--{name} must be >= 1")
        return args.func(args)
    except UsageError as exc:
        print(f"graphdecode: error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - report and map to exit 1
        print(f"graphdecode: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
