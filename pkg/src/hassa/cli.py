"""Command-line front end: ``hassa {solve,verify,gen-king,memory-report}``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .campaign import Algorithm, CampaignSpec, default_mode, load_instance, run_campaign
from .engine import Boundary, Init
from .instances import generate_king, save_gset
from .ising import as_spins, cut_value
from .rng import parse_seed
from .sa import SaMode, SaSchedule
from .schedule import DEFAULT_CONFIG, Mode, ScheduleConfig
from .trace import DEFAULT_CAPACITY_BITS, StoragePolicy, StoreOverflowError, memory_bits_per_iteration

_SCHEDULE_FLAGS = {
    "trials": "trials",
    "mshot": "m_shot",
    "nrnd": "n_rnd",
    "i0min": "i0_min",
    "i0max": "i0_max",
    "tau": "tau",
}


def _capacity(text):
    if text is None:
        return None
    if str(text).lower() in ("none", "unbounded"):
        return "unbounded"
    return int(float(text))


def _add_schedule_flags(p: argparse.ArgumentParser) -> None:
    for flag in _SCHEDULE_FLAGS:
        p.add_argument(f"--{flag}", type=int)
    p.add_argument("--beta", help="integer shift (shift mode) or ratio such as 0.5 (ratio mode)")
    p.add_argument("--mode", choices=[m.value for m in Mode])


def _schedule_from(values: dict, algorithm: Algorithm) -> ScheduleConfig:
    mode, beta = default_mode(algorithm)
    kwargs = {field: getattr(DEFAULT_CONFIG, field) for field in _SCHEDULE_FLAGS.values()}
    for flag, field in _SCHEDULE_FLAGS.items():
        if values.get(flag) is not None:
            kwargs[field] = int(values[flag])
    if values.get("mode") is not None:
        mode = Mode(values["mode"])
        if values.get("beta") is None:
            beta = "0.5" if mode is Mode.SSA_RATIO else 1
    if values.get("beta") is not None:
        beta = values["beta"]
    return ScheduleConfig(mode=mode, beta=beta, **kwargs)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hassa", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="run a multi-trial campaign")
    s.add_argument("--config", help="JSON file with any of the flags below; flags win")
    s.add_argument("--instance", help="G-set file, or king:RxC:SEED / torus:RxC:SEED")
    s.add_argument("--algo", choices=[a.value for a in Algorithm])
    _add_schedule_flags(s)
    s.add_argument("--policy", choices=[p.value for p in StoragePolicy])
    s.add_argument("--seed", help="base seed, decimal or 0x-hex (env SSA_ANNEAL_SEED)")
    s.add_argument("--capacity-bits", help="trace memory in bits, or 'none' (default: board model "
                   "for hassa, unbounded for ssa)")
    s.add_argument("--max-depth", type=int, help="trace memory rows (default 16384 when bounded)")
    s.add_argument("--boundary", choices=[b.value for b in Boundary])
    s.add_argument("--init", choices=[i.value for i in Init])
    s.add_argument("--t-start", type=float)
    s.add_argument("--t-end", type=float)
    s.add_argument("--sa-cycles", type=int)
    s.add_argument("--sa-mode", choices=[m.value for m in SaMode])
    s.add_argument("--sweep", action="store_true", default=None, help="SA: one cycle = n proposals")
    s.add_argument("--emit-series", action="store_true", default=None)
    s.add_argument("--dump-traces", action="store_true", default=None)
    s.add_argument("--out", help="output directory")
    s.add_argument("--workers", type=int)

    v = sub.add_parser("verify", help="evaluate a partition file")
    v.add_argument("--instance", required=True)
    v.add_argument("--partition", required=True, help="one +1/-1 (or 1/0) per line")
    v.add_argument("--claimed", type=int, help="cut value the partition is claimed to reach")

    g = sub.add_parser("gen-king", help="write a toroidal King's-graph instance")
    g.add_argument("rows", type=int)
    g.add_argument("cols", type=int)
    g.add_argument("--seed", default=None)
    g.add_argument("--out", required=True)

    m = sub.add_parser("memory-report", help="trace memory per iteration for both policies")
    m.add_argument("--n-spins", type=int, default=800)
    _add_schedule_flags(m)
    return parser


def _merged(args: argparse.Namespace) -> dict:
    values = {}
    if getattr(args, "config", None):
        raw = json.loads(Path(args.config).read_text())
        values.update({k.replace("-", "_"): v for k, v in raw.items()})
    for k, v in vars(args).items():
        if v is not None and k not in ("command", "config"):
            values[k] = v
    return values


def cmd_solve(args) -> int:
    values = _merged(args)
    if not values.get("instance"):
        print("solve: --instance is required", file=sys.stderr)
        return 2
    algorithm = Algorithm(values.get("algo", Algorithm.HA_SSA.value))
    try:
        config = _schedule_from(values, algorithm)
    except ValueError as exc:
        print(f"solve: invalid schedule: {exc}", file=sys.stderr)
        return 2
    cap = _capacity(values.get("capacity_bits"))
    if cap is None:
        cap = "unbounded" if algorithm is Algorithm.SSA else DEFAULT_CAPACITY_BITS
    bounded = cap != "unbounded"
    sa_kwargs = {}
    for flag, field in (("t_start", "t_start"), ("t_end", "t_end"), ("sa_cycles", "total_cycles")):
        if values.get(flag) is not None:
            sa_kwargs[field] = values[flag]
    if values.get("sa_mode"):
        sa_kwargs["mode"] = values["sa_mode"]
    if values.get("sweep"):
        sa_kwargs["sweep"] = True
    try:
        spec = CampaignSpec(
            instance=values["instance"],
            algorithm=algorithm,
            config=config,
            sa=SaSchedule(ssa=config, **sa_kwargs),
            base_seed=parse_seed(values.get("seed")),
            out_dir=values.get("out"),
            emit_series=bool(values.get("emit_series")),
            policy=values.get("policy"),
            capacity_bits=cap if bounded else None,
            max_depth=values.get("max_depth", 16_384) if bounded else None,
            boundary=values.get("boundary", Boundary.CLAMP),
            init=values.get("init", Init.ZERO),
            workers=values.get("workers"),
            dump_traces=bool(values.get("dump_traces")),
        )
        result = run_campaign(spec)
    except (FileNotFoundError, ValueError) as exc:
        print(f"solve: {exc}", file=sys.stderr)
        return 2
    except StoreOverflowError as exc:
        print(f"solve: {exc}", file=sys.stderr)
        return 3
    print(f"instance {spec.instance}  algorithm {algorithm.value}  trials {len(result.trials)}")
    print(f"best cut {result.best_cut}  average cut {result.average_cut:.2f}  "
          f"wall time {result.wall_time_s:.1f} s")
    return 0


def read_partition(path: str | Path) -> list[int]:
    spins = []
    for raw in Path(path).read_text().split("\n"):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        for tok in line.split():
            v = int(tok)
            if v in (1, -1):
                spins.append(v)
            elif v == 0:
                spins.append(-1)
            else:
                raise ValueError(f"partition entry {tok!r} is not one of +1, -1, 1, 0")
    return spins


def cmd_verify(args) -> int:
    try:
        graph, _ = load_instance(args.instance)
        m = as_spins(read_partition(args.partition), graph.n_vertices)
    except (FileNotFoundError, ValueError) as exc:
        print(f"verify: {exc}", file=sys.stderr)
        return 2
    cut = cut_value(graph, m)
    print(f"cut {cut}")
    if args.claimed is not None:
        ok = cut == args.claimed
        print(f"claimed {args.claimed}: {'match' if ok else 'MISMATCH'}")
        return 0 if ok else 1
    return 0


def cmd_gen_king(args) -> int:
    try:
        graph = generate_king(args.rows, args.cols, parse_seed(args.seed))
    except ValueError as exc:
        print(f"gen-king: {exc}", file=sys.stderr)
        return 2
    save_gset(graph, args.out)
    print(f"wrote {args.out}: {graph.n_vertices} vertices, {graph.n_edges} edges")
    return 0


def memory_report(config: ScheduleConfig, n_spins: int) -> str:
    full = memory_bits_per_iteration(StoragePolicy.FULL_TRACE, config, n_spins)
    part = memory_bits_per_iteration(StoragePolicy.MAX_TEMP_ONLY, config, n_spins)
    rows = [
        f"n_spins {n_spins}  steps/iteration {config.steps_per_iteration}  tau {config.tau}  "
        f"iterations {config.m_shot}",
        f"{'policy':<10}{'bits/iteration':>16}{'bits/trial':>14}",
        f"{'full':<10}{full:>16}{full * config.m_shot:>14}",
        f"{'maxtemp':<10}{part:>16}{part * config.m_shot:>14}",
        f"ratio {full / part:.1f}",
    ]
    return "\n".join(rows) + "\n"


def cmd_memory_report(args) -> int:
    try:
        config = _schedule_from(vars(args), Algorithm.HA_SSA)
    except ValueError as exc:
        print(f"memory-report: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(memory_report(config, args.n_spins))
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = {
        "solve": cmd_solve,
        "verify": cmd_verify,
        "gen-king": cmd_gen_king,
        "memory-report": cmd_memory_report,
    }[args.command]
    return handler(args)


if __name__ == "__main__":
    sys.exit(main())
