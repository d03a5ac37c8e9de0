"""Command-line entry point.

Subcommands: ed (labeled spectrum dump), vqe (single optimization), sweep
(named experiments), phase-stats, and reproduce (golden data files for the
figures).  Options can also come from a JSON config file; explicit flags
override file values.  Exit codes: 0 success, 2 invalid configuration,
3 capability exceeded, 4 internal consistency failure, 5 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import CapabilityError, ConsistencyError
from .exact_diag import full_labeled_spectrum
from .experiments import (
    EXPERIMENTS,
    ExperimentConfig,
    ResultTable,
    default_config,
    emit,
    reproduce,
    run_experiment,
)
from .hamiltonian import ModelSpec
from .vqe import InitialState, VqeConfig, optimize

INIT_KINDS = ("all-plus", "all-minus", "spin-flip", "domain-wall", "bell-pair")


def _add_model_flags(p):
    p.add_argument("--n", type=int, default=None, help="number of sites (odd)")
    p.add_argument("--j", type=float, default=None, help="Ising coupling J")
    p.add_argument("--h", type=float, default=None, help="transverse field h")
    p.add_argument("--twisted", action="store_true", help="flip the sign of bond N")


def _add_output_flags(p):
    p.add_argument("--out", default=None, help="output data file")
    p.add_argument("--format", choices=("csv", "json-lines"), default="csv")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--threads", type=int, default=None, help="parallel worker processes")
    p.add_argument("--config", default=None, help="JSON config file; flags override its values")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qpband", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_ed = sub.add_parser("ed", help="exact diagonalization with symmetry labels")
    _add_model_flags(p_ed)
    p_ed.add_argument("--eigenvectors", action="store_true", help="include eigenvector amplitudes")
    _add_output_flags(p_ed)

    p_vqe = sub.add_parser("vqe", help="one seeded VQE optimization")
    _add_model_flags(p_vqe)
    p_vqe.add_argument("--init", choices=INIT_KINDS, default="all-plus")
    p_vqe.add_argument("--x", type=int, default=None, help="site parameter of the initial state")
    p_vqe.add_argument("--x2", type=int, default=None, help="second Bell-pair site")
    p_vqe.add_argument("--sigma", type=int, choices=(1, -1), default=1)
    p_vqe.add_argument("--depth", type=int, default=6)
    _add_output_flags(p_vqe)

    p_sweep = sub.add_parser("sweep", help="run a named experiment")
    p_sweep.add_argument("--experiment", choices=EXPERIMENTS, required=True)
    _add_model_flags(p_sweep)
    p_sweep.add_argument("--j-over-h", default=None, help="comma-separated coupling ratios")
    p_sweep.add_argument("--h-values", default=None, help="comma-separated fields (twisted experiments)")
    p_sweep.add_argument("--depth", type=int, default=None)
    p_sweep.add_argument("--depths", default=None, help="comma-separated depth list")
    p_sweep.add_argument("--restarts", type=int, default=None)
    p_sweep.add_argument("--runs", type=int, default=None, help="runs for phase statistics")
    _add_output_flags(p_sweep)

    p_stats = sub.add_parser("phase-stats", help="phase/weight statistics experiment")
    _add_model_flags(p_stats)
    p_stats.add_argument("--j-over-h", default=None, help="comma-separated coupling ratios")
    p_stats.add_argument("--depth", type=int, default=None)
    p_stats.add_argument("--runs", type=int, default=None)
    _add_output_flags(p_stats)

    p_rep = sub.add_parser("reproduce", help="regenerate golden data files for a figure")
    p_rep.add_argument("figure_id", help="fig2a..figB-spectrum, or 'all'")
    p_rep.add_argument("--out-dir", default="data")
    p_rep.add_argument("--format", choices=("csv", "json-lines"), default="csv")
    p_rep.add_argument("--seed", type=int, default=None)
    p_rep.add_argument("--threads", type=int, default=None)
    return parser


def _load_config_file(args):
    if getattr(args, "config", None) is None:
        return {}
    try:
        with open(args.config) as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ValueError(f"config file {args.config}: line {exc.lineno}, column {exc.colno}: {exc.msg}")
    if not isinstance(data, dict):
        raise ValueError(f"config file {args.config}: expected a JSON object at top level")
    return data


def _merged(args, file_values, key, default):
    flag = getattr(args, key.replace("-", "_"), None)
    if flag is not None:
        return flag
    if key in file_values:
        return file_values[key]
    return default


def _float_list(text):
    if text is None:
        return None
    if isinstance(text, (list, tuple)):
        return tuple(float(v) for v in text)
    return tuple(float(v) for v in text.split(","))


def _int_list(text):
    if text is None:
        return None
    if isinstance(text, (list, tuple)):
        return tuple(int(v) for v in text)
    return tuple(int(v) for v in text.split(","))


def _model_from(args, file_values) -> ModelSpec:
    n = int(_merged(args, file_values, "n", 9))
    j = float(_merged(args, file_values, "j", 0.5))
    h = float(_merged(args, file_values, "h", 1.0))
    twisted = bool(args.twisted or file_values.get("twisted", False))
    return ModelSpec.twisted(n, j, h) if twisted else ModelSpec.plain(n, j, h)


def _cmd_ed(args):
    file_values = _load_config_file(args)
    model = _model_from(args, file_values)
    spectrum = full_labeled_spectrum(model)
    table = ResultTable()
    for i, entry in enumerate(spectrum.entries):
        name = "level_energy_even" if entry.parity == 1 else "level_energy_odd"
        table.add(
            experiment="ed", n=model.n, j=model.j, h=model.h, depth=None, seed=None,
            momentum_index=entry.momentum_index, quantity_name=name, value_real=entry.energy,
        )
        if args.eigenvectors:
            for b, amp in enumerate(entry.vector):
                table.add(
                    experiment="ed", n=model.n, j=model.j, h=model.h, depth=None, seed=None,
                    momentum_index=b, quantity_name=f"eigenvector_{i}",
                    value_real=float(amp.real), value_imag=float(amp.imag),
                )
    _write(args, file_values, table, None)
    return 0


def _cmd_vqe(args):
    file_values = _load_config_file(args)
    model = _model_from(args, file_values)
    x = args.x if args.x is not None else (model.n + 1) // 2
    kind = args.init
    if kind == "all-plus":
        init = InitialState.all_plus()
    elif kind == "all-minus":
        init = InitialState.all_minus()
    elif kind == "spin-flip":
        init = InitialState.spin_flip(x)
    elif kind == "domain-wall":
        init = InitialState.domain_wall(args.sigma, args.x if args.x is not None else 0)
    else:
        init = InitialState.bell_pair(x, args.x2 if args.x2 is not None else x % model.n + 1)
    seed = int(_merged(args, file_values, "seed", 2024))
    run = optimize(model, init, args.depth, VqeConfig(seed=seed))
    table = ResultTable()
    table.add(experiment="vqe", n=model.n, j=model.j, h=model.h, depth=args.depth,
              seed=seed, momentum_index=None, quantity_name="energy", value_real=run.energy)
    table.add(experiment="vqe", n=model.n, j=model.j, h=model.h, depth=args.depth,
              seed=seed, momentum_index=None, quantity_name="converged",
              value_real=float(run.converged))
    for it, e in run.trace:
        table.add(experiment="vqe", n=model.n, j=model.j, h=model.h, depth=args.depth,
                  seed=seed, momentum_index=it, quantity_name="energy_trace", value_real=e)
    _write(args, file_values, table, None)
    return 0


def _experiment_config(args, file_values) -> ExperimentConfig:
    name = args.experiment if hasattr(args, "experiment") else "phase-stats"
    overrides = {
        "n": _merged(args, file_values, "n", None),
        "j_over_h": _float_list(_merged(args, file_values, "j-over-h", None)),
        "h_values": _float_list(_merged(args, file_values, "h-values", None))
        if hasattr(args, "h_values") or "h-values" in file_values else None,
        "depth": _merged(args, file_values, "depth", None),
        "depths": _int_list(_merged(args, file_values, "depths", None))
        if hasattr(args, "depths") or "depths" in file_values else None,
        "n_restarts": _merged(args, file_values, "restarts", None),
        "n_runs": _merged(args, file_values, "runs", None),
        "seed": _merged(args, file_values, "seed", None),
        "threads": _merged(args, file_values, "threads", None),
    }
    if getattr(args, "j", None) is not None:
        overrides["j"] = args.j
    return default_config(name, **{k: v for k, v in overrides.items() if v is not None})


def _cmd_sweep(args):
    file_values = _load_config_file(args)
    cfg = _experiment_config(args, file_values)
    table = run_experiment(cfg)
    _write(args, file_values, table, cfg)
    return 0


def _cmd_phase_stats(args):
    file_values = _load_config_file(args)
    args.experiment = "phase-stats"
    cfg = _experiment_config(args, file_values)
    table = run_experiment(cfg)
    _write(args, file_values, table, cfg)
    return 0


def _cmd_reproduce(args):
    seed = args.seed if args.seed is not None else 2024
    threads = args.threads if args.threads is not None else 1
    written = reproduce(args.figure_id, args.out_dir, seed=seed, threads=threads, format=args.format)
    for path in written:
        print(path)
    return 0


def _write(args, file_values, table, cfg):
    out = _merged(args, file_values, "out", None)
    if out is None:
        for row in table.rows:
            print(f"{row.quantity_name}[{row.momentum_index if row.momentum_index is not None else '-'}]"
                  f" j={row.j} h={row.h} = {row.value_real!r}")
        return
    emit(table, args.format, out, cfg)
    print(out)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "ed": _cmd_ed,
        "vqe": _cmd_vqe,
        "sweep": _cmd_sweep,
        "phase-stats": _cmd_phase_stats,
        "reproduce": _cmd_reproduce,
    }
    try:
        return handlers[args.command](args)
    except ValueError as exc:
        print(f"error[invalid-config]: {exc}", file=sys.stderr)
        return 2
    except CapabilityError as exc:
        print(f"error[capability]: {exc}", file=sys.stderr)
        return 3
    except ConsistencyError as exc:
        print(f"error[consistency]: {exc}", file=sys.stderr)
        return 4
    except OSError as exc:
        print(f"error[io]: {exc}", file=sys.stderr)
        return 5


if __name__ == "__main__":
    sys.exit(main())
