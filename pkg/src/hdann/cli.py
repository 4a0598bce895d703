"""Command-line interface.

Subcommands: ``simulate``, ``grid``, ``kfold``, ``report``, ``paramcount``.
Exit codes: 0 success, 2 configuration error, 3 data error, 4 some runs
failed.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .data import DataError, generate, load_csv, save_csv
from .harness import (
    GridSpec,
    bundle_from_records,
    emit_report,
    preset_grids,
    read_records,
    run_kfold_study,
    run_simulation_study,
)
from .network import NetworkKind, NetworkSpec, param_count
from .training import TrainConfig

log = logging.getLogger("hdann")

EXIT_OK, EXIT_CONFIG, EXIT_DATA, EXIT_PARTIAL = 0, 2, 3, 4

_CONFIG_KEYS = {"preset", "networks", "grids", "data", "monte_carlo", "train", "seed", "record_time", "k"}


class ConfigError(ValueError):
    pass


def _load_config(path) -> dict:
    if path is None:
        return {}
    try:
        cfg = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(cfg, dict):
        raise ConfigError("config must be a JSON object")
    unknown = set(cfg) - _CONFIG_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys {sorted(unknown)}")
    return cfg


def _grids(cfg: dict, preset: str) -> list[GridSpec]:
    kinds = cfg.get("networks") or [k.value for k in NetworkKind]
    if preset == "paper":
        log.warning("paper preset: 135 DNN and 750 cells per proposed network; "
                    "expect days of CPU time per sample")
    grids = {g.kind: g for g in preset_grids(preset, kinds)}
    for kind, override in (cfg.get("grids") or {}).items():
        kind = NetworkKind.parse(kind)
        if kind not in grids:
            raise ConfigError(f"grid given for {kind.value}, which is not in 'networks'")
        base = grids[kind]
        merged = {"L": base.L, "p": base.p, "q": base.q, "sigma": base.sigma, "basis": base.basis, "g": base.g}
        merged.update(override)
        grids[kind] = GridSpec.from_dict(kind, merged)
    return [grids[NetworkKind.parse(k)] for k in kinds]


def _train_config(cfg: dict) -> TrainConfig:
    return TrainConfig.from_dict(cfg.get("train", {}))


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON config file")
    p.add_argument("--seed", type=int, help="global seed (overrides config)")
    p.add_argument("--out", default="out", help="output directory")
    p.add_argument("--threads", type=int, default=1, help="worker processes")
    p.add_argument("--preset", choices=["desk", "paper"], help="grid preset (default desk)")
    p.add_argument("--no-timing", action="store_true",
                   help="write training_time_sec as 0 so records are byte-reproducible")
    p.add_argument("--save-params", action="store_true", help="save every trained network under OUT/params")
    p.add_argument("--portable", action="store_true", help="save parameters as a single JSON array")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hdann", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="write a simulated dataset as CSV")
    p.add_argument("--model", type=int, choices=[1, 2], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="output CSV path")

    p = sub.add_parser("grid", help="grid search on simulated data (Monte-Carlo study)")
    _common(p)
    p.add_argument("--model", type=int, choices=[1, 2], help="simulation model (overrides config)")
    p.add_argument("--n-train", type=int, help="training-set size (overrides config)")
    p.add_argument("--monte-carlo", type=int, help="number of samples (overrides config)")

    p = sub.add_parser("kfold", help="k-fold study on a CSV dataset")
    _common(p)
    p.add_argument("--data", required=True, help="CSV file with a header row")
    p.add_argument("--response", required=True, help="response column name")
    p.add_argument("--log", action="store_true", help="use the natural log of the response")
    p.add_argument("--k", type=int, help="number of folds (default 5)")

    p = sub.add_parser("report", help="rebuild selection/summary/plot files from records.csv")
    p.add_argument("--records", required=True)
    p.add_argument("--out", default="out")

    p = sub.add_parser("paramcount", help="print the parameter count of a network")
    p.add_argument("--spec", help="network spec JSON file")
    p.add_argument("--kind")
    p.add_argument("--d", type=int)
    p.add_argument("--L", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--basis", default="poly")
    return parser


def _finish(bundle, args) -> int:
    paths = emit_report(bundle, args.out)
    for name, path in paths.items():
        log.info("wrote %s", path)
    if bundle.n_failed:
        log.error("%d run(s) failed", bundle.n_failed)
        return EXIT_PARTIAL
    return EXIT_OK


def _study_kwargs(cfg, args):
    save_dir = Path(args.out) / "params" if args.save_params else None
    return dict(
        seed=args.seed if args.seed is not None else int(cfg.get("seed", 0)),
        threads=max(1, args.threads),
        record_time=not args.no_timing and bool(cfg.get("record_time", True)),
        save_dir=save_dir,
        portable=args.portable,
    )


def cmd_grid(args) -> int:
    cfg = _load_config(args.config)
    preset = args.preset or cfg.get("preset", "desk")
    grids = _grids(cfg, preset)
    data = dict(cfg.get("data") or {})
    model = args.model or data.get("model", 1)
    n_train = args.n_train or data.get("n_train", 1000)
    n_mc = args.monte_carlo or cfg.get("monte_carlo", 1)
    bundle = run_simulation_study(
        model, n_train, grids, _train_config(cfg),
        n_val=data.get("n_val", 500), n_test=data.get("n_test", 500), n_monte_carlo=n_mc,
        **_study_kwargs(cfg, args),
    )
    return _finish(bundle, args)


def cmd_kfold(args) -> int:
    cfg = _load_config(args.config)
    preset = args.preset or cfg.get("preset", "desk")
    grids = _grids(cfg, preset)
    dataset = load_csv(args.data, args.response, log_response=args.log)
    k = args.k or cfg.get("k", 5)
    bundle = run_kfold_study(dataset, grids, _train_config(cfg), k=k, **_study_kwargs(cfg, args))
    return _finish(bundle, args)


def cmd_simulate(args) -> int:
    save_csv(generate(args.model, args.n, args.seed), args.out)
    return EXIT_OK


def cmd_report(args) -> int:
    try:
        records = read_records(args.records)
    except (OSError, ValueError, KeyError) as exc:
        raise DataError(f"cannot read records: {exc}") from exc
    bundle = bundle_from_records(records)
    emit_report(bundle, args.out)
    return EXIT_PARTIAL if bundle.n_failed else EXIT_OK


def cmd_paramcount(args) -> int:
    if args.spec:
        try:
            obj = json.loads(Path(args.spec).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read spec {args.spec}: {exc}") from exc
        spec = NetworkSpec.from_dict(obj)
    else:
        if args.kind is None or args.d is None or args.L is None or args.p is None:
            raise ConfigError("paramcount needs --spec or --kind, --d, --L and --p")
        kind = NetworkKind.parse(args.kind)
        dnn = kind is NetworkKind.DNN
        spec = NetworkSpec(kind, args.d, args.L, args.p, None if dnn else args.q,
                           basis=None if dnn else args.basis)
    print(param_count(spec))
    return EXIT_OK


_COMMANDS = {
    "simulate": cmd_simulate,
    "grid": cmd_grid,
    "kfold": cmd_kfold,
    "report": cmd_report,
    "paramcount": cmd_paramcount,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return _COMMANDS[args.command](args)
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (ConfigError, ValueError, TypeError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
