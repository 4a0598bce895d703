"""Grid search, model selection and experiment drivers.

Every run gets its own seed derived from ``(global seed, sample id, spec
index)``, so a grid produces the same records whether it runs serially or
across worker processes.
"""

from __future__ import annotations

import csv
import itertools
import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .activation import ActivationKind
from .basis import BasisFamily
from .data import Dataset, ScalerX, ScalerY, fit_scaler_x, fit_scaler_y, generate, split_kfold, split_train_val
from .network import NetworkKind, NetworkSpec, init_xavier, param_count, predict
from .rng import derive_seed
from .serialize import save_params
from .training import TrainConfig, TrainingError, loss_mse, train

log = logging.getLogger(__name__)

RECORD_COLUMNS = [
    "network", "L", "p", "q", "sigma", "basis", "validation_error", "test_error",
    "training_time_sec", "n_params", "seed", "sample_id",
]
SELECTION_COLUMNS = ["sample_id", "network", "role"] + RECORD_COLUMNS[1:10]
SUMMARY_COLUMNS = ["network", "role", "avg_test_error", "avg_n_params", "n_samples"]
PLOT_COLUMNS = ["network", "basis", "log10_n_params", "validation_error"]


@dataclass
class GridSpec:
    kind: NetworkKind
    L: list
    p: list
    q: list = field(default_factory=list)
    sigma: list = field(default_factory=lambda: ["sigmoid"])
    basis: list = field(default_factory=list)
    g: str = "sigmoid"

    def __post_init__(self):
        self.kind = NetworkKind.parse(self.kind)
        self.sigma = [ActivationKind.parse(s) for s in self.sigma]
        if self.kind is not NetworkKind.DNN:
            self.basis = [BasisFamily.parse(b) for b in self.basis]
            if not self.q or not self.basis:
                raise ValueError(f"{self.kind.value} grid needs non-empty q and basis lists")
        if not self.L or not self.p or not self.sigma:
            raise ValueError("grid lists must be non-empty")

    @classmethod
    def from_dict(cls, kind, obj: dict) -> "GridSpec":
        unknown = set(obj) - {"L", "p", "q", "sigma", "basis", "g"}
        if unknown:
            raise ValueError(f"unknown grid keys {sorted(unknown)}")
        return cls(kind, **obj)


def expand_grid(grid: GridSpec, d: int) -> list[NetworkSpec]:
    """Cartesian product in nested order L, p, q, sigma, basis."""
    if grid.kind is NetworkKind.DNN:
        return [
            NetworkSpec(grid.kind, d, L, p, None, s, grid.g, None)
            for L, p, s in itertools.product(grid.L, grid.p, grid.sigma)
        ]
    return [
        NetworkSpec(grid.kind, d, L, p, q, s, grid.g, b)
        for L, p, q, s, b in itertools.product(grid.L, grid.p, grid.q, grid.sigma, grid.basis)
    ]


_ACTS = ["sigmoid", "relu", "tanh"]


def preset_grids(name: str, kinds=None) -> list[GridSpec]:
    """``paper``: the full published grids. ``desk``: a small laptop grid."""
    kinds = [NetworkKind.parse(k) for k in (kinds or list(NetworkKind))]
    if name == "paper":
        dnn = dict(L=[2 * t for t in range(1, 10)], p=[2**t for t in (3, 5, 7, 9, 11)], sigma=_ACTS)
        prop = dict(L=[1, 3, 5, 7, 9], p=[2**t for t in (2, 4, 6, 8, 10)], q=[3, 5, 7, 9, 11],
                    sigma=_ACTS, basis=["poly", "cos"])
    elif name == "desk":
        dnn = dict(L=[1, 3], p=[4, 16], sigma=["tanh"])
        prop = dict(L=[1, 3], p=[4, 16], q=[3, 5], sigma=["tanh"], basis=["poly", "cos"])
    else:
        raise ValueError(f"unknown preset {name!r}")
    return [GridSpec(k, **(dnn if k is NetworkKind.DNN else prop)) for k in kinds]


@dataclass
class RunRecord:
    network: str
    L: int
    p: int
    q: int | None
    sigma: str
    basis: str | None
    validation_error: float
    test_error: float
    training_time_sec: float
    n_params: int
    seed: int
    sample_id: int
    error: str | None = field(default=None, compare=False)

    @property
    def failed(self) -> bool:
        return not (math.isfinite(self.validation_error) and math.isfinite(self.test_error))


@dataclass
class Prepared:
    """One train/validation/test split ready for training.

    Features are already scaled; ``train_y`` is standardised while the
    validation and test responses stay on the original scale.
    """

    train_X: np.ndarray
    train_y: np.ndarray
    val_X: np.ndarray
    val_y: np.ndarray
    test_X: np.ndarray
    test_y: np.ndarray
    scaler_y: ScalerY
    scaler_x: ScalerX | None = None

    @classmethod
    def from_datasets(cls, tr: Dataset, va: Dataset, te: Dataset, scale_x: bool = True) -> "Prepared":
        sx = fit_scaler_x(tr.X) if scale_x else None
        tx = (lambda X: sx.apply(X)) if sx else (lambda X: X)
        sy = fit_scaler_y(tr.y)
        return cls(tx(tr.X), sy.apply(tr.y), tx(va.X), va.y, tx(te.X), te.y, sy, sx)


def _run_one(args):
    spec, index, prepared, config, seed, sample_id, record_time, save = args
    run_seed = derive_seed(seed, sample_id, index)
    rec = RunRecord(
        spec.kind.value, spec.L, spec.p, spec.q, spec.sigma.value,
        spec.basis.value if spec.basis is not None and spec.kind is not NetworkKind.DNN else None,
        float("nan"), float("nan"), 0.0, param_count(spec), run_seed, sample_id,
    )
    start = time.perf_counter()
    try:
        params = init_xavier(spec, run_seed)
        params, _ = train(spec, params, prepared.train_X, prepared.train_y, replace(config, seed=run_seed))
        sy = prepared.scaler_y
        rec.validation_error = loss_mse(sy.invert(predict(spec, params, prepared.val_X)), prepared.val_y)
        rec.test_error = loss_mse(sy.invert(predict(spec, params, prepared.test_X)), prepared.test_y)
        if rec.failed:
            raise TrainingError("non-finite evaluation error")
        if save is not None:
            save_dir, portable = save
            save_params(params, Path(save_dir) / f"s{sample_id}_r{index}.json", portable=portable)
    except (TrainingError, FloatingPointError, np.linalg.LinAlgError) as exc:
        rec.error = str(exc)
        rec.validation_error = rec.test_error = float("nan")
        log.warning("run %d (%s) failed: %s", index, spec, exc)
    if record_time:
        rec.training_time_sec = time.perf_counter() - start
    return rec


def run_grid(specs, prepared: Prepared, config: TrainConfig | None = None, *, seed: int = 0,
             sample_id: int = 0, threads: int = 1, record_time: bool = True,
             save_dir=None, portable: bool = False) -> list[RunRecord]:
    """Train and evaluate every spec; records come back in spec order.

    With ``save_dir`` each trained parameter store is written there as
    ``s{sample_id}_r{index}.json``.
    """
    config = config or TrainConfig()
    save = None
    if save_dir is not None:
        Path(save_dir).mkdir(parents=True, exist_ok=True)
        save = (str(save_dir), portable)
    tasks = [(s, i, prepared, config, seed, sample_id, record_time, save) for i, s in enumerate(specs)]
    if threads > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(_run_one, tasks))
    return [_run_one(t) for t in tasks]


def select_best(records):
    """Lowest validation error; ties go to fewer parameters, then list order."""
    ok = [(r.validation_error, r.n_params, i, r) for i, r in enumerate(records) if not r.failed]
    if not ok:
        return None
    return min(ok, key=lambda t: t[:3])[3]


def select_small(records, dnn_best_val: float):
    """Fewest parameters among records beating ``dnn_best_val``, or None."""
    ok = [
        (r.n_params, r.validation_error, i, r)
        for i, r in enumerate(records)
        if not r.failed and r.validation_error < dnn_best_val
    ]
    if not ok:
        return None
    return min(ok, key=lambda t: t[:3])[3]


@dataclass
class Selection:
    sample_id: int
    network: str
    best: RunRecord | None
    small: RunRecord | None = None


@dataclass
class SummaryRow:
    network: str
    role: str
    avg_test_error: float
    avg_n_params: float
    n_samples: int


@dataclass
class StudyBundle:
    records: list = field(default_factory=list)
    selections: list = field(default_factory=list)
    summary: list = field(default_factory=list)
    folds: list = field(default_factory=list)

    @property
    def n_failed(self) -> int:
        return sum(r.failed for r in self.records)


def _kind_order(records):
    seen = []
    for r in records:
        if r.network not in seen:
            seen.append(r.network)
    order = [k.value for k in NetworkKind]
    return sorted(seen, key=lambda k: order.index(k) if k in order else len(order))


def select_all(records) -> list[Selection]:
    """Per sample and network: best run, plus the small run for non-DNN kinds."""
    out = []
    for sid in sorted({r.sample_id for r in records}):
        rs = [r for r in records if r.sample_id == sid]
        dnn_best = select_best([r for r in rs if r.network == NetworkKind.DNN.value])
        for kind in _kind_order(rs):
            sub = [r for r in rs if r.network == kind]
            sel = Selection(sid, kind, select_best(sub))
            if kind != NetworkKind.DNN.value and dnn_best is not None:
                sel.small = select_small(sub, dnn_best.validation_error)
            out.append(sel)
    return out


def summarize(selections) -> list[SummaryRow]:
    """Average test error and parameter count per (network, role).

    Samples where a role has no selection are left out of its average.
    """
    rows = []
    kinds = []
    for s in selections:
        if s.network not in kinds:
            kinds.append(s.network)
    for kind in kinds:
        roles = ["best"] if kind == NetworkKind.DNN.value else ["best", "small"]
        for role in roles:
            picked = [getattr(s, role) for s in selections if s.network == kind]
            picked = [r for r in picked if r is not None]
            if picked:
                rows.append(SummaryRow(
                    kind, role,
                    float(np.mean([r.test_error for r in picked])),
                    float(np.mean([r.n_params for r in picked])),
                    len(picked),
                ))
            else:
                rows.append(SummaryRow(kind, role, float("nan"), float("nan"), 0))
    return rows


def _all_specs(grids, d):
    return [s for g in grids for s in expand_grid(g, d)]


def run_simulation_study(model_id: int, n_train: int, grids, config: TrainConfig | None = None, *,
                         n_val: int = 500, n_test: int = 500, n_monte_carlo: int = 5, seed: int = 0,
                         threads: int = 1, record_time: bool = True, save_dir=None,
                         portable: bool = False) -> StudyBundle:
    """Monte-Carlo study on a simulation model with per-sample selection."""
    bundle = StudyBundle()
    for sample in range(n_monte_carlo):
        tr, va, te = (generate(model_id, n, derive_seed(seed, sample, part))
                      for part, n in enumerate((n_train, n_val, n_test)))
        # simulated features already live in [0, 1]
        prepared = Prepared.from_datasets(tr, va, te, scale_x=False)
        specs = _all_specs(grids, tr.d)
        bundle.records += run_grid(specs, prepared, config, seed=seed, sample_id=sample,
                                   threads=threads, record_time=record_time,
                                   save_dir=save_dir, portable=portable)
    bundle.selections = select_all(bundle.records)
    bundle.summary = summarize(bundle.selections)
    return bundle


@dataclass
class FoldInfo:
    fold: int
    train_idx: np.ndarray
    val_idx: np.ndarray
    test_idx: np.ndarray
    scaler_x: ScalerX
    scaler_y: ScalerY


def run_kfold_study(dataset: Dataset, grids, config: TrainConfig | None = None, *, k: int = 5,
                    seed: int = 0, threads: int = 1, record_time: bool = True, save_dir=None,
                    portable: bool = False) -> StudyBundle:
    """k-fold study; scalers are refit on each fold's training part."""
    n = len(dataset)
    bundle = StudyBundle()
    for r, test_idx in enumerate(split_kfold(n, k, seed)):
        rest = np.setdiff1d(np.arange(n), test_idx)
        tr_idx, va_idx = split_train_val(rest, seed=derive_seed(seed, r))
        prepared = Prepared.from_datasets(dataset.subset(tr_idx), dataset.subset(va_idx),
                                          dataset.subset(test_idx))
        bundle.folds.append(FoldInfo(r, tr_idx, va_idx, test_idx, prepared.scaler_x, prepared.scaler_y))
        specs = _all_specs(grids, dataset.d)
        bundle.records += run_grid(specs, prepared, config, seed=seed, sample_id=r,
                                   threads=threads, record_time=record_time,
                                   save_dir=save_dir, portable=portable)
    bundle.selections = select_all(bundle.records)
    bundle.summary = summarize(bundle.selections)
    return bundle


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return f"{v:.17g}"
    return str(v)


def _record_row(r: RunRecord) -> list[str]:
    return [_fmt(getattr(r, c)) for c in RECORD_COLUMNS]


def write_records(records, path) -> None:
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(RECORD_COLUMNS)
        for r in records:
            w.writerow(_record_row(r))


def read_records(path) -> list[RunRecord]:
    with Path(path).open(newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != RECORD_COLUMNS:
            raise ValueError(f"{path}: unexpected header {reader.fieldnames}")
        out = []
        for row in reader:
            out.append(RunRecord(
                row["network"], int(row["L"]), int(row["p"]),
                int(row["q"]) if row["q"] else None,
                row["sigma"], row["basis"] or None,
                float(row["validation_error"]), float(row["test_error"]),
                float(row["training_time_sec"]), int(row["n_params"]),
                int(row["seed"]), int(row["sample_id"]),
            ))
    return out


def emit_report(bundle: StudyBundle, out_dir, fmt: str = "csv") -> dict:
    """Write records.csv, selection.csv, summary.csv and plotdata.csv.

    plotdata.csv covers the first sample (or fold), matching how the
    scatter and box plots are drawn. Returns the written paths by name.
    """
    if fmt != "csv":
        raise ValueError(f"unsupported report format {fmt!r}")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {name: out / f"{name}.csv" for name in ("records", "selection", "summary", "plotdata")}

    write_records(bundle.records, paths["records"])

    with paths["selection"].open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(SELECTION_COLUMNS)
        for s in bundle.selections:
            roles = [("best", s.best)]
            if s.network != NetworkKind.DNN.value:
                roles.append(("small", s.small))
            for role, rec in roles:
                if rec is None:
                    w.writerow([s.sample_id, s.network, role] + ["NA"] * (len(SELECTION_COLUMNS) - 3))
                else:
                    w.writerow([s.sample_id, s.network, role] + _record_row(rec)[1:10])

    with paths["summary"].open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(SUMMARY_COLUMNS)
        for row in bundle.summary:
            w.writerow([row.network, row.role, _fmt(row.avg_test_error), _fmt(row.avg_n_params), row.n_samples])

    with paths["plotdata"].open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(PLOT_COLUMNS)
        if bundle.records:
            first = min(r.sample_id for r in bundle.records)
            for r in bundle.records:
                if r.sample_id == first and not r.failed:
                    w.writerow([r.network, r.basis or "", _fmt(math.log10(r.n_params)), _fmt(r.validation_error)])
    return paths


def bundle_from_records(records) -> StudyBundle:
    selections = select_all(records)
    return StudyBundle(list(records), selections, summarize(selections))
