"""Datasets, scalers, splits and CSV ingestion."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .rng import Stream, make_rng, standard_normal

NOISE_SD = 0.1
N_FEATURES = 6


class DataError(ValueError):
    pass


@dataclass
class Dataset:
    X: np.ndarray
    y: np.ndarray
    feature_names: list | None = None

    def __post_init__(self):
        self.X = np.asarray(self.X, dtype=np.float64)
        self.y = np.asarray(self.y, dtype=np.float64)
        if self.X.ndim != 2 or self.y.ndim != 1 or self.X.shape[0] != self.y.shape[0]:
            raise DataError(f"inconsistent shapes X{self.X.shape} y{self.y.shape}")
        if self.X.shape[0] < 1:
            raise DataError("dataset has no rows")
        if not (np.all(np.isfinite(self.X)) and np.all(np.isfinite(self.y))):
            raise DataError("dataset contains NaN or infinite values")
        if self.feature_names is None:
            self.feature_names = [f"x{j + 1}" for j in range(self.X.shape[1])]

    def __len__(self) -> int:
        return self.y.shape[0]

    @property
    def d(self) -> int:
        return self.X.shape[1]

    def subset(self, idx) -> "Dataset":
        idx = np.asarray(idx, dtype=np.int64)
        return Dataset(self.X[idx], self.y[idx], list(self.feature_names))


def _mean_model1(X):
    X = np.asarray(X, dtype=np.float64)
    return np.exp(np.sum(X[:, :3] ** 3, axis=1) - np.sum(X[:, 3:6] ** 3, axis=1))


def _mean_model2(X):
    X = np.asarray(X, dtype=np.float64)
    inner = (
        1.0
        + X[:, 0]
        + 2.0 * X[:, 1] ** 2
        + 3.0 * X[:, 2] ** 3
        - np.exp(X[:, 3])
        - np.log(X[:, 4] + 1.0)
        - np.abs(X[:, 5] - 0.5)
    )
    return inner**2


_MEANS = {1: _mean_model1, 2: _mean_model2}


def gen_mean_only(model_id: int, X) -> np.ndarray:
    """Noiseless regression function of simulation model 1 or 2."""
    try:
        fn = _MEANS[int(model_id)]
    except (KeyError, ValueError):
        raise ValueError(f"unknown model id {model_id!r}; expected 1 or 2") from None
    X = np.atleast_2d(np.asarray(X, dtype=np.float64))
    if X.shape[1] != N_FEATURES:
        raise ValueError(f"model {model_id} needs {N_FEATURES} features, got {X.shape[1]}")
    return fn(X)


def _generate(model_id: int, n: int, seed: int) -> Dataset:
    if n < 1:
        raise ValueError("n must be >= 1")
    X = make_rng(seed, Stream.FEATURES).random((n, N_FEATURES))
    eps = NOISE_SD * standard_normal(make_rng(seed, Stream.NOISE), n)
    return Dataset(X, gen_mean_only(model_id, X) + eps)


def gen_model1(n: int, seed: int) -> Dataset:
    """``Y = exp(X1^3 + X2^3 + X3^3 - X4^3 - X5^3 - X6^3) + eps``."""
    return _generate(1, n, seed)


def gen_model2(n: int, seed: int) -> Dataset:
    """``Y = (1 + X1 + 2X2^2 + 3X3^3 - e^X4 - log(X5+1) - |X6-0.5|)^2 + eps``."""
    return _generate(2, n, seed)


def generate(model_id: int, n: int, seed: int) -> Dataset:
    if int(model_id) not in _MEANS:
        raise ValueError(f"unknown model id {model_id!r}; expected 1 or 2")
    return _generate(int(model_id), n, seed)


@dataclass(frozen=True)
class ScalerY:
    mean: float
    sd: float

    def apply(self, y):
        return (np.asarray(y, dtype=np.float64) - self.mean) / self.sd

    def invert(self, y_st):
        return np.asarray(y_st, dtype=np.float64) * self.sd + self.mean


def fit_scaler_y(y_train) -> ScalerY:
    """Mean and sample (n - 1) standard deviation of the training responses."""
    y = np.asarray(y_train, dtype=np.float64)
    if y.size < 2:
        raise DataError("need at least two responses to standardise")
    sd = float(np.std(y, ddof=1))
    if not sd > 0:
        raise DataError("response is constant on the training set")
    return ScalerY(float(np.mean(y)), sd)


@dataclass(frozen=True)
class ScalerX:
    mins: np.ndarray
    maxs: np.ndarray

    def apply(self, X):
        return (np.asarray(X, dtype=np.float64) - self.mins) / (self.maxs - self.mins)


def fit_scaler_x(X_train) -> ScalerX:
    """Per-feature min-max scaler; out-of-range rows are left unclamped."""
    X = np.atleast_2d(np.asarray(X_train, dtype=np.float64))
    mins, maxs = X.min(axis=0), X.max(axis=0)
    flat = np.nonzero(~(maxs > mins))[0]
    if flat.size:
        raise DataError(f"feature(s) {flat.tolist()} constant on the training set")
    return ScalerX(mins, maxs)


def split_kfold(n: int, k: int = 5, seed: int = 0) -> list[np.ndarray]:
    """Random partition of ``range(n)`` into ``k`` sets whose sizes differ by at most 1."""
    if k < 2 or n < k:
        raise ValueError(f"cannot split {n} rows into {k} folds")
    perm = make_rng(seed, Stream.FOLDS).permutation(n)
    return [np.sort(part) for part in np.array_split(perm, k)]


def split_train_val(indices, seed: int = 0, ratio: tuple = (3, 1)):
    """Random 3:1 split; the training share is rounded half up."""
    indices = np.asarray(indices, dtype=np.int64)
    n = indices.size
    a, b = ratio
    n_train = int(math.floor(n * a / (a + b) + 0.5))
    perm = make_rng(seed, Stream.SPLIT).permutation(n)
    return np.sort(indices[perm[:n_train]]), np.sort(indices[perm[n_train:]])


def load_csv(path, response_column: str, log_response: bool = False, features=None) -> Dataset:
    """Read a header-first numeric CSV.

    All columns other than ``response_column`` become features unless
    ``features`` names them explicitly. With ``log_response`` the response
    is replaced by its natural log.
    """
    path = Path(path)
    try:
        with path.open(newline="", encoding="utf-8") as fh:
            rows = list(csv.reader(fh))
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc
    if not rows:
        raise DataError(f"{path} is empty")
    header = [h.strip() for h in rows[0]]
    if response_column not in header:
        raise DataError(f"response column {response_column!r} not in header {header}")
    if features is None:
        features = [h for h in header if h != response_column]
    missing = [f for f in features if f not in header]
    if missing:
        raise DataError(f"feature column(s) {missing} not in header")
    cols = [header.index(f) for f in features]
    ycol = header.index(response_column)
    body = [r for r in rows[1:] if any(c.strip() for c in r)]
    if not body:
        raise DataError(f"{path} has no data rows")
    X = np.empty((len(body), len(cols)))
    y = np.empty(len(body))
    for i, row in enumerate(body, start=2):
        if len(row) != len(header):
            raise DataError(f"row {i}: expected {len(header)} cells, got {len(row)}")
        for out_j, j in enumerate(cols + [ycol]):
            try:
                value = float(row[j])
            except ValueError:
                raise DataError(f"row {i}, column {header[j]!r}: cannot parse {row[j]!r}") from None
            if not math.isfinite(value):
                raise DataError(f"row {i}, column {header[j]!r}: non-finite value {row[j]!r}")
            if j == ycol:
                y[i - 2] = value
            else:
                X[i - 2, out_j] = value
    if log_response:
        bad = np.nonzero(y <= 0)[0]
        if bad.size:
            raise DataError(f"row {int(bad[0]) + 2}: response must be positive to take its log")
        y = np.log(y)
    return Dataset(X, y, list(features))


def save_csv(dataset: Dataset, path, response_column: str = "y") -> None:
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(list(dataset.feature_names) + [response_column])
        for xi, yi in zip(dataset.X, dataset.y):
            w.writerow([repr(float(v)) for v in xi] + [repr(float(yi))])
