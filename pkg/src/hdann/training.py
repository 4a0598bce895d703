"""Gradients, ADAM and the training loop.

The objective is the mean squared error on standardised responses. Training
stops when the full-training-set MSE has not improved by more than
``stop_delta`` over the last ``stop_window`` checks, where a check happens
after every epoch (default) or after every mini-batch step.
"""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from . import _backend
from .activation import apply_deriv
from .network import NetworkSpec, ParamStore, forward_batch, layer_defs, predict
from .rng import Stream, make_rng


class TrainingError(RuntimeError):
    pass


@dataclass
class TrainConfig:
    lr: float = 1e-4
    batch_size: int = 512
    max_epochs: int = 10000
    stop_window: int = 10
    stop_delta: float = 1e-3
    seed: int = 0
    stop_granularity: str = "epoch"

    def __post_init__(self):
        if not self.lr > 0:
            raise ValueError("lr must be positive")
        if self.batch_size < 1 or self.max_epochs < 1 or self.stop_window < 1:
            raise ValueError("batch_size, max_epochs and stop_window must be >= 1")
        if not self.stop_delta >= 0:
            raise ValueError("stop_delta must be >= 0")
        if self.stop_granularity not in ("epoch", "batch"):
            raise ValueError("stop_granularity must be 'epoch' or 'batch'")

    @classmethod
    def from_dict(cls, obj: dict) -> "TrainConfig":
        unknown = set(obj) - set(cls.__dataclass_fields__)
        if unknown:
            raise ValueError(f"unknown training config keys {sorted(unknown)}")
        return cls(**obj)

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


@dataclass
class AdamState:
    m: np.ndarray
    v: np.ndarray
    t: int = 0
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8

    @classmethod
    def fresh(cls, n: int) -> "AdamState":
        return cls(np.zeros(n), np.zeros(n))

    def copy(self) -> "AdamState":
        return AdamState(self.m.copy(), self.v.copy(), self.t, self.beta1, self.beta2, self.eps)


@dataclass
class TrainReport:
    epochs_run: int = 0
    stop_reason: str = ""
    epoch_mse: list = field(default_factory=list)
    initial_mse: float = float("nan")
    wall_time: float = 0.0


def loss_mse(pred, target) -> float:
    pred = np.asarray(pred, dtype=np.float64)
    target = np.asarray(target, dtype=np.float64)
    if pred.shape != target.shape:
        raise ValueError(f"shape mismatch: {pred.shape} vs {target.shape}")
    if pred.size == 0:
        raise ValueError("loss of an empty batch is undefined")
    return float(np.mean((pred - target) ** 2))


def loss_and_grad(spec: NetworkSpec, params: ParamStore, batch_X, batch_y):
    """MSE on the batch and its gradient w.r.t. the flat parameter vector."""
    batch_y = np.asarray(batch_y, dtype=np.float64)
    pred, traces = forward_batch(spec, params, batch_X)
    if batch_y.shape != pred.shape:
        raise ValueError(f"expected {pred.shape[0]} targets, got shape {batch_y.shape}")
    n = pred.shape[0]
    if n == 0:
        raise ValueError("empty batch")
    resid = pred - batch_y
    grad = ParamStore(spec, layout=params.layout)
    da = (2.0 / n) * resid[:, None]
    for layer, tr in zip(reversed(layer_defs(spec)), reversed(traces)):
        l = layer.index
        dz = da if layer.activation is None else da * apply_deriv(layer.activation, tr.pre)
        grad.bias(l)[...] = dz.sum(axis=0)
        W = params.weight(l)
        if layer.additive:
            W2 = W.reshape(layer.n_out, -1)
            grad.weight(l)[...] = (dz.T @ tr.phi.reshape(n, -1 if n else W[0].size)).reshape(W.shape)
            if l > 1:
                dphi = (dz @ W2).reshape(tr.phi.shape)
                da = _backend.input_grad(dphi, tr.dphi) * tr.inside
        else:
            grad.weight(l)[...] = dz.T @ tr.inputs
            if l > 1:
                da = dz @ W
    return float(np.mean(resid**2)), grad.values


def backward(spec: NetworkSpec, params: ParamStore, batch_X, batch_y) -> np.ndarray:
    """Gradient of the batch MSE w.r.t. every parameter."""
    return loss_and_grad(spec, params, batch_X, batch_y)[1]


def adam_step(state: AdamState, params: ParamStore, grads, lr: float):
    """One bias-corrected ADAM update, applied in place.

    Returns ``(state, params)`` for convenience.
    """
    grads = np.asarray(grads, dtype=np.float64)
    if grads.shape != params.values.shape or state.m.shape != grads.shape:
        raise ValueError("gradient, moment and parameter shapes differ")
    b1, b2 = state.beta1, state.beta2
    state.t += 1
    state.m *= b1
    state.m += (1.0 - b1) * grads
    state.v *= b2
    state.v += (1.0 - b2) * grads * grads
    m_hat = state.m / (1.0 - b1**state.t)
    v_hat = state.v / (1.0 - b2**state.t)
    params.values -= lr * m_hat / (np.sqrt(v_hat) + state.eps)
    return state, params


def _plateaued(history: list, window: int, delta: float) -> bool:
    # history[0] is the pre-training value
    t = len(history) - 1
    if t < window:
        return False
    return min(history[: t - window + 1]) - history[t] <= delta


def train(spec: NetworkSpec, params: ParamStore, X, y, config: TrainConfig | None = None):
    """Fit ``params`` to standardised responses ``y``.

    ``params`` is not modified; the trained copy is returned together with
    a :class:`TrainReport`.
    """
    config = config or TrainConfig()
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    n = y.shape[0]
    if n == 0:
        raise ValueError("empty training set")
    if X.shape[0] != n:
        raise ValueError("feature and response row counts differ")

    start = time.perf_counter()
    params = params.copy()
    state = AdamState.fresh(len(params))
    report = TrainReport()

    def full_mse() -> float:
        value = loss_mse(predict(spec, params, X), y)
        if not np.isfinite(value):
            raise TrainingError("training loss became non-finite")
        return value

    report.initial_mse = full_mse()
    history = [report.initial_mse]
    per_batch = config.stop_granularity == "batch"
    stopped = False
    for epoch in range(config.max_epochs):
        perm = make_rng(config.seed, Stream.SHUFFLE, epoch).permutation(n)
        for lo in range(0, n, config.batch_size):
            idx = perm[lo : lo + config.batch_size]
            _, g = loss_and_grad(spec, params, X[idx], y[idx])
            adam_step(state, params, g, config.lr)
            if per_batch:
                history.append(full_mse())
                if _plateaued(history, config.stop_window, config.stop_delta):
                    stopped = True
                    break
        report.epochs_run = epoch + 1
        if per_batch:
            report.epoch_mse.append(history[-1])
        else:
            history.append(full_mse())
            report.epoch_mse.append(history[-1])
            stopped = _plateaued(history, config.stop_window, config.stop_delta)
        if stopped:
            report.stop_reason = "plateau"
            break
    else:
        report.stop_reason = "max_epochs"
    report.wall_time = time.perf_counter() - start
    return params, report
