"""Fixed scalar nonlinearities and their derivatives.

``LOGISTIC`` and ``TANHUNIT`` map into (0, 1) and may be used as the
squashing map feeding a basis expansion. All functions accept scalars or
numpy arrays.
"""

from __future__ import annotations

import enum

import numpy as np


class ActivationKind(enum.Enum):
    LOGISTIC = "sigmoid"
    TANH = "tanh"
    RELU = "relu"
    TANHUNIT = "tanhunit"

    @classmethod
    def parse(cls, name: "str | ActivationKind") -> "ActivationKind":
        if isinstance(name, cls):
            return name
        key = str(name).strip().lower()
        if key == "logistic":
            key = "sigmoid"
        try:
            return cls(key)
        except ValueError:
            raise ValueError(f"unknown activation {name!r}") from None

    @property
    def unit_range(self) -> bool:
        """True when the range lies inside [0, 1]."""
        return self in (ActivationKind.LOGISTIC, ActivationKind.TANHUNIT)


_LO = np.finfo(np.float64).tiny
_HI = np.nextafter(1.0, 0.0)


def _logistic(x):
    # split on sign so exp never overflows
    x = np.asarray(x, dtype=np.float64)
    e = np.exp(-np.abs(x))
    return np.where(x >= 0, 1.0 / (1.0 + e), e / (1.0 + e))


def _squash(x):
    # saturated values would round onto 0 or 1; keep the range open
    return np.clip(_logistic(x), _LO, _HI)


def apply(kind: ActivationKind, x):
    kind = ActivationKind.parse(kind)
    if kind is ActivationKind.LOGISTIC:
        out = _squash(x)
    elif kind is ActivationKind.TANH:
        out = np.tanh(x)
    elif kind is ActivationKind.RELU:
        out = np.maximum(x, 0.0)
    else:
        # (tanh(x) + 1) / 2 == logistic(2x), without cancellation near -inf
        out = _squash(2.0 * np.asarray(x, dtype=np.float64))
    return out if np.ndim(out) else float(out)


def apply_deriv(kind: ActivationKind, x):
    """Derivative; ReLU'(0) is taken as 0."""
    kind = ActivationKind.parse(kind)
    if kind is ActivationKind.LOGISTIC:
        s = _logistic(x)
        out = s * (1.0 - s)
    elif kind is ActivationKind.TANH:
        out = 1.0 - np.tanh(x) ** 2
    elif kind is ActivationKind.RELU:
        out = np.where(np.asarray(x) > 0, 1.0, 0.0)
    else:
        s = _logistic(2.0 * np.asarray(x, dtype=np.float64))
        out = 2.0 * s * (1.0 - s)
    return out if np.ndim(out) else float(out)
