"""Basis-function families on [0, 1] and their expansions.

Three families are provided: powers ``x**r``, cosines ``cos(r*pi*x)`` and
the Haar system. Index ``r`` starts at 1; the constant term of an expansion
is carried separately as a bias.

Haar functions are enumerated level-major: ``r = 1`` is the constant 1 and
``r = 2**j + k + 1`` is the wavelet at level ``j``, position ``k``, scaled
by ``2**(j/2)``. Intervals are half-open on the right except at ``x = 1``,
which takes the left-hand value. The Haar derivative is taken as 0.
"""

from __future__ import annotations

import enum
import math
from typing import Callable

import numpy as np

from . import _backend


class BasisFamily(enum.Enum):
    POLY = "poly"
    COS = "cos"
    HAAR = "haar"

    @classmethod
    def parse(cls, name: "str | BasisFamily") -> "BasisFamily":
        if isinstance(name, cls):
            return name
        key = str(name).strip().lower()
        aliases = {"polynomial": "poly", "cosine": "cos"}
        try:
            return cls(aliases.get(key, key))
        except ValueError:
            raise ValueError(f"unknown basis family {name!r}") from None

    @property
    def code(self) -> int:
        return _CODES[self]


_CODES = {BasisFamily.POLY: 0, BasisFamily.COS: 1, BasisFamily.HAAR: 2}


def _check_index(r: int) -> None:
    if int(r) != r or r < 1:
        raise ValueError(f"basis index must be a positive integer, got {r!r}")


def _haar_scalar(r: int, x: float) -> float:
    if r == 1:
        return 1.0
    j = (r - 1).bit_length() - 1
    k = r - 1 - (1 << j)
    amp = 2.0 ** (j / 2)
    if x >= 1.0:
        return -amp if k == (1 << j) - 1 else 0.0
    t = x * (1 << j) - k
    if 0.0 <= t < 0.5:
        return amp
    if 0.5 <= t < 1.0:
        return -amp
    return 0.0


def eval_basis(family: BasisFamily, r: int, x: float) -> float:
    """Value of the r-th basis function at ``x``."""
    family = BasisFamily.parse(family)
    _check_index(r)
    if family is BasisFamily.POLY:
        return float(x) ** r
    if family is BasisFamily.COS:
        return math.cos(r * math.pi * x)
    return _haar_scalar(r, float(x))


def eval_basis_deriv(family: BasisFamily, r: int, x: float) -> float:
    """Derivative of the r-th basis function at ``x`` (0 for Haar)."""
    family = BasisFamily.parse(family)
    _check_index(r)
    if family is BasisFamily.POLY:
        return r * float(x) ** (r - 1)
    if family is BasisFamily.COS:
        return -r * math.pi * math.sin(r * math.pi * x)
    return 0.0


def eval_expansion(family: BasisFamily, coeffs, bias: float, x: float) -> float:
    """``sum_r coeffs[r-1] * B_r(x) + bias``."""
    coeffs = np.asarray(coeffs, dtype=np.float64).ravel()
    if coeffs.size == 0:
        raise ValueError("expansion needs at least one coefficient")
    vals, _ = expand(family, np.asarray([x], dtype=np.float64), coeffs.size, with_deriv=False)
    return float(vals[0] @ coeffs + bias)


def expand(family: BasisFamily, x, q: int, with_deriv: bool = True):
    """Vectorised basis evaluation.

    Returns ``(values, derivs)`` each of shape ``x.shape + (q,)``; ``derivs``
    is None when ``with_deriv`` is false.
    """
    family = BasisFamily.parse(family)
    if q < 1:
        raise ValueError("q must be >= 1")
    return _backend.basis_expand(family.code, x, int(q), bool(with_deriv))


def _lstsq_fit(design: np.ndarray, values: np.ndarray):
    rank = np.linalg.matrix_rank(design)
    if rank < design.shape[1]:
        raise np.linalg.LinAlgError(
            f"rank-deficient design ({rank} < {design.shape[1]} columns)"
        )
    sol, *_ = np.linalg.lstsq(design, values, rcond=None)
    return sol


def _fit(family: BasisFamily, target: Callable, q: int, grid_size: int):
    if q < 1:
        raise ValueError("q must be >= 1")
    if grid_size < 10 * q:
        raise ValueError(f"grid_size must be at least 10*q = {10 * q}")
    x = np.linspace(0.0, 1.0, grid_size)
    y = np.asarray(target(x), dtype=np.float64) * np.ones_like(x)
    vals, _ = expand(family, x, q, with_deriv=False)
    design = np.column_stack([np.ones_like(x), vals])
    sol = _lstsq_fit(design, y)
    bias, coeffs = float(sol[0]), sol[1:]
    sup_error = float(np.max(np.abs(design @ sol - y)))
    return coeffs, bias, sup_error


def fejer_cosine_fit(target: Callable, q: int, grid_size: int = 512):
    """Least-squares fit of ``target`` on ``{1, cos(pi x), ..., cos(q pi x)}``.

    ``target`` is called once with the grid array. Returns
    ``(coeffs, bias, sup_error)`` where ``sup_error`` is the largest absolute
    residual over the uniform grid.
    """
    return _fit(BasisFamily.COS, target, q, grid_size)


def poly_fit(target: Callable, q: int, grid_size: int = 512):
    """Polynomial counterpart of :func:`fejer_cosine_fit`."""
    return _fit(BasisFamily.POLY, target, q, grid_size)
