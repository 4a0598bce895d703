"""Pure numpy basis-expansion kernels.

Reference implementation used when the compiled ``_kernels`` extension is
not available. Both backends expose the same two functions and agree to
round-off.
"""

import numpy as np

POLY, COS, HAAR = 0, 1, 2


def _haar_index(q):
    """(level, position) per index r = 1..q; level -1 marks the constant."""
    level = np.full(q, -1, dtype=np.int64)
    pos = np.zeros(q, dtype=np.int64)
    for r in range(2, q + 1):
        j = (r - 1).bit_length() - 1
        level[r - 1] = j
        pos[r - 1] = r - 1 - (1 << j)
    return level, pos


def _haar_values(x, q):
    level, pos = _haar_index(q)
    out = np.empty(x.shape + (q,))
    at_one = x >= 1.0
    for idx in range(q):
        j, k = int(level[idx]), int(pos[idx])
        if j < 0:
            out[..., idx] = 1.0
            continue
        t = x * 2.0**j - k
        v = np.where((t >= 0.0) & (t < 0.5), 1.0, np.where((t >= 0.5) & (t < 1.0), -1.0, 0.0))
        # x == 1 takes the left-hand limit: only the last interval is live
        v = np.where(at_one, -1.0 if k == 2**j - 1 else 0.0, v)
        out[..., idx] = v * 2.0 ** (j / 2.0)
    return out


def basis_expand(family, x, q, with_deriv=True):
    """Evaluate B_1..B_q (and derivatives) at every entry of ``x``.

    Returns arrays of shape ``x.shape + (q,)``. ``deriv`` is None when
    ``with_deriv`` is false.
    """
    x = np.asarray(x, dtype=np.float64)
    r = np.arange(1, q + 1, dtype=np.float64)
    xe = x[..., None]
    deriv = None
    if family == POLY:
        # x^(r-1) built by cumulative product keeps x=0 well defined
        lower = np.concatenate(
            [np.ones(x.shape + (1,)), np.cumprod(np.broadcast_to(xe, x.shape + (q,)), axis=-1)],
            axis=-1,
        )
        vals = lower[..., 1:]
        if with_deriv:
            deriv = r * lower[..., :-1]
    elif family == COS:
        theta = np.pi * r * xe
        vals = np.cos(theta)
        if with_deriv:
            deriv = -np.pi * r * np.sin(theta)
    elif family == HAAR:
        vals = _haar_values(x, q)
        if with_deriv:
            deriv = np.zeros_like(vals)
    else:
        raise ValueError(f"unknown basis family code {family}")
    return vals, deriv


def input_grad(dphi, dbasis):
    """Contract d(loss)/d(basis value) with dB/dx over the basis axis."""
    return np.einsum("...r,...r->...", dphi, dbasis)
