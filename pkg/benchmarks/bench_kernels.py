"""Compare the compiled kernels with the numpy fallback.

Times the basis expansion, the input-gradient contraction and one full
training epoch under each backend. Run with ``python benchmarks/bench_kernels.py``.
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from hdann import _backend, _kernels_py
from hdann.network import NetworkSpec, init_xavier
from hdann.training import TrainConfig, train

try:
    from hdann import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

FAMILIES = {"poly": 0, "cos": 1, "haar": 2}


def _best(fn, number: int, repeat: int = 5) -> float:
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


def _use(mod) -> None:
    _backend.basis_expand = mod.basis_expand
    _backend.input_grad = mod.input_grad


def bench_expand(mods, n: int, d: int, q: int) -> list:
    x = np.random.default_rng(0).random((n, d))
    rows = []
    for fam, code in FAMILIES.items():
        times = {name: _best(lambda: mod.basis_expand(code, x, q, True), 20) for name, mod in mods.items()}
        rows.append((f"basis_expand {fam} ({n}x{d}, q={q})", times))
    return rows


def bench_input_grad(mods, n: int, d: int, q: int) -> list:
    rng = np.random.default_rng(1)
    a, b = rng.normal(size=(2, n, d, q))
    times = {name: _best(lambda: mod.input_grad(a, b), 50) for name, mod in mods.items()}
    return [(f"input_grad ({n}x{d}x{q})", times)]


def bench_epoch(mods, n: int) -> list:
    rng = np.random.default_rng(2)
    X, y = rng.random((n, 6)), rng.normal(size=n)
    cfg = TrainConfig(max_epochs=1)
    rows = []
    for kind in ("DANN", "HDANN3"):
        spec = NetworkSpec(kind, 6, 3, 64, 7, sigma="tanh", basis="cos")
        params = init_xavier(spec, 0)
        times = {}
        for name, mod in mods.items():
            _use(mod)
            times[name] = _best(lambda: train(spec, params, X, y, cfg), 1, repeat=3)
        rows.append((f"train epoch {kind} L=3 p=64 q=7 cos (n={n})", times))
    return rows


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=1000, help="rows per call")
    ap.add_argument("--quick", action="store_true", help="smaller sizes")
    args = ap.parse_args(argv)

    mods = {"python": _kernels_py}
    if _compiled is not None:
        mods["cython"] = _compiled
    else:
        print("compiled extension not built; timing the numpy fallback only")
    n = 200 if args.quick else args.n
    saved = (_backend.basis_expand, _backend.input_grad)
    try:
        rows = bench_expand(mods, n, 64, 11) + bench_input_grad(mods, n, 64, 11) + bench_epoch(mods, n)
    finally:
        _backend.basis_expand, _backend.input_grad = saved

    names = list(mods)
    print(f"{'case':<48}" + "".join(f"{k + ' (ms)':>14}" for k in names) + ("   speedup" if len(names) > 1 else ""))
    for label, t in rows:
        line = f"{label:<48}" + "".join(f"{t[k] * 1e3:14.3f}" for k in names)
        if len(names) > 1:
            line += f"{t['python'] / t['cython']:9.2f}x"
        print(line)


if __name__ == "__main__":
    main()
