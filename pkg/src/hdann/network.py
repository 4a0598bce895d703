"""Network architectures, parameter layout, initialisation and forward pass.

Five architectures share one layer vocabulary. A layer is either *affine*
(``W @ x + b``) or *additive* (each input is expanded in the basis
``B_1..B_q`` and the node takes a linear combination of all expanded
values plus a bias). Hidden widths, q, the basis family and the hidden
activation are shared by every layer of a network.

==========  ===============  ================  ==================  ==========
kind        first hidden     middle hidden     last hidden         output
==========  ===============  ================  ==================  ==========
DNN         affine, sigma    affine, sigma     affine, sigma       affine
DANN        additive, g      additive, g       additive, g         additive
HDANN1      additive, sigma  affine, sigma     affine, sigma       affine
HDANN2      affine, sigma    affine, sigma     affine, g           additive
HDANN3      additive, sigma  affine, sigma     affine, g           additive
==========  ===============  ================  ==================  ==========

When a network has a single hidden layer the "last hidden" rule wins, so
HDANN3 with ``L = 1`` is exactly the one-layer DANN.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .activation import ActivationKind, apply
from .basis import BasisFamily, expand
from .rng import Stream, make_rng


class NetworkKind(enum.Enum):
    DNN = "DNN"
    DANN = "DANN"
    HDANN1 = "HDANN1"
    HDANN2 = "HDANN2"
    HDANN3 = "HDANN3"

    @classmethod
    def parse(cls, name: "str | NetworkKind") -> "NetworkKind":
        if isinstance(name, cls):
            return name
        try:
            return cls(str(name).strip().upper())
        except ValueError:
            raise ValueError(f"unknown network kind {name!r}") from None


@dataclass(frozen=True)
class NetworkSpec:
    kind: NetworkKind
    d: int
    L: int
    p: int
    q: int | None = None
    sigma: ActivationKind = ActivationKind.LOGISTIC
    g: ActivationKind = ActivationKind.LOGISTIC
    basis: BasisFamily | None = None

    def __post_init__(self):
        set_ = lambda k, v: object.__setattr__(self, k, v)  # noqa: E731
        set_("kind", NetworkKind.parse(self.kind))
        set_("sigma", ActivationKind.parse(self.sigma))
        set_("g", ActivationKind.parse(self.g))
        for name in ("d", "L", "p"):
            value = getattr(self, name)
            if int(value) != value or value < 1:
                raise ValueError(f"{name} must be a positive integer, got {value!r}")
            set_(name, int(value))
        if not self.g.unit_range:
            raise ValueError(f"g must map into [0, 1]; {self.g.value!r} does not")
        if self.kind is NetworkKind.DNN:
            if self.basis is not None:
                set_("basis", BasisFamily.parse(self.basis))
            return
        if self.q is None or int(self.q) != self.q or self.q < 1:
            raise ValueError(f"{self.kind.value} needs q >= 1, got {self.q!r}")
        set_("q", int(self.q))
        if self.basis is None:
            raise ValueError(f"{self.kind.value} needs a basis family")
        set_("basis", BasisFamily.parse(self.basis))

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "d": self.d,
            "L": self.L,
            "p": self.p,
            "q": self.q,
            "sigma": self.sigma.value,
            "g": self.g.value,
            "basis": self.basis.value if self.basis is not None else None,
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "NetworkSpec":
        missing = {"kind", "d", "L", "p"} - set(obj)
        if missing:
            raise ValueError(f"network spec is missing keys {sorted(missing)}")
        return cls(
            kind=obj["kind"],
            d=obj["d"],
            L=obj["L"],
            p=obj["p"],
            q=obj.get("q"),
            sigma=obj.get("sigma", "sigmoid"),
            g=obj.get("g", "sigmoid"),
            basis=obj.get("basis"),
        )


@dataclass(frozen=True)
class LayerDef:
    index: int  # 1..L hidden, L + 1 output
    additive: bool
    n_in: int
    n_out: int
    activation: ActivationKind | None

    def weight_shape(self, q: int | None) -> tuple:
        if self.additive:
            return (self.n_out, self.n_in, q)
        return (self.n_out, self.n_in)

    def fans(self, q: int | None) -> tuple[int, int]:
        fan_in = self.n_in * q if self.additive else self.n_in
        return fan_in, self.n_out


def layer_defs(spec: NetworkSpec) -> list[LayerDef]:
    kind, L = spec.kind, spec.L
    layers = []
    for l in range(1, L + 1):
        n_in = spec.d if l == 1 else spec.p
        if kind is NetworkKind.DNN:
            additive, act = False, spec.sigma
        elif kind is NetworkKind.DANN:
            additive, act = True, spec.g
        elif kind is NetworkKind.HDANN1:
            additive, act = l == 1, spec.sigma
        elif kind is NetworkKind.HDANN2:
            additive, act = False, spec.g if l == L else spec.sigma
        else:
            additive, act = l == 1, spec.g if l == L else spec.sigma
        layers.append(LayerDef(l, additive, n_in, spec.p, act))
    out_additive = kind not in (NetworkKind.DNN, NetworkKind.HDANN1)
    layers.append(LayerDef(L + 1, out_additive, spec.p, 1, None))
    return layers


def param_count(spec: NetworkSpec) -> int:
    """Closed-form parameter count."""
    d, L, p, q = spec.d, spec.L, spec.p, spec.q
    kind = spec.kind
    if kind is NetworkKind.DNN:
        return (d + 1) * p + (p + 1) * p * (L - 1) + p + 1
    if kind is NetworkKind.DANN:
        return (d * q + 1) * p + (p * q + 1) * p * (L - 1) + p * q + 1
    if kind is NetworkKind.HDANN1:
        return (d * q + 1) * p + (p + 1) * p * (L - 1) + p + 1
    if kind is NetworkKind.HDANN2:
        return (d + 1) * p + (p + 1) * p * (L - 1) + p * q + 1
    return (d * q + 1) * p + (p + 1) * p * (L - 1) + p * q + 1


@dataclass(frozen=True)
class Block:
    name: str
    layer: int
    role: str  # "weight" or "bias"
    shape: tuple
    offset: int

    @property
    def size(self) -> int:
        return math.prod(self.shape)


LAYOUT_VERSION = 1


@dataclass(frozen=True)
class ParamLayout:
    """Maps named slots onto a flat parameter vector.

    Weights of an additive layer are indexed ``[dest, src, r - 1]``; affine
    weights ``[dest, src]``; biases ``[dest]``. Blocks are laid out
    layer by layer, weight before bias, in C order.
    """

    blocks: tuple[Block, ...]
    total: int
    _by_key: dict = field(default_factory=dict, compare=False, repr=False)

    @classmethod
    def for_spec(cls, spec: NetworkSpec) -> "ParamLayout":
        blocks, offset = [], 0
        for layer in layer_defs(spec):
            for role, shape in (("weight", layer.weight_shape(spec.q)), ("bias", (layer.n_out,))):
                b = Block(f"layer{layer.index}.{role}", layer.index, role, shape, offset)
                blocks.append(b)
                offset += b.size
        out = cls(tuple(blocks), offset)
        out._by_key.update({(b.layer, b.role): b for b in blocks})
        return out

    def block(self, layer: int, role: str) -> Block:
        return self._by_key[(layer, role)]

    def offset(self, layer: int, dest: int, src: int | None = None, r: int | None = None) -> int:
        """Flat offset of a weight (``src`` given) or bias (``src`` None) slot."""
        if src is None:
            b = self.block(layer, "bias")
            idx = (dest,)
        else:
            b = self.block(layer, "weight")
            idx = (dest, src) if r is None else (dest, src, r - 1)
            if len(idx) != len(b.shape):
                raise ValueError(f"layer {layer} weight index needs {len(b.shape)} components")
        for i, n in zip(idx, b.shape):
            if not 0 <= i < n:
                raise IndexError(f"slot {idx} out of range for block {b.name} {b.shape}")
        return b.offset + int(np.ravel_multi_index(idx, b.shape))


class ParamStore:
    """Flat parameter vector plus its layout.

    ``weight(l)`` and ``bias(l)`` return reshaped views into ``values``.
    """

    def __init__(self, spec: NetworkSpec, values=None, layout: ParamLayout | None = None):
        self.spec = spec
        self.layout = layout or ParamLayout.for_spec(spec)
        if values is None:
            values = np.zeros(self.layout.total)
        values = np.ascontiguousarray(values, dtype=np.float64)
        if values.shape != (self.layout.total,):
            raise ValueError(f"expected {self.layout.total} parameters, got shape {values.shape}")
        self.values = values

    def __len__(self) -> int:
        return self.values.size

    def _view(self, b: Block) -> np.ndarray:
        return self.values[b.offset : b.offset + b.size].reshape(b.shape)

    def weight(self, layer: int) -> np.ndarray:
        return self._view(self.layout.block(layer, "weight"))

    def bias(self, layer: int) -> np.ndarray:
        return self._view(self.layout.block(layer, "bias"))

    def copy(self) -> "ParamStore":
        return ParamStore(self.spec, self.values.copy(), self.layout)

    def with_values(self, values) -> "ParamStore":
        return ParamStore(self.spec, values, self.layout)


def init_xavier(spec: NetworkSpec, seed: int) -> ParamStore:
    """Xavier-uniform weights, zero biases.

    Each weight block is drawn from ``U(-a, a)``, ``a = sqrt(6 / (fan_in +
    fan_out))``. An additive layer counts every expanded basis value as an
    input, so its ``fan_in`` is ``n_in * q``.
    """
    store = ParamStore(spec)
    rng = make_rng(seed, Stream.INIT)
    for layer in layer_defs(spec):
        fan_in, fan_out = layer.fans(spec.q)
        a = math.sqrt(6.0 / (fan_in + fan_out))
        w = store.weight(layer.index)
        w[...] = rng.uniform(-a, a, size=w.shape)
    return store


@dataclass
class LayerTrace:
    inputs: np.ndarray  # (n, n_in), after clamping for additive layers
    pre: np.ndarray  # (n, n_out)
    post: np.ndarray  # (n, n_out)
    phi: np.ndarray | None = None  # (n, n_in, q)
    dphi: np.ndarray | None = None  # (n, n_in, q)
    inside: np.ndarray | None = None  # clamp mask, (n, n_in)


def _check_params(spec: NetworkSpec, params: ParamStore) -> None:
    if params.spec != spec:
        raise ValueError("parameter store was built for a different spec")


def forward_batch(spec: NetworkSpec, params: ParamStore, X, keep_trace: bool = True):
    """Predictions for every row of ``X`` and the per-layer trace."""
    _check_params(spec, params)
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[1] != spec.d:
        raise ValueError(f"expected an (n, {spec.d}) input matrix, got shape {X.shape}")
    n = X.shape[0]
    traces: list[LayerTrace] = []
    a = X
    for layer in layer_defs(spec):
        W, b = params.weight(layer.index), params.bias(layer.index)
        phi = dphi = inside = None
        if layer.additive:
            inside = (a >= 0.0) & (a <= 1.0)
            a = np.clip(a, 0.0, 1.0)
            phi, dphi = expand(spec.basis, a, spec.q, with_deriv=keep_trace)
            z = phi.reshape(n, layer.n_in * spec.q) @ W.reshape(layer.n_out, -1).T + b
        else:
            z = a @ W.T + b
        post = z if layer.activation is None else apply(layer.activation, z)
        if keep_trace:
            traces.append(LayerTrace(a, z, post, phi, dphi, inside))
        a = post
    return a[:, 0].copy(), traces


def forward(spec: NetworkSpec, params: ParamStore, x):
    """Prediction for a single input vector of length ``d``."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (spec.d,):
        raise ValueError(f"expected an input of length {spec.d}, got shape {x.shape}")
    y, traces = forward_batch(spec, params, x[None, :])
    return float(y[0]), traces


def predict(spec: NetworkSpec, params: ParamStore, X) -> np.ndarray:
    return forward_batch(spec, params, X, keep_trace=False)[0]
