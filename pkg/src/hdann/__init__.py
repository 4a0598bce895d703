"""Deep additive neural networks and their hybrids with a DNN baseline."""

from ._backend import BACKEND
from .activation import ActivationKind
from .basis import BasisFamily
from .data import Dataset, fit_scaler_x, fit_scaler_y, gen_model1, gen_model2, generate, load_csv
from .network import NetworkKind, NetworkSpec, ParamStore, forward, forward_batch, init_xavier, param_count, predict
from .training import TrainConfig, backward, train

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "ActivationKind",
    "BasisFamily",
    "Dataset",
    "fit_scaler_x",
    "fit_scaler_y",
    "gen_model1",
    "gen_model2",
    "generate",
    "load_csv",
    "NetworkKind",
    "NetworkSpec",
    "ParamStore",
    "forward",
    "forward_batch",
    "init_xavier",
    "param_count",
    "predict",
    "TrainConfig",
    "backward",
    "train",
]
