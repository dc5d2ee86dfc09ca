"""Fully connected sigmoid multilayer perceptron trained by backpropagation.

Every node computes sigmoid(w . a_prev + b).  Training minimizes the
per-example squared error E = 1/2 * sum_j (t_j - o_j)^2 with online
(per-example) gradient descent, a learning rate that decays across epochs,
and optional momentum.  Risk targets put the positive class on output
node 0: AT_RISK -> (1, 0), NOT_AT_RISK -> (0, 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ._sgd import run_sgd
from .errors import DimensionMismatch, EmptyDataset, InvalidTopology
from .survey import RiskLabel

RISK_NODE = 0
NO_RISK_NODE = 1

_TARGETS = {
    RiskLabel.AT_RISK: (1.0, 0.0),
    RiskLabel.NOT_AT_RISK: (0.0, 1.0),
}


@dataclass
class Network:
    """Layer sizes plus per-layer weight matrices (n_next x n_prev) and biases."""

    layer_sizes: tuple[int, ...]
    weights: list[np.ndarray]
    biases: list[np.ndarray]

    @property
    def n_in(self) -> int:
        return self.layer_sizes[0]

    @property
    def n_out(self) -> int:
        return self.layer_sizes[-1]


@dataclass(frozen=True)
class TrainingConfig:
    """Hyperparameters; the defaults are the reference setup (500 cycles,
    initial learning rate 0.2 decayed, hidden size (n_in + n_out) // 2)."""

    epochs: int = 500
    lr0: float = 0.2
    decay: float = 1.0
    momentum: float = 0.0
    seed: int = 0
    hidden: int | None = None

    def __post_init__(self):
        if self.epochs < 0:
            raise ValueError("epochs must be >= 0")
        if self.lr0 <= 0:
            raise ValueError("lr0 must be positive")
        if self.decay < 0:
            raise ValueError("decay must be >= 0")
        if not 0 <= self.momentum < 1:
            raise ValueError("momentum must be in [0, 1)")
        if self.hidden is not None and self.hidden < 1:
            raise ValueError("hidden must be >= 1")


def default_hidden(n_in: int, n_out: int) -> int:
    """Hidden-layer size (n_in + n_out) // 2, never below 1."""
    if n_in < 1 or n_out < 1:
        raise InvalidTopology("layer sizes must be >= 1")
    return max(1, (n_in + n_out) // 2)


def sigmoid(z: np.ndarray) -> np.ndarray:
    return 1.0 / (1.0 + np.exp(-np.clip(z, -500.0, 500.0)))


def _draw_params(layer_sizes: Sequence[int], rng: np.random.Generator):
    weights = []
    biases = []
    for n_prev, n_next in zip(layer_sizes, layer_sizes[1:]):
        weights.append(rng.uniform(-0.5, 0.5, (n_next, n_prev)))
        biases.append(rng.uniform(-0.5, 0.5, n_next))
    return weights, biases


def init(layer_sizes: Sequence[int], seed: int) -> Network:
    """Seeded network with all parameters uniform on [-0.5, 0.5]."""
    if len(layer_sizes) < 2 or any(s < 1 for s in layer_sizes):
        raise InvalidTopology(f"unusable layer sizes {tuple(layer_sizes)}")
    rng = np.random.default_rng(seed)
    weights, biases = _draw_params(layer_sizes, rng)
    return Network(tuple(int(s) for s in layer_sizes), weights, biases)


def forward(net: Network, x: np.ndarray) -> list[np.ndarray]:
    """Activations for every layer, input first, outputs last."""
    x = np.asarray(x, dtype=float)
    if x.shape != (net.n_in,):
        raise DimensionMismatch(f"input has shape {x.shape}, expected ({net.n_in},)")
    activations = [x]
    for W, b in zip(net.weights, net.biases):
        activations.append(sigmoid(W @ activations[-1] + b))
    return activations


def gradients(net: Network, x: np.ndarray, target: np.ndarray):
    """Exact partials of E = 1/2 * sum (t - o)^2 w.r.t. every parameter.

    Returns (weight_grads, bias_grads) shaped like net.weights/net.biases.
    """
    target = np.asarray(target, dtype=float)
    if target.shape != (net.n_out,):
        raise DimensionMismatch(f"target has shape {target.shape}, expected ({net.n_out},)")
    activations = forward(net, x)
    n_layers = len(net.weights)
    deltas: list[np.ndarray] = [None] * n_layers  # type: ignore[list-item]
    out = activations[-1]
    deltas[-1] = (out - target) * out * (1.0 - out)
    for l in range(n_layers - 2, -1, -1):
        a = activations[l + 1]
        deltas[l] = (net.weights[l + 1].T @ deltas[l + 1]) * a * (1.0 - a)
    weight_grads = [np.outer(deltas[l], activations[l]) for l in range(n_layers)]
    bias_grads = [deltas[l].copy() for l in range(n_layers)]
    return weight_grads, bias_grads


def loss(net: Network, x: np.ndarray, target: np.ndarray) -> float:
    """Squared error E = 1/2 * sum (t - o)^2 on one example."""
    out = forward(net, x)[-1]
    return 0.5 * float(np.sum((np.asarray(target, dtype=float) - out) ** 2))


def learning_rates(config: TrainingConfig) -> np.ndarray:
    """lr for epoch e (1-based): lr0 / (1 + decay * (e - 1) / epochs)."""
    if config.epochs == 0:
        return np.empty(0)
    e = np.arange(config.epochs, dtype=float)
    return config.lr0 / (1.0 + config.decay * e / config.epochs)


def train(
    data: Sequence[tuple[np.ndarray, RiskLabel]],
    config: TrainingConfig = TrainingConfig(),
) -> Network:
    """Train a one-hidden-layer risk classifier by per-example SGD.

    The seeded generator drives both initialization and the per-epoch
    shuffle, so identical (data, config) give bit-identical parameters;
    epochs=0 returns the freshly initialized network untouched.
    """
    if not data:
        raise EmptyDataset("cannot train on an empty dataset")
    try:
        X = np.ascontiguousarray([x for x, _ in data], dtype=float)
    except ValueError:
        raise DimensionMismatch("training vectors differ in length") from None
    if X.ndim != 2:
        raise DimensionMismatch("training vectors differ in length")
    n, n_in = X.shape
    n_out = 2
    T = np.array([_TARGETS[label] for _, label in data])
    hidden = config.hidden if config.hidden is not None else default_hidden(n_in, n_out)
    layer_sizes = (n_in, hidden, n_out)

    rng = np.random.default_rng(config.seed)
    weights, biases = _draw_params(layer_sizes, rng)
    orders = np.array(
        [rng.permutation(n) for _ in range(config.epochs)], dtype=np.int64
    ).reshape(config.epochs, n)

    vel_w = [np.zeros_like(W) for W in weights]
    vel_b = [np.zeros_like(b) for b in biases]
    run_sgd(
        tuple(weights),
        tuple(biases),
        tuple(vel_w),
        tuple(vel_b),
        X,
        T,
        orders,
        learning_rates(config),
        config.momentum,
    )
    return Network(layer_sizes, weights, biases)


def predict(net: Network, x: np.ndarray) -> tuple[RiskLabel, np.ndarray]:
    """Class plus the two output scores; ties go to AT_RISK."""
    if net.n_out != 2:
        raise DimensionMismatch(f"risk prediction needs 2 output nodes, net has {net.n_out}")
    scores = forward(net, x)[-1]
    if scores[RISK_NODE] >= scores[NO_RISK_NODE]:
        return RiskLabel.AT_RISK, scores
    return RiskLabel.NOT_AT_RISK, scores
