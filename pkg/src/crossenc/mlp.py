"""Small fully-connected encoders with tanh hidden layers and exact backprop.

These encoders stand in for the full-scale modality backbones: a stack of
linear layers with hyperbolic-tangent activations on the hidden layers, an
identity output layer of width ``embed_dim``, and L2 normalization of the
final output. Hidden activations are exposed as per-layer feature taps so
layer-wise encoding sweeps can be run against them. All arithmetic is 64-bit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NumericError, ShapeError

Array = np.ndarray


@dataclass
class MlpEncoder:
    """Weights and biases of one encoder.

    ``weights[k]`` has shape ``(layer_dims[k+1], layer_dims[k])`` and
    ``biases[k]`` has length ``layer_dims[k+1]``. The last entry of
    ``layer_dims`` is the embedding width.
    """

    layer_dims: list[int]
    weights: list[Array]
    biases: list[Array]

    def __post_init__(self) -> None:
        dims = list(self.layer_dims)
        if len(dims) < 2:
            raise ShapeError("layer_dims needs at least an input and an output width")
        if any(int(d) < 1 for d in dims):
            raise ShapeError(f"layer_dims must be positive, got {dims}")
        if len(self.weights) != len(dims) - 1 or len(self.biases) != len(dims) - 1:
            raise ShapeError("one weight matrix and one bias vector per layer required")
        for k, (w, b) in enumerate(zip(self.weights, self.biases)):
            if w.shape != (dims[k + 1], dims[k]):
                raise ShapeError(
                    f"layer {k} weight shape {w.shape} != {(dims[k + 1], dims[k])}"
                )
            if b.shape != (dims[k + 1],):
                raise ShapeError(f"layer {k} bias shape {b.shape} != {(dims[k + 1],)}")

    @classmethod
    def init_random(cls, layer_dims: list[int], rng: np.random.Generator) -> "MlpEncoder":
        """Gaussian init scaled by 1/sqrt(fan_in); biases start at zero."""
        dims = list(layer_dims)
        weights = [
            rng.standard_normal((dims[k + 1], dims[k])) / np.sqrt(dims[k])
            for k in range(len(dims) - 1)
        ]
        biases = [np.zeros(dims[k + 1]) for k in range(len(dims) - 1)]
        return cls(dims, weights, biases)

    @property
    def n_layers(self) -> int:
        return len(self.weights)

    @property
    def embed_dim(self) -> int:
        return self.layer_dims[-1]

    def copy(self) -> "MlpEncoder":
        return MlpEncoder(
            list(self.layer_dims),
            [w.copy() for w in self.weights],
            [b.copy() for b in self.biases],
        )

    def parameters(self) -> list[Array]:
        """Weights then biases, layer by layer, in a fixed order."""
        out: list[Array] = []
        for w, b in zip(self.weights, self.biases):
            out.append(w)
            out.append(b)
        return out


@dataclass
class MlpGrads:
    """Gradient arrays mirroring an encoder's weight/bias lists."""

    weights: list[Array]
    biases: list[Array]

    @classmethod
    def zeros_like(cls, encoder: MlpEncoder) -> "MlpGrads":
        return cls(
            [np.zeros_like(w) for w in encoder.weights],
            [np.zeros_like(b) for b in encoder.biases],
        )

    def parameters(self) -> list[Array]:
        out: list[Array] = []
        for w, b in zip(self.weights, self.biases):
            out.append(w)
            out.append(b)
        return out


def _check_finite_params(encoder: MlpEncoder) -> None:
    for arr in encoder.parameters():
        if not np.all(np.isfinite(arr)):
            raise NumericError("encoder has non-finite parameters")


def forward_batch(encoder: MlpEncoder, inputs: Array) -> list[Array]:
    """Run the layer stack on a batch of rows.

    Returns the activation after every layer: tanh outputs for hidden layers
    and the raw (pre-normalization) linear output for the last layer.
    """
    x = np.asarray(inputs, dtype=np.float64)
    if x.ndim != 2 or x.shape[1] != encoder.layer_dims[0]:
        raise ShapeError(
            f"input shape {x.shape} incompatible with input width {encoder.layer_dims[0]}"
        )
    activations: list[Array] = []
    a = x
    last = encoder.n_layers - 1
    for k, (w, b) in enumerate(zip(encoder.weights, encoder.biases)):
        z = a @ w.T + b
        a = z if k == last else np.tanh(z)
        activations.append(a)
    return activations


def normalize_rows(u: Array) -> tuple[Array, Array]:
    """L2-normalize rows; a zero-norm row is a hard error, never patched."""
    norms = np.linalg.norm(u, axis=1)
    if np.any(norms == 0.0):
        raise NumericError("cannot normalize a zero-norm embedding")
    if not np.all(np.isfinite(norms)):
        raise NumericError("non-finite embedding norm")
    return u / norms[:, None], norms


def encode_batch(encoder: MlpEncoder, inputs: Array) -> tuple[Array, list[Array]]:
    """Embeddings (unit rows) plus per-layer feature taps for a batch."""
    x = np.asarray(inputs, dtype=np.float64)
    if not np.all(np.isfinite(x)):
        raise NumericError("non-finite encoder input")
    _check_finite_params(encoder)
    activations = forward_batch(encoder, x)
    embeddings, _ = normalize_rows(activations[-1])
    return embeddings, activations


def encode(encoder: MlpEncoder, x: Array) -> tuple[Array, list[Array]]:
    """Single-vector convenience wrapper around :func:`encode_batch`."""
    vec = np.asarray(x, dtype=np.float64)
    if vec.ndim != 1:
        raise ShapeError(f"expected a 1-D input, got shape {vec.shape}")
    embeddings, activations = encode_batch(encoder, vec[None, :])
    return embeddings[0], [a[0] for a in activations]


def normalization_backprop(embeddings: Array, norms: Array, grad_embeddings: Array) -> Array:
    """Pull a gradient back through row-wise L2 normalization."""
    inner = np.sum(grad_embeddings * embeddings, axis=1, keepdims=True)
    return (grad_embeddings - inner * embeddings) / norms[:, None]


def backprop(
    encoder: MlpEncoder,
    inputs: Array,
    activations: list[Array],
    grad_output: Array,
) -> MlpGrads:
    """Exact gradients of a scalar loss w.r.t. all encoder parameters.

    ``grad_output`` is the loss gradient w.r.t. the raw final-layer output
    (after any normalization pullback). Hidden layers use tanh' = 1 - a^2.
    """
    grads = MlpGrads.zeros_like(encoder)
    delta = np.asarray(grad_output, dtype=np.float64)
    for k in range(encoder.n_layers - 1, -1, -1):
        prev = inputs if k == 0 else activations[k - 1]
        grads.weights[k] = delta.T @ prev
        grads.biases[k] = delta.sum(axis=0)
        if k > 0:
            delta = (delta @ encoder.weights[k]) * (1.0 - activations[k - 1] ** 2)
    return grads
