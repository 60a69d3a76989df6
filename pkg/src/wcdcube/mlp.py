"""Feed-forward network inference with a self-describing weight file.

The weight file is a single JSON document:

    {
      "input_encoding": "onehot-face54",
      "layers": [
        {"in": 324, "out": 512,
         "weights": [...],        # flat row-major, length in*out
         "bias": [...],           # length out
         "activation": "relu"},   # "relu" | "linear" | "softmax"
        ...
      ]
    }

``weights`` is row-major with rows indexed by input unit, so a layer maps
``x`` to ``activation(x @ W + b)`` with ``W`` of shape (in, out).  Softmax is
only allowed as the final activation.  The format is shared with the policy
trainer; keeping it framework-free decouples training from inference.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

ACTIVATIONS = ("relu", "linear", "softmax")
ONEHOT_ENCODING = "onehot-face54"
ONEHOT_WIDTH = 324


class MlpFormatError(ValueError):
    """Weight stream is not parseable as the documented format."""


class MlpValidationError(ValueError):
    """Parsed model violates a structural contract."""


@dataclass
class MlpLayer:
    in_width: int
    out_width: int
    weights: np.ndarray  # shape (in_width, out_width)
    bias: np.ndarray  # shape (out_width,)
    activation: str


@dataclass
class MlpModel:
    """Validated layer stack plus the input encoding it expects."""

    input_encoding: str
    layers: list[MlpLayer]

    @property
    def input_width(self) -> int:
        return self.layers[0].in_width

    @property
    def output_width(self) -> int:
        return self.layers[-1].out_width

    def validate(self) -> None:
        if not self.layers:
            raise MlpValidationError("model has no layers")
        for i, layer in enumerate(self.layers):
            where = f"layer {i}"
            if layer.activation not in ACTIVATIONS:
                raise MlpValidationError(
                    f"{where}: unknown activation {layer.activation!r}"
                )
            if layer.activation == "softmax" and i != len(self.layers) - 1:
                raise MlpValidationError(
                    f"{where}: softmax is only allowed as the final activation"
                )
            if layer.weights.shape != (layer.in_width, layer.out_width):
                raise MlpValidationError(
                    f"{where}: weights shape {layer.weights.shape} does not "
                    f"match declared widths {layer.in_width}x{layer.out_width}"
                )
            if layer.bias.shape != (layer.out_width,):
                raise MlpValidationError(
                    f"{where}: bias length {layer.bias.shape[0]} does not "
                    f"match out width {layer.out_width}"
                )
            if i > 0 and layer.in_width != self.layers[i - 1].out_width:
                raise MlpValidationError(
                    f"{where}: width mismatch, expects {layer.in_width} inputs "
                    f"but layer {i - 1} emits {self.layers[i - 1].out_width}"
                )
        if (
            self.input_encoding == ONEHOT_ENCODING
            and self.input_width != ONEHOT_WIDTH
        ):
            raise MlpValidationError(
                f"layer 0: input width {self.input_width} does not match the "
                f"{ONEHOT_ENCODING} encoding ({ONEHOT_WIDTH})"
            )


def load_mlp(source) -> MlpModel:
    """Parse and validate a weight file (bytes, str, or binary stream).

    Raises :class:`MlpFormatError` on malformed input and
    :class:`MlpValidationError` on contract violations; diagnostics name the
    offending layer and field.
    """
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        source = source.decode("utf-8", errors="replace")
    try:
        doc = json.loads(source)
    except json.JSONDecodeError as exc:
        raise MlpFormatError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise MlpFormatError("top level must be an object")
    encoding = doc.get("input_encoding")
    if encoding != ONEHOT_ENCODING:
        raise MlpFormatError(
            f"input_encoding must be {ONEHOT_ENCODING!r}, got {encoding!r}"
        )
    raw_layers = doc.get("layers")
    if not isinstance(raw_layers, list) or not raw_layers:
        raise MlpFormatError("layers must be a non-empty list")
    layers = []
    for i, raw in enumerate(raw_layers):
        where = f"layer {i}"
        if not isinstance(raw, dict):
            raise MlpFormatError(f"{where}: must be an object")
        try:
            in_width = int(raw["in"])
            out_width = int(raw["out"])
            weights = raw["weights"]
            bias = raw["bias"]
            activation = raw["activation"]
        except KeyError as exc:
            raise MlpFormatError(f"{where}: missing field {exc.args[0]!r}") from None
        if len(weights) != in_width * out_width:
            raise MlpFormatError(
                f"{where}: weights has {len(weights)} values, expected "
                f"{in_width}x{out_width}={in_width * out_width}"
            )
        if len(bias) != out_width:
            raise MlpFormatError(
                f"{where}: bias has {len(bias)} values, expected {out_width}"
            )
        layers.append(
            MlpLayer(
                in_width=in_width,
                out_width=out_width,
                weights=np.asarray(weights, dtype=np.float64).reshape(
                    in_width, out_width
                ),
                bias=np.asarray(bias, dtype=np.float64),
                activation=activation,
            )
        )
    model = MlpModel(input_encoding=encoding, layers=layers)
    model.validate()
    return model


def save_mlp(model: MlpModel) -> bytes:
    """Serialize a model to the documented weight-file format."""
    doc = {
        "input_encoding": model.input_encoding,
        "layers": [
            {
                "in": layer.in_width,
                "out": layer.out_width,
                "weights": layer.weights.reshape(-1).tolist(),
                "bias": layer.bias.tolist(),
                "activation": layer.activation,
            }
            for layer in model.layers
        ],
    }
    return json.dumps(doc).encode("utf-8")


def softmax(z: np.ndarray) -> np.ndarray:
    """Numerically stable softmax; output sums to 1 within 1e-9."""
    shifted = z - np.max(z)
    e = np.exp(shifted)
    return e / np.sum(e)


def mlp_forward(model: MlpModel, x) -> np.ndarray:
    """Affine-then-activation composition over the layer stack."""
    y = np.asarray(x, dtype=np.float64)
    if y.shape != (model.input_width,):
        raise ValueError(
            f"input has shape {y.shape}, model expects ({model.input_width},)"
        )
    for layer in model.layers:
        y = y @ layer.weights + layer.bias
        if layer.activation == "relu":
            y = np.maximum(y, 0.0)
        elif layer.activation == "softmax":
            y = softmax(y)
        # linear: leave as-is
    return y
