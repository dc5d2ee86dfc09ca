"""Versioned model files: network parameters plus the training-time schema.

Weights are stored as decimal text (JSON numbers use the shortest
round-trip representation), so a saved model is diffable and reloads to
bit-identical predictions.  The embedded schema guarantees prediction uses
the exact node layout the network was trained under.  Metadata carries no
timestamps: training twice with identical inputs must produce byte-identical
files.
"""

from __future__ import annotations

import json
from typing import Any

import numpy as np

from .encoding import EncodingSchema, VariableEncoding
from .errors import ModelFormatError
from .network import Network, TrainingConfig
from .survey import CATEGORICAL_FIELDS

FORMAT_VERSION = 1

_FIELD_TYPES = dict(CATEGORICAL_FIELDS)


def schema_to_dict(schema: EncodingSchema) -> dict:
    return {
        "total_nodes": schema.total_nodes,
        "variables": [
            {
                "name": var.name,
                "values": [v.token for v in var.values],
                "offset": var.offset,
                "binary": var.binary,
            }
            for var in schema.variables
        ],
    }


def schema_from_dict(raw: dict) -> EncodingSchema:
    variables = []
    for entry in raw["variables"]:
        enum_type = _FIELD_TYPES.get(entry["name"])
        if enum_type is None:
            raise ModelFormatError(f"unknown schema variable {entry['name']!r}")
        values = tuple(enum_type.from_token(token) for token in entry["values"])
        variables.append(
            VariableEncoding(entry["name"], values, entry["offset"], entry["binary"])
        )
    schema = EncodingSchema(tuple(variables), raw["total_nodes"])
    if sum(v.width for v in schema.variables) != schema.total_nodes:
        raise ModelFormatError("schema node count is inconsistent")
    return schema


def save_model(
    path: str,
    net: Network,
    schema: EncodingSchema,
    config: TrainingConfig,
    metadata: dict[str, Any] | None = None,
) -> None:
    document = {
        "format_version": FORMAT_VERSION,
        "encoding": schema_to_dict(schema),
        "layer_sizes": list(net.layer_sizes),
        "weights": [W.tolist() for W in net.weights],
        "biases": [b.tolist() for b in net.biases],
        "training": {
            "epochs": config.epochs,
            "lr0": config.lr0,
            "decay": config.decay,
            "momentum": config.momentum,
            "seed": config.seed,
            "hidden": config.hidden,
        },
        "metadata": metadata or {},
    }
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(document, handle, indent=2, sort_keys=True)
        handle.write("\n")


def load_model(path: str) -> tuple[Network, EncodingSchema, TrainingConfig, dict]:
    with open(path, encoding="utf-8") as handle:
        try:
            document = json.load(handle)
        except json.JSONDecodeError as exc:
            raise ModelFormatError(f"not a model file: {exc}") from None
    version = document.get("format_version")
    if version != FORMAT_VERSION:
        raise ModelFormatError(
            f"unsupported format_version {version!r} (expected {FORMAT_VERSION})"
        )
    try:
        layer_sizes = tuple(int(s) for s in document["layer_sizes"])
        weights = [np.array(W, dtype=float) for W in document["weights"]]
        biases = [np.array(b, dtype=float) for b in document["biases"]]
        schema = schema_from_dict(document["encoding"])
        training = document["training"]
        config = TrainingConfig(
            epochs=training["epochs"],
            lr0=training["lr0"],
            decay=training["decay"],
            momentum=training["momentum"],
            seed=training["seed"],
            hidden=training["hidden"],
        )
        metadata = document.get("metadata", {})
    except (KeyError, TypeError, ValueError) as exc:
        raise ModelFormatError(f"malformed model file: {exc}") from None
    for (n_prev, n_next), W, b in zip(
        zip(layer_sizes, layer_sizes[1:]), weights, biases
    ):
        if W.shape != (n_next, n_prev) or b.shape != (n_next,):
            raise ModelFormatError("parameter shapes disagree with layer_sizes")
    if schema.total_nodes != layer_sizes[0]:
        raise ModelFormatError("schema width disagrees with the input layer")
    net = Network(layer_sizes, weights, biases)
    return net, schema, config, metadata
