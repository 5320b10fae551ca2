"""Versioned JSON serialization of pipelines and fitted models.

One artifact is one UTF-8 JSON document (extension ``.mrp.json``) with
lexicographically ordered keys and shortest round-trip float encoding, so
saving the same artifact always yields byte-identical output and every
float survives exactly. Trees nest as
``{"split": {"f": ..., "t": ..., "l": ..., "r": ...}}`` and
``{"leaf": {"v": ..., "n": ...}}``.

``created_utc`` defaults to the fixed epoch string: artifact bytes must be
a pure function of data, configuration and seed. Callers wanting a real
timestamp pass one explicitly.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

import numpy as np

from .dataset import ColumnSpec
from .errors import CorruptArtifact, SchemaHashMismatch, VersionMismatch
from .models import (
    KIND_BAGGING,
    KIND_FOREST,
    KIND_GBM,
    KIND_LINEAR,
    KIND_TREE,
    KIND_XGB,
    EnsembleModel,
    Leaf,
    LinearModel,
    Split,
)
from .preprocess import EncoderMap, Pipeline, ScalerParams

FORMAT_VERSION = 1
EPOCH_UTC = "1970-01-01T00:00:00Z"
ARTIFACT_SUFFIX = ".mrp.json"


@dataclass(frozen=True)
class ModelArtifact:
    format_version: int
    created_utc: str
    pipeline: Pipeline
    model_kind: str  # linear | tree | bagging | random_forest | gbm | xgb
    model: object
    training_meta: dict  # seed, params, schema_hash


def schema_hash(schema) -> str:
    payload = json.dumps(
        [[c.name, c.kind, c.role] for c in schema],
        sort_keys=True,
        separators=(",", ":"),
    )
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


def make_artifact(
    pipeline: Pipeline,
    model_kind: str,
    model,
    seed: int,
    params: dict | None = None,
    created_utc: str = EPOCH_UTC,
) -> ModelArtifact:
    return ModelArtifact(
        format_version=FORMAT_VERSION,
        created_utc=created_utc,
        pipeline=pipeline,
        model_kind=model_kind,
        model=model,
        training_meta={
            "seed": int(seed),
            "params": dict(params or {}),
            "schema_hash": schema_hash(pipeline.fitted_on_schema),
        },
    )


def check_schema_hash(artifact: ModelArtifact) -> None:
    """Prediction-time guard: stored hash must match the pipeline schema."""
    expected = schema_hash(artifact.pipeline.fitted_on_schema)
    if artifact.training_meta.get("schema_hash") != expected:
        raise SchemaHashMismatch(
            "artifact schema hash does not match its pipeline schema"
        )


# --------------------------------------------------------------------------
# encoding


def _encode_tree(node) -> dict:
    if isinstance(node, Leaf):
        return {"leaf": {"v": float(node.value), "n": int(node.n_samples)}}
    return {
        "split": {
            "f": int(node.feature_index),
            "t": float(node.threshold),
            "l": _encode_tree(node.left),
            "r": _encode_tree(node.right),
        }
    }


def _encode_model(kind: str, model) -> dict:
    if kind == KIND_LINEAR:
        return {
            "coefficients": [float(c) for c in model.coefficients],
            "intercept": float(model.intercept),
            "used_ridge_fallback": bool(model.used_ridge_fallback),
        }
    if kind == KIND_TREE:
        return {"tree": _encode_tree(model)}
    if kind in (KIND_BAGGING, KIND_FOREST):
        return {
            "trees": [_encode_tree(t) for t in model.trees],
            "per_tree_seeds": [int(s) for s in model.per_tree_seeds],
        }
    if kind in (KIND_GBM, KIND_XGB):
        payload = {
            "trees": [_encode_tree(t) for t in model.trees],
            "learning_rate": float(model.learning_rate),
            "init_value": float(model.init_value),
        }
        if kind == KIND_XGB:
            payload["reg_lambda"] = float(model.reg_lambda)
            payload["reg_gamma"] = float(model.reg_gamma)
        return payload
    raise ValueError(f"unknown model kind {kind!r}")


def _encode_pipeline(p: Pipeline) -> dict:
    return {
        "encoder": {"classes": {k: list(v) for k, v in p.encoder.classes.items()}},
        "scaler": None
        if p.scaler is None
        else {
            "means": {k: float(v) for k, v in p.scaler.means.items()},
            "stds": {k: float(v) for k, v in p.scaler.stds.items()},
        },
        "log_budget": bool(p.log_budget),
        "log_target": bool(p.log_target),
        "schema": [
            {"name": c.name, "kind": c.kind, "role": c.role}
            for c in p.fitted_on_schema
        ],
    }


def dumps_canonical(artifact: ModelArtifact) -> str:
    doc = {
        "format_version": int(artifact.format_version),
        "created_utc": artifact.created_utc,
        "pipeline": _encode_pipeline(artifact.pipeline),
        "model_kind": artifact.model_kind,
        "model_payload": _encode_model(artifact.model_kind, artifact.model),
        "training_meta": _canon_meta(artifact.training_meta),
    }
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), allow_nan=False) + "\n"


def _canon_meta(meta: dict) -> dict:
    out = {"seed": int(meta["seed"]), "schema_hash": str(meta["schema_hash"])}
    params = {}
    for key, value in meta.get("params", {}).items():
        if isinstance(value, (bool, str)) or value is None:
            params[key] = value
        elif isinstance(value, (int, np.integer)):
            params[key] = int(value)
        else:
            params[key] = float(value)
    out["params"] = params
    return out


def save(artifact: ModelArtifact, path) -> None:
    data = dumps_canonical(artifact).encode("utf-8")
    with open(path, "wb") as fh:
        fh.write(data)


# --------------------------------------------------------------------------
# decoding


def _expect(mapping, key, kinds, path):
    if not isinstance(mapping, dict) or key not in mapping:
        raise CorruptArtifact(f"{path}.{key}", "missing")
    value = mapping[key]
    if kinds is not None and not isinstance(value, kinds):
        raise CorruptArtifact(f"{path}.{key}", f"expected {kinds}")
    if isinstance(value, bool) and kinds is not None and bool not in _tupled(kinds):
        raise CorruptArtifact(f"{path}.{key}", "expected a number, got bool")
    return value


def _tupled(kinds):
    return kinds if isinstance(kinds, tuple) else (kinds,)


def _decode_tree(doc, path):
    if not isinstance(doc, dict) or len(doc) != 1:
        raise CorruptArtifact(path, "tree node must have exactly one tag")
    if "leaf" in doc:
        body = doc["leaf"]
        return Leaf(
            value=float(_expect(body, "v", (int, float), f"{path}.leaf")),
            n_samples=int(_expect(body, "n", int, f"{path}.leaf")),
        )
    if "split" in doc:
        body = doc["split"]
        return Split(
            feature_index=int(_expect(body, "f", int, f"{path}.split")),
            threshold=float(_expect(body, "t", (int, float), f"{path}.split")),
            left=_decode_tree(_expect(body, "l", dict, f"{path}.split"), f"{path}.split.l"),
            right=_decode_tree(_expect(body, "r", dict, f"{path}.split"), f"{path}.split.r"),
        )
    raise CorruptArtifact(path, "unknown tree node tag")


_KNOWN_KINDS = (KIND_LINEAR, KIND_TREE, KIND_BAGGING, KIND_FOREST, KIND_GBM, KIND_XGB)


def _decode_model(kind, payload):
    path = "model_payload"
    if kind not in _KNOWN_KINDS:
        raise CorruptArtifact("model_kind", f"unknown kind {kind!r}")
    if kind == KIND_LINEAR:
        coeffs = _expect(payload, "coefficients", list, path)
        return LinearModel(
            coefficients=np.array([float(c) for c in coeffs], dtype=np.float64),
            intercept=float(_expect(payload, "intercept", (int, float), path)),
            used_ridge_fallback=bool(payload.get("used_ridge_fallback", False)),
        )
    if kind == KIND_TREE:
        return _decode_tree(_expect(payload, "tree", dict, path), f"{path}.tree")
    trees = [
        _decode_tree(doc, f"{path}.trees[{i}]")
        for i, doc in enumerate(_expect(payload, "trees", list, path))
    ]
    if kind in (KIND_BAGGING, KIND_FOREST):
        seeds = [int(s) for s in _expect(payload, "per_tree_seeds", list, path)]
        return EnsembleModel(kind=kind, trees=trees, per_tree_seeds=seeds)
    if kind in (KIND_GBM, KIND_XGB):
        model = EnsembleModel(
            kind=kind,
            trees=trees,
            learning_rate=float(_expect(payload, "learning_rate", (int, float), path)),
            init_value=float(_expect(payload, "init_value", (int, float), path)),
        )
        if kind == KIND_XGB:
            model.reg_lambda = float(_expect(payload, "reg_lambda", (int, float), path))
            model.reg_gamma = float(_expect(payload, "reg_gamma", (int, float), path))
        return model
    raise CorruptArtifact("model_kind", f"undecodable kind {kind!r}")


def _decode_pipeline(doc):
    path = "pipeline"
    encoder_doc = _expect(doc, "encoder", dict, path)
    classes_doc = _expect(encoder_doc, "classes", dict, f"{path}.encoder")
    encoder = EncoderMap(
        classes={k: tuple(str(v) for v in vs) for k, vs in classes_doc.items()}
    )
    scaler_doc = _expect(doc, "scaler", (dict, type(None)), path)
    scaler = None
    if scaler_doc is not None:
        scaler = ScalerParams(
            means={k: float(v) for k, v in _expect(scaler_doc, "means", dict, f"{path}.scaler").items()},
            stds={k: float(v) for k, v in _expect(scaler_doc, "stds", dict, f"{path}.scaler").items()},
        )
    schema_doc = _expect(doc, "schema", list, path)
    schema = tuple(
        ColumnSpec(
            name=str(_expect(c, "name", str, f"{path}.schema[{i}]")),
            kind=str(_expect(c, "kind", str, f"{path}.schema[{i}]")),
            role=str(_expect(c, "role", str, f"{path}.schema[{i}]")),
        )
        for i, c in enumerate(schema_doc)
    )
    return Pipeline(
        encoder=encoder,
        scaler=scaler,
        log_budget=bool(_expect(doc, "log_budget", bool, path)),
        log_target=bool(_expect(doc, "log_target", bool, path)),
        fitted_on_schema=schema,
    )


def load(path) -> ModelArtifact:
    """Read and validate an artifact; the inverse of :func:`save`."""
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise CorruptArtifact("<document>", str(exc)) from None
    if not isinstance(doc, dict):
        raise CorruptArtifact("<document>", "not a JSON object")
    version = _expect(doc, "format_version", int, "<document>")
    if version != FORMAT_VERSION:
        raise VersionMismatch(
            f"artifact format version {version}, this build reads {FORMAT_VERSION}"
        )
    created = _expect(doc, "created_utc", str, "<document>")
    pipeline = _decode_pipeline(_expect(doc, "pipeline", dict, "<document>"))
    kind = _expect(doc, "model_kind", str, "<document>")
    model = _decode_model(kind, _expect(doc, "model_payload", dict, "<document>"))
    meta_doc = _expect(doc, "training_meta", dict, "<document>")
    meta = {
        "seed": int(_expect(meta_doc, "seed", int, "training_meta")),
        "params": dict(_expect(meta_doc, "params", dict, "training_meta")),
        "schema_hash": str(_expect(meta_doc, "schema_hash", str, "training_meta")),
    }
    return ModelArtifact(
        format_version=version,
        created_utc=created,
        pipeline=pipeline,
        model_kind=kind,
        model=model,
        training_meta=meta,
    )
