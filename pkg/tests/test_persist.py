import json

import numpy as np
import pytest

from movierev import models, persist, preprocess
from movierev.errors import CorruptArtifact, SchemaHashMismatch, VersionMismatch
from movierev.persist import (
    dumps_canonical,
    load,
    make_artifact,
    save,
    schema_hash,
)


@pytest.fixture()
def fitted(movies_table):
    pipeline = preprocess.fit_pipeline(movies_table, scale=False, log_money=True)
    X, y = preprocess.transform(pipeline, movies_table)
    model = models.fit_gbm(X, y, n_estimators=8, learning_rate=0.3,
                           tree_config=models.TreeConfig(max_depth=3))
    artifact = make_artifact(pipeline, "gbm", model, seed=42,
                             params={"n_estimators": 8, "learning_rate": 0.3})
    return artifact, X


class TestRoundTrip:
    def test_predictions_survive_exactly(self, fitted, tmp_path):
        artifact, X = fitted
        path = tmp_path / "model.mrp.json"
        save(artifact, path)
        loaded = load(path)
        # 0 ulp: every float makes the text round trip unchanged
        assert np.array_equal(
            models.predict(artifact.model, X), models.predict(loaded.model, X)
        )

    def test_structural_round_trip(self, fitted, tmp_path):
        artifact, _ = fitted
        path = tmp_path / "model.mrp.json"
        save(artifact, path)
        loaded = load(path)
        assert dumps_canonical(loaded) == dumps_canonical(artifact)
        assert loaded.training_meta == artifact.training_meta
        assert loaded.pipeline == artifact.pipeline

    def test_canonical_bytes_stable(self, fitted, tmp_path):
        artifact, _ = fitted
        a, b = tmp_path / "a.mrp.json", tmp_path / "b.mrp.json"
        save(artifact, a)
        save(artifact, b)
        assert a.read_bytes() == b.read_bytes()

    def test_save_after_load_is_byte_identical(self, fitted, tmp_path):
        artifact, _ = fitted
        path = tmp_path / "model.mrp.json"
        save(artifact, path)
        again = tmp_path / "again.mrp.json"
        save(load(path), again)
        assert path.read_bytes() == again.read_bytes()

    def test_all_model_kinds_round_trip(self, movies_table, tmp_path):
        pipeline = preprocess.fit_pipeline(movies_table, scale=True, log_money=True)
        X, y = preprocess.transform(pipeline, movies_table)
        fits = {
            "linear": models.fit_ols(X, y),
            "tree": models.fit_cart(X, y, models.TreeConfig(max_depth=4), 1),
            "bagging": models.fit_bagging(X, y, 3, models.TreeConfig(max_depth=3), 1),
            "random_forest": models.fit_random_forest(X, y, 3, models.TreeConfig(max_depth=3), 1),
            "gbm": models.fit_gbm(X, y, 3, 0.5, models.TreeConfig(max_depth=2)),
            "xgb": models.fit_xgb(X, y, 3, 0.5, models.TreeConfig(max_depth=2), 1.0, 0.1),
        }
        for kind, model in fits.items():
            path = tmp_path / f"{kind}.mrp.json"
            save(make_artifact(pipeline, kind, model, seed=1), path)
            loaded = load(path)
            assert np.array_equal(
                models.predict(model, X), models.predict(loaded.model, X)
            ), kind


class TestErrors:
    def test_version_mismatch(self, fitted, tmp_path):
        artifact, _ = fitted
        path = tmp_path / "model.mrp.json"
        save(artifact, path)
        doc = json.loads(path.read_text())
        doc["format_version"] = 2
        path.write_text(json.dumps(doc))
        with pytest.raises(VersionMismatch):
            load(path)

    def test_truncated_file(self, fitted, tmp_path):
        artifact, _ = fitted
        path = tmp_path / "model.mrp.json"
        save(artifact, path)
        data = path.read_bytes()
        path.write_bytes(data[: len(data) // 2])
        with pytest.raises(CorruptArtifact):
            load(path)

    def test_missing_field_names_path(self, fitted, tmp_path):
        artifact, _ = fitted
        path = tmp_path / "model.mrp.json"
        save(artifact, path)
        doc = json.loads(path.read_text())
        del doc["model_payload"]["init_value"]
        path.write_text(json.dumps(doc))
        with pytest.raises(CorruptArtifact) as err:
            load(path)
        assert "init_value" in err.value.field_path

    def test_wrong_type_rejected(self, fitted, tmp_path):
        artifact, _ = fitted
        path = tmp_path / "model.mrp.json"
        save(artifact, path)
        doc = json.loads(path.read_text())
        doc["pipeline"]["log_target"] = "yes"
        path.write_text(json.dumps(doc))
        with pytest.raises(CorruptArtifact):
            load(path)

    def test_schema_hash_mismatch_detected(self, fitted, tmp_path):
        artifact, _ = fitted
        path = tmp_path / "model.mrp.json"
        save(artifact, path)
        doc = json.loads(path.read_text())
        doc["training_meta"]["schema_hash"] = "0" * 64
        path.write_text(json.dumps(doc))
        loaded = load(path)
        with pytest.raises(SchemaHashMismatch):
            persist.check_schema_hash(loaded)

    def test_unknown_model_kind(self, fitted, tmp_path):
        artifact, _ = fitted
        path = tmp_path / "model.mrp.json"
        save(artifact, path)
        doc = json.loads(path.read_text())
        doc["model_kind"] = "perceptron"
        path.write_text(json.dumps(doc))
        with pytest.raises(CorruptArtifact):
            load(path)


class TestHashing:
    def test_schema_hash_is_stable_and_sensitive(self, movies_table):
        h1 = schema_hash(movies_table.schema)
        h2 = schema_hash(movies_table.schema)
        assert h1 == h2
        assert len(h1) == 64
        smaller = movies_table.schema[:-1] + (movies_table.schema[-1],)
        assert schema_hash(smaller) == h1
        assert schema_hash(movies_table.schema[1:]) != h1

    def test_created_utc_defaults_to_epoch(self, fitted):
        artifact, _ = fitted
        assert artifact.created_utc == persist.EPOCH_UTC

    def test_explicit_timestamp_kept(self, movies_table):
        pipeline = preprocess.fit_pipeline(movies_table, scale=False, log_money=False)
        X, y = preprocess.transform(pipeline, movies_table)
        model = models.fit_ols(X, y)
        artifact = make_artifact(
            pipeline, "linear", model, seed=0, created_utc="2024-05-01T12:00:00Z"
        )
        assert json.loads(dumps_canonical(artifact))["created_utc"] == "2024-05-01T12:00:00Z"


def test_golden_artifact_round_trip():
    """The committed golden file must load and re-serialize byte for byte."""
    import pathlib

    golden = pathlib.Path(__file__).resolve().parent.parent / "docs" / "golden.mrp.json"
    raw = golden.read_bytes()
    artifact = load(golden)
    assert dumps_canonical(artifact).encode("utf-8") == raw
