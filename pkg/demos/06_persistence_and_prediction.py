"""Saving a fitted model and predicting revenue for a new movie.

Trains a booster, saves it as a versioned JSON artifact, reloads it, and
runs a prediction request through the stored pipeline, including an
unseen director (which is warned about, not rejected).
"""

import tempfile
from pathlib import Path

import numpy as np

from movierev.dataset import FEATURE, DataTable
from movierev.models import fit_gbm, predict
from movierev.persist import load, make_artifact, save
from movierev.preprocess import expm1_inverse, fit_pipeline, transform, transform_with_warnings
from movierev.synthetic import synthetic_movies

table = synthetic_movies(400, seed=23)
pipeline = fit_pipeline(table, scale=False, log_money=True)
X, y = transform(pipeline, table)
model = fit_gbm(X, y, n_estimators=50, learning_rate=0.1)

path = Path(tempfile.mkdtemp(prefix="movierev-demo-")) / "booster.mrp.json"
artifact = make_artifact(pipeline, "gbm", model, seed=42, params={"n_estimators": 50})
save(artifact, path)
print(f"saved {path} ({path.stat().st_size} bytes of canonical JSON)")

loaded = load(path)
print("reloaded predictions identical:",
      bool(np.array_equal(predict(model, X), predict(loaded.model, X))))

# a hypothetical new movie: every director here is unseen
request = {
    "name": "Untitled Heist Picture",
    "rating": "PG-13",
    "genre": "Action",
    "year": 2021.0,
    "released": "July 4, 2021 (United States)",
    "score": 7.9,
    "votes": 250000.0,
    "director": "A Brand New Director",
    "writer": "Writer 03",
    "star": "Star 11",
    "country": "United States",
    "budget": 9.0e7,
    "company": "Studio 04",
    "runtime": 128.0,
}
feature_schema = tuple(c for c in loaded.pipeline.fitted_on_schema if c.role == FEATURE)
row = DataTable(feature_schema, {k: [v] for k, v in request.items()})
X_row, _, warnings = transform_with_warnings(loaded.pipeline, row)
for column, value in warnings:
    print(f"warning: unseen {column} value {value!r}")

log_pred = predict(loaded.model, X_row)[0]
gross = float(expm1_inverse([log_pred])[0])
print(f"predicted gross: {gross:,.0f}")
print("\nthe same flow is available from the shell:")
print("  movierev train --data movies.csv --model gbm --out booster.mrp.json")
print("  movierev predict --artifact booster.mrp.json")
