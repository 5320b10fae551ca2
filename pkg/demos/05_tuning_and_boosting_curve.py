"""Cross-validated grid search and the boosting improvement curve.

Runs a small exhaustive grid for the booster with 5-fold CV, refits the
winner, and prints the per-iteration training R2 curve showing the
model's gradual improvement.
"""

from movierev.dataset import train_test_split
from movierev.metrics import r2
from movierev.models import fit_model, predict, staged_train_r2
from movierev.preprocess import fit_pipeline, transform
from movierev.synthetic import synthetic_movies
from movierev.tuning import ParamGrid, grid_search

table = synthetic_movies(500, seed=19)
split = train_test_split(table, seed=42, test_fraction=0.2)
train_t, test_t = table.take(split.train), table.take(split.test)
pipeline = fit_pipeline(train_t, scale=False, log_money=True)
X_train, y_train = transform(pipeline, train_t)
X_test, y_test = transform(pipeline, test_t)

grid = ParamGrid((
    ("n_estimators", (40, 80)),
    ("max_depth", (2, 3)),
    ("learning_rate", (0.1, 0.2)),
))
result = grid_search("gbm", grid, X_train, y_train, k=5, seed=42)

print("combination scores (mean 5-fold R2):")
for combo, mean in zip(result.combinations, result.mean_scores):
    marker = "<- best" if combo == result.best_params else ""
    print(f"  {combo}  {mean:.4f} {marker}")

model = fit_model("gbm", X_train, y_train, result.best_params, seed=42)
print(f"\nrefit with best params; test R2 = {r2(y_test, predict(model, X_test)):.4f}")

curve = staged_train_r2(model, X_train, y_train)
print("\ntraining R2 by boosting iteration (iteration 0 is the mean predictor):")
for i, value in curve:
    if i % 10 == 0 or i == curve[-1][0]:
        bar = "#" * int(max(value, 0.0) * 40)
        print(f"  {i:4d} {value:7.4f} {bar}")
