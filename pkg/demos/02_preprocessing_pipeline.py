"""The encode / log / scale pipeline.

Shows label encoding with the unseen-category sentinel, the log1p money
transform, standardization, and why fitted statistics must come from the
training rows alone.
"""

import numpy as np

from movierev.dataset import train_test_split
from movierev.preprocess import fit_pipeline, transform, transform_with_warnings
from movierev.synthetic import synthetic_movies

table = synthetic_movies(400, seed=8)
split = train_test_split(table, seed=1, test_fraction=0.25)
train_t, test_t = table.take(split.train), table.take(split.test)

pipeline = fit_pipeline(train_t, scale=True, log_money=True)

print("label encoder class counts per categorical column:")
for column, classes in pipeline.encoder.classes.items():
    print(f"  {column:9s} {len(classes)} classes, first: {classes[0]!r}")

X_train, y_train = transform(pipeline, train_t)
print(f"\ntrain matrix {X_train.shape}, target range "
      f"[{y_train.min():.2f}, {y_train.max():.2f}] (log space)")
print("per-column train means are ~0 after scaling:",
      float(np.max(np.abs(X_train.mean(axis=0)))) < 1e-9)

X_test, y_test, warnings = transform_with_warnings(pipeline, test_t)
print(f"\ntest matrix {X_test.shape}; unseen-category warnings: {len(warnings)}")
for column, value in warnings[:5]:
    print(f"  unseen {column}: {value!r} -> sentinel code")
print("test means are NOT zero (train statistics were reused):",
      float(np.max(np.abs(X_test.mean(axis=0)))) > 1e-3)

# money columns ride through log1p; the inverse recovers currency units
from movierev.preprocess import expm1_inverse, log1p_transform

budget = np.asarray(train_t.column("budget"))[:3]
print("\nbudget sample:", budget)
print("log1p:        ", log1p_transform(budget))
print("round trip:   ", expm1_inverse(log1p_transform(budget)))
