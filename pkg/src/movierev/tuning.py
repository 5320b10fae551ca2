"""Seeded k-fold cross-validation and exhaustive grid search.

Folds come from one shuffle-then-chunk pass of the documented PRNG, so a
(n, k, seed) triple always produces the same partition. Grid combinations
are enumerated as the Cartesian product in the declared parameter and
value order; the best combination is the one with the highest mean fold
R-squared, earliest enumeration winning ties.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

import numpy as np

from .errors import BadK
from .metrics import r2
from .models import fit_model, predict
from .rng import Xoshiro256StarStar, derive_seed

DEFAULT_FOLDS = 5

# documented default search space for the boosting families
DEFAULT_GRID: tuple[tuple[str, tuple], ...] = (
    ("n_estimators", (50, 100, 200)),
    ("max_depth", (2, 3, 4)),
    ("learning_rate", (0.05, 0.1, 0.2)),
)


@dataclass(frozen=True)
class ParamGrid:
    """Ordered (name, candidate values) axes; order fixes enumeration."""

    axes: tuple[tuple[str, tuple], ...]

    def __post_init__(self):
        names = [name for name, _ in self.axes]
        if len(set(names)) != len(names):
            raise ValueError("duplicate parameter names in grid")
        if not self.axes or any(len(values) == 0 for _, values in self.axes):
            raise ValueError("every grid axis needs at least one value")

    def combinations(self) -> list[dict]:
        names = [name for name, _ in self.axes]
        value_lists = [values for _, values in self.axes]
        return [dict(zip(names, combo)) for combo in itertools.product(*value_lists)]

    @classmethod
    def from_dict(cls, mapping: dict) -> "ParamGrid":
        return cls(tuple((name, tuple(values)) for name, values in mapping.items()))

    @classmethod
    def from_json_file(cls, path) -> "ParamGrid":
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))


@dataclass(frozen=True)
class CvResult:
    combinations: tuple[dict, ...]
    fold_scores: tuple[tuple[float, ...], ...]
    mean_scores: tuple[float, ...]
    best_index: int

    @property
    def best_params(self) -> dict:
        return self.combinations[self.best_index]

    @property
    def best_score(self) -> float:
        return self.mean_scores[self.best_index]

    def csv_lines(self) -> list[str]:
        names = sorted({name for combo in self.combinations for name in combo})
        k = len(self.fold_scores[0])
        header = names + [f"fold{i}_r2" for i in range(k)] + ["mean_r2"]
        lines = [",".join(header)]
        for combo, folds, mean in zip(
            self.combinations, self.fold_scores, self.mean_scores
        ):
            cells = [
                "" if combo.get(name) is None else repr(combo[name]) for name in names
            ]
            cells += [repr(s) for s in folds] + [repr(mean)]
            lines.append(",".join(cells))
        return lines

    def to_json(self) -> str:
        payload = {
            "combinations": list(self.combinations),
            "fold_scores": [list(f) for f in self.fold_scores],
            "mean_scores": list(self.mean_scores),
            "best_index": self.best_index,
            "best_params": self.best_params,
            "best_score": self.best_score,
        }
        return json.dumps(payload, sort_keys=True, indent=2)


def kfold_indices(n: int, k: int, seed: int = 0) -> list[np.ndarray]:
    """k disjoint validation folds covering range(n).

    Indices are shuffled once, then chunked; the first n mod k folds get
    the extra index.
    """
    if k > n:
        raise BadK(f"cannot make {k} folds from {n} rows")
    if k < 2:
        raise BadK("k must be at least 2")
    order = list(range(n))
    Xoshiro256StarStar(seed).shuffle(order)
    base, extra = divmod(n, k)
    folds = []
    start = 0
    for f in range(k):
        size = base + (1 if f < extra else 0)
        folds.append(np.array(order[start : start + size], dtype=np.intp))
        start += size
    return folds


def cross_val_r2(
    model_spec: tuple[str, dict | None], X, y, k: int = DEFAULT_FOLDS, seed: int = 0
) -> list[float]:
    """Fold-wise held-out R-squared for one (kind, params) model recipe.

    Each fold's model gets its own derived seed; fold rows never reach
    the training side of that fold. Errors raised while fitting or
    scoring carry the fold index in a ``fold`` attribute.
    """
    kind, params = model_spec
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    folds = kfold_indices(X.shape[0], k, seed)
    all_idx = np.arange(X.shape[0], dtype=np.intp)
    scores = []
    for f, val_idx in enumerate(folds):
        train_mask = np.ones(X.shape[0], dtype=bool)
        train_mask[val_idx] = False
        train_idx = all_idx[train_mask]
        try:
            model = fit_model(kind, X[train_idx], y[train_idx], params, derive_seed(seed, f))
            scores.append(float(r2(y[val_idx], predict(model, X[val_idx]))))
        except Exception as exc:
            exc.fold = f  # type: ignore[attr-defined]
            raise
    return scores


def grid_search(
    model_kind: str, grid: ParamGrid, X, y, k: int = DEFAULT_FOLDS, seed: int = 0
) -> CvResult:
    """Evaluate every grid combination with the same folds.

    Refitting on the full training set with ``best_params`` is the
    caller's step; this function only ranks combinations.
    """
    combos = grid.combinations()
    fold_scores = []
    means = []
    for params in combos:
        scores = cross_val_r2((model_kind, params), X, y, k, seed)
        fold_scores.append(tuple(scores))
        means.append(float(np.mean(scores)))
    best_index = 0
    for i, m in enumerate(means):
        if m > means[best_index]:
            best_index = i
    return CvResult(
        combinations=tuple(combos),
        fold_scores=tuple(fold_scores),
        mean_scores=tuple(means),
        best_index=best_index,
    )
