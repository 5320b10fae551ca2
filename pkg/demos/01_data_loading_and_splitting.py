"""Loading, cleaning and splitting a movie table.

Generates a small synthetic movie CSV (so the demo is self-contained),
then walks the ingestion path: load, drop incomplete rows, and make a
reproducible 80/20 split.
"""

import tempfile
from pathlib import Path

from movierev.dataset import drop_incomplete_rows, load_table, train_test_split, write_csv
from movierev.synthetic import synthetic_movies

workdir = Path(tempfile.mkdtemp(prefix="movierev-demo-"))
csv_path = workdir / "movies.csv"

# a 300-row table with ~3% of cells blanked, like a scraped dataset
write_csv(synthetic_movies(300, seed=5, missing_fraction=0.03), csv_path)
print(f"wrote {csv_path}")

table = load_table(csv_path)
print(f"loaded {table.row_count} rows, {len(table.schema)} columns")
print("columns:", ", ".join(c.name for c in table.schema))

clean = drop_incomplete_rows(table)
dropped = table.row_count - clean.row_count
print(f"cleaning removed {dropped} rows with missing cells, {clean.row_count} remain")

split = train_test_split(clean, seed=42, test_fraction=0.2)
print(f"split: {len(split.train)} train rows, {len(split.test)} test rows")
print("first five test indices:", split.test[:5])

# the same seed always gives the same split
again = train_test_split(clean, seed=42, test_fraction=0.2)
print("same seed reproduces the split:", split == again)

train_table = clean.take(split.train)
test_table = clean.take(split.test)
print(f"materialized tables: train={train_table.row_count}, test={test_table.row_count}")
