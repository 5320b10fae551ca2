"""Deterministic synthetic movie tables for demos and tests.

Rows are generated from the library's own seeded PRNG, so a (n, seed)
pair always yields the same table on any platform. Revenue is built from
budget, votes, score and genre with multiplicative noise plus a few
non-additive effects, which makes the data behave like the real thing:
budget dominates the univariate feature scores and tree ensembles beat a
straight line.
"""

from __future__ import annotations

import math

from .dataset import MOVIE_SCHEMA, DataTable
from .rng import Xoshiro256StarStar

_RATINGS = ("G", "PG", "PG-13", "R", "Not Rated")
_GENRES = ("Action", "Adventure", "Animation", "Comedy", "Crime", "Drama", "Horror")
_COUNTRIES = (
    "United States",
    "United Kingdom",
    "France",
    "India",
    "Canada",
    "Germany",
    "South Korea",
)
_MONTHS = (
    "January", "February", "March", "April", "May", "June",
    "July", "August", "September", "October", "November", "December",
)
# genre-specific revenue multiplier on the log scale
_GENRE_LIFT = {
    "Action": 0.9,
    "Adventure": 0.7,
    "Animation": 0.8,
    "Comedy": 0.4,
    "Crime": 0.0,
    "Drama": -0.2,
    "Horror": 0.3,
}


def _gauss(rng: Xoshiro256StarStar) -> float:
    # Box-Muller from two uniform draws
    u1 = rng.next_float()
    while u1 == 0.0:
        u1 = rng.next_float()
    u2 = rng.next_float()
    return math.sqrt(-2.0 * math.log(u1)) * math.cos(2.0 * math.pi * u2)


def _choice(rng: Xoshiro256StarStar, items):
    return items[rng.randbelow(len(items))]


def synthetic_movies(n: int, seed: int = 7, missing_fraction: float = 0.0) -> DataTable:
    """A DataTable honoring the canonical movie schema.

    ``missing_fraction`` blanks roughly that share of cells at random
    (never the whole row) for exercising the cleaning path.
    """
    rng = Xoshiro256StarStar(seed)
    cols: dict[str, list] = {c.name: [] for c in MOVIE_SCHEMA}
    for i in range(n):
        genre = _choice(rng, _GENRES)
        rating = _choice(rng, _RATINGS)
        country = _choice(rng, _COUNTRIES)
        year = 1980 + rng.randbelow(41)
        month = _choice(rng, _MONTHS)
        day = 1 + rng.randbelow(28)
        score = round(3.0 + 6.5 * rng.next_float(), 1)
        budget = math.expm1(14.3 + 1.6 * rng.next_float() + 0.7 * _gauss(rng))
        votes = math.expm1(4.4 + 0.42 * math.log1p(budget) + 0.6 * _gauss(rng))
        runtime = float(80 + rng.randbelow(101))
        director = f"Director {rng.randbelow(40):02d}"
        writer = f"Writer {rng.randbelow(60):02d}"
        star = f"Star {rng.randbelow(50):02d}"
        company = f"Studio {rng.randbelow(25):02d}"

        log_gross = (
            0.2
            + 0.95 * math.log1p(budget)
            + 0.18 * math.log1p(votes)
            + 0.05 * score
            + _GENRE_LIFT[genre]
            + 0.3 * _gauss(rng)
        )
        # non-additive structure a straight line cannot express: steps and
        # kinks, plus genre/country effects that are non-monotone in the
        # label-encoded code space
        if score > 7.5:
            log_gross += 0.25 * (score - 7.5)
        if genre == "Action" and budget > 5.0e7:
            log_gross += 0.4
        if country not in ("United States", "United Kingdom"):
            log_gross -= 0.35
        gross = math.expm1(min(log_gross, 23.5))

        cols["name"].append(f"Movie {i:05d}")
        cols["rating"].append(rating)
        cols["genre"].append(genre)
        cols["year"].append(float(year))
        cols["released"].append(f"{month} {day}, {year} ({country})")
        cols["score"].append(score)
        cols["votes"].append(round(votes))
        cols["director"].append(director)
        cols["writer"].append(writer)
        cols["star"].append(star)
        cols["country"].append(country)
        cols["budget"].append(round(budget))
        cols["company"].append(company)
        cols["runtime"].append(runtime)
        cols["gross"].append(round(gross))

    if missing_fraction > 0.0:
        for c in MOVIE_SCHEMA:
            for i in range(n):
                if rng.next_float() < missing_fraction:
                    cols[c.name][i] = math.nan if c.kind == "numeric" else None
    return DataTable(MOVIE_SCHEMA, cols)
