"""The generators must follow the published update equations exactly;
the reference values below are recomputed step by step in plain Python
integers, independent of the library code paths."""

import pytest

from movierev.rng import Xoshiro256StarStar, derive_seed

M64 = (1 << 64) - 1


def reference_splitmix64(seed, count):
    """Direct transcription of the SplitMix64 equations."""
    out = []
    state = seed & M64
    for _ in range(count):
        state = (state + 0x9E3779B97F4A7C15) & M64
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & M64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & M64
        out.append(z ^ (z >> 31))
    return out


def reference_xoshiro(seed, count):
    """Direct transcription of the xoshiro256** equations, seeded from
    the first four SplitMix64 outputs."""

    def rotl(x, k):
        return ((x << k) | (x >> (64 - k))) & M64

    s = reference_splitmix64(seed, 4)
    out = []
    for _ in range(count):
        result = (rotl((s[1] * 5) & M64, 7) * 9) & M64
        t = (s[1] << 17) & M64
        s[2] ^= s[0]
        s[3] ^= s[1]
        s[1] ^= s[2]
        s[0] ^= s[3]
        s[2] ^= t
        s[3] = rotl(s[3], 45)
        out.append(result)
    return out


@pytest.mark.parametrize("seed", [0, 1, 42, 0xDEADBEEF, M64])
def test_derive_seed_is_splitmix_stream(seed):
    expected = reference_splitmix64(seed, 5)
    assert [derive_seed(seed, i) for i in range(5)] == expected


@pytest.mark.parametrize("seed", [0, 7, 123456789, 2**63])
def test_xoshiro_matches_reference(seed):
    rng = Xoshiro256StarStar(seed)
    assert [rng.next_uint64() for _ in range(20)] == reference_xoshiro(seed, 20)


def test_streams_are_reproducible():
    a = Xoshiro256StarStar(99)
    b = Xoshiro256StarStar(99)
    assert [a.next_uint64() for _ in range(10)] == [b.next_uint64() for _ in range(10)]
    assert Xoshiro256StarStar(99).next_uint64() != Xoshiro256StarStar(100).next_uint64()


def test_next_float_range():
    rng = Xoshiro256StarStar(5)
    values = [rng.next_float() for _ in range(2000)]
    assert all(0.0 <= v < 1.0 for v in values)
    assert 0.4 < sum(values) / len(values) < 0.6


def test_randbelow_bounds_and_rough_uniformity():
    rng = Xoshiro256StarStar(11)
    counts = [0] * 7
    for _ in range(7000):
        counts[rng.randbelow(7)] += 1
    assert min(counts) > 800 and max(counts) < 1200


def test_randbelow_rejects_nonpositive():
    with pytest.raises(ValueError):
        Xoshiro256StarStar(0).randbelow(0)


def test_shuffle_is_a_permutation():
    rng = Xoshiro256StarStar(3)
    items = list(range(100))
    rng.shuffle(items)
    assert sorted(items) == list(range(100))
    again = list(range(100))
    Xoshiro256StarStar(3).shuffle(again)
    assert again == items


def test_sample_without_replacement_distinct():
    rng = Xoshiro256StarStar(17)
    for _ in range(50):
        picked = rng.sample_without_replacement(20, 6)
        assert len(set(picked)) == 6
        assert all(0 <= v < 20 for v in picked)


def test_bootstrap_indices_shape_and_range():
    rng = Xoshiro256StarStar(23)
    boot = rng.bootstrap_indices(40)
    assert len(boot) == 40
    assert all(0 <= v < 40 for v in boot)
    # with replacement: overwhelmingly likely to repeat at least one index
    assert len(set(boot)) < 40
