import random
import string
import time

from editguard.features import levenshtein

from conftest import lev_oracle


def test_identity():
    assert levenshtein("abc", "abc") == 0
    assert levenshtein("", "") == 0


def test_pure_insertions():
    assert levenshtein("", "abc") == 3
    assert levenshtein("abc", "") == 3


def test_kitten_sitting():
    assert lev_oracle("kitten", "sitting") == 3
    assert levenshtein("kitten", "sitting") == 3


def test_unicode_strings():
    assert levenshtein("café", "cafe") == 1
    assert levenshtein("αβγ", "αγ") == 1


def _random_pairs(n, seed, alphabet="ab" + string.ascii_lowercase[:4], max_len=12):
    rng = random.Random(seed)
    for _ in range(n):
        a = "".join(rng.choice(alphabet) for _ in range(rng.randint(0, max_len)))
        b = "".join(rng.choice(alphabet) for _ in range(rng.randint(0, max_len)))
        yield a, b


def test_matches_recursive_oracle_on_500_seeded_pairs():
    start = time.monotonic()
    for a, b in _random_pairs(500, seed=1234):
        assert levenshtein(a, b) == lev_oracle(a, b), (a, b)
    assert time.monotonic() - start < 5.0


def test_symmetry_and_triangle_inequality_against_oracle():
    rng = random.Random(99)
    for _ in range(150):
        a, b, c = (
            "".join(rng.choice("abcd") for _ in range(rng.randint(0, 12)))
            for _ in range(3)
        )
        dab = levenshtein(a, b)
        assert dab == lev_oracle(a, b)
        assert dab == levenshtein(b, a)
        assert dab <= levenshtein(a, c) + levenshtein(c, b)
