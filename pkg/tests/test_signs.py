"""Koszul machinery against independent brute-force computations."""

import random
from itertools import permutations as iter_permutations

import pytest

from linfty.signs import (
    Permutation,
    all_permutations,
    koszul_sign,
    shuffles,
    skew_sign,
    sort_koszul,
    sort_skew,
)


def bubble_koszul(images, degrees):
    # independently: adjacent-swap the permuted word back to identity,
    # paying (-1)^(d*d') per swap
    word = list(images)
    sign = 1
    changed = True
    while changed:
        changed = False
        for t in range(len(word) - 1):
            if word[t] > word[t + 1]:
                if (degrees[word[t] - 1] * degrees[word[t + 1] - 1]) % 2:
                    sign = -sign
                word[t], word[t + 1] = word[t + 1], word[t]
                changed = True
    return sign


def test_permutation_validates_images():
    with pytest.raises(ValueError):
        Permutation((1, 1, 2))
    with pytest.raises(ValueError):
        Permutation((0, 1))


def test_permutation_sign_and_inverse():
    rng = random.Random(3)
    for _ in range(50):
        n = rng.randint(1, 7)
        images = list(range(1, n + 1))
        rng.shuffle(images)
        pi = Permutation(images)
        assert pi.sign() in (1, -1)
        assert (pi * pi.inverse()).images == tuple(range(1, n + 1))
        # sign is a homomorphism
        other = list(range(1, n + 1))
        rng.shuffle(other)
        tau = Permutation(other)
        assert (pi * tau).sign() == pi.sign() * tau.sign()


def test_koszul_sign_matches_bubble_sort():
    rng = random.Random(11)
    for _ in range(300):
        n = rng.randint(1, 6)
        images = list(range(1, n + 1))
        rng.shuffle(images)
        degrees = [rng.randint(-3, 5) for _ in range(n)]
        assert koszul_sign(Permutation(images), degrees) == bubble_koszul(
            images, degrees
        )


def test_koszul_even_degrees_trivial():
    for pi in all_permutations(4):
        assert koszul_sign(pi, [2, 0, 4, -2]) == 1
        assert skew_sign(pi, [2, 0, 4, -2]) == pi.sign()


def test_all_odd_skew_is_trivial():
    # swapping two odd slots: sgn -1 and koszul -1 cancel
    for pi in all_permutations(4):
        assert skew_sign(pi, [1, 3, -1, 5]) == 1


def test_shuffles_against_filter():
    for i, n in [(0, 0), (0, 3), (1, 3), (2, 4), (2, 5), (3, 3)]:
        got = {pi.images for pi in shuffles(i, n)}
        want = {
            p
            for p in iter_permutations(range(1, n + 1))
            if list(p[:i]) == sorted(p[:i]) and list(p[i:]) == sorted(p[i:])
        }
        assert got == want
        assert len(shuffles(i, n)) == len(want)


def test_shuffles_rejects_bad_block():
    with pytest.raises(ValueError):
        shuffles(4, 3)
    with pytest.raises(ValueError):
        shuffles(-1, 3)


def test_sort_skew_round_trip():
    rng = random.Random(5)
    for _ in range(100):
        n = rng.randint(1, 6)
        keys = [rng.randint(0, 4) for _ in range(n)]
        degrees = [rng.randint(0, 4) for _ in range(n)]
        sorted_keys, sign = sort_skew(keys, degrees)
        assert list(sorted_keys) == sorted(keys)
        assert sign in (1, -1)
        # resorting an already sorted word is the identity with sign +1
        again, sign2 = sort_skew(sorted_keys, [0] * n)
        assert again == sorted_keys and sign2 == 1


def test_sort_skew_transposition():
    # two slots, distinct keys: skew sign of one swap
    _, sign = sort_skew(["b", "a"], [1, 2])
    assert sign == -1 * (-1) ** (1 * 2)
    _, sign = sort_skew(["b", "a"], [1, 1])
    assert sign == 1  # sgn and koszul cancel for odd-odd


def test_sort_koszul_flags_repeated_odd():
    word, sign, repeated = sort_koszul(["y", "x", "y"], [3, 2, 3])
    assert word == ("x", "y", "y")
    assert repeated
    word, sign, repeated = sort_koszul(["y", "x"], [3, 2])
    assert word == ("x", "y")
    assert not repeated
    assert sign == 1  # koszul only, no sgn factor
