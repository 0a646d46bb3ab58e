"""Permutations, Koszul signs and shuffle enumeration.

All signs are exact integers +1/-1.  Only parities of degrees matter, but the
functions accept arbitrary ints so callers never need to reduce mod 2.

Convention: for a permutation ``sigma`` of 1..n and degrees d_1..d_n of the
unpermuted slots, ``koszul_sign(sigma, degrees)`` is the sign eps with

    x_{sigma(1)} (x) ... (x) x_{sigma(n)}  =  eps * x_1 (x) ... (x) x_n

in the free graded-commutative world, i.e. the product of
(-1)^(d_{sigma(i)} * d_{sigma(j)}) over inversions i < j, sigma(i) > sigma(j).
"""

from __future__ import annotations

from itertools import combinations, permutations


class Permutation:
    """A permutation of {1, ..., n}, stored as the tuple of images."""

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError("not a permutation of 1..%d: %r" % (len(images), images))
        self.images = images

    @property
    def size(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        # (self * other)(i) = self(other(i))
        if self.size != other.size:
            raise ValueError("size mismatch")
        return Permutation(self.images[j - 1] for j in other.images)

    def inverse(self) -> "Permutation":
        inv = [0] * self.size
        for i, j in enumerate(self.images, start=1):
            inv[j - 1] = i
        return Permutation(inv)

    def sign(self) -> int:
        inv = 0
        im = self.images
        for a in range(len(im)):
            for b in range(a + 1, len(im)):
                if im[a] > im[b]:
                    inv += 1
        return -1 if inv % 2 else 1

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return "Permutation(%r)" % (self.images,)


def koszul_sign(sigma: Permutation, degrees) -> int:
    """Sign picked up by permuting graded slots of the given degrees by sigma."""
    degrees = tuple(degrees)
    if len(degrees) != sigma.size:
        raise ValueError("degree list does not match permutation size")
    im = sigma.images
    exponent = 0
    for a in range(len(im)):
        for b in range(a + 1, len(im)):
            if im[a] > im[b]:
                exponent += degrees[im[a] - 1] * degrees[im[b] - 1]
    return -1 if exponent % 2 else 1


def skew_sign(sigma: Permutation, degrees) -> int:
    """sgn(sigma) times the Koszul sign; the sign of graded skew symmetry."""
    return sigma.sign() * koszul_sign(sigma, degrees)


def shuffles(i: int, n: int):
    """All (i, n-i) shuffles of 1..n, ordered by the first block.

    A shuffle keeps 1..i and i+1..n in increasing order.  The list is ordered
    lexicographically by the image of the first block, which is the order
    itertools.combinations produces.
    """
    if not 0 <= i <= n:
        raise ValueError("need 0 <= i <= n")
    out = []
    universe = range(1, n + 1)
    for first in combinations(universe, i):
        chosen = set(first)
        rest = tuple(k for k in universe if k not in chosen)
        out.append(Permutation(first + rest))
    return out


def all_permutations(n: int):
    """Every permutation of 1..n, in lexicographic order of images."""
    return [Permutation(p) for p in permutations(range(1, n + 1))]


def _sorting_permutation(keys):
    """Stable argsort of keys, returned as a Permutation pi with
    sorted[j] = original[pi(j)]."""
    order = sorted(range(len(keys)), key=lambda t: (keys[t], t))
    return Permutation(t + 1 for t in order)


def sort_skew(keys, degrees):
    """Sort slots by key; return (sorted keys, skew sign of the sort).

    For brackets: if the slots hold x_1..x_k, then
    [x_1,...,x_k] = sign * [sorted slots].
    """
    pi = _sorting_permutation(keys)
    sign = skew_sign(pi, degrees)
    return tuple(keys[j - 1] for j in pi.images), sign


def sort_koszul(keys, degrees):
    """Sort slots by key; return (sorted keys, Koszul sign, has_repeated_odd).

    For graded-commutative words: w_1...w_k = sign * (sorted word), and the
    word is zero when an odd-degree factor repeats.
    """
    pi = _sorting_permutation(keys)
    sign = koszul_sign(pi, degrees)
    sorted_keys = tuple(keys[j - 1] for j in pi.images)
    sorted_degs = [degrees[j - 1] for j in pi.images]
    repeated_odd = any(
        sorted_keys[t] == sorted_keys[t + 1] and sorted_degs[t] % 2
        for t in range(len(sorted_keys) - 1)
    )
    return sorted_keys, sign, repeated_odd
