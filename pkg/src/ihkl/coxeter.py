"""The symmetric group S_n as a Coxeter group of type A.

Elements are permutations in one-line notation; the simple generator
s_i swaps i and i+1 (1-based). Length is the inversion count, reduced
words come from a greedy descent scan, and the Bruhat order is decided
by the standard lifting recursion.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .errors import ComputationError


@dataclass(frozen=True)
class Permutation:
    """One-line notation: word[j] is the image of j+1."""

    word: tuple

    def __post_init__(self):
        n = len(self.word)
        if sorted(self.word) != list(range(1, n + 1)):
            raise ComputationError("%r is not a permutation of 1..%d" % (self.word, n))

    @property
    def n(self):
        return len(self.word)

    def __call__(self, j: int) -> int:
        if not 1 <= j <= self.n:
            raise ComputationError("argument %d out of range" % j)
        return self.word[j - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition (u * w)(j) = u(w(j))."""
        if self.n != other.n:
            raise ComputationError("rank mismatch")
        return Permutation(tuple(self.word[v - 1] for v in other.word))

    def inverse(self) -> "Permutation":
        out = [0] * self.n
        for j, v in enumerate(self.word, start=1):
            out[v - 1] = j
        return Permutation(tuple(out))

    def length(self) -> int:
        """Number of inversions."""
        w = self.word
        return sum(1 for i in range(len(w)) for j in range(i + 1, len(w))
                   if w[i] > w[j])

    def right_descents(self):
        """Simple indices i with l(w s_i) < l(w), i.e. w(i) > w(i+1)."""
        return [i for i in range(1, self.n) if self.word[i - 1] > self.word[i]]

    def apply_right(self, i: int) -> "Permutation":
        """w s_i: swap the values in positions i, i+1."""
        if not 1 <= i < self.n:
            raise ComputationError("simple index %d out of range" % i)
        w = list(self.word)
        w[i - 1], w[i] = w[i], w[i - 1]
        return Permutation(tuple(w))

    def apply_left(self, i: int) -> "Permutation":
        """s_i w: swap the values i, i+1 wherever they sit."""
        if not 1 <= i < self.n:
            raise ComputationError("simple index %d out of range" % i)
        w = [i + 1 if v == i else (i if v == i + 1 else v) for v in self.word]
        return Permutation(tuple(w))

    def reduced_word(self) -> tuple:
        """The lexicographically smallest reduced word, greedily.

        Repeatedly strip the smallest right descent; the letters are
        collected in reverse so the product of the returned word (left
        to right) is w.
        """
        w = self
        out = []
        while True:
            ds = w.right_descents()
            if not ds:
                break
            i = ds[0]
            out.append(i)
            w = w.apply_right(i)
        return tuple(reversed(out))

    def __str__(self):
        if self.n <= 9:
            return "".join(str(v) for v in self.word)
        return "[" + ",".join(str(v) for v in self.word) + "]"


def identity(n: int) -> Permutation:
    return Permutation(tuple(range(1, n + 1)))


def simple(i: int, n: int) -> Permutation:
    return identity(n).apply_right(i)


def from_word(letters, n: int) -> Permutation:
    """Product s_{i1} s_{i2} ... applied left to right."""
    w = identity(n)
    for i in letters:
        w = w.apply_right(i)
    return w


def longest_element(n: int) -> Permutation:
    return Permutation(tuple(range(n, 0, -1)))


@lru_cache(maxsize=None)
def all_elements(n: int):
    """All of S_n, sorted by (length, one-line notation)."""
    perms = [Permutation(p) for p in itertools.permutations(range(1, n + 1))]
    return tuple(sorted(perms, key=lambda w: (w.length(), w.word)))


def bruhat_leq(u: Permutation, w: Permutation) -> bool:
    """Bruhat order by the lifting recursion.

    If i is a right descent of w: u <= w iff min(u, u s_i) <= w s_i,
    where the minimum is u s_i when i is a descent of u, else u.
    """
    if u.n != w.n:
        raise ComputationError("rank mismatch")
    return _bruhat_leq(u.word, w.word)


@lru_cache(maxsize=None)
def _bruhat_leq(uw, ww):
    if uw == ww:
        return True
    u, w = Permutation(uw), Permutation(ww)
    if u.length() >= w.length():
        return False
    ds = w.right_descents()
    if not ds:
        return False
    i = ds[0]
    u2 = u.apply_right(i) if u.word[i - 1] > u.word[i] else u
    return _bruhat_leq(u2.word, w.apply_right(i).word)


def bruhat_interval(w: Permutation):
    """All u <= w, sorted by (length, one-line notation)."""
    return [u for u in all_elements(w.n) if bruhat_leq(u, w)]


def bruhat_leq_subword(u: Permutation, w: Permutation) -> bool:
    """Subword characterization, as an independent cross-check.

    u <= w iff some reduced word of w contains a reduced word of u as a
    (not necessarily contiguous) subword; it suffices to scan one fixed
    reduced word of w for any subword multiplying to u.
    """
    word = w.reduced_word()
    lu = u.length()
    target = u.word
    n = u.n
    hits = {identity(n).word}
    for letter in word:
        new = set(hits)
        for h in hits:
            p = Permutation(h).apply_right(letter)
            if p.length() <= lu:
                new.add(p.word)
        hits = new
    return target in hits


def reduced_words(w: Permutation):
    """All reduced words of w, in lexicographic order."""
    if w.length() == 0:
        return [()]
    out = []
    for i in w.right_descents():
        for prefix in reduced_words(w.apply_right(i)):
            out.append(prefix + (i,))
    return sorted(out)


def parse_element(text: str, n: int) -> Permutation:
    """Parse "3412" / "[3,4,1,2]" one-line forms or "s1*s2*s1" words."""
    text = text.strip()
    if text.startswith("s") or "*" in text:
        letters = []
        for part in text.split("*"):
            part = part.strip()
            if not part.startswith("s"):
                raise ComputationError("cannot parse generator %r" % part)
            try:
                letters.append(int(part[1:]))
            except ValueError:
                raise ComputationError("cannot parse generator %r" % part)
        for i in letters:
            if not 1 <= i < n:
                raise ComputationError("generator s%d out of range for S_%d" % (i, n))
        return from_word(letters, n)
    if text.startswith("["):
        vals = [int(x) for x in text.strip("[]").split(",")]
    elif text in ("e", "id"):
        return identity(n)
    else:
        vals = [int(c) for c in text]
    if len(vals) != n:
        raise ComputationError("one-line notation %r has wrong rank for S_%d" % (text, n))
    return Permutation(tuple(vals))
