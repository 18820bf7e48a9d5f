"""Permutations of ``{0, ..., n-1}`` stored as tuples of images.

Internally everything is 0-based; the 1-based convention only appears at
the I/O boundary (:meth:`Permutation.images`, the origami file format).
Composition follows function notation: ``compose(p, q)`` is ``p o q``,
i.e. ``q`` is applied first.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import BadPermutation

Perm = tuple  # tuple[int, ...]


def check(p: Sequence[int], n: int | None = None) -> tuple:
    """Return ``p`` as a tuple after checking it is a bijection of range(n)."""
    p = tuple(int(x) for x in p)
    if n is None:
        n = len(p)
    if len(p) != n:
        raise BadPermutation(f"expected {n} images, got {len(p)}")
    seen = [False] * n
    for x in p:
        if x < 0 or x >= n or seen[x]:
            raise BadPermutation(f"not a bijection of 0..{n - 1}: {list(p)}")
        seen[x] = True
    return p


def identity(n: int) -> tuple:
    return tuple(range(n))


def compose(p: Sequence[int], q: Sequence[int]) -> tuple:
    """``p o q``: apply ``q`` then ``p``."""
    return tuple(p[x] for x in q)


def inverse(p: Sequence[int]) -> tuple:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def conjugate(p: Sequence[int], r: Sequence[int]) -> tuple:
    """Relabel ``p`` by ``r``: the result maps ``r[i]`` to ``r[p[i]]``."""
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[r[i]] = r[x]
    return tuple(out)


def cycles(p: Sequence[int]) -> list[list[int]]:
    """Cycles of ``p``, each starting at its smallest element, sorted."""
    n = len(p)
    seen = [False] * n
    out = []
    for i in range(n):
        if seen[i]:
            continue
        cyc = []
        j = i
        while not seen[j]:
            seen[j] = True
            cyc.append(j)
            j = p[j]
        out.append(cyc)
    return out


def cycle_type(p: Sequence[int]) -> tuple:
    return tuple(sorted((len(c) for c in cycles(p)), reverse=True))


def power(p: Sequence[int], k: int) -> tuple:
    if k < 0:
        p, k = inverse(p), -k
    out = identity(len(p))
    for _ in range(k):
        out = compose(p, out)
    return out


def order(p: Sequence[int]) -> int:
    from math import lcm

    out = 1
    for c in cycles(p):
        out = lcm(out, len(c))
    return out


def from_cycles(cyc: Iterable[Iterable[int]], n: int) -> tuple:
    """Build a permutation of range(n) from 0-based cycles."""
    img = list(range(n))
    for c in cyc:
        c = list(c)
        for a, b in zip(c, c[1:] + c[:1]):
            img[a] = b
    return check(img, n)


def parse_cycles(s: str, n: int | None = None) -> tuple:
    """Parse 1-based cycle notation such as ``"(1,2)(3)"`` or ``"(1 2)"``."""
    groups = re.findall(r"\(([^)]*)\)", s)
    cyc = [[int(x) - 1 for x in re.split(r"[,\s]+", g.strip()) if x] for g in groups]
    if n is None:
        n = max((x + 1 for c in cyc for x in c), default=0)
    return from_cycles(cyc, n)


def canonical_of_type(parts: Sequence[int]) -> tuple:
    """The permutation with consecutive cycles of the given lengths."""
    img = []
    start = 0
    for k in parts:
        img.extend(start + (i + 1) % k for i in range(k))
        start += k
    return tuple(img)


def partitions(n: int, largest: int | None = None):
    """Integer partitions of ``n`` in non-increasing order."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


@dataclass(frozen=True)
class Permutation:
    """A permutation with exact composition, inverse and conjugation."""

    p: tuple

    def __post_init__(self):
        object.__setattr__(self, "p", check(self.p))

    @classmethod
    def from_images(cls, images: Sequence[int]) -> "Permutation":
        """From 1-based images (position i holds the image of i)."""
        return cls(tuple(int(x) - 1 for x in images))

    @property
    def images(self) -> list[int]:
        return [x + 1 for x in self.p]

    def __len__(self):
        return len(self.p)

    def __call__(self, i: int) -> int:
        return self.p[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return Permutation(compose(self.p, other.p))

    def inverse(self) -> "Permutation":
        return Permutation(inverse(self.p))

    def conjugate(self, r: "Permutation") -> "Permutation":
        return Permutation(conjugate(self.p, r.p))

    def cycles(self) -> list[list[int]]:
        return cycles(self.p)

    def __repr__(self):
        cyc = "".join("(" + ",".join(str(x + 1) for x in c) + ")" for c in self.cycles())
        return f"Permutation('{cyc}')"
