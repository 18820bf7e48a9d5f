"""Square-tiled surfaces (origamis).

An origami on ``n`` unit squares is a pair of permutations ``(h, v)``:
``h[i]`` is the square glued to the right of square ``i`` and ``v[i]`` the
square glued on top of it.  Squares are 0-based in memory and 1-based in
files.

The corners of the squares are the only possible cone points.  The
bottom-left corner of square ``v(h(i))`` is identified with the bottom-left
corner of ``h(v(i))`` (both are the top-right corner of ``i``), so the
vertex classes are the cycles of ``vh (hv)^{-1}``.  A class of length ``m``
has cone angle ``2*pi*m``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from . import perm as P
from .errors import BadPermutation, InternalInconsistency, NotTransitive, ParseError


@dataclass(frozen=True)
class Origami:
    h: tuple
    v: tuple

    @property
    def n(self) -> int:
        return len(self.h)

    def key(self) -> tuple:
        return self.h + self.v

    def to_dict(self) -> dict:
        return {"n": self.n, "h": [x + 1 for x in self.h], "v": [x + 1 for x in self.v]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    def __repr__(self):
        def cyc(p):
            return "".join("(" + ",".join(str(x + 1) for x in c) + ")" for c in P.cycles(p))

        return f"Origami('{cyc(self.h)}', '{cyc(self.v)}')"


@dataclass(frozen=True, order=True)
class Stratum:
    """Orders of the zeros of the Abelian differential, largest first."""

    zero_orders: tuple

    def __post_init__(self):
        orders = tuple(sorted((int(k) for k in self.zero_orders), reverse=True))
        if any(k <= 0 for k in orders):
            raise ValueError("zero orders must be positive")
        if sum(orders) % 2:
            raise ValueError("zero orders must sum to an even number")
        object.__setattr__(self, "zero_orders", orders)

    @classmethod
    def parse(cls, s: str) -> "Stratum":
        s = s.strip()
        if s.upper().startswith("H(") and s.endswith(")"):
            s = s[2:-1]
        if not s:
            return cls(())
        try:
            return cls(tuple(int(x) for x in s.split(",")))
        except ValueError as exc:
            raise ParseError(f"bad stratum {s!r}") from exc

    @property
    def genus(self) -> int:
        return 1 + sum(self.zero_orders) // 2

    def __str__(self):
        return "H(" + ",".join(map(str, self.zero_orders)) + ")"


@dataclass(frozen=True)
class SingularityData:
    vertex_cycles: tuple  # tuple of tuples of squares (bottom-left corners)

    @property
    def multiplicities(self) -> list[int]:
        """Cone angle of each vertex divided by ``2*pi``."""
        return [len(c) for c in self.vertex_cycles]

    @property
    def cone_angles(self) -> list[float]:
        return [2 * np.pi * m for m in self.multiplicities]

    @property
    def zero_orders(self) -> list[int]:
        return [m - 1 for m in self.multiplicities if m > 1]


def validate(n: int, h: Sequence[int], v: Sequence[int]) -> Origami:
    """Build an origami from 0-based images, checking connectivity."""
    h = P.check(h, n)
    v = P.check(v, n)
    if not is_transitive(h, v):
        raise NotTransitive("the squares do not form a connected surface")
    return Origami(h, v)


def from_images(h: Sequence[int], v: Sequence[int]) -> Origami:
    """Build an origami from 1-based images, as stored in files."""
    if len(h) != len(v):
        raise BadPermutation("h and v have different sizes")
    return validate(len(h), [x - 1 for x in h], [x - 1 for x in v])


def from_cycles(h: str, v: str, n: int | None = None) -> Origami:
    """Build an origami from 1-based cycle strings, e.g. ``"(1,2)(3)"``."""
    if n is None:
        hp, vp = P.parse_cycles(h), P.parse_cycles(v)
        n = max(len(hp), len(vp))
    return validate(n, P.parse_cycles(h, n), P.parse_cycles(v, n))


def from_dict(d: dict) -> Origami:
    try:
        n, h, v = int(d["n"]), d["h"], d["v"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"not an origami object: {d!r}") from exc
    if len(h) != n or len(v) != n:
        raise ParseError("length of h or v does not match n")
    return from_images(h, v)


def loads(text: str) -> Origami:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(str(exc)) from exc
    return from_dict(d)


def is_transitive(h: Sequence[int], v: Sequence[int]) -> bool:
    n = len(h)
    if n == 0:
        return False
    seen = [False] * n
    seen[0] = True
    stack = [0]
    count = 1
    while stack:
        i = stack.pop()
        for j in (h[i], v[i]):
            if not seen[j]:
                seen[j] = True
                count += 1
                stack.append(j)
    return count == n


def corner_permutation(o: Origami) -> tuple:
    """``vh (hv)^{-1}``; its cycles are the vertex classes."""
    return P.compose(P.compose(o.v, o.h), P.inverse(P.compose(o.h, o.v)))


def singularities(o: Origami) -> SingularityData:
    return SingularityData(tuple(tuple(c) for c in P.cycles(corner_permutation(o))))


def vertex_ids(o: Origami) -> tuple[list[int], list[int]]:
    """Vertex index of the bottom-left corner of every square, and the
    multiplicity (cone angle / 2 pi) of every vertex."""
    vid = [0] * o.n
    mult = []
    for k, c in enumerate(P.cycles(corner_permutation(o))):
        for i in c:
            vid[i] = k
        mult.append(len(c))
    return vid, mult


def stratum(o: Origami) -> Stratum:
    return Stratum(tuple(singularities(o).zero_orders))


def genus(o: Origami) -> int:
    """Genus from the Euler characteristic ``V - 2n + n``, cross-checked
    against the Chern formula on the zero orders."""
    s = singularities(o)
    nv = len(s.vertex_cycles)
    g2 = 2 - nv + o.n
    chern = 2 + sum(s.zero_orders)
    if g2 != chern or g2 % 2:
        raise InternalInconsistency(f"Euler {g2} / Chern {chern} disagree for {o!r}")
    return g2 // 2


# -- canonical forms ---------------------------------------------------------


def _bfs_relabel(h: Sequence[int], v: Sequence[int], start: int) -> list[int]:
    n = len(h)
    lab = [-1] * n
    lab[start] = 0
    order = [start]
    k = 1
    for x in order:
        for y in (h[x], v[x]):
            if lab[y] < 0:
                lab[y] = k
                k += 1
                order.append(y)
    return lab


def canonical_relabel(o: Origami) -> tuple[Origami, list[int]]:
    """Canonical representative of the isomorphism class of ``o``.

    Returns ``(c, r)`` where ``r[i]`` is the label in ``c`` of square ``i``
    of ``o``.  Among the breadth-first relabelings started at every square,
    the one with lexicographically smallest ``h + v`` wins.
    """
    best = None
    best_lab = None
    h, v = o.h, o.v
    for s in range(o.n):
        lab = _bfs_relabel(h, v, s)
        key = P.conjugate(h, lab) + P.conjugate(v, lab)
        if best is None or key < best:
            best = key
            best_lab = lab
    n = o.n
    return Origami(best[:n], best[n:]), best_lab


def canonical_form(o: Origami) -> Origami:
    return canonical_relabel(o)[0]


def automorphisms(o: Origami) -> list[list[int]]:
    """All relabelings of ``o`` fixing both ``h`` and ``v``."""
    out = []
    base = _bfs_relabel(o.h, o.v, 0)
    key0 = P.conjugate(o.h, base) + P.conjugate(o.v, base)
    for s in range(o.n):
        lab = _bfs_relabel(o.h, o.v, s)
        if P.conjugate(o.h, lab) + P.conjugate(o.v, lab) == key0:
            # square i -> the square with the same breadth-first label from 0
            inv0 = P.inverse(base)
            out.append([inv0[lab[i]] for i in range(o.n)])
    return out


def relabel(o: Origami, r: Sequence[int]) -> Origami:
    return Origami(P.conjugate(o.h, r), P.conjugate(o.v, r))


# -- enumeration -------------------------------------------------------------


def _stratum_signature(s: Stratum, n: int) -> np.ndarray | None:
    """Sorted per-square vertex multiplicities realising ``s`` on n squares."""
    sig = []
    for k in s.zero_orders:
        sig += [k + 1] * (k + 1)
    if len(sig) > n:
        return None
    return np.array(sorted(sig + [1] * (n - len(sig))), dtype=np.int16)


def _prefilter(h: tuple, vs: np.ndarray, target: np.ndarray | None) -> np.ndarray:
    """Boolean mask of rows ``v`` of ``vs`` giving connected origamis with the
    requested vertex multiplicities."""
    m, n = vs.shape
    rows = np.arange(m)[:, None]
    harr = np.asarray(h)
    hinv = np.asarray(P.inverse(h))
    vinv = np.empty_like(vs)
    vinv[rows, vs] = np.arange(n)[None, :]
    reach = np.zeros((m, n), dtype=bool)
    reach[:, 0] = True
    for _ in range(n):
        new = reach | reach[:, hinv] | np.take_along_axis(reach, vinv, axis=1)
        if np.array_equal(new, reach):
            break
        reach = new
    ok = reach.all(axis=1)
    if target is None:
        return ok
    # corner permutation c = v h (h v)^{-1}
    vh = vs[:, harr]
    hv = harr[vs]
    hv_inv = np.empty_like(hv)
    hv_inv[rows, hv] = np.arange(n)[None, :]
    c = np.take_along_axis(vh, hv_inv, axis=1)
    ident = np.broadcast_to(np.arange(n), (m, n))
    cur = c.copy()
    length = np.zeros((m, n), dtype=np.int16)
    for k in range(1, n + 1):
        hit = (cur == ident) & (length == 0)
        length[hit] = k
        cur = np.take_along_axis(c, cur, axis=1)
    length.sort(axis=1)
    return ok & (length == target[None, :]).all(axis=1)


def _all_perms(n: int, chunk: int = 200_000) -> Iterator[np.ndarray]:
    it = itertools.permutations(range(n))
    while True:
        block = list(itertools.islice(it, chunk))
        if not block:
            return
        yield np.array(block, dtype=np.int64)


def enumerate_origamis(n: int, stratum: Stratum | None = None) -> list[Origami]:
    """One canonical representative per isomorphism class of connected
    origamis with ``n`` squares, optionally restricted to a stratum.

    ``h`` runs over one permutation per cycle type and ``v`` over all of
    ``S_n``; the result is sorted by canonical key so the order is
    deterministic.  Cost grows like ``n! * p(n)``: fine up to n = 9 or 10.
    """
    if n < 1:
        raise ValueError("n must be positive")
    target = None
    if stratum is not None:
        target = _stratum_signature(stratum, n)
        if target is None:
            return []
    seen: set = set()
    out = []
    for parts in P.partitions(n):
        h = P.canonical_of_type(parts)
        for vs in _all_perms(n):
            mask = _prefilter(h, vs, target)
            for row in vs[mask]:
                c = canonical_form(Origami(h, tuple(int(x) for x in row)))
                k = c.key()
                if k not in seen:
                    seen.add(k)
                    out.append(c)
    out.sort(key=Origami.key)
    return out


def enumerate_brute_force(n: int, target: Stratum | None = None) -> list[Origami]:
    """Reference enumeration over all ``n!^2`` pairs, deduplicated by trying
    every simultaneous relabeling (no canonical form involved)."""
    classes: list[set] = []
    reps = []
    perms = list(itertools.permutations(range(n)))
    for h in perms:
        for v in perms:
            if not is_transitive(h, v):
                continue
            o = Origami(h, v)
            if target is not None and stratum(o) != target:
                continue
            if any(o.key() in cl for cl in classes):
                continue
            cl = {P.conjugate(h, r) + P.conjugate(v, r) for r in perms}
            classes.append(cl)
            reps.append(o)
    return reps



# familiar small surfaces


def torus() -> Origami:
    return Origami((0,), (0,))


def l_origami() -> Origami:
    """Three squares in an L: h = (1 2)(3), v = (1 3)(2)."""
    return from_cycles("(1,2)(3)", "(1,3)(2)", 3)
