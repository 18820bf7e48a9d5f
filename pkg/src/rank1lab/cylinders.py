"""Cylinder decompositions of origamis in rational directions.

Horizontal rows are the cycles of ``h``.  The line on top of a row is
regular when every corner on it is a regular point; rows separated by a
regular line belong to the same cylinder.  Saddle connections on singular
lines are named by the square whose bottom side starts them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import perm as P
from .errors import InvalidDirection
from .origami import Origami, vertex_ids
from .sl2z import act_word, direction_word


@dataclass(frozen=True)
class Cylinder:
    index: int
    circumference: int
    height: int
    rows: tuple  # bottom row first; each row starts at its smallest square
    bottom_word: tuple
    top_word: tuple

    @property
    def modulus(self) -> float:
        return self.height / self.circumference

    @property
    def area(self) -> int:
        return self.height * self.circumference

    @property
    def squares(self) -> tuple:
        return tuple(s for row in self.rows for s in row)


@dataclass(frozen=True)
class SaddleConnection:
    id: int  # first square whose bottom side it runs along
    length: int
    start: int  # vertex class at the left end
    end: int


@dataclass(frozen=True)
class CylinderDecomposition:
    direction: tuple
    cylinders: tuple
    saddle_connections: tuple
    surface: Origami = field(repr=False)  # origami in which the direction is horizontal
    word: str = ""

    def __len__(self):
        return len(self.cylinders)

    def profile(self) -> list[tuple[int, int]]:
        return sorted((c.circumference, c.height) for c in self.cylinders)

    def to_dict(self) -> dict:
        return {
            "direction": list(self.direction),
            "cylinders": [{"w": c.circumference, "h": c.height} for c in self.cylinders],
        }


def _min_rotation(seq) -> tuple:
    seq = tuple(seq)
    if not seq:
        return seq
    return min(seq[k:] + seq[:k] for k in range(len(seq)))


def _row_from(h, start) -> tuple:
    row = [start]
    j = h[start]
    while j != start:
        row.append(j)
        j = h[j]
    return tuple(row)


def horizontal_decomposition(o: Origami, direction=(1, 0), word: str = "") -> CylinderDecomposition:
    n = o.n
    h, v = o.h, o.v
    vid, mult = vertex_ids(o)
    singular = [mult[vid[i]] > 1 for i in range(n)]  # bottom-left corner of square i

    rows = P.cycles(h)
    row_of = [0] * n
    for k, r in enumerate(rows):
        for i in r:
            row_of[i] = k
    top_regular = [not any(singular[v[i]] for i in r) for r in rows]
    glued_below = [False] * len(rows)
    for k, r in enumerate(rows):
        if top_regular[k]:
            glued_below[row_of[v[r[0]]]] = True
    starts = [k for k in range(len(rows)) if not glued_below[k]]
    if not starts:
        starts = [row_of[0]]  # no singular line at all: a single cylinder

    # saddle connections on every singular line

    saddles = []
    for i in range(n):
        if singular[i]:
            j, length = i, 1
            while not singular[h[j]]:
                j = h[j]
                length += 1
            saddles.append(SaddleConnection(i, length, vid[i], vid[h[j]]))

    cyls = []
    for k in sorted(starts, key=lambda k: min(rows[k])):
        stack = [k]
        while top_regular[stack[-1]]:
            nxt = row_of[v[rows[stack[-1]][0]]]
            if nxt == k:
                break
            stack.append(nxt)
        first = rows[k]
        top = rows[stack[-1]]
        base = min(first)
        bottom_row = _row_from(h, base)
        # walk the top row in step with its squares
        top_start = min(top)
        top_row = _row_from(h, top_start)
        bottom_word = _min_rotation(j for j in bottom_row if singular[j])
        top_word = _min_rotation(v[j] for j in top_row if singular[v[j]])
        cyl_rows = tuple(_row_from(h, min(rows[s])) for s in stack)
        cyls.append(
            Cylinder(len(cyls), len(first), len(stack), cyl_rows, bottom_word, top_word)
        )
    return CylinderDecomposition(tuple(direction), tuple(cyls), tuple(saddles), o, word)


def direction_decomposition(o: Origami, q: int, p: int) -> CylinderDecomposition:
    """Decomposition in the direction of the vector ``(q, p)`` (slope ``p/q``)."""
    if math.gcd(q, p) != 1:
        raise InvalidDirection(f"({q}, {p}) is not a primitive direction")
    word = direction_word(q, p)
    return horizontal_decomposition(act_word(o, word), (q, p), word)


def parse_slope(text: str) -> tuple[int, int]:
    """``"p/q"`` (slope ``p/q``) to the direction vector ``(q, p)``."""
    try:
        a, b = text.split("/")
        p, q = int(a), int(b)
    except ValueError as exc:
        raise InvalidDirection(f"cannot parse direction {text!r}; expected p/q") from exc
    if math.gcd(p, q) != 1:
        raise InvalidDirection(f"{text} is not in lowest terms")
    return q, p


@dataclass(frozen=True)
class ConfigReport:
    direction: tuple
    circumferences: tuple
    equal_circumference: bool
    chain_is_single_cycle: bool
    boundary_parity_ok: bool

    @property
    def passed(self) -> bool:
        return self.equal_circumference and self.chain_is_single_cycle and self.boundary_parity_ok

    def reason(self) -> str:
        if not self.equal_circumference:
            return f"unequal circumferences {list(self.circumferences)}"
        if not self.chain_is_single_cycle:
            return "cylinder boundaries do not form a single chain"
        if not self.boundary_parity_ok:
            return "odd total zero order on a boundary"
        return "ok"


def cylinder_successors(d: CylinderDecomposition) -> list[set]:
    """For each cylinder, the cylinders whose bottoms meet its top."""
    owner = {}
    for c in d.cylinders:
        for s in c.bottom_word:
            owner[s] = c.index
    # a boundary without singular points is a regular line glued to itself
    return [{owner[s] for s in c.top_word} if c.top_word else {c.index} for c in d.cylinders]


def boundary_zero_order(d: CylinderDecomposition, word) -> int:
    """Total order of the distinct zeros on a boundary."""
    _, mult = vertex_ids(d.surface)
    ends = {}
    for s in d.saddle_connections:
        ends[s.id] = (s.start, s.end)
    verts = {x for sid in word for x in ends[sid]}
    return sum(mult[x] - 1 for x in verts)


def configuration_check(d: CylinderDecomposition) -> ConfigReport:
    circ = tuple(c.circumference for c in d.cylinders)
    equal = len(set(circ)) == 1
    succ = cylinder_successors(d)
    k = len(d.cylinders)
    single = all(len(s) == 1 for s in succ)
    if single:
        nxt = [next(iter(s)) for s in succ]
        seen = {0}
        j = nxt[0]
        while j not in seen:
            seen.add(j)
            j = nxt[j]
        single = j == 0 and len(seen) == k and sorted(nxt) == list(range(k))
    parity = all(
        boundary_zero_order(d, c.top_word) % 2 == 0 and boundary_zero_order(d, c.bottom_word) % 2 == 0
        for c in d.cylinders
    )
    return ConfigReport(d.direction, circ, equal, single, parity)


# -- Teichmueller flow arithmetic ------------------------------------------------


@dataclass(frozen=True)
class Residue:
    re: float
    im: float

    def __complex__(self):
        return complex(self.re, self.im)


def gt_residue(c: Residue, t: float) -> Residue:
    """Residue after flowing for time ``t``: ``a e^{-t} + i b e^{t}``."""
    return Residue(c.re * math.exp(-t), c.im * math.exp(t))


def gt_modulus(cyl: Cylinder, t: float) -> float:
    return cyl.height / cyl.circumference * math.exp(2 * t)


# -- homology of core curves -----------------------------------------------------


def core_chain(d: CylinderDecomposition, cyl: Cylinder) -> np.ndarray:
    """Edge chain on ``d.surface`` homologous to the core curve of ``cyl``."""
    z = np.zeros(2 * d.surface.n, dtype=np.int64)
    for s in cyl.rows[0]:
        z[s] += 1
    return z


def core_classes(o: Origami, d: CylinderDecomposition, basis=None) -> list[np.ndarray]:
    """Core-curve classes of ``d`` in the homology basis of ``o``."""
    from .homology import chain_map, homology_basis
    from .sl2z import ACTIONS, INVERSE_LETTER

    B = basis if basis is not None else homology_basis(o)
    # undo the direction word letter by letter; inverse letters restore the
    # permutations exactly, so no relabeling is involved
    surf = d.surface
    M = np.eye(2 * o.n, dtype=np.int64)
    for letter in reversed(d.word):
        inv = INVERSE_LETTER[letter]
        M = chain_map(surf, inv) @ M
        surf = ACTIONS[inv](surf)
    assert surf == o
    return [B.reduce(M @ core_chain(d, c)) for c in d.cylinders]


def homologous_implies_parallel_check(o: Origami, d1: CylinderDecomposition, d2: CylinderDecomposition) -> bool:
    from .homology import homology_basis

    if d1.direction == d2.direction:
        return True
    B = homology_basis(o)
    c1 = core_classes(o, d1, B)
    c2 = core_classes(o, d2, B)
    for x in c1:
        for y in c2:
            if np.array_equal(x, y) or np.array_equal(x, -y):
                return False
    return True
