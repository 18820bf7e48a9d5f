"""Action of SL(2,Z) on origamis, orbits and cusps.

Generators act on the plane as

    T = [[1, 1], [0, 1]]   (horizontal shear)
    S = [[0, -1], [1, 0]]  (rotation by +90 degrees)

and on gluing data as ``T: (h, v) -> (h, v h^-1)`` and
``S: (h, v) -> (v^-1, h)``.  With this convention ``T`` keeps every square
sitting on the same bottom edge, so horizontal cylinders are twisted but
otherwise untouched.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from . import perm as P
from .errors import InvalidDirection, OrbitBudgetExceeded
from .origami import Origami, canonical_relabel

GENERATORS = ("T", "t", "S", "s")  # lower case = inverse
MATRICES = {
    "T": ((1, 1), (0, 1)),
    "t": ((1, -1), (0, 1)),
    "S": ((0, -1), (1, 0)),
    "s": ((0, 1), (-1, 0)),
}
INVERSE_LETTER = {"T": "t", "t": "T", "S": "s", "s": "S"}
DEFAULT_ORBIT_CAP = 100_000


def act_T(o: Origami) -> Origami:
    return Origami(o.h, P.compose(o.v, P.inverse(o.h)))


def act_T_inv(o: Origami) -> Origami:
    return Origami(o.h, P.compose(o.v, o.h))


def act_S(o: Origami) -> Origami:
    return Origami(P.inverse(o.v), o.h)


def act_S_inv(o: Origami) -> Origami:
    return Origami(o.v, P.inverse(o.h))


ACTIONS = {"T": act_T, "t": act_T_inv, "S": act_S, "s": act_S_inv}


def act_word(o: Origami, word: str) -> Origami:
    """Apply the letters of ``word`` left to right (first letter first)."""
    for letter in word:
        o = ACTIONS[letter](o)
    return o


def mat_mul(a, b):
    return (
        (a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
        (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]),
    )


def word_matrix(word: str):
    """Matrix of the linear map realised by applying ``word`` letter by letter."""
    m = ((1, 0), (0, 1))
    for letter in word:
        m = mat_mul(MATRICES[letter], m)
    return m


def direction_word(q: int, p: int) -> str:
    """A word whose matrix sends the direction ``(q, p)`` to ``(1, 0)``.

    Euclid's algorithm: shear until ``|x| < |y|``, rotate, repeat.
    """
    from math import gcd

    if gcd(q, p) != 1:
        raise InvalidDirection(f"direction ({q}, {p}) is not primitive")
    x, y = q, p
    word = []
    while y != 0:
        k = x // y  # |x - k*y| < |y| for either sign of y
        x -= k * y
        word.append(("t" if k > 0 else "T") * abs(k))
        # rotate (x, y) -> (-y, x)
        x, y = -y, x
        word.append("S")
    if x == -1:
        word.append("SS")
    return "".join(word)


def normalize_direction(q: int, p: int) -> tuple[int, int]:
    if q < 0 or (q == 0 and p < 0):
        return -q, -p
    return q, p


@dataclass
class Orbit:
    """``SL(2,Z)``-orbit of canonical origamis.

    ``edges[i][g] = (j, r)`` means applying generator ``g`` to member ``i``
    gives an origami whose relabeling by ``r`` is member ``j``.
    ``matrix[i]`` is an element of SL(2,Z) carrying the root to member ``i``.
    """

    members: list
    edges: list
    matrix: list
    index: dict = field(repr=False)

    def __len__(self):
        return len(self.members)

    def __contains__(self, o: Origami):
        return o.key() in self.index

    def transitions(self, gens=("T", "S")) -> list[dict]:
        return [
            {"from": i, "gen": g, "to": self.edges[i][g][0]}
            for i in range(len(self.members))
            for g in gens
        ]

    def to_dict(self) -> dict:
        return {
            "members": [m.to_dict() for m in self.members],
            "transitions": self.transitions(),
        }


def orbit(o: Origami, cap: int = DEFAULT_ORBIT_CAP) -> Orbit:
    """Breadth-first closure of ``canonical_form(o)`` under T, S and inverses."""
    root, _ = canonical_relabel(o)
    members = [root]
    index = {root.key(): 0}
    mats = [((1, 0), (0, 1))]
    edges: list = [None]
    queue = deque([0])
    while queue:
        i = queue.popleft()
        out = {}
        for g in GENERATORS:
            c, r = canonical_relabel(ACTIONS[g](members[i]))
            j = index.get(c.key())
            if j is None:
                j = len(members)
                if j >= cap:
                    raise OrbitBudgetExceeded(f"orbit has more than {cap} members")
                index[c.key()] = j
                members.append(c)
                mats.append(mat_mul(MATRICES[g], mats[i]))
                edges.append(None)
                queue.append(j)
            out[g] = (j, r)
        edges[i] = out
    return Orbit(members, edges, mats, index)


@dataclass(frozen=True)
class CuspClass:
    representative: Origami
    member_index: int
    width: int
    direction: tuple  # direction on the root origami realised by the cusp

    def to_dict(self) -> dict:
        return {
            "representative": self.representative.to_dict(),
            "width": self.width,
            "direction": list(self.direction),
        }


def cusps(orb: Orbit) -> list[CuspClass]:
    """T-orbits on the members; one class per periodic-direction class."""
    seen = [False] * len(orb)
    out = []
    for i in range(len(orb)):
        if seen[i]:
            continue
        cyc = []
        j = i
        while not seen[j]:
            seen[j] = True
            cyc.append(j)
            j = orb.edges[j]["T"][0]
        rep = min(cyc, key=lambda k: orb.members[k].key())
        a, b = orb.matrix[rep]
        # member = A . root, so its horizontal is A^{-1} (1, 0) on the root
        direction = normalize_direction(b[1], -b[0])
        out.append(CuspClass(orb.members[rep], rep, len(cyc), direction))
    out.sort(key=lambda c: c.representative.key())
    return out
