"""Square-tiled cyclic covers of the pillowcase.

The cover ``w^N = (z - z1)^a1 (z - z2)^a2 (z - z3)^a3 (z - z4)^a4`` branched
over the four corners of a pillowcase is cut into ``2N`` unit squares: sheet
``k`` carries a front square ``F_k`` and a back square ``B_k``.  The base
pillowcase is the rectangle ``[0, 2] x [0, 1]`` folded along ``x = 1``, with
branch points at ``(0,0), (1,0), (1,1), (0,1)``.

Crossing a side of the pillowcase changes the sheet by the monodromy of the
loop it closes up with.  Folding edges reverse the orientation of the flat
picture, so the translation structure is recovered by reading the square
neighbours on back-facing sheets with left/right and up/down swapped.  This
is only consistent when the pulled-back quadratic differential is a global
square, which is checked by a holonomy walk.
"""

from dataclasses import dataclass
from math import gcd

from . import perm as P
from .errors import ConstraintViolated, NotOrientable
from .origami import Origami, canonical_form, validate


@dataclass(frozen=True)
class CyclicCoverData:
    N: int
    a: tuple

    def __str__(self):
        return f"M_{self.N}({','.join(map(str, self.a))})"


def validate_cover(N: int, a) -> CyclicCoverData:
    a = tuple(int(x) for x in a)
    if len(a) != 4:
        raise ConstraintViolated("exactly four exponents are required")
    if N < 2:
        raise ConstraintViolated("N >= 2 is required")
    if any(not 0 < x <= N for x in a):
        raise ConstraintViolated("0 < a_i <= N is required")
    g = N
    for x in a:
        g = gcd(g, x)
    if g != 1:
        raise ConstraintViolated(f"gcd(N, a_1, ..., a_4) = {g}, not 1")
    if sum(a) % N:
        raise ConstraintViolated("sum of a_i must be divisible by N")
    return CyclicCoverData(N, a)


def rh_genus(data: CyclicCoverData) -> int:
    """Riemann-Hurwitz: ``N + 1 - (1/2) sum gcd(a_i, N)``."""
    s = sum(gcd(x, data.N) for x in data.a)
    return data.N + 1 - s // 2


def _pillow_moves(data: CyclicCoverData):
    """Neighbour maps on ``(sheet, side)`` cells of the cut pillowcase.

    Returns dicts ``right, up`` from a cell to ``(cell, flips)`` where
    ``flips`` tells whether the crossing goes through a fold.  Sides are
    0 (front) and 1 (back); moving right on the back means moving to smaller
    x in the unfolded rectangle.
    """
    N = data.N
    a1, a2, a3, _ = data.a
    s_bot = a2 % N
    s_top = (-a3) % N
    s_lr = (-(a1 + a2)) % N
    right, left, up, down = {}, {}, {}, {}
    for k in range(N):
        # x = 1 interior edge, front to back, no sheet change
        right[(k, 0)] = ((k, 1), False)
        left[(k, 1)] = ((k, 0), False)
        # x = 2 glued to x = 0: loop around z1 and z2
        right[(k, 1)] = (((k + s_lr) % N, 0), False)
        left[(k, 0)] = (((k - s_lr) % N, 1), False)
        # bottom and top sides are folds: front meets back
        down[(k, 0)] = (((k + s_bot) % N, 1), True)
        down[(k, 1)] = (((k - s_bot) % N, 0), True)
        up[(k, 0)] = (((k + s_top) % N, 1), True)
        up[(k, 1)] = (((k - s_top) % N, 0), True)
    return right, left, up, down


def _orientation_signs(data: CyclicCoverData) -> dict:
    """Sign of the square root of the quadratic differential on each cell.

    Walks the cell adjacency; a fold flips the sign.  Raises
    :class:`NotOrientable` when two walks disagree.
    """
    right, left, up, down = _pillow_moves(data)
    sign = {(0, 0): 1}
    stack = [(0, 0)]
    while stack:
        c = stack.pop()
        for table in (right, left, up, down):
            d, flips = table[c]
            s = -sign[c] if flips else sign[c]
            if d not in sign:
                sign[d] = s
                stack.append(d)
            elif sign[d] != s:
                raise NotOrientable(f"{data} carries a quadratic differential that is not a square")
    return sign


def build_origami(data: CyclicCoverData) -> Origami:
    """The ``2N``-square origami of the cover (square ``2k + side``)."""
    sign = _orientation_signs(data)
    right, left, up, down = _pillow_moves(data)
    N = data.N
    idx = {(k, s): 2 * k + s for k in range(N) for s in (0, 1)}
    h = [0] * (2 * N)
    v = [0] * (2 * N)
    for c, i in idx.items():
        if sign[c] > 0:
            h[i] = idx[right[c][0]]
            v[i] = idx[up[c][0]]
        else:
            h[i] = idx[left[c][0]]
            v[i] = idx[down[c][0]]
    if len(sign) != 2 * N:
        raise ConstraintViolated("cover is disconnected")
    return validate(2 * N, h, v)


def deck_generator(data: CyclicCoverData) -> tuple:
    """Square permutation induced by the sheet shift ``k -> k + 1``."""
    N = data.N
    return tuple((2 * ((i // 2 + 1) % N) + i % 2) for i in range(2 * N))


def eierlegende_wollmilchsau() -> Origami:
    return canonical_form(build_origami(validate_cover(4, (1, 1, 1, 1))))


def ornithorynque() -> Origami:
    return canonical_form(build_origami(validate_cover(6, (1, 1, 1, 3))))


EXAMPLES = {"ew": eierlegende_wollmilchsau, "orni": ornithorynque}
