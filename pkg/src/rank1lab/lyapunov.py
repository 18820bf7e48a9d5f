"""Lyapunov exponents of the homology cocycle over the SL(2,Z)-orbit graph.

The cocycle is sampled along a random path in the orbit graph of the origami;
a frame of ``2g`` vectors is pushed through the integer action matrices and
re-orthonormalised after every step, and the logarithms of the Gram-Schmidt
diagonal are accumulated with compensated summation.

Two path samplers are provided:

``"uniform"``
    i.i.d. letters uniform on ``{T, T^-1, S, S^-1}``.
``"gauss"``
    continued-fraction coding of a random geodesic: blocks ``R^a`` and
    ``L^a`` alternate, with partial quotients ``a`` read off a Gauss-map
    orbit.  This is a cross-section of the geodesic flow, so exponent ratios
    agree with those of the flow.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numba as nb
import numpy as np

from .errors import DegenerateFrame, InternalInconsistency
from .homology import action_matrix, homology_basis
from .origami import Origami
from .sl2z import GENERATORS, orbit

BLOCK = 10_000
LETTER_INDEX = {g: k for k, g in enumerate(GENERATORS)}  # T, t, S, s


@dataclass(frozen=True)
class OrbitCocycle:
    """Action matrices on every orbit member, indexed ``[member, letter]``."""

    mats: np.ndarray  # (m, 4, 2g, 2g) float64
    nxt: np.ndarray  # (m, 4) int64
    genus: int


def orbit_cocycle(o: Origami, cap: int | None = None) -> OrbitCocycle:
    orb = orbit(o) if cap is None else orbit(o, cap)
    bases = [homology_basis(m) for m in orb.members]
    m = len(orb)
    d = bases[0].rank
    mats = np.zeros((m, 4, d, d))
    nxt = np.zeros((m, 4), dtype=np.int64)
    for i in range(m):
        for k, g in enumerate(GENERATORS):
            j, r = orb.edges[i][g]
            mats[i, k] = action_matrix(bases[i], bases[j], g, r)
            nxt[i, k] = j
    return OrbitCocycle(mats, nxt, d // 2)


@dataclass(frozen=True)
class LyapunovEstimate:
    exponents: tuple
    steps: int
    seed: int
    stderr_top2: float
    raw_top: float = 0.0
    stderr: tuple = field(default=())

    def to_dict(self) -> dict:
        return {
            "exponents": [float(x) for x in self.exponents],
            "stderr_top2": float(self.stderr_top2),
            "steps": int(self.steps),
            "seed": int(self.seed),
        }


@nb.njit(cache=True)
def _push(F, M, acc, comp):
    """F <- qr(M F); add log|R_kk| to acc with Kahan compensation."""
    d = F.shape[0]
    G = M @ F
    for k in range(d):
        for j in range(k):
            c = 0.0
            for r in range(d):
                c += G[r, j] * G[r, k]
            for r in range(d):
                G[r, k] -= c * G[r, j]
        nrm = 0.0
        for r in range(d):
            nrm += G[r, k] * G[r, k]
        nrm = np.sqrt(nrm)
        if not nrm > 1e-300 or not np.isfinite(nrm):
            return False
        for r in range(d):
            G[r, k] /= nrm
        y = np.log(nrm) - comp[k]
        t = acc[k] + y
        comp[k] = (t - acc[k]) - y
        acc[k] = t
    F[:, :] = G
    return True


@nb.njit(cache=True)
def _walk_uniform(mats, nxt, letters, F0, block):
    d = F0.shape[0]
    steps = letters.shape[0]
    nblocks = steps // block if steps >= block else 1
    F = F0.copy()
    acc = np.zeros(d)
    comp = np.zeros(d)
    blocks = np.zeros((nblocks, d))
    last = np.zeros(d)
    state = 0
    b = 0
    for s in range(steps):
        k = letters[s]
        if not _push(F, mats[state, k], acc, comp):
            return acc, blocks, False
        state = nxt[state, k]
        if (s + 1) % block == 0 and b < nblocks:
            blocks[b] = acc - last
            last[:] = acc
            b += 1
    if steps < block:
        blocks[0] = acc
    return acc, blocks, True


def cusp_powers(coc: OrbitCocycle, letter: int):
    """Partial products of ``letter`` along its cycle through every member.

    ``pw[i, r]`` is the matrix of ``letter^r`` started at member ``i``.
    After ``w`` full turns around the cusp (``w`` a multiple of the cycle
    length) the return map is a multitwist: ``twist[i] = letter^w - I``
    squares to zero and ``letter^(q w) = I + q twist[i]``.  More than one
    turn is needed when the identification picks up an automorphism.
    """
    m, _, d, _ = coc.mats.shape
    ints = np.rint(coc.mats).astype(np.int64)
    width = np.zeros(m, dtype=np.int64)
    paths = []
    for i in range(m):
        mats = [np.eye(d, dtype=np.int64)]
        s = i
        while True:
            mats.append(ints[s, letter] @ mats[-1])
            s = coc.nxt[s, letter]
            if s == i:
                N = mats[-1] - np.eye(d, dtype=np.int64)
                if not np.any(N @ N):
                    break
                if len(mats) > 1000 * m:
                    raise InternalInconsistency("cusp return map is not quasi-unipotent")
        width[i] = len(mats) - 1
        paths.append(mats)
    wmax = int(width.max())
    pw = np.zeros((m, wmax + 1, d, d))
    twist = np.zeros((m, d, d))
    for i, mats in enumerate(paths):
        for r, M in enumerate(mats):
            pw[i, r] = M
        twist[i] = mats[-1] - np.eye(d, dtype=np.int64)
    ends = np.zeros((m, wmax + 1), dtype=np.int64)
    for i in range(m):
        s = i
        for r in range(wmax + 1):
            ends[i, r] = s
            s = coc.nxt[s, letter]
    return pw, twist, width, ends


@nb.njit(cache=True)
def _power(pw, twist, width, ends, state, a):
    """Matrix of ``letter^a`` from ``state`` and the state reached."""
    w = width[state]
    q = a // w
    r = a - q * w
    M = pw[state, r] @ (np.eye(twist.shape[1]) + q * twist[state])
    return M, ends[state, r]


@nb.njit(cache=True)
def _walk_gauss(mats, nxt, tp, tt, tw, te, ip, it, iw, ie, quotients, F0, block):
    """Alternate R^a = T^a and L^a = S^-1 T^-a S along the orbit graph."""
    d = F0.shape[0]
    nq = quotients.shape[0]
    nblocks = nq // block if nq >= block else 1
    F = F0.copy()
    acc = np.zeros(d)
    comp = np.zeros(d)
    blocks = np.zeros((nblocks, d))
    last = np.zeros(d)
    state = 0
    b = 0
    for s in range(nq):
        a = quotients[s]
        if s % 2 == 0:
            M, state = _power(tp, tt, tw, te, state, a)
        else:
            M0 = mats[state, 2]
            state = nxt[state, 2]
            M1, state = _power(ip, it, iw, ie, state, a)
            M = mats[state, 3] @ (M1 @ M0)
            state = nxt[state, 3]
        if not _push(F, M, acc, comp):
            return acc, blocks, False
        if (s + 1) % block == 0 and b < nblocks:
            blocks[b] = acc - last
            last[:] = acc
            b += 1
    if nq < block:
        blocks[0] = acc
    return acc, blocks, True


def gauss_quotients(rng: np.random.Generator, count: int, cap: int = 10**6) -> np.ndarray:
    """Partial quotients of Gauss-map orbits started at uniform random points.

    A fresh random point replaces the orbit whenever it gets too close to a
    rational to produce further reliable digits; quotients are capped.
    """
    out = np.empty(count, dtype=np.int64)
    x = rng.random()
    for k in range(count):
        while x < 1e-12:
            x = rng.random()
        y = 1.0 / x
        a = int(y)
        out[k] = min(a, cap)
        x = y - a
    return out


def random_walk_exponents(
    o: Origami,
    steps: int,
    seed: int,
    *,
    walk: str = "gauss",
    cocycle: OrbitCocycle | None = None,
    block: int = BLOCK,
) -> LyapunovEstimate:
    """Normalised Lyapunov spectrum (top exponent scaled to 1)."""
    if steps < 1:
        raise ValueError("steps must be positive")
    coc = cocycle if cocycle is not None else orbit_cocycle(o)
    d = 2 * coc.genus
    rng = np.random.default_rng(seed)
    F0, _ = np.linalg.qr(rng.standard_normal((d, d)))
    if walk == "uniform":
        letters = rng.integers(0, 4, size=steps)
        acc, blocks, ok = _walk_uniform(coc.mats, coc.nxt, letters, F0, block)
    elif walk == "gauss":
        fwd = cusp_powers(coc, 0)
        bwd = cusp_powers(coc, 1)
        q = gauss_quotients(rng, steps)
        acc, blocks, ok = _walk_gauss(coc.mats, coc.nxt, *fwd, *bwd, q, F0, block)
    else:
        raise ValueError(f"unknown walk {walk!r}")
    if not ok:
        raise DegenerateFrame("frame collapsed during orthonormalisation")
    raw = acc / steps
    if raw[0] <= 0:
        raise DegenerateFrame("top exponent is not positive")
    exps = np.sort(raw / raw[0])[::-1]
    # block-mean normalised exponents give the error bars
    per_block = blocks / np.maximum(blocks[:, :1], 1e-300)
    if per_block.shape[0] > 1:
        err = per_block.std(axis=0, ddof=1) / np.sqrt(per_block.shape[0])
    else:
        err = np.full(d, np.inf)
    err_sorted = tuple(float(e) for e in err)
    top2 = err_sorted[1] if d > 1 else 0.0
    return LyapunovEstimate(tuple(float(x) for x in exps), steps, seed, top2, float(raw[0]), err_sorted)


def combine(estimates: list[LyapunovEstimate]) -> LyapunovEstimate:
    """Inverse-variance weighted average of independent estimates."""
    ex = np.array([e.exponents for e in estimates])
    err = np.array([e.stderr for e in estimates])
    w = 1.0 / np.maximum(err, 1e-12) ** 2
    mean = (w * ex).sum(axis=0) / w.sum(axis=0)
    se = 1.0 / np.sqrt(w.sum(axis=0))
    return LyapunovEstimate(
        tuple(float(x) for x in mean),
        sum(e.steps for e in estimates),
        estimates[0].seed,
        float(se[1]) if len(se) > 1 else 0.0,
        float(np.mean([e.raw_top for e in estimates])),
        tuple(float(x) for x in se),
    )


def seed_averaged(o: Origami, steps: int, seeds, **kw) -> LyapunovEstimate:
    coc = kw.pop("cocycle", None) or orbit_cocycle(o)
    return combine([random_walk_exponents(o, steps, s, cocycle=coc, **kw) for s in seeds])


def degeneracy_test(o: Origami, steps: int, seed: int, tol: float, **kw) -> bool:
    if tol <= 0:
        raise ValueError("tol must be positive")
    est = random_walk_exponents(o, steps, seed, **kw)
    g = len(est.exponents) // 2
    return all(abs(x) < tol for x in est.exponents[1:g])
