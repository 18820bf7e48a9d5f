"""Integral first homology of an origami and the action of SL(2,Z) on it.

The square complex has one vertex per corner class, two edges per square
(``b_i`` its bottom side, index ``i``; ``l_i`` its left side, index
``n + i``) and one face per square with

    d(face i) = b_i + l_{h(i)} - b_{v(i)} - l_i.

A tree-cotree decomposition gives ``2g`` basis cycles and a linear map
reducing any closed chain to its coordinates.  The basis is then brought to
symplectic form ``J = [[0, I], [-I, 0]]`` by integral row operations.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from . import perm as P
from .errors import InternalInconsistency
from .origami import Origami, vertex_ids


def standard_form(g: int) -> np.ndarray:
    J = np.zeros((2 * g, 2 * g), dtype=np.int64)
    J[:g, g:] = np.eye(g, dtype=np.int64)
    J[g:, :g] = -np.eye(g, dtype=np.int64)
    return J


def edge_endpoints(o: Origami, vid) -> list[tuple[int, int]]:
    n = o.n
    ends = [(vid[i], vid[o.h[i]]) for i in range(n)]
    ends += [(vid[i], vid[o.v[i]]) for i in range(n)]
    return ends


def boundary_2(o: Origami) -> np.ndarray:
    """Face boundaries as a ``(2n, n)`` integer matrix."""
    n = o.n
    d = np.zeros((2 * n, n), dtype=np.int64)
    for i in range(n):
        d[i, i] += 1
        d[n + o.h[i], i] += 1
        d[o.v[i], i] -= 1
        d[n + i, i] -= 1
    return d


def boundary_1(o: Origami) -> np.ndarray:
    vid, mult = vertex_ids(o)
    d = np.zeros((len(mult), 2 * o.n), dtype=np.int64)
    for e, (a, b) in enumerate(edge_endpoints(o, vid)):
        d[b, e] += 1
        d[a, e] -= 1
    return d


def _exact_int(x: np.ndarray, what: str) -> np.ndarray:
    r = np.rint(x)
    if not np.allclose(x, r, atol=1e-8):
        raise InternalInconsistency(f"{what} is not integral")
    return r.astype(np.int64)


def _symplectic_reduction(omega: np.ndarray) -> np.ndarray:
    """Unimodular ``Q`` with ``Q omega Q^T = J`` (rows of ``Q`` are new vectors)."""
    m = omega.shape[0]
    g = m // 2

    def form(x, y):
        return int(x @ omega @ y)

    vecs = [row.copy() for row in np.eye(m, dtype=np.int64)]
    es, fs = [], []
    while vecs:
        e = vecs.pop(0)
        while True:
            nz = [k for k, w in enumerate(vecs) if form(e, w) != 0]
            if not nz:
                raise InternalInconsistency("intersection form is degenerate")
            piv = min(nz, key=lambda k: abs(form(e, vecs[k])))
            a = form(e, vecs[piv])
            for k in nz:
                if k != piv:
                    vecs[k] = vecs[k] - (form(e, vecs[k]) // a) * vecs[piv]
            if len([k for k in nz if form(e, vecs[k]) != 0]) == 1:
                break
        if abs(a) != 1:
            raise InternalInconsistency("intersection form is not unimodular")
        f = vecs.pop(piv) * a  # a = +-1
        vecs = [w + form(f, w) * e - form(e, w) * f for w in vecs]
        es.append(e)
        fs.append(f)
    Q = np.array(es + fs, dtype=np.int64)
    if not np.array_equal(Q @ omega @ Q.T, standard_form(g)):
        raise InternalInconsistency("symplectic reduction failed")
    return Q


@dataclass(frozen=True)
class HomologyBasis:
    """Symplectic basis of ``H_1`` of an origami.

    ``cycles`` has one row per basis cycle (edge coefficients, length ``2n``);
    ``reduce`` maps any closed edge chain to its coordinates in that basis.
    """

    origami: Origami
    cycles: np.ndarray
    reducer: np.ndarray
    intersection_form: np.ndarray

    @property
    def rank(self) -> int:
        return self.cycles.shape[0]

    @property
    def genus(self) -> int:
        return self.rank // 2

    def reduce(self, chain) -> np.ndarray:
        return self.reducer @ np.asarray(chain, dtype=np.int64)

    def intersection(self, x, y) -> int:
        """Algebraic intersection of two classes given in basis coordinates."""
        return int(np.asarray(x) @ self.intersection_form @ np.asarray(y))


def _tree_cotree(o: Origami):
    n = o.n
    vid, mult = vertex_ids(o)
    V = len(mult)
    ends = edge_endpoints(o, vid)

    adj = [[] for _ in range(V)]
    for e, (a, b) in enumerate(ends):
        adj[a].append((e, b, +1))
        adj[b].append((e, a, -1))
    # primal spanning tree; parent[x] = (edge, sign) with sign*edge going parent -> x
    parent = [None] * V
    seen = [False] * V
    seen[0] = True
    in_tree = [False] * (2 * n)
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for e, y, s in adj[x]:
            if not seen[y]:
                seen[y] = True
                parent[y] = (e, s, x)
                in_tree[e] = True
                queue.append(y)

    # dual spanning tree over squares through edges outside the primal tree
    sq_adj = [[] for _ in range(n)]
    for i in range(n):
        # b_i separates square i from v^{-1}(i); l_i separates i from h^{-1}(i)
        sq_adj[i].append(i)
        sq_adj[P.inverse(o.v)[i]].append(i)
    vinv, hinv = P.inverse(o.v), P.inverse(o.h)
    faces_of = [(i, vinv[i]) for i in range(n)] + [(i, hinv[i]) for i in range(n)]
    nbrs = [[] for _ in range(n)]
    for e, (s, t) in enumerate(faces_of):
        if s != t and not in_tree[e]:
            nbrs[s].append((e, t))
            nbrs[t].append((e, s))
    sq_parent = [None] * n
    order = [0]
    seen_sq = [False] * n
    seen_sq[0] = True
    in_cotree = [False] * (2 * n)
    queue = deque([0])
    while queue:
        s = queue.popleft()
        for e, t in nbrs[s]:
            if not seen_sq[t]:
                seen_sq[t] = True
                sq_parent[t] = e
                in_cotree[e] = True
                order.append(t)
                queue.append(t)
    gens = [e for e in range(2 * n) if not in_tree[e] and not in_cotree[e]]
    return ends, parent, order, sq_parent, gens


def _tree_path(parent, x) -> dict:
    """Chain of tree edges from the root to vertex ``x``."""
    chain = {}
    while parent[x] is not None:
        e, s, x = parent[x]
        chain[e] = chain.get(e, 0) + s
    return chain


def _raw_basis(o: Origami):
    n = o.n
    ends, parent, order, sq_parent, gens = _tree_cotree(o)
    cycles = np.zeros((len(gens), 2 * n), dtype=np.int64)
    for k, e in enumerate(gens):
        a, b = ends[e]
        cycles[k, e] += 1
        for f, c in _tree_path(parent, b).items():
            cycles[k, f] -= c
        for f, c in _tree_path(parent, a).items():
            cycles[k, f] += c

    d2 = boundary_2(o)
    red = np.eye(2 * n, dtype=np.int64)
    for s in order[1:]:
        e = sq_parent[s]
        coef = d2[e, s]
        # clear the dual-tree edge of s using the boundary of s
        red = red - np.outer(d2[:, s], red[e] * coef)
    reducer = red[gens]
    if not np.array_equal(reducer @ cycles.T, np.eye(len(gens), dtype=np.int64)):
        raise InternalInconsistency("tree-cotree reduction does not fix the basis")
    return cycles, reducer


def dual_intersection(o: Origami, z, w) -> int:
    """Intersection of a primal chain ``z`` with a chain ``w`` on the dual graph.

    Dual edges ``H_i`` (centre of i to centre of h(i)) and ``U_i`` (centre of i
    to centre of v(i)) are indexed like ``b_i`` and ``l_i``.
    """
    n = o.n
    vinv, hinv = P.inverse(o.v), P.inverse(o.h)
    tot = 0
    for j in range(n):
        tot += z[j] * w[n + vinv[j]] - z[n + j] * w[hinv[j]]
    return int(tot)


def _dual_cycles(o: Origami) -> np.ndarray:
    """Fundamental cycles of the dual graph (they span ``H_1``)."""
    n = o.n
    ends = [(i, o.h[i]) for i in range(n)] + [(i, o.v[i]) for i in range(n)]
    adj = [[] for _ in range(n)]
    for e, (a, b) in enumerate(ends):
        adj[a].append((e, b, +1))
        adj[b].append((e, a, -1))
    parent = [None] * n
    seen = [False] * n
    seen[0] = True
    in_tree = [False] * (2 * n)
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for e, y, s in adj[x]:
            if not seen[y]:
                seen[y] = True
                parent[y] = (e, s, x)
                in_tree[e] = True
                queue.append(y)
    rows = []
    for e in range(2 * n):
        if in_tree[e]:
            continue
        a, b = ends[e]
        row = np.zeros(2 * n, dtype=np.int64)
        row[e] += 1
        for f, c in _tree_path(parent, b).items():
            row[f] -= c
        for f, c in _tree_path(parent, a).items():
            row[f] += c
        rows.append(row)
    return np.array(rows, dtype=np.int64)


def homology_basis(o: Origami) -> HomologyBasis:
    cycles, reducer = _raw_basis(o)
    m = cycles.shape[0]
    # a dual cycle is homologous to the primal chain with the same coefficients
    W = _dual_cycles(o)
    C = reducer @ W.T
    I_mat = np.array([[dual_intersection(o, z, w) for w in W] for z in cycles], dtype=np.int64)
    omega = _exact_int(np.linalg.lstsq(C.T.astype(float), I_mat.T.astype(float), rcond=None)[0].T, "intersection form")
    if not np.array_equal(omega @ C, I_mat) or not np.array_equal(omega, -omega.T):
        raise InternalInconsistency("intersection form check failed")
    Q = _symplectic_reduction(omega)
    Qinv_T = _exact_int(np.linalg.inv(Q.T.astype(float)), "inverse basis change")
    return HomologyBasis(o, Q @ cycles, Qinv_T @ reducer, standard_form(m // 2))


# -- chain maps ----------------------------------------------------------------


def chain_map(o: Origami, letter: str) -> np.ndarray:
    """Edge chain map from ``o`` to ``letter . o`` (squares not relabeled).

    Column ``e`` holds the image of edge ``e``.
    """
    n = o.n
    h, v = o.h, o.v
    hinv, vinv = P.inverse(h), P.inverse(v)
    M = np.zeros((2 * n, 2 * n), dtype=np.int64)
    for i in range(n):
        b, l = i, n + i
        if letter == "T":
            M[i, b] = 1
            M[i, l] += 1
            M[n + h[i], l] += 1
        elif letter == "t":
            M[i, b] = 1
            M[hinv[i], l] -= 1
            M[n + hinv[i], l] += 1
        elif letter == "S":
            M[n + vinv[i], b] = 1
            M[i, l] = -1
        elif letter == "s":
            M[n + i, b] = -1
            M[hinv[i], l] = 1
        else:
            raise ValueError(f"unknown generator {letter!r}")
    return M


def relabel_chain_matrix(r, n: int) -> np.ndarray:
    """Edge permutation induced by relabeling square ``i`` as ``r[i]``."""
    M = np.zeros((2 * n, 2 * n), dtype=np.int64)
    for i in range(n):
        M[r[i], i] = 1
        M[n + r[i], n + i] = 1
    return M


def action_matrix(src: HomologyBasis, dst: HomologyBasis, letter: str, r) -> np.ndarray:
    """Matrix of ``letter`` from ``src`` to ``dst`` where ``dst.origami`` is
    ``letter . src.origami`` relabeled by ``r``.  Columns are images of the
    basis classes of ``src``."""
    n = src.origami.n
    chains = relabel_chain_matrix(r, n) @ chain_map(src.origami, letter) @ src.cycles.T
    M = dst.reduce(chains)
    g = src.genus
    J = standard_form(g)
    if not np.array_equal(M.T @ J @ M, J):
        raise InternalInconsistency(f"action of {letter} is not symplectic")
    return M


def tautological_chains(o: Origami) -> np.ndarray:
    """Sum of all bottom sides and sum of all left sides (pullback of torus homology)."""
    n = o.n
    z = np.zeros((2, 2 * n), dtype=np.int64)
    z[0, :n] = 1
    z[1, n:] = 1
    return z


def homology_action(o: Origami, gen: str) -> tuple[np.ndarray, HomologyBasis, HomologyBasis]:
    """Action of a single generator on ``H_1``, into the basis of the
    canonical form of the image.  Returns ``(M, source basis, target basis)``."""
    from .origami import canonical_relabel
    from .sl2z import ACTIONS

    src = homology_basis(o)
    c, r = canonical_relabel(ACTIONS[gen](o))
    dst = homology_basis(c)
    return action_matrix(src, dst, gen, r), src, dst
