import numpy as np
import pytest

from rank1lab.cyclic_covers import eierlegende_wollmilchsau, ornithorynque
from rank1lab.homology import (
    boundary_1,
    boundary_2,
    chain_map,
    homology_action,
    homology_basis,
    standard_form,
    tautological_chains,
)
from rank1lab.origami import automorphisms, canonical_relabel, enumerate_origamis, genus, l_origami, torus
from rank1lab.sl2z import ACTIONS


def _rank(a):
    return int(np.linalg.matrix_rank(a.astype(float))) if a.size else 0


@pytest.mark.parametrize("o", [torus(), l_origami(), eierlegende_wollmilchsau(), ornithorynque()])
def test_basis_is_symplectic_and_has_rank_2g(o):
    B = homology_basis(o)
    g = genus(o)
    assert B.rank == 2 * g
    assert np.array_equal(B.intersection_form, standard_form(g))
    # cycles are closed and the reducer recovers them
    assert not (boundary_1(o) @ B.cycles.T).any()
    assert np.array_equal(B.reduce(B.cycles.T), np.eye(2 * g, dtype=np.int64))


def test_rank_matches_boundary_ranks():
    for n in range(1, 6):
        for o in enumerate_origamis(n):
            d1, d2 = boundary_1(o), boundary_2(o)
            assert not (d1 @ d2).any()
            betti = 2 * o.n - _rank(d1) - _rank(d2)
            assert betti == homology_basis(o).rank == 2 * genus(o)


def test_boundaries_reduce_to_zero():
    o = ornithorynque()
    B = homology_basis(o)
    assert not B.reduce(boundary_2(o)).any()


def test_generators_are_symplectic_on_all_small_origamis():
    for n in range(1, 7):
        for o in enumerate_origamis(n):
            J = standard_form(genus(o))
            for g in "TtSs":
                M, _, _ = homology_action(o, g)
                assert np.array_equal(M.T @ J @ M, J)
                assert round(np.linalg.det(M.astype(float))) == 1


def test_torus_shear_is_the_standard_matrix():
    M, _, _ = homology_action(torus(), "T")
    assert M.tolist() == [[1, 1], [0, 1]]
    M, _, _ = homology_action(torus(), "S")
    assert M.tolist() == [[0, -1], [1, 0]]


def test_chain_maps_commute_with_boundary():
    for o in enumerate_origamis(5):
        for g in "TtSs":
            img = ACTIONS[g](o)
            assert not (boundary_1(img) @ chain_map(o, g) @ homology_basis(o).cycles.T).any()


def _compose(o, word):
    """Homology matrix of a word, through the canonical relabelings."""
    x, _ = canonical_relabel(o)
    total = np.eye(2 * genus(o), dtype=np.int64)
    for g in word:
        M, _, dst = homology_action(x, g)
        total = M @ total
        x = dst.origami
    return total, x


def test_s_to_the_fourth_acts_trivially():
    for o in [l_origami(), eierlegende_wollmilchsau()] + enumerate_origamis(5)[::5]:
        M4, x4 = _compose(o, "SSSS")
        assert x4 == canonical_relabel(o)[0]
        if len(automorphisms(o)) == 1:
            # without automorphisms the return identification is the identity
            assert np.array_equal(M4, np.eye(M4.shape[0], dtype=np.int64))


def test_tautological_plane_is_invariant():
    for o in [l_origami(), ornithorynque()] + enumerate_origamis(6)[::11]:
        for g in "TS":
            M, src, dst = homology_action(o, g)
            t_src = src.reduce(tautological_chains(src.origami).T)
            t_dst = dst.reduce(tautological_chains(dst.origami).T)
            # image of the tautological plane lies in the tautological plane
            block, *_ = np.linalg.lstsq(t_dst.astype(float), (M @ t_src).astype(float), rcond=None)
            assert np.allclose(t_dst @ block, M @ t_src)
            assert round(np.linalg.det(block)) == 1
