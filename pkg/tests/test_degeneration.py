import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import origamis
from rank1lab.cyclic_covers import eierlegende_wollmilchsau, ornithorynque
from rank1lab.cylinders import direction_decomposition
from rank1lab.degeneration import (
    ConnectivityGraph,
    Part,
    Verdict,
    cycle_space_dim,
    gp_is_cycle,
    part_feasibility,
    pinch,
    rank1_filter,
)
from rank1lab.origami import canonical_form, enumerate_origamis, genus, l_origami, relabel, stratum, torus
from rank1lab.sl2z import act_word

DIRECTIONS = [(1, 0), (0, 1), (1, 1), (2, 1), (-1, 2)]


def _graph(nparts, edges):
    return ConnectivityGraph(tuple(Part((), 0) for _ in range(nparts)), tuple((a, b, k, True) for k, (a, b) in enumerate(edges)))


def test_cycle_space_dimension():
    assert cycle_space_dim(_graph(1, [])) == 0
    assert cycle_space_dim(_graph(1, [(0, 0)])) == 1
    assert cycle_space_dim(_graph(2, [(0, 1), (1, 0)])) == 1
    assert cycle_space_dim(_graph(3, [(0, 1), (1, 2)])) == 0
    assert cycle_space_dim(_graph(2, [(0, 0), (0, 1), (1, 0)])) == 2


def test_pole_graph_cycle_detection():
    assert gp_is_cycle(_graph(3, [(0, 1), (1, 2), (2, 0)]))
    assert gp_is_cycle(_graph(1, [(0, 0)]))
    assert not gp_is_cycle(_graph(3, [(0, 1), (1, 2)]))
    assert not gp_is_cycle(_graph(4, [(0, 1), (1, 0), (2, 3), (3, 2)]))
    assert not gp_is_cycle(_graph(2, []))


def test_part_feasibility():
    assert part_feasibility(Part((2,), 2))
    assert part_feasibility(Part((1, 1), 2))
    assert not part_feasibility(Part((), 2))  # twice-punctured sphere
    assert Part((), 2).is_twice_punctured_sphere
    assert not part_feasibility(Part((1,), 2))  # odd Chern sum
    assert not part_feasibility(Part((), 4))  # negative genus
    assert Part((2, 2), 2).genus == 2


def test_torus_is_case_one():
    for q, p in DIRECTIONS:
        dc = pinch(torus(), direction_decomposition(torus(), q, p))
        assert dc.verdict is Verdict.CASE1


def test_l_origami_two_cylinder_direction_is_infeasible():
    dc = pinch(l_origami(), direction_decomposition(l_origami(), 1, 0))
    assert dc.verdict is Verdict.INFEASIBLE
    assert len(dc.graph.vertices) == 1
    assert cycle_space_dim(dc.graph) == 2
    # the one-cylinder diagonal is a genus-two part with one node
    dc = pinch(l_origami(), direction_decomposition(l_origami(), 1, 1))
    assert dc.verdict is Verdict.CASE1
    assert dc.graph.vertices[0].genus == 1


@pytest.mark.parametrize("o", [eierlegende_wollmilchsau(), ornithorynque()])
def test_examples_degenerate_to_two_parts(o):
    for q, p in DIRECTIONS:
        dc = pinch(o, direction_decomposition(o, q, p))
        assert dc.verdict is Verdict.CASE2, dc.detail
        assert all(part_feasibility(pt) for pt in dc.graph.vertices)


def _check_bookkeeping(o, q, p):
    d = direction_decomposition(o, q, p)
    dc = pinch(o, d)
    g = genus(o)
    parts = dc.graph.vertices
    # one node per cylinder, one pole at each end
    assert len(dc.graph.edges) == len(d.cylinders)
    assert sum(pt.poles for pt in parts) == 2 * len(d.cylinders)
    # per-part Chern formula summed over parts
    if g >= 2:
        assert sum(pt.euler_char for pt in parts) == 2 * len(d.cylinders) - (2 * g - 2)
        assert sum(sum(pt.zero_orders) for pt in parts) == 2 * g - 2
        twice_genera = sum(sum(pt.zero_orders) - pt.poles + 2 for pt in parts)
        # arithmetic genus of the nodal curve equals the genus of the surface
        assert twice_genera + 2 * cycle_space_dim(dc.graph) == 2 * g


@given(origamis(min_n=3, max_n=8), st.sampled_from(DIRECTIONS))
@settings(max_examples=120, deadline=None)
def test_chern_bookkeeping(o, qp):
    _check_bookkeeping(o, *qp)


def test_chern_bookkeeping_on_examples():
    for o in [l_origami(), eierlegende_wollmilchsau(), ornithorynque()]:
        for qp in DIRECTIONS:
            _check_bookkeeping(o, *qp)


def test_filter_rejects_genus_two():
    for o in enumerate_origamis(5, stratum(l_origami())):
        assert not rank1_filter(o).passed


def test_filter_accepts_examples():
    for o in [eierlegende_wollmilchsau(), ornithorynque()]:
        rep = rank1_filter(o, first_failure_only=False)
        assert rep.passed
        assert rep.directions_checked == rep.cusp_count


def test_filter_is_invariant_under_relabeling_and_the_action():
    rng = random.Random(3)
    pool = [o for o in enumerate_origamis(6) if genus(o) >= 2]
    for o in rng.sample(pool, 15):
        base = rank1_filter(o).passed
        r = list(range(o.n))
        rng.shuffle(r)
        assert rank1_filter(relabel(o, r)).passed == base
        assert rank1_filter(canonical_form(act_word(o, "TSt"))).passed == base
