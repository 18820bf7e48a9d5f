import json
import math
import random
from itertools import permutations

import pytest
from hypothesis import given, settings

from conftest import origamis
from oracles import brute_canonical, transitive_pairs
from rank1lab import perm as P
from rank1lab.errors import BadPermutation, InternalInconsistency, NotTransitive, ParseError
from rank1lab.origami import (
    Origami,
    Stratum,
    canonical_form,
    canonical_relabel,
    enumerate_brute_force,
    enumerate_origamis,
    from_cycles,
    genus,
    l_origami,
    loads,
    relabel,
    singularities,
    stratum,
    torus,
    validate,
    vertex_ids,
)
from rank1lab.perm import Permutation


def test_permutation_algebra_is_exact():
    p = Permutation.from_images([2, 3, 1])
    q = Permutation.from_images([1, 3, 2])
    assert (p * p.inverse()).images == [1, 2, 3]
    assert (p * q).images == [p(q(i)) + 1 for i in range(3)]
    assert p.conjugate(q).images == [q(p(q.inverse()(i))) + 1 for i in range(3)]
    with pytest.raises(BadPermutation):
        Permutation.from_images([1, 1, 2])


def test_parse_cycles_round_trip():
    p = P.parse_cycles("(1,3)(2)")
    assert p == (2, 1, 0)
    assert repr(Permutation(p)) == "Permutation('(1,3)(2)')"


def test_validate_examples():
    assert validate(1, [0], [0]).n == 1
    L = validate(3, [1, 0, 2], [2, 1, 0])
    assert L == l_origami()
    with pytest.raises(NotTransitive):
        validate(2, [0, 1], [0, 1])
    with pytest.raises(BadPermutation):
        validate(2, [0, 0], [0, 1])


def test_file_format_is_bit_exact():
    L = l_origami()
    assert L.to_json() == '{"n":3,"h":[2,1,3],"v":[3,2,1]}'
    assert loads(L.to_json()) == L
    with pytest.raises(ParseError):
        loads('{"n":3,"h":[2,1]}')
    with pytest.raises(ParseError):
        loads("not json")


def test_singularities_of_examples():
    assert [list(c) for c in singularities(torus()).vertex_cycles] == [[0]]
    assert singularities(torus()).zero_orders == []
    s = singularities(l_origami())
    assert s.multiplicities == [3]
    assert s.zero_orders == [2]
    assert s.cone_angles == [pytest.approx(6 * math.pi)]


def test_genus_of_examples():
    assert genus(torus()) == 1
    assert genus(l_origami()) == 2
    assert stratum(l_origami()) == Stratum((2,))


def test_stratum_parsing():
    assert Stratum.parse("H(1,1)") == Stratum.parse("1,1") == Stratum((1, 1))
    assert str(Stratum((2, 2, 2))) == "H(2,2,2)"
    assert Stratum((1, 1, 1, 1)).genus == 3


def test_corner_classes_match_direct_corner_walk():
    # walk counter-clockwise around the bottom-left corner of each square
    for o in enumerate_origamis(5):
        hinv, vinv = P.inverse(o.h), P.inverse(o.v)
        vid, mult = vertex_ids(o)
        for i in range(o.n):
            j = o.v[o.h[vinv[hinv[i]]]]
            assert vid[j] == vid[i]


@given(origamis())
@settings(max_examples=150, deadline=None)
def test_euler_and_chern(o):
    vid, mult = vertex_ids(o)
    g = genus(o)
    assert len(mult) - o.n == 2 - 2 * g
    assert sum(stratum(o).zero_orders) == 2 * g - 2


@given(origamis(max_n=8))
@settings(max_examples=100, deadline=None)
def test_canonical_form_idempotent(o):
    c = canonical_form(o)
    assert canonical_form(c) == c


@given(origamis(max_n=6))
@settings(max_examples=60, deadline=None)
def test_canonical_form_is_conjugation_invariant(o):
    r = list(range(o.n))
    random.Random(o.n).shuffle(r)
    assert canonical_form(relabel(o, r)) == canonical_form(o)
    c, lab = canonical_relabel(o)
    assert relabel(o, lab) == c


def test_canonical_form_matches_brute_force_isomorphism():
    # two origamis are isomorphic iff their canonical forms agree
    for n in (2, 3):
        classes = {}
        for o in transitive_pairs(n):
            classes.setdefault(brute_canonical(o), set()).add(canonical_form(o))
        assert all(len(v) == 1 for v in classes.values())
        assert len({next(iter(v)) for v in classes.values()}) == len(classes)


def test_l_origami_relabelings():
    L = l_origami()
    forms = {canonical_form(relabel(L, r)) for r in permutations(range(3))}
    assert forms == {canonical_form(L)}
    assert canonical_form(torus()) == torus()


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_enumeration_matches_brute_force(n):
    fast = enumerate_origamis(n)
    slow = enumerate_brute_force(n)
    assert len(fast) == len(slow)
    assert {canonical_form(o) for o in slow} == set(fast)


def test_enumeration_counts():
    assert [len(enumerate_origamis(n)) for n in range(1, 6)] == [1, 3, 7, 26, 97]
    h2 = enumerate_origamis(3, Stratum((2,)))
    assert len(h2) == len(enumerate_brute_force(3, Stratum((2,)))) == 3


def test_enumeration_is_deterministic_and_stratified():
    a = enumerate_origamis(6, Stratum((1, 1)))
    assert a == enumerate_origamis(6, Stratum((1, 1)))
    assert all(stratum(o) == Stratum((1, 1)) for o in a)
    assert a == sorted(a, key=lambda o: o.key())


def test_genus_cross_check_raises_on_corrupt_data(monkeypatch):
    import rank1lab.origami as mod

    # a corner partition that breaks the Euler/Chern agreement
    monkeypatch.setattr(mod, "singularities", lambda o: mod.SingularityData(((0, 1), (2,))))
    with pytest.raises(InternalInconsistency):
        mod.genus(l_origami())


def test_json_is_one_line():
    o = from_cycles("(1,2,3)", "(1)(2,3)", 3)
    assert "\n" not in o.to_json()
    assert json.loads(o.to_json())["n"] == 3
