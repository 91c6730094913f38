import json
import os
import random
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from lglab.chain import ChainSpec, LinkedChain, make_nested_chain, nested_family
from lglab.invariants import (InadmissiblePair, PairConfig, admissible, filtration_checks, pair_invariants,
                              point_invariants, verify_lemma1, verify_lemma4)
from lglab.linalg import Matrix, Subspace, image
from lglab.oracle import admissible_pairs, enum_lg_points

GOLDEN = Path(__file__).parent / "golden"
E1, E2, E12 = (1, 0), (0, 1), (1, 1)


def ln(p, v):
    return Subspace.span(p, len(v), [v])


def inv_of(chain, v1, vn, r=1):
    return pair_invariants(PairConfig(chain, r, v1, vn))


def test_admissibility_examples(toy):
    assert admissible(PairConfig(toy, 1, ln(2, E2), ln(2, E1)))
    assert not admissible(PairConfig(toy, 1, ln(2, E1), ln(2, E2)))
    zero = Matrix.zeros(2, 2, 2)
    # zero end-to-end composites: any V_1 = V_n is admissible
    ch = LinkedChain(2, 2, 3, (Matrix.diagonal(2, [1, 0]), Matrix.diagonal(2, [0, 1])),
                     (Matrix.diagonal(2, [0, 1]), Matrix.diagonal(2, [1, 0])), 0)
    assert ch.f_comp(1, 2) == zero
    assert admissible(PairConfig(ch, 1, ln(2, E12), ln(2, E12)))


def test_inadmissible_rejected(toy):
    with pytest.raises(InadmissiblePair):
        inv_of(toy, ln(2, E1), ln(2, E2))


def test_pair_config_rejects_bad_rank(toy):
    with pytest.raises(ValueError):
        PairConfig(toy, 2, Subspace.full(2, 2), Subspace.full(2, 2))
    with pytest.raises(ValueError):
        PairConfig(toy, 1, Subspace.full(2, 2), ln(2, E1))


def test_pair_e2_e1_hand_values(toy):
    inv = inv_of(toy, ln(2, E2), ln(2, E1))
    assert inv.vbar1[2].dim == inv.vbar1[3].dim == 1
    assert inv.vbarn[2].dim == inv.vbarn[1].dim == 1
    assert inv.V1n.dim == inv.Vn1.dim == 0
    assert inv.zbar_dim(2) == 0 and inv.ztilde_dim[2] == 0
    golden = json.loads((GOLDEN / "toy_pair_invariants.json").read_text())
    assert inv.to_json() == golden


def test_pair_e1_e1_hand_values(toy):
    inv = inv_of(toy, ln(2, E1), ln(2, E1))
    assert inv.vbar1[2].dim == 0
    assert inv.Vn1.dim == 1 and inv.vbarn[1].dim == 1


def test_end_conventions(toy5):
    for v1, vn in admissible_pairs(toy5, 1):
        inv = inv_of(toy5, v1, vn)
        assert inv.vbar1[1] == v1 and inv.vbarn[toy5.n] == vn


def test_ztilde_rank_identity():
    ch = make_nested_chain(ChainSpec(3, 4, 2, (frozenset({1}), frozenset({1, 2}), frozenset({1, 2}))))
    v1, vn = admissible_pairs(ch, 1)[0]
    inv = inv_of(ch, v1, vn)
    for i in range(2, ch.n):
        want = image(ch.f_comp(i, ch.n - 1)).dim + image(ch.g_comp(i - 1, 1)).dim - ch.d
        assert inv.ztilde_dim[i] == want


def test_point_invariants_examples(toy):
    v1, vn = ln(2, E2), ln(2, E1)
    inv = inv_of(toy, v1, vn)
    got = {}
    for v2 in (E2, E1, E12):
        pt = point_invariants(toy, (v1, ln(2, v2), vn), inv)
        got[v2] = pt.key()
    assert got == {E2: ((1, 0, 0),), E1: ((0, 1, 0),), E12: ((1, 1, 0),)}


def test_non_linked_tuple_rejected(toy):
    with pytest.raises(ValueError, match="index 1"):
        point_invariants(toy, (ln(2, E1), ln(2, E2), ln(2, E1)))


def test_lemmas_exhaustive_toy(toy):
    pts = enum_lg_points(toy, 1)
    assert len(pts) == 7
    for pt in pts:
        assert verify_lemma1(toy, pt)
        assert verify_lemma4(toy, pt)


def _specs_upto(d_max, n_max, p):
    for d in range(2, d_max + 1):
        for n in range(3, n_max + 1):
            yield from nested_family(d, n, p)


def _filtration_sweep(specs):
    for spec in specs:
        ch = make_nested_chain(spec)
        for r in range(1, spec.d):
            for v1, vn in admissible_pairs(ch, r):
                inv = inv_of(ch, v1, vn, r)
                checks = filtration_checks(inv)
                assert all(checks.values()), (spec.label(), r, checks)


@pytest.mark.parametrize("p", [2, 3])
def test_filtrations_exhaustive_small(p):
    _filtration_sweep(_specs_upto(3, 4, p))


@pytest.mark.parametrize("p", [2, 3])
def test_filtrations_sampled_d4(p):
    specs = [s for n in (3, 4) for s in nested_family(4, n, p)]
    rng = random.Random(p)
    _filtration_sweep(rng.sample(specs, 6))


@pytest.mark.skipif(not os.environ.get("LGLAB_EXHAUSTIVE"), reason="set LGLAB_EXHAUSTIVE=1 (about 15 minutes)")
@pytest.mark.slow
@pytest.mark.parametrize("p", [2, 3])
def test_filtrations_exhaustive_d4(p):
    _filtration_sweep(s for n in (3, 4) for s in nested_family(4, n, p))


conjugated = st.tuples(st.integers(2, 4), st.integers(3, 4), st.integers(0, 10 ** 6))


@settings(max_examples=25)
@given(conjugated)
def test_point_containments_on_conjugated_chains(case):
    d, n, seed = case
    rng = random.Random(seed)
    base = rng.choice(nested_family(d, n, 2))
    ch = make_nested_chain(ChainSpec(d, n, 2, base.subsets, seed=seed))
    r = rng.randint(1, d - 1)
    pts = enum_lg_points(ch, r)
    for pt in rng.sample(pts, min(len(pts), 40)):
        inv = inv_of(ch, pt[0], pt[-1], r)
        assert verify_lemma1(ch, pt, inv)
        assert verify_lemma4(ch, pt, inv)
        pinv = point_invariants(ch, pt, inv)
        assert pinv.V1i[2] <= inv.pair.V1 and pinv.Vni[n - 1] <= inv.pair.Vn
        for i in range(2, n):
            assert pinv.V1i[i] <= inv.vbar1[i] and pinv.Vni[i] <= inv.vbarn[i]
        for i in range(2, n - 1):
            assert pinv.V1i[i + 1] <= pinv.V1i[i]
            assert pinv.Vni[i] <= pinv.Vni[i + 1]


@settings(max_examples=30)
@given(st.integers(0, 10 ** 6))
def test_vbar_two_readings_agree(seed):
    rng = random.Random(seed)
    spec = rng.choice(list(_specs_upto(3, 4, 3)))
    ch = make_nested_chain(ChainSpec(spec.d, spec.n, 3, spec.subsets, seed=seed))
    r = rng.randint(1, spec.d - 1)
    pairs = admissible_pairs(ch, r)
    v1, vn = pairs[rng.randrange(len(pairs))]
    assert filtration_checks(inv_of(ch, v1, vn, r))["Vbar recursion"]
