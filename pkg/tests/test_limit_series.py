import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from lglab.limit_series import (EHPair, OutOfScope, SequenceError, VanishingSeq, crude_excess, eh_classify,
                                fiber_bound_eh, genus0_nonempty, genus1_case, gluing_profile,
                                random_compatible_pair, random_excess_one_pair, random_refined_pair,
                                refined_case_split, rho, rho_additivity, translate, twist_threshold,
                                unique_smoothing, verify_crude_identity)
from oracles import genus1_oracle


def pair(r, d, aY, aZ, gY=0, gZ=0):
    return EHPair.build(r, d, aY, aZ, gY, gZ)


def test_rho_examples():
    # pencils of degree 2 on P^1 form G(2, 3)
    assert rho(0, 1, 2) == 2
    assert rho(0, 1, 3) == 4
    assert rho(0, 1, 3, [(0, 1)] * 4) == 0
    assert rho(0, 2, 2) == 0


def test_malformed_sequences():
    with pytest.raises(SequenceError):
        VanishingSeq((1, 1), 3)
    with pytest.raises(SequenceError):
        VanishingSeq((0, 5), 4)
    with pytest.raises(SequenceError):
        rho(0, 1, 3, [(1, 0)])
    with pytest.raises(SequenceError):
        pair(1, 4, (1, 3), (1, 2, 3))


def test_ramification_round_trip():
    a = VanishingSeq((1, 3, 4), 5)
    assert a.ramification == (1, 2, 2)
    assert VanishingSeq.from_ramification(a.ramification, 5) == a


def test_classify_examples():
    assert eh_classify(pair(1, 4, (1, 3), (1, 3))) == {"class": "refined", "excess": 0, "deficient_indices": []}
    got = eh_classify(pair(1, 4, (2, 3), (1, 3)))
    assert got["class"] == "crude" and got["excess"] == 1 == crude_excess(pair(1, 4, (2, 3), (1, 3)))
    assert eh_classify(pair(0, 4, (1,), (2,)))["class"] == "incompatible"


def test_incompatible_with_nonnegative_raw_sum():
    # the raw sum alone would not detect this: (0+3-4) + (4+2-4) = 1
    p = pair(1, 4, (0, 4), (2, 3))
    assert crude_excess(p) == 1
    assert eh_classify(p)["class"] == "incompatible"


def test_translate_example():
    p = pair(1, 2, (0, 2), (0, 2), 1, 1)
    tw = translate(p, 7, 7)
    assert [tw.vbar1[i] for i in (1, 2, 3)] == [2, 1, 1]
    assert tw.Vn1 == 1
    assert tw.ambient == 15 and tw.rank == 2 and tw.n == 3
    assert all(v == 1 for v in tw.ztilde.values()) and sorted(tw.ztilde) == [2]


def test_translate_no_section_nonvanishing_at_node():
    tw = translate(pair(1, 3, (1, 3), (0, 2)), 7, 7)
    assert tw.Vn1 == 0


def test_translate_threshold():
    p = pair(1, 2, (0, 2), (0, 2), 1, 1)
    assert twist_threshold(p) == (6, 6)
    with pytest.raises(SequenceError, match="too small"):
        translate(p, 5, 9)
    assert translate(p, 6, 9).margin == 0


def test_bound_examples():
    refined = pair(1, 2, (0, 2), (0, 2), 1, 1)
    assert fiber_bound_eh(refined) == 0
    rep = verify_crude_identity(refined, 7, 7)
    assert rep.holds and rep.first_sum == rep.target == 26
    assert fiber_bound_eh(pair(1, 4, (2, 3), (1, 3))) == 1
    with pytest.raises(SequenceError):
        fiber_bound_eh(pair(0, 4, (1,), (2,)))


@settings(max_examples=200)
@given(st.integers(0, 2 ** 32))
def test_identity_on_random_pairs(seed):
    rng = random.Random(seed)
    p = random_compatible_pair(rng)
    tY, tZ = twist_threshold(p)
    rep = verify_crude_identity(p, tY + rng.randint(0, 3), tZ + rng.randint(0, 3))
    assert rep.holds, rep.to_json()
    assert fiber_bound_eh(p) == crude_excess(p) == rep.dictionary_bound


@settings(max_examples=100)
@given(st.integers(0, 2 ** 32))
def test_translate_filtration_shadows(seed):
    rng = random.Random(seed)
    p = random_compatible_pair(rng)
    tw = translate(p, *twist_threshold(p))
    vb1 = [tw.vbar1[i] for i in range(1, tw.n + 1)]
    vbn = [tw.vbarn[i] for i in range(1, tw.n + 1)]
    assert vb1 == sorted(vb1, reverse=True)
    assert vbn == sorted(vbn)


def test_additivity_examples():
    rep = rho_additivity(pair(1, 4, (1, 3), (1, 3), 1, 1), [(0, 1)], [(0, 1)])
    assert rep["holds"] and rep["rho_X"] == rep["rho_Y"] + rep["rho_Z"]
    rep = rho_additivity(pair(1, 4, (2, 3), (1, 3), 1, 2))
    assert rep["holds"] and rep["rho_X"] == rep["rho_Y"] + rep["rho_Z"] + 1


def test_genus0_examples():
    out = genus0_nonempty(1, 3, 4)
    assert out["nonempty"] and out["rho"] == 0 and out["intersection_number"] == 2
    assert out["characteristic"] == "0"
    assert not genus0_nonempty(1, 3, 5)["nonempty"]
    out = genus0_nonempty(1, 3, 0)
    assert out["nonempty"] and out["rho"] == 4
    assert genus0_nonempty(1, 3, [(0, 1)] * 4) == genus0_nonempty(1, 3, 4)


def test_genus0_out_of_scope():
    with pytest.raises(OutOfScope):
        genus0_nonempty(1, 4, [(1, 1)])
    with pytest.raises(OutOfScope):
        genus0_nonempty(2, 5, [(0, 0, 1)])


def test_genus0_classical_values():
    # two lines meeting four general lines in P^3, five conics through five points
    assert genus0_nonempty(1, 3, 4)["intersection_number"] == 2
    assert genus0_nonempty(1, 4, 6)["intersection_number"] == 5


def test_genus1_examples():
    assert not genus1_case((2, 3), 1, 3)["nonempty"]
    out = genus1_case((0, 1), 1, 4)
    assert out["nonempty"] and out["dimension"] == rho(1, 1, 4, [(0, 0)])
    assert genus1_case((2, 4), 1, 4)["nonempty"]
    neg = genus1_case((3, 4), 1, 4)
    assert not neg["nonempty"] and neg["rho"] < 0


def test_genus1_matches_order_set_oracle():
    for r in range(3):
        for d in range(r + 1, 7):
            for a in itertools.combinations(range(d + 1), r + 1):
                got = genus1_case(a, r, d)
                want = genus1_oracle(a, d)
                assert got["nonempty"] == (want is not None), (r, d, a)
                if want is not None:
                    assert got["dimension"] == want


def test_gluing_refined():
    p = pair(1, 4, (1, 3), (1, 3))
    prof = gluing_profile(p)
    assert prof.sums == refined_case_split(p)
    assert set(prof.sums) <= {2, 3} and unique_smoothing(p)
    assert prof.verdict == "unique"


def test_gluing_excess_one():
    p = pair(1, 4, (2, 3), (1, 3))
    prof = gluing_profile(p)
    assert prof.within_lemma_hypothesis and unique_smoothing(p)


def test_gluing_concentrated_excess():
    p = pair(1, 4, (2, 4), (1, 3))
    prof = gluing_profile(p)
    assert prof.dY == (2, 2, 2, 1, 1) and prof.dZ == (0, 1, 1, 2, 2)
    assert not prof.within_lemma_hypothesis
    assert prof.verdict != "unique"


def test_gluing_failing_condition():
    p = pair(1, 4, (3, 4), (3, 4))
    prof = gluing_profile(p)
    assert not prof.condition and prof.verdict == "condition not established"


@settings(max_examples=100)
@given(st.integers(0, 2 ** 32))
def test_random_generators_have_their_shapes(seed):
    rng = random.Random(seed)
    assert random_refined_pair(rng).refined
    p = random_excess_one_pair(rng)
    assert p.compatible and crude_excess(p) == 1
    assert random_compatible_pair(rng).compatible
