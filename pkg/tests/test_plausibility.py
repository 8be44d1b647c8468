from fractions import Fraction

import pytest

from geu.domains import unit_interval_domain
from geu.exceptions import AxiomViolation, GeuError, NotAProbability, TooLarge
from geu.plausibility import (is_additive_probability, make_pl_from_probability_set,
                              make_plausibility_measure, probability_measure,
                              recover_probability_set)
from geu.values import Vec

UNIT = unit_interval_domain()
S3 = ["s1", "s2", "s3"]


def test_uniform_probability_validates():
    pl = probability_measure(S3, {s: Fraction(1, 3) for s in S3})
    assert pl.of(["s1", "s2"]) == Fraction(2, 3)
    assert pl.fully_validated
    assert is_additive_probability(pl)


def test_belief_style_table_validates():
    table = {}
    for mask in range(8):
        members = {S3[i] for i in range(3) if mask >> i & 1}
        table[tuple(sorted(members))] = 1 if {"s1", "s2"} <= members else 0
    pl = make_plausibility_measure(S3, table, UNIT)
    assert pl.of(["s1", "s2"]) == 1
    assert pl.of(["s1", "s3"]) == 0
    assert not is_additive_probability(pl)


def test_monotonicity_violation_rejected_with_witness():
    table = {(): 0, ("s1",): 1, ("s2",): 0, ("s1", "s2"): 0}
    table[("s1", "s2")] = Fraction(0)
    with pytest.raises(AxiomViolation) as exc:
        make_plausibility_measure(["s1", "s2"], table, UNIT)
    assert exc.value.axiom in ("Pl2", "Pl3")


def test_pl1_pl2_enforced():
    with pytest.raises(AxiomViolation) as exc:
        make_plausibility_measure(["s1"], {(): Fraction(1, 2), ("s1",): 1}, UNIT)
    assert exc.value.axiom == "Pl1"
    with pytest.raises(AxiomViolation) as exc:
        make_plausibility_measure(["s1"], {(): 0, ("s1",): Fraction(1, 2)}, UNIT)
    assert exc.value.axiom == "Pl2"


def test_assignment_must_cover_powerset():
    with pytest.raises(GeuError):
        make_plausibility_measure(["s1", "s2"], {(): 0, ("s1", "s2"): 1}, UNIT)


def test_state_cap():
    states = [f"s{i}" for i in range(17)]
    with pytest.raises(TooLarge):
        make_plausibility_measure(states, {}, UNIT)


def test_probability_set_point_masses():
    dom, pl = make_pl_from_probability_set(S3, [("P0", {"s1": 1}), ("P1", {"s3": 1})])
    assert pl.of(["s1"]) == Vec.of({"P0": 1, "P1": 0})
    assert pl.of([]) == dom.bottom
    assert pl.of(S3) == dom.top


def test_probability_set_mixed():
    uniform = {s: Fraction(1, 3) for s in S3}
    _, pl = make_pl_from_probability_set(S3, [("u", uniform), ("d", {"s1": 1})])
    assert pl.of(["s1", "s2"]) == Vec.of({"u": Fraction(2, 3), "d": 1})


def test_probability_set_rejects_bad_measure():
    with pytest.raises(NotAProbability) as exc:
        make_pl_from_probability_set(S3, [("bad", {"s1": Fraction(1, 2)})])
    assert exc.value.name == "bad"


def test_recover_probability_set_roundtrip():
    named = [("P0", {"s1": Fraction(1, 2), "s2": Fraction(1, 2), "s3": Fraction(0)}),
             ("P1", {"s3": Fraction(1)})]
    _, pl = make_pl_from_probability_set(S3, named)
    recovered = recover_probability_set(pl)
    assert recovered is not None
    assert dict(recovered)["P0"]["s1"] == Fraction(1, 2)
    assert dict(recovered)["P1"]["s3"] == 1


def test_recover_rejects_non_credal():
    pl = probability_measure(S3, {s: Fraction(1, 3) for s in S3})
    assert recover_probability_set(pl) is None
