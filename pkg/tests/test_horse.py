from fractions import Fraction

import pytest

from geu.domains import (finite_domain, reals_domain, reals_with_inf_domain,
                         unit_interval_domain)
from geu.exceptions import GeuError, MissingOuterPart
from geu.expectation import make_expectation_domain, standard_expectation_domain
from geu.horse import AAProblem, extend_utility, flatten, horse_geu
from geu.lottery import Lottery, LotteryDecisionSituation
from geu.plausibility import probability_measure
from geu.problems import geu
from geu.rules import rule_geu
from geu.values import POS_INF

UNIT = unit_interval_domain()
E = standard_expectation_domain(verify=False)


def nested_problem():
    lA = Lottery.from_atoms({"c0": Fraction(1, 2), "c2": Fraction(1, 2)})
    lB = Lottery.from_atoms({"c2": Fraction(1, 2), "c4": Fraction(1, 2)})
    inner = LotteryDecisionSituation(("c0", "c2", "c4"), UNIT, (("lA", lA), ("lB", lB)))
    pr = probability_measure(["t1", "t2"], {"t1": Fraction(1, 2), "t2": Fraction(1, 2)})
    return AAProblem.from_maps(["t1", "t2"], inner,
                               {"h1": {"t1": "lA", "t2": "lB"},
                                "h2": {"t1": "lB", "t2": "lB"}},
                               E, {"c0": 0, "c2": 2, "c4": 4},
                               outer_e=E, measure=pr)


def test_extend_utility_degenerate():
    inner = LotteryDecisionSituation(("c",), UNIT,
                                     (("l", Lottery.degenerate_on("c", UNIT)),))
    p = AAProblem.from_maps(["t"], inner, {"h": {"t": "l"}}, E, {"c": Fraction(9, 2)})
    assert extend_utility(p, "l") == Fraction(9, 2)


def test_extend_utility_even_split():
    lot = Lottery.from_atoms({"z": Fraction(1, 2), "two": Fraction(1, 2)})
    inner = LotteryDecisionSituation(("two", "z"), UNIT, (("l", lot),))
    p = AAProblem.from_maps(["t"], inner, {"h": {"t": "l"}}, E, {"z": 0, "two": 2})
    assert extend_utility(p, "l") == 1


def test_extend_utility_worst_case_inner():
    # inner expectation with min-fold: a degenerate lottery still returns its utility
    two = finite_domain([0, 1], order_pairs=[(0, 1)], bottom=Fraction(0), top=Fraction(1))
    e_min = make_expectation_domain(
        reals_domain(), two, reals_with_inf_domain(),
        otimes=lambda pl, x: x if pl == 1 else POS_INF, oplus=min, probe=200)
    table = {(): Fraction(0), ("c",): Fraction(1)}
    lot = Lottery.from_table(["c"], table, two)
    inner = LotteryDecisionSituation(("c",), two, (("l", lot),))
    p = AAProblem.from_maps(["t"], inner, {"h": {"t": "l"}}, e_min, {"c": 5})
    assert extend_utility(p, "l") == 5


def test_horse_geu_nested_value():
    p = nested_problem()
    assert extend_utility(p, "lA") == 1
    assert extend_utility(p, "lB") == 3
    assert horse_geu(p, "h1") == 2
    assert horse_geu(p, "h2") == 3


def test_horse_geu_constant_degenerate():
    inner = LotteryDecisionSituation(("c",), UNIT,
                                     (("l", Lottery.degenerate_on("c", UNIT)),))
    pr = probability_measure(["t1", "t2"], {"t1": 1})
    p = AAProblem.from_maps(["t1", "t2"], inner,
                            {"h": {"t1": "l", "t2": "l"}},
                            E, {"c": Fraction(3, 4)}, outer_e=E, measure=pr)
    assert horse_geu(p, "h") == Fraction(3, 4)


def test_horse_geu_needs_outer_part():
    inner = LotteryDecisionSituation(("c",), UNIT,
                                     (("l", Lottery.degenerate_on("c", UNIT)),))
    p = AAProblem.from_maps(["t"], inner, {"h": {"t": "l"}}, E, {"c": 0})
    with pytest.raises(MissingOuterPart):
        horse_geu(p, "h")
    with pytest.raises(MissingOuterPart):
        flatten(p)


def test_flatten_preserves_expectations():
    p = nested_problem()
    flat = flatten(p)
    for name, _ in p.horses:
        assert geu(flat, name) == horse_geu(p, name)
    rel = rule_geu(flat)
    assert rel.classify("h1", "h2") == "<"


def test_flatten_degenerate_only_is_plain_act_problem():
    inner = LotteryDecisionSituation(
        ("x", "y"), UNIT,
        (("lx", Lottery.degenerate_on("x", UNIT)),
         ("ly", Lottery.degenerate_on("y", UNIT))))
    pr = probability_measure(["t1", "t2"], {"t1": Fraction(1, 2), "t2": Fraction(1, 2)})
    p = AAProblem.from_maps(["t1", "t2"], inner,
                            {"h": {"t1": "lx", "t2": "ly"}},
                            E, {"x": 0, "y": 4}, outer_e=E, measure=pr)
    flat = flatten(p)
    assert flat.utility == {"lx": 0, "ly": 4}
    assert geu(flat, "h") == 2 == horse_geu(p, "h")


def test_outer_utility_domain_must_match_inner_valuation():
    inner = LotteryDecisionSituation(("c",), UNIT,
                                     (("l", Lottery.degenerate_on("c", UNIT)),))
    pr = probability_measure(["t"], {"t": 1})
    bad_outer = make_expectation_domain(
        unit_interval_domain(), UNIT, unit_interval_domain(),
        otimes=lambda pl, x: pl * x, oplus=lambda x, y: min(x + y, Fraction(1)),
        probe=100)
    with pytest.raises(GeuError):
        AAProblem.from_maps(["t"], inner, {"h": {"t": "l"}}, E, {"c": 0},
                            outer_e=bad_outer, measure=pr)
