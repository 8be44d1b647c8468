import random
from fractions import Fraction

import pytest

from geu.domains import unit_interval_domain
from geu.exceptions import NotStandard, TooLarge, UnknownLottery
from geu.expectation import standard_expectation_domain
from geu.generators import (gen_injective_standard_problem, gen_lottery_situation,
                            gen_standard_lottery_situation)
from geu.lottery import (Lottery, LotteryDecisionProblem, LotteryDecisionSituation,
                         construct_situation, construct_situation_standard,
                         induce_lottery, induce_situation, is_lottery_uniform,
                         is_standard_lottery, lift_lottery_rule, lottery_geu,
                         lottery_rule_geu, lottery_uniform_witness)
from geu.problems import relation_equal, relation_from_pairs
from geu.rules import rule_geu

from .oracles import lottery_eu_by_atoms

UNIT = unit_interval_domain()
E = standard_expectation_domain(verify=False)


def lottery_problem(lotteries, utility):
    cons = tuple(sorted(utility))
    situation = LotteryDecisionSituation(cons, UNIT, tuple(lotteries.items()))
    return LotteryDecisionProblem(situation, E, {c: Fraction(v) for c, v in utility.items()})


def test_lottery_geu_degenerate():
    lp = lottery_problem({"l": Lottery.degenerate_on("c", UNIT)}, {"c": 7})
    assert lottery_geu(lp, "l") == 7


def test_lottery_geu_uniform_three_way():
    lot = Lottery.from_atoms({"u1": Fraction(1, 3), "u2": Fraction(1, 3),
                              "u3": Fraction(1, 3)})
    lp = lottery_problem({"l": lot}, {"u1": 1, "u2": 2, "u3": 3})
    assert lottery_geu(lp, "l") == 2
    assert lottery_eu_by_atoms(lot, lp.utility) == 2


def test_lottery_geu_unknown_name():
    lp = lottery_problem({"l": Lottery.degenerate_on("c", UNIT)}, {"c": 0})
    with pytest.raises(UnknownLottery):
        lottery_geu(lp, "zzz")


def test_induce_uniform_probability(uniform_problem):
    lot = induce_lottery(uniform_problem.plaus_situation(), "a1")
    assert lot.support == ("1", "2", "3")
    assert lot.atom("1") == Fraction(1, 3)
    assert is_standard_lottery(lot)


def test_induce_constant_act_degenerate(uniform_problem):
    from geu.problems import make_problem
    d = make_problem(uniform_problem.situation.states, ["c"],
                     {"k": {s: "c" for s in uniform_problem.situation.states}},
                     {"c": 0}, expectation=uniform_problem.expectation,
                     measure=uniform_problem.measure)
    lot = induce_lottery(d.plaus_situation(), "k")
    assert lot.degenerate
    assert lot.atom("c") == 1


def test_induce_under_belief(beldr):
    lot = induce_lottery(beldr.plaus_situation(), "a1")
    assert lot.of(["1", "2"]) == 1
    assert all(lot.atom(c) == 0 for c in lot.support)


def test_induce_situation_collapses_duplicates(uniform_problem):
    from geu.problems import make_problem
    acts = {a: uniform_problem.situation.act_map(a)
            for a in uniform_problem.situation.act_names}
    acts["twin"] = dict(acts["a1"])
    d = make_problem(uniform_problem.situation.states,
                     uniform_problem.situation.consequences, acts,
                     dict(uniform_problem.utility),
                     expectation=uniform_problem.expectation,
                     measure=uniform_problem.measure)
    ls = induce_situation(d.plaus_situation())
    # a1 and a2 induce the same uniform lottery; the twin collapses too
    assert len(ls.lottery_set()) == 1


def test_construct_single_uniform_lottery():
    lot = Lottery.from_atoms({"c1": Fraction(1, 2), "c2": Fraction(1, 2)})
    ls = LotteryDecisionSituation(("c1", "c2"), UNIT, (("l", lot),))
    ps = construct_situation(ls)
    assert len(ps.situation.states) == 2
    assert ps.measure.of([ps.situation.states[0]]) == Fraction(1, 2)
    assert induce_lottery(ps, "l") == lot


def test_construct_degenerate_lottery():
    lot = Lottery.degenerate_on("c", UNIT)
    ls = LotteryDecisionSituation(("c",), UNIT, (("l", lot),))
    ps = construct_situation(ls)
    assert len(ps.situation.states) == 1
    assert induce_lottery(ps, "l") == lot


def test_construct_roundtrip_general_seeded():
    for i in range(30):
        rng = random.Random(5000 + i)
        ls = gen_lottery_situation(rng)
        ps = construct_situation(ls)
        assert ps.measure.fully_validated
        for name, lot in ls.lotteries:
            if name in ps.situation.act_names:
                assert induce_lottery(ps, name) == lot
        back = induce_situation(ps)
        want, got = ls.lottery_set(), back.lottery_set()
        assert len(want) == len(got)
        assert all(any(w == g for g in got) for w in want)


def test_construct_cap():
    def atoms(i):
        weights = {f"c{j}": 1 for j in range(5)}
        weights[f"c{i % 5}"] = 4 + i
        total = sum(weights.values())
        return {c: Fraction(w, total) for c, w in weights.items()}

    lots = tuple((f"l{i}", Lottery.from_atoms(atoms(i))) for i in range(8))
    ls = LotteryDecisionSituation(tuple(f"c{j}" for j in range(5)), UNIT, lots)
    with pytest.raises(TooLarge):
        construct_situation(ls)


def test_construct_roundtrip_lazy_backend():
    # product of supports above the tabulation limit: the measure is computed
    # on demand but the induced lotteries still match exactly
    la = Lottery.from_atoms({f"c{j}": Fraction(1, 5) for j in range(5)})
    lb = Lottery.from_atoms({"c0": Fraction(1, 4), "c1": Fraction(1, 4),
                             "c2": Fraction(1, 4), "c3": Fraction(1, 4)})
    ls = LotteryDecisionSituation(tuple(f"c{j}" for j in range(5)), UNIT,
                                  (("la", la), ("lb", lb)))
    ps = construct_situation(ls)
    assert len(ps.situation.states) == 20
    assert not ps.measure.fully_validated
    assert induce_lottery(ps, "la") == la
    assert induce_lottery(ps, "lb") == lb


def test_construct_standard_breakpoints():
    la = Lottery.from_atoms({"c1": Fraction(1, 2), "c2": Fraction(1, 2)})
    lb = Lottery.from_atoms({"c1": Fraction(1, 3), "c2": Fraction(2, 3)})
    ls = LotteryDecisionSituation(("c1", "c2"), UNIT, (("la", la), ("lb", lb)))
    ps = construct_situation_standard(ls)
    assert ps.situation.states == ("[0,1/3)", "[1/3,1/2)", "[1/2,1)")
    assert induce_lottery(ps, "la") == la
    assert induce_lottery(ps, "lb") == lb


def test_construct_standard_degenerate():
    lot = Lottery.from_atoms({"c": 1})
    ls = LotteryDecisionSituation(("c",), UNIT, (("l", lot),))
    ps = construct_situation_standard(ls)
    assert ps.situation.states == ("[0,1)",)


def test_construct_standard_rejects_general_lottery():
    table = {(): 0, ("c1",): Fraction(1, 4), ("c2",): Fraction(1, 4), ("c1", "c2"): 1}
    lot = Lottery.from_table(["c1", "c2"], table, UNIT)
    ls = LotteryDecisionSituation(("c1", "c2"), UNIT, (("l", lot),))
    with pytest.raises(NotStandard):
        construct_situation_standard(ls)


def test_construct_standard_roundtrip_seeded():
    for i in range(30):
        rng = random.Random(6000 + i)
        ls = gen_standard_lottery_situation(rng)
        ps = construct_situation_standard(ls)
        for name, lot in ls.lotteries:
            if name in ps.situation.act_names:
                assert induce_lottery(ps, name) == lot


def test_lottery_uniformity_verdicts(uniform_problem):
    ps = uniform_problem.plaus_situation()
    rel = rule_geu(uniform_problem)  # ties everywhere here
    assert is_lottery_uniform(ps, rel)
    split = relation_from_pairs(("a1", "a2"),
                                {("a1", "a1"), ("a2", "a2"), ("a1", "a2")})
    # a1 and a2 induce the same uniform lottery but are treated differently
    assert lottery_uniform_witness(ps, split) is not None


def test_lifted_rule_matches_act_geu():
    for i in range(15):
        rng = random.Random(7000 + i)
        d = gen_injective_standard_problem(rng)
        lifted = lift_lottery_rule(lottery_rule_geu)(d)
        assert relation_equal(lifted, rule_geu(d))
        assert is_lottery_uniform(d.plaus_situation(), lifted)


def test_lifted_rule_ties_equal_lotteries(uniform_problem):
    lifted = lift_lottery_rule(lottery_rule_geu)(uniform_problem)
    assert lifted.classify("a1", "a2") == "~"


def test_constructed_situation_feeds_rule_evaluation():
    # full circle: a lottery situation becomes an act problem whose per-cell
    # plausibilities are the original atoms, so with injective utilities the
    # act-level fold reproduces the lottery-level fold
    from geu.problems import geu as act_geu, make_problem
    for i in range(10):
        rng = random.Random(9000 + i)
        ls = gen_standard_lottery_situation(rng)
        ps = construct_situation(ls)
        values = set()
        while len(values) < len(ls.consequences):
            values.add(Fraction(rng.randint(-20, 20), rng.randint(1, 5)))
        utility = dict(zip(ls.consequences, sorted(values)))
        lp = LotteryDecisionProblem(ls, E, utility)
        d = make_problem(ps.situation.states, ps.situation.consequences,
                         {a: ps.situation.act_map(a) for a in ps.situation.act_names},
                         utility, expectation=E, measure=ps.measure)
        for name in ps.situation.act_names:
            assert act_geu(d, name) == lottery_geu(lp, name)


def test_standard_lottery_fold_is_atom_sum():
    # on additive rational lotteries the generalized fold is the plain
    # probability-weighted sum, exhaustively over seeded situations
    for i in range(25):
        rng = random.Random(8000 + i)
        ls = gen_standard_lottery_situation(rng)
        utility = {c: Fraction(rng.randint(-20, 20), rng.randint(1, 5))
                   for c in ls.consequences}
        lp = LotteryDecisionProblem(ls, E, utility)
        for name, lot in ls.lotteries:
            assert lottery_geu(lp, name) == lottery_eu_by_atoms(lot, utility)
