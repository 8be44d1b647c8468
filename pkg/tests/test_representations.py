import math
import random
from fractions import Fraction

import pytest

from geu.domains import check_order_properties, finite_domain
from geu.exceptions import (DomainMismatch, NotReflexive, NotRespectingUtility,
                            NotUniform, NotWeaklyRespectingUtility)
from geu.expectation import standard_expectation_domain
from geu.generators import (gen_belief_problem, gen_credal_problem,
                            gen_nonplaus_problem, gen_nonuniform_table,
                            gen_standard_problem, gen_uniform_table, gen_weak_table)
from geu.problems import geu, make_problem, relation_from_pairs, relation_equal
from geu.representations import (RuleTable, congruent, indistinguishable,
                                 is_uniform, represent_ordinal, represent_uniform,
                                 respects_utility, similar, tabulate, tau_identity,
                                 tau_maximin, tau_mmeu, tau_regret,
                                 weakly_respects_utility)
from geu.rules import rule_ceu, rule_eu, rule_geu, rule_maximin, rule_mmeu, rule_regret

E = standard_expectation_domain(verify=False)
S3 = ["s1", "s2", "s3"]


# --- comparison predicates ---------------------------------------------------------

def test_indistinguishable_beldr(beldr):
    assert indistinguishable(beldr, "a1", "a2")
    assert indistinguishable(beldr, "a1", "a1")


def test_indistinguishable_under_uniform(uniform_problem):
    assert indistinguishable(uniform_problem, "a1", "a2")


def test_congruent_ignores_valuation_parts(uniform_problem):
    swapped = make_problem(
        uniform_problem.situation.states, uniform_problem.situation.consequences,
        {a: uniform_problem.situation.act_map(a)
         for a in uniform_problem.situation.act_names},
        dict(uniform_problem.utility),
        expectation=standard_expectation_domain(verify=False),
        measure=uniform_problem.measure)
    assert congruent(swapped, uniform_problem)
    assert congruent(uniform_problem, uniform_problem)


def test_congruent_detects_rescaled_utility(beldr_reduct):
    doubled = make_problem(
        beldr_reduct.situation.states, beldr_reduct.situation.consequences,
        {a: beldr_reduct.situation.act_map(a)
         for a in beldr_reduct.situation.act_names},
        {c: 2 * v for c, v in beldr_reduct.utility.items()})
    assert not congruent(doubled, beldr_reduct)
    assert similar(doubled, beldr_reduct)  # positive scaling keeps the order


def test_similar_rejects_reversed_utility(beldr_reduct):
    negated = make_problem(
        beldr_reduct.situation.states, beldr_reduct.situation.consequences,
        {a: beldr_reduct.situation.act_map(a)
         for a in beldr_reduct.situation.act_names},
        {c: -v for c, v in beldr_reduct.utility.items()})
    assert not similar(negated, beldr_reduct)


def test_congruent_implies_similar_on_seeds():
    for i in range(10):
        rng = random.Random(500 + i)
        d = gen_standard_problem(rng)
        assert congruent(d, d) and similar(d, d)


def test_respects_utility_examples(beldr_reduct):
    assert respects_utility(rule_maximin, beldr_reduct)
    # a table that ranks the constant act to the worse consequence on top
    d = make_problem(S3, ["lo", "hi"],
                     {"a": {s: "lo" for s in S3}, "b": {s: "hi" for s in S3}},
                     {"lo": 0, "hi": 1})
    bad = relation_from_pairs(["a", "b"], {("a", "a"), ("b", "b"), ("b", "a")})
    assert not respects_utility(bad, d)
    # no constant-utility acts: vacuously true
    d2 = make_problem(["s1", "s2"], ["x", "y"],
                      {"a": {"s1": "x", "s2": "y"}},
                      {"x": 0, "y": 1})
    assert respects_utility(relation_from_pairs(["a"], set()), d2)


def test_weak_vs_strong_respect():
    # act "m" has constant utility without being constant: strong sees it, weak does not
    d = make_problem(["s1", "s2"], ["x", "y", "z"],
                     {"m": {"s1": "x", "s2": "y"}, "k": {"s1": "z", "s2": "z"}},
                     {"x": 1, "y": 1, "z": 0})
    rel = relation_from_pairs(["m", "k"],
                              {("m", "m"), ("k", "k"), ("m", "k")})
    assert weakly_respects_utility(rel, d)      # only "k" is a constant act
    assert not respects_utility(rel, d)         # m (utility 1) ranked below k (0)


def test_is_uniform_verdicts(beldr, uniform_problem):
    assert not is_uniform(rule_ceu, beldr)
    assert is_uniform(rule_eu, uniform_problem)
    for i in range(5):
        rng = random.Random(600 + i)
        d = gen_standard_problem(rng)  # no twins forced: classes singleton
        assert is_uniform(rule_eu, d)


# --- the example transformations ---------------------------------------------------

def test_tau_maximin_beldr(beldr_reduct):
    t = tau_maximin(beldr_reduct)
    assert congruent(t, beldr_reduct)
    assert geu(t, "a1") == 1
    assert relation_equal(rule_geu(t), rule_maximin(beldr_reduct))


def test_tau_maximin_constant_act():
    d = make_problem(S3, ["c"], {"k": {s: "c" for s in S3}}, {"c": Fraction(7, 3)})
    t = tau_maximin(d)
    assert geu(t, "k") == Fraction(7, 3)


def test_tau_regret_beldr(beldr_reduct):
    t = tau_regret(beldr_reduct)
    assert congruent(t, beldr_reduct)
    assert math.isclose(geu(t, "a1"), 1.0, abs_tol=1e-9)  # best=3 minus regret 2
    assert relation_equal(rule_geu(t), rule_regret(beldr_reduct))


def test_tau_regret_single_act():
    d = make_problem(S3, ["c"], {"k": {s: "c" for s in S3}}, {"c": 4})
    t = tau_regret(d)
    assert math.isclose(geu(t, "k"), 4.0, abs_tol=1e-9)  # zero regret


def test_tau_mmeu_credal(credal_problem):
    t = tau_mmeu(credal_problem)
    assert congruent(t, credal_problem)
    vec = geu(t, "a1")
    assert vec.get("P0") == 1 and vec.get("P1") == 3
    assert relation_equal(rule_geu(t), rule_mmeu(credal_problem))


def test_tau_identity_is_geu_representation_of_eu(uniform_problem):
    t = tau_identity(uniform_problem)
    assert t is uniform_problem
    assert relation_equal(rule_geu(t), rule_eu(uniform_problem))


def test_tau_domain_mismatches(beldr):
    with pytest.raises(DomainMismatch):
        tau_mmeu(beldr)  # belief function is not a represented probability set
    nonnum = make_problem(["s1"], ["x"], {"a": {"s1": "x"}}, {"x": "x"},
                          u_domain=finite_domain(["x"], order_pairs=[]))
    with pytest.raises(DomainMismatch):
        tau_regret(nonnum)


def test_representation_checks_over_seeds():
    for i in range(25):
        rng = random.Random(700 + i)
        d = gen_nonplaus_problem(rng, clone=True)
        assert relation_equal(rule_geu(tau_maximin(d, probe=200)), rule_maximin(d))
        assert relation_equal(rule_geu(tau_regret(d, probe=200)), rule_regret(d))
        dc = gen_credal_problem(rng)
        assert relation_equal(rule_geu(tau_mmeu(dc, probe=200)), rule_mmeu(dc))


# --- constructive representations ---------------------------------------------------

def test_represent_uniform_nonplausibilistic_graphs():
    rng = random.Random(11)
    d = gen_nonplaus_problem(rng, clone=True)
    table = gen_uniform_table(rng, d)
    t = represent_uniform(d, table, probe=300)
    assert congruent(t, d)
    for a in d.situation.act_names:
        graph = frozenset((s, d.utility[c])
                          for s, c in zip(d.situation.states, d.situation.act_row(a)))
        assert geu(t, a) == graph
    assert relation_equal(rule_geu(t), table.relation)


def test_represent_uniform_plausibilistic_lotteries(beldr):
    table = tabulate(rule_maximin, beldr)
    t = represent_uniform(beldr, table, probe=300)
    assert congruent(t, beldr)
    # the fold lands on the act's utility lottery, as a set of (pl, u) pairs
    assert geu(t, "a1") == frozenset({(Fraction(0), Fraction(1)),
                                      (Fraction(0), Fraction(2)),
                                      (Fraction(0), Fraction(3))})
    assert relation_equal(rule_geu(t), table.relation)


def test_represent_uniform_rejects_ceu_table(beldr):
    with pytest.raises(NotUniform) as exc:
        represent_uniform(beldr, tabulate(rule_ceu, beldr))
    a1, a2, b1, b2 = exc.value.witness
    assert indistinguishable(beldr, a1, b1)
    assert indistinguishable(beldr, a2, b2)


def test_represent_uniform_rejects_non_respecting():
    d = make_problem(S3, ["lo", "hi"],
                     {"a": {s: "lo" for s in S3}, "b": {s: "hi" for s in S3}},
                     {"lo": 0, "hi": 1})
    bad = RuleTable(d, relation_from_pairs(["a", "b"],
                                           {("a", "a"), ("b", "b"), ("b", "a")}))
    with pytest.raises(NotRespectingUtility):
        represent_uniform(d, bad)


def test_represent_requires_reflexive_table(beldr_reduct):
    bare = RuleTable(beldr_reduct,
                     relation_from_pairs(["a1", "a2"], {("a1", "a2")}))
    with pytest.raises(NotReflexive):
        represent_uniform(beldr_reduct, bare)
    with pytest.raises(NotReflexive):
        represent_ordinal(beldr_reduct, bare)


def test_represent_ordinal_ceu(beldr):
    table = tabulate(rule_ceu, beldr)
    t = represent_ordinal(beldr, table, probe=300)
    assert similar(t, beldr)
    assert not congruent(t, beldr)  # utilities became (value, consequence) pairs
    assert relation_equal(rule_geu(t), table.relation)
    image = [t.measure.value_of_mask(m) for m in range(8)]
    report = check_order_properties(t.expectation.p, carrier=image)
    assert not report.antisymmetric


def test_represent_ordinal_accepts_uniform_tables():
    rng = random.Random(12)
    d = gen_standard_problem(rng, clone=True)
    table = gen_uniform_table(rng, d)
    t = represent_ordinal(d, table, probe=300)
    assert similar(t, d)
    assert relation_equal(rule_geu(t), table.relation)


def test_represent_ordinal_rejects_weak_violation():
    d = make_problem(S3, ["lo", "hi"],
                     {"a": {s: "lo" for s in S3}, "b": {s: "hi" for s in S3}},
                     {"lo": 0, "hi": 1})
    bad = RuleTable(d, relation_from_pairs(["a", "b"],
                                           {("a", "a"), ("b", "b"), ("b", "a")}))
    with pytest.raises(NotWeaklyRespectingUtility):
        represent_ordinal(d, bad)


def test_represent_ordinal_nonplausibilistic():
    rng = random.Random(13)
    d = gen_nonplaus_problem(rng)
    table = gen_weak_table(rng, d)
    t = represent_ordinal(d, table, probe=300)
    assert similar(t, d)
    assert relation_equal(rule_geu(t), table.relation)


def test_nonuniform_generator_is_detected():
    for i in range(10):
        rng = random.Random(900 + i)
        d = gen_belief_problem(rng, clone=True)
        table, planted = gen_nonuniform_table(rng, d)
        with pytest.raises(NotUniform):
            represent_uniform(d, table)


def test_regret_uniform_only_for_its_own_domain():
    # uniformity quantifies over a rule's domain: regret is uniform with
    # respect to utility-random-variable equality (its nonplausibilistic
    # inputs), not with respect to lottery equality under an added measure
    from geu.plausibility import probability_measure
    from geu.representations import uniformity_witness
    pr = probability_measure(["s1", "s2"], {"s1": Fraction(1, 2), "s2": Fraction(1, 2)})
    d = make_problem(["s1", "s2"], ["u0", "u5", "u10"],
                     {"a": {"s1": "u0", "s2": "u5"},
                      "b": {"s1": "u5", "s2": "u0"},
                      "c": {"s1": "u10", "s2": "u0"}},
                     {"u0": 0, "u5": 5, "u10": 10}, expectation=E, measure=pr)
    rel = rule_regret(d)
    assert uniformity_witness(rel, d) is not None
    assert uniformity_witness(rel, d.nonplausibilistic_reduct()) is None


def test_indistinguishable_acts_share_geu_in_congruent_domains():
    # the engine of the only-if direction: equal utility lotteries force equal
    # folds under any valuation machinery sharing the tastes and beliefs
    for i in range(10):
        rng = random.Random(1100 + i)
        d = gen_standard_problem(rng, clone=True)
        table = gen_uniform_table(rng, d)
        variants = [d, represent_uniform(d, table, probe=100)]
        acts = d.situation.act_names
        for a in acts:
            for b in acts:
                if not indistinguishable(d, a, b):
                    continue
                for v in variants:
                    assert geu(v, a) == geu(v, b)
