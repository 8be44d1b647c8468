"""Seeded property suites: the machine-checkable content of the library.

Each suite runs ``count`` independent cases; case ``i`` of a run with base
seed ``s`` uses ``random.Random(s * 1_000_003 + i)``, so failures are
reproducible from the reported case seed alone.  Suites return pass/fail
counts plus the first failure (with a witness, shrunk over acts where that
is cheap).
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from . import generators as gen
from .domains import check_order_properties, unit_interval_domain
from .exceptions import AxiomViolation, GeuError, NotUniform
from .expectation import standard_expectation_domain
from .lottery import (construct_situation, construct_situation_standard,
                      induce_lottery, induce_situation, is_lottery_uniform,
                      lift_lottery_rule, lottery_rule_geu)
from .plausibility import make_plausibility_measure
from .problems import geu, make_problem, relation_equal, standard_eu
from .representations import (congruent, indistinguishable, represent_ordinal,
                              represent_uniform, respects_utility, similar,
                              tabulate, tau_maximin, tau_mmeu, tau_regret,
                              uniformity_witness, weakly_respects_utility)
from .rules import (choquet_expectation, core_extreme_points, rule_ceu,
                    rule_eu, rule_geu, rule_maximin, rule_mmeu, rule_regret)
from .values import render_value


@dataclass
class SuiteResult:
    name: str
    cases: int
    passed: int
    failed: int
    first_failure: Optional[dict] = None
    note: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.failed == 0


def _case_seed(base_seed: int, i: int) -> int:
    return base_seed * 1_000_003 + i


def _run_cases(name, base_seed, count, case_fn) -> SuiteResult:
    passed = failed = 0
    first = None
    for i in range(count):
        seed = _case_seed(base_seed, i)
        rng = random.Random(seed)
        try:
            message = case_fn(rng, i)
        except GeuError as e:
            message = f"{type(e).__name__}: {e}"
        except AssertionError as e:
            message = f"assertion: {e}"
        if message is None:
            passed += 1
        else:
            failed += 1
            if first is None:
                first = {"case": i, "seed": seed, "message": message}
    return SuiteResult(name, count, passed, failed, first)


def _shrink_acts(d, fails: Callable):
    """Drop acts one at a time while the failure persists; returns the
    smallest failing problem found."""
    current = d
    improved = True
    while improved and len(current.situation.act_names) > 2:
        improved = False
        for drop in current.situation.act_names:
            names = [a for a in current.situation.act_names if a != drop]
            if len(names) < 2:
                continue
            acts = {a: current.situation.act_map(a) for a in names}
            smaller = make_problem(current.situation.states,
                                   current.situation.consequences, acts,
                                   dict(current.utility),
                                   u_domain=current.u_domain,
                                   expectation=current.expectation,
                                   measure=current.measure)
            if fails(smaller):
                current = smaller
                improved = True
                break
    return current


def _describe(d) -> str:
    return (f"|S|={len(d.situation.states)} |A|={len(d.situation.act_names)} "
            f"acts={list(d.situation.act_names)}")


# --- individual suites --------------------------------------------------------------


def suite_edomain_axioms(base_seed, count, probe=1000) -> SuiteResult:
    """Law checks for the standard, worst-case, regret, and credal-set
    expectation domains; construction raises on any violation."""
    def case(rng, i):
        standard_expectation_domain(verify=True, seed=rng.randrange(1 << 30), probe=probe)
        d = gen.gen_nonplaus_problem(rng)
        tau_maximin(d, seed=rng.randrange(1 << 30), probe=probe)
        tau_regret(d, seed=rng.randrange(1 << 30), probe=probe)
        dc = gen.gen_credal_problem(rng)
        tau_mmeu(dc, seed=rng.randrange(1 << 30), probe=probe)
        return None
    return _run_cases("edomain-axioms", base_seed, count, case)


def suite_pl_axioms(base_seed, count) -> SuiteResult:
    """Constructed measures validate; a broken assignment is rejected with a witness."""
    unit = unit_interval_domain()

    def case(rng, i):
        gen.gen_standard_problem(rng)
        gen.gen_belief_problem(rng)
        gen.gen_credal_problem(rng)
        try:
            make_plausibility_measure(["s0", "s1"],
                                      {(): 0, ("s0",): 1, ("s1",): 0,
                                       ("s0", "s1"): Fraction(1, 2)}, unit)
            return "monotonicity violation was not rejected"
        except AxiomViolation as e:
            if e.axiom not in ("Pl2", "Pl3"):
                return f"wrong axiom reported: {e.axiom}"
        return None
    return _run_cases("pl-axioms", base_seed, count, case)


def suite_eu_geu(base_seed, count) -> SuiteResult:
    """The probability-weighted sum is the standard-domain special case of the
    generalized fold: exact equality act by act."""
    def case(rng, i):
        d = gen.gen_standard_problem(rng)
        for a in d.situation.act_names:
            if geu(d, a) != standard_eu(d, a):
                return f"geu != eu on act {a} ({_describe(d)})"
        return None
    return _run_cases("eu-geu", base_seed, count, case)


def _example_rep_suite(name, base_seed, count, gen_fn, tau, rule, probe):
    def case(rng, i):
        d = gen_fn(rng)

        def fails(problem):
            try:
                t = tau(problem, probe=200)
                base = problem if problem.plausibilistic else problem.nonplausibilistic_reduct()
                if not congruent(t, base):
                    return True
                return not relation_equal(rule_geu(t), rule(problem))
            except GeuError:
                return True

        t = tau(d, probe=probe)
        base = d if d.plausibilistic else d.nonplausibilistic_reduct()
        if not congruent(t, base):
            small = _shrink_acts(d, fails)
            return f"not congruent ({_describe(small)})"
        if not relation_equal(rule_geu(t), rule(d)):
            small = _shrink_acts(d, fails)
            return f"relation mismatch ({_describe(small)})"
        return None
    return _run_cases(name, base_seed, count, case)


def suite_maximin_rep(base_seed, count, probe=1000) -> SuiteResult:
    return _example_rep_suite("maximin-rep", base_seed, count,
                              lambda rng: gen.gen_nonplaus_problem(rng, clone=rng.random() < 0.5),
                              tau_maximin, rule_maximin, probe)


def suite_regret_rep(base_seed, count, probe=1000) -> SuiteResult:
    return _example_rep_suite("regret-rep", base_seed, count,
                              lambda rng: gen.gen_nonplaus_problem(rng, clone=rng.random() < 0.5),
                              tau_regret, rule_regret, probe)


def suite_mmeu_rep(base_seed, count, probe=1000) -> SuiteResult:
    return _example_rep_suite("mmeu-rep", base_seed, count,
                              lambda rng: gen.gen_credal_problem(rng, clone=rng.random() < 0.5),
                              tau_mmeu, rule_mmeu, probe)


def _mixed_problem(rng, i):
    kind = i % 3
    if kind == 0:
        return gen.gen_nonplaus_problem(rng, clone=True)
    if kind == 1:
        return gen.gen_standard_problem(rng, clone=True)
    return gen.gen_belief_problem(rng, clone=True)


def suite_thm2(base_seed, count, probe=1000) -> SuiteResult:
    """Constructive direction: a uniform, utility-respecting table is
    reproduced exactly by GEU over a congruent problem."""
    def case(rng, i):
        d = _mixed_problem(rng, i)
        table = gen.gen_uniform_table(rng, d)
        t = represent_uniform(d, table, probe=probe)
        if not congruent(t, d):
            return f"not congruent ({_describe(d)})"
        if not relation_equal(rule_geu(t), table.relation):
            return f"relation mismatch ({_describe(d)})"
        return None
    return _run_cases("thm2", base_seed, count, case)


def suite_thm2_reject(base_seed, count, probe=1000) -> SuiteResult:
    """Only-if direction at desk scale: a non-uniform table is rejected, and
    the reported witness really is an indistinguishable split."""
    def case(rng, i):
        d = _mixed_problem(rng, i)
        table, planted = gen.gen_nonuniform_table(rng, d)
        try:
            represent_uniform(d, table, probe=probe)
            return f"non-uniform table was represented (planted {planted})"
        except NotUniform as e:
            a1, a2, b1, b2 = e.witness
            if not indistinguishable(d, a1, b1) or not indistinguishable(d, a2, b2):
                return f"witness pairs not indistinguishable: {e.witness}"
            if table.relation.holds(a1, a2) == table.relation.holds(b1, b2):
                return f"witness does not split the table: {e.witness}"
        return None
    return _run_cases("thm2-reject", base_seed, count, case)


def suite_thm3(base_seed, count, probe=1000) -> SuiteResult:
    """Ordinal construction: any reflexive, weakly utility-respecting table is
    reproduced over a similar problem; the constructed plausibility order
    stops being antisymmetric whenever two events share a plausibility."""
    def case(rng, i):
        kind = i % 4
        if kind == 0:
            d = gen.gen_choquet_witness_problem(rng)
            table = tabulate(rule_ceu, d)
        elif kind == 1:
            d = gen.gen_standard_problem(rng, clone=True)
            table = gen.gen_weak_table(rng, d)
        elif kind == 2:
            d = gen.gen_credal_problem(rng, clone=True)
            table = gen.gen_weak_table(rng, d)
        else:
            d = gen.gen_nonplaus_problem(rng, clone=True)
            table = gen.gen_weak_table(rng, d)
        t = represent_ordinal(d, table, probe=probe)
        if not similar(t, d):
            return f"not similar ({_describe(d)})"
        if not relation_equal(rule_geu(t), table.relation):
            return f"relation mismatch ({_describe(d)})"
        if d.plausibilistic:
            n = len(d.situation.states)
            image = [t.measure.value_of_mask(m) for m in range(1 << n)]
            firsts = [d.measure.value_of_mask(m) for m in range(1 << n)]
            has_tie = len(set(map(repr, firsts))) < len(firsts)
            report = check_order_properties(t.expectation.p, carrier=image)
            if has_tie and report.antisymmetric:
                return "pair order antisymmetric despite shared plausibility values"
            if not report.reflexive or not report.transitive:
                return "pair order lost reflexivity or transitivity"
        return None
    return _run_cases("thm3", base_seed, count, case)


def suite_prop_a3(base_seed, count) -> SuiteResult:
    """Round-trip: constructing a plausibilistic situation from a lottery
    situation and inducing lotteries back reproduces them exactly, both in
    the general and the interval-partition (standard) construction."""
    def case(rng, i):
        ls = gen.gen_lottery_situation(rng)
        ps = construct_situation(ls)
        if ps.measure._values is not None and not ps.measure.fully_validated:
            return "constructed measure skipped validation"
        kept = {}
        for name, lot in ls.lotteries:
            if name in ps.situation.act_names:
                kept[name] = lot
        for name, lot in kept.items():
            if induce_lottery(ps, name) != lot:
                return f"general round-trip failed for {name}"
        back = induce_situation(ps)
        want = ls.lottery_set()
        got = back.lottery_set()
        if len(want) != len(got) or any(not any(w == g for g in got) for w in want):
            return "induced lottery set differs after dedup"

        sls = gen.gen_standard_lottery_situation(rng)
        pss = construct_situation_standard(sls)
        for name, lot in sls.lotteries:
            if name in pss.situation.act_names and induce_lottery(pss, name) != lot:
                return f"standard round-trip failed for {name}"
        return None
    return _run_cases("prop-a3", base_seed, count, case)


def suite_choquet_core(base_seed, count) -> SuiteResult:
    """The Choquet integral against a belief function equals the minimum
    expected utility over the core's extreme points (exact rationals), and
    every extreme point dominates the belief function."""
    def case(rng, i):
        n = rng.randint(2, 5)
        states = [f"s{k}" for k in range(n)]
        bel = gen.gen_belief_function(rng, states)
        core = core_extreme_points(bel)
        for atoms in core:
            for mask in range(1 << n):
                pr = sum((atoms[states[k]] for k in range(n) if mask >> k & 1), Fraction(0))
                if pr < bel.measure.value_of_mask(mask):
                    return f"core point fails to dominate on mask {mask}"
        for _ in range(5):
            rv = {s: gen.rational_in(rng) for s in states}
            cho = choquet_expectation(bel, rv)
            best = min(sum((atoms[s] * rv[s] for s in states), Fraction(0))
                       for atoms in core)
            if cho != best:
                return f"choquet {render_value(cho)} != core min {render_value(best)}"
        return None
    return _run_cases("choquet-core", base_seed, count, case)


def _with_constant_utility_act(d):
    cons = d.situation.consequences
    if len(cons) < 2:
        return d
    states = d.situation.states
    util = dict(d.utility)
    util[cons[1]] = util[cons[0]]
    acts = {a: d.situation.act_map(a) for a in d.situation.act_names}
    acts["kk"] = {s: cons[i % 2] for i, s in enumerate(states)}
    return make_problem(states, cons, acts, util, u_domain=d.u_domain,
                        expectation=d.expectation, measure=d.measure)


def suite_respect_matrix(base_seed, count) -> SuiteResult:
    """Expected-utility style rules order constant-utility acts by utility;
    regret is asserted only on constant acts (its strong status is recorded,
    not required)."""
    def case(rng, i):
        kind = i % 3
        if kind == 0:
            d = _with_constant_utility_act(gen.gen_standard_problem(rng, constant_acts=2))
            rules = [rule_eu, rule_geu, rule_ceu, rule_maximin]
        elif kind == 1:
            d = _with_constant_utility_act(gen.gen_belief_problem(rng, constant_acts=2))
            rules = [rule_ceu, rule_geu, rule_maximin]
        else:
            d = _with_constant_utility_act(gen.gen_credal_problem(rng, constant_acts=2))
            rules = [rule_mmeu, rule_geu, rule_maximin]
        for rule in rules:
            if not respects_utility(rule, d):
                return f"{rule.__name__} does not respect utility ({_describe(d)})"
        if not weakly_respects_utility(rule_regret, d):
            return f"regret does not weakly respect utility ({_describe(d)})"
        return None
    return _run_cases("respect-matrix", base_seed, count, case)


def suite_ceu_uniformity(base_seed, count) -> SuiteResult:
    """Choquet preference is not uniform: seeded problems in the
    indistinguishable-twin family always produce a verified witness."""
    samples = []

    def case(rng, i):
        d = gen.gen_choquet_witness_problem(rng)
        rel = rule_ceu(d)
        witness = uniformity_witness(rel, d)
        if witness is None:
            return f"expected a uniformity failure ({_describe(d)})"
        a1, a2, b1, b2 = witness
        if not indistinguishable(d, a1, b1) or not indistinguishable(d, a2, b2):
            return f"witness pairs not indistinguishable: {witness}"
        if rel.holds(a1, a2) == rel.holds(b1, b2):
            return f"witness does not split the relation: {witness}"
        if len(samples) < 3:
            samples.append(f"case {i}: {witness}")
        return None
    result = _run_cases("ceu-uniformity", base_seed, count, case)
    if samples:
        result.note = ("expected uniformity failures found, verified witnesses: "
                       + "; ".join(samples))
    return result


def suite_lottery_lift(base_seed, count) -> SuiteResult:
    """Lifting the lottery-level GEU rule through induced lotteries matches
    act-level GEU when utility random variables are injective, and lifted
    relations are always lottery-uniform."""
    def case(rng, i):
        d = gen.gen_injective_standard_problem(rng)
        lifted = lift_lottery_rule(lottery_rule_geu)(d)
        if not relation_equal(lifted, rule_geu(d)):
            return f"lifted relation differs from act-level GEU ({_describe(d)})"
        if not is_lottery_uniform(d.plaus_situation(), lifted):
            return "lifted relation is not lottery-uniform"
        return None
    return _run_cases("lottery-lift", base_seed, count, case)


def suite_rule_sanity(base_seed, count) -> SuiteResult:
    """Rule outputs are total preorders whenever the value order is total, and
    the expectation-style and worst-case rules are uniform (indistinguishable
    acts are interchangeable)."""
    def case(rng, i):
        kind = i % 3
        # worst-case rules live on the nonplausibilistic reduct, so their
        # uniformity is with respect to utility-random-variable equality
        if kind == 0:
            d = gen.gen_standard_problem(rng, clone=True)
            rels = [rule_eu(d), rule_geu(d), rule_ceu(d), rule_maximin(d), rule_regret(d)]
            uniform_rules = [("eu", rule_eu, d),
                             ("maximin", rule_maximin, d.nonplausibilistic_reduct()),
                             ("regret", rule_regret, d.nonplausibilistic_reduct())]
        elif kind == 1:
            d = gen.gen_belief_problem(rng, clone=True)
            rels = [rule_ceu(d), rule_maximin(d), rule_regret(d)]
            reduct = d.nonplausibilistic_reduct()
            uniform_rules = [("maximin", rule_maximin, reduct),
                             ("regret", rule_regret, reduct)]
        else:
            d = gen.gen_credal_problem(rng, clone=True)
            rels = [rule_mmeu(d), rule_maximin(d)]
            uniform_rules = [("mmeu", rule_mmeu, d),
                             ("maximin", rule_maximin, d.nonplausibilistic_reduct())]
            # GEU over the pointwise vector order is a partial preorder only.
            partial = rule_geu(d)
            if not (partial.is_reflexive() and partial.is_transitive()):
                return f"GEU output is not a preorder ({_describe(d)})"
        for rel in rels:
            if not (rel.is_reflexive() and rel.is_transitive() and rel.is_total()):
                return f"rule output is not a total preorder ({_describe(d)})"
        for name, rule, view in uniform_rules:
            witness = uniformity_witness(rule(view), view)
            if witness is not None:
                return f"{name} is not uniform: {witness} ({_describe(d)})"
        return None
    return _run_cases("rule-sanity", base_seed, count, case)


SUITES = {
    "edomain-axioms": suite_edomain_axioms,
    "pl-axioms": suite_pl_axioms,
    "eu-geu": suite_eu_geu,
    "maximin-rep": suite_maximin_rep,
    "regret-rep": suite_regret_rep,
    "mmeu-rep": suite_mmeu_rep,
    "thm2": suite_thm2,
    "thm2-reject": suite_thm2_reject,
    "thm3": suite_thm3,
    "prop-a3": suite_prop_a3,
    "choquet-core": suite_choquet_core,
    "respect-matrix": suite_respect_matrix,
    "ceu-uniformity": suite_ceu_uniformity,
    "lottery-lift": suite_lottery_lift,
    "rule-sanity": suite_rule_sanity,
}


def run_suites(seed=42, count=200, suite=None):
    names = [suite] if suite else list(SUITES)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise GeuError(f"unknown suite(s): {unknown}; known: {sorted(SUITES)}")
    return [SUITES[n](seed, count) for n in names]
