"""The decision-rule catalogue.

Every rule is a total function from (its domain of) decision problems to
preference relations on the problem's acts.  Worst-case rules (maximin,
minimax regret) read only the nonplausibilistic part of a problem; the
expected-utility family needs a measure.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Callable, Mapping, Optional

from .exceptions import (GeuError, NonNumericUtility, NotABeliefFunction,
                         NotCredalProblem, NotPlausibilistic, NotStandard,
                         NotStandardDomain, NotTotallyOrdered)
from .plausibility import PlausibilityMeasure, make_plausibility_measure, recover_probability_set, unit_interval_domain
from .problems import (DecisionProblem, PreferenceRelation, geu,
                       is_standard_problem, relation_from_scores, standard_eu,
                       utility_rv)
from .values import Value, canon_key, is_number


@dataclass(frozen=True)
class DecisionRule:
    name: str
    applicability: Callable  # problem -> None (applies) | str (reason it does not)
    scores: Callable         # problem -> {act: Value}
    order: Callable          # problem -> leq on score values

    def applies(self, d: DecisionProblem) -> bool:
        return self.applicability(d) is None

    def __call__(self, d: DecisionProblem) -> PreferenceRelation:
        reason = self.applicability(d)
        if reason is not None:
            raise GeuError(f"rule {self.name} does not apply: {reason}")
        leq = self.order(d)
        return relation_from_scores(d.situation.act_names, self.scores(d), leq)


# --- expected-utility family ------------------------------------------------

def _geu_applicability(d):
    return None if d.plausibilistic else "problem is not plausibilistic"


def rule_geu(d: DecisionProblem) -> PreferenceRelation:
    if not d.plausibilistic:
        raise NotPlausibilistic("GEU needs a plausibilistic problem")
    scores = {a: geu(d, a) for a in d.situation.act_names}
    return relation_from_scores(d.situation.act_names, scores, d.expectation.v_leq)


def _eu_applicability(d):
    if not d.plausibilistic:
        return "problem is not plausibilistic"
    if not is_standard_problem(d):
        return "problem is not standard (needs the standard domain and a probability measure)"
    return None


def rule_eu(d: DecisionProblem) -> PreferenceRelation:
    reason = _eu_applicability(d)
    if reason:
        raise NotStandard(reason)
    scores = {a: standard_eu(d, a) for a in d.situation.act_names}
    return relation_from_scores(d.situation.act_names, scores, lambda x, y: x <= y)


# --- worst-case rules -------------------------------------------------------

def _totally_ordered_utilities(d) -> bool:
    dom = d.u_domain
    if dom.total is True:
        return True
    if dom.total is False:
        return False
    vals = sorted(set(map(canon_key, d.utility.values())))
    elems = [d.utility[c] for c in d.situation.consequences]
    return all(dom.leq(x, y) or dom.leq(y, x) for x in elems for y in elems)


def _maximin_applicability(d):
    if not _totally_ordered_utilities(d):
        return "utility domain is not totally ordered"
    return None


def worst_case_value(d: DecisionProblem, act: str) -> Value:
    """Least utility the act can realize, under the utility order."""
    rv = utility_rv(d, act)
    leq = d.u_domain.leq
    worst = None
    for s in d.situation.states:
        x = rv[s]
        if worst is None or leq(x, worst):
            worst = x
    return worst


def rule_maximin(d: DecisionProblem) -> PreferenceRelation:
    reason = _maximin_applicability(d)
    if reason:
        raise NotTotallyOrdered(reason)
    scores = {a: worst_case_value(d, a) for a in d.situation.act_names}
    return relation_from_scores(d.situation.act_names, scores, d.u_domain.leq)


def _numeric_utilities(d) -> bool:
    return all(is_number(v) for v in d.utility.values())


def _regret_applicability(d):
    if not _numeric_utilities(d):
        return "regret needs real-valued utilities"
    return None


def regret_table(d: DecisionProblem) -> dict:
    """Per-act maximal regret: max over states of (best utility there - own)."""
    if not _numeric_utilities(d):
        raise NonNumericUtility("regret needs real-valued utilities")
    rvs = {a: utility_rv(d, a) for a in d.situation.act_names}
    best = {s: max(rvs[a][s] for a in d.situation.act_names) for s in d.situation.states}
    return {a: max(best[s] - rvs[a][s] for s in d.situation.states)
            for a in d.situation.act_names}


def rule_regret(d: DecisionProblem) -> PreferenceRelation:
    reason = _regret_applicability(d)
    if reason:
        raise NonNumericUtility(reason)
    scores = regret_table(d)
    # Lower regret is better, so the preference order reverses the scores.
    return relation_from_scores(d.situation.act_names, scores, lambda x, y: x >= y)


# --- worst-case expected utility over a credal set ---------------------------

def _credal_measures(d):
    if not d.plausibilistic:
        return None
    return recover_probability_set(d.measure)


def _mmeu_applicability(d):
    if not d.plausibilistic:
        return "problem is not plausibilistic"
    if _credal_measures(d) is None:
        return "plausibility measure is not a represented set of probability measures"
    if not _numeric_utilities(d):
        return "worst-case expected utility needs real-valued utilities"
    return None


def min_expected_utility(d: DecisionProblem, act: str) -> Value:
    measures = _credal_measures(d)
    if measures is None:
        raise NotCredalProblem("measure does not represent a probability set")
    rv = utility_rv(d, act)
    best = None
    for _, atoms in measures:
        eu = sum((atoms[s] * rv[s] for s in d.situation.states), Fraction(0))
        if best is None or eu < best:
            best = eu
    return best


def rule_mmeu(d: DecisionProblem) -> PreferenceRelation:
    reason = _mmeu_applicability(d)
    if reason:
        raise NotCredalProblem(reason)
    scores = {a: min_expected_utility(d, a) for a in d.situation.act_names}
    return relation_from_scores(d.situation.act_names, scores, lambda x, y: x <= y)


# --- Choquet expected utility ------------------------------------------------

def choquet_expectation(nu, rv: Mapping) -> Value:
    """Choquet integral of a utility random variable against a nonadditive
    probability: u1 + sum over ascending levels of nu(upper set)*(step)."""
    measure = nu.measure if isinstance(nu, BeliefFunction) else nu
    levels = sorted(set(rv.values()))
    if not all(is_number(x) for x in levels):
        raise NonNumericUtility("Choquet integration needs real-valued utilities")
    total = levels[0]
    for i in range(1, len(levels)):
        upper_mask = 0
        for j, s in enumerate(measure.states):
            if rv[s] >= levels[i]:
                upper_mask |= 1 << j
        total = total + measure.value_of_mask(upper_mask) * (levels[i] - levels[i - 1])
    return total


def _ceu_applicability(d):
    if not d.plausibilistic:
        return "problem is not plausibilistic"
    if d.expectation.kind != "standard":
        return "Choquet expected utility needs the standard expectation domain"
    if d.measure.p_domain.kind != "unit":
        return "measure must take values in the unit interval"
    if not _numeric_utilities(d):
        return "Choquet expected utility needs real-valued utilities"
    return None


def rule_ceu(d: DecisionProblem) -> PreferenceRelation:
    reason = _ceu_applicability(d)
    if reason:
        raise NotStandardDomain(reason)
    scores = {a: choquet_expectation(d.measure, utility_rv(d, a))
              for a in d.situation.act_names}
    return relation_from_scores(d.situation.act_names, scores, lambda x, y: x <= y)


# --- belief functions ---------------------------------------------------------

def _mobius_transform(measure: PlausibilityMeasure):
    n = len(measure.states)
    m = [Fraction(0)] * (1 << n)
    for mask in range(1 << n):
        total = measure.value_of_mask(mask)
        sub = (mask - 1) & mask
        acc = Fraction(0)
        while True:
            if sub != mask:
                acc += m[sub]
            if sub == 0:
                break
            sub = (sub - 1) & mask
        m[mask] = Fraction(total) - acc
    return m


def _k_monotone_order2(measure: PlausibilityMeasure) -> bool:
    n = len(measure.states)
    v = measure.value_of_mask
    for x in range(1 << n):
        for y in range(x, 1 << n):
            if v(x | y) + v(x & y) < v(x) + v(y):
                return False
    return True


def _k_monotone_order3(measure: PlausibilityMeasure):
    n = len(measure.states)
    if n > 5:
        return None  # direct triple sweep is too costly beyond this
    v = measure.value_of_mask
    masks = range(1 << n)
    for x in masks:
        for y in masks:
            for z in masks:
                lhs = v(x | y | z)
                rhs = (v(x) + v(y) + v(z)
                       - v(x & y) - v(x & z) - v(y & z)
                       + v(x & y & z))
                if lhs < rhs:
                    return False
    return True


@dataclass(frozen=True)
class BeliefFunction:
    """A [0,1]-valued plausibility measure with monotonicity diagnostics.

    ``totally_monotone`` is exact (nonnegative Moebius transform); the
    order-2/3 flags are the direct inequality sweeps, reported but not
    enforced so that plain nonadditive measures can still be wrapped.
    """
    measure: PlausibilityMeasure
    totally_monotone: Optional[bool]
    two_monotone: Optional[bool]
    three_monotone: Optional[bool]

    @staticmethod
    def from_table(states, assignment) -> "BeliefFunction":
        measure = make_plausibility_measure(states, assignment, unit_interval_domain())
        return BeliefFunction._wrap(measure)

    @staticmethod
    def from_masses(states, masses: Mapping) -> "BeliefFunction":
        """Build from a mass assignment on nonempty focal subsets (must sum to 1)."""
        states = tuple(states)
        index = {s: i for i, s in enumerate(states)}
        n = len(states)
        mass = [Fraction(0)] * (1 << n)
        for key, raw in masses.items():
            m = key if isinstance(key, int) else sum(1 << index[s] for s in key)
            if m == 0:
                raise GeuError("mass on the empty set is not allowed")
            val = Fraction(raw) if not isinstance(raw, Fraction) else raw
            if val < 0:
                raise GeuError(f"negative mass {val} on {key!r}")
            mass[m] += val
        if sum(mass) != 1:
            raise GeuError(f"masses sum to {sum(mass)}, not 1")
        table = {}
        for target in range(1 << n):
            total = Fraction(0)
            sub = target
            while True:
                total += mass[sub]
                if sub == 0:
                    break
                sub = (sub - 1) & target
            table[target] = total
        measure = make_plausibility_measure(states, table, unit_interval_domain())
        return BeliefFunction._wrap(measure)

    @staticmethod
    def _wrap(measure: PlausibilityMeasure) -> "BeliefFunction":
        n = len(measure.states)
        if n > 8:
            return BeliefFunction(measure, None, None, None)
        mobius = _mobius_transform(measure)
        totally = all(m >= 0 for m in mobius)
        two = True if totally else _k_monotone_order2(measure)
        three = True if totally else _k_monotone_order3(measure)
        return BeliefFunction(measure, totally, two, three)


def core_extreme_points(bel) -> list:
    """Extreme points of the set of probability measures dominating a belief
    function: one marginal vector per state permutation, deduplicated.

    For each permutation, state k gets bel(first k states) - bel(first k-1);
    any negative marginal means the input is not a belief function.
    """
    measure = bel.measure if isinstance(bel, BeliefFunction) else bel
    states = measure.states
    index = {s: i for i, s in enumerate(states)}
    seen = set()
    out = []
    for perm in permutations(states):
        mask = 0
        prev = Fraction(0)
        atoms = {}
        for s in perm:
            mask |= 1 << index[s]
            cur = Fraction(measure.value_of_mask(mask))
            margin = cur - prev
            if margin < 0:
                raise NotABeliefFunction((perm, s, margin))
            atoms[s] = margin
            prev = cur
        key = tuple(atoms[s] for s in states)
        if key not in seen:
            seen.add(key)
            out.append(atoms)
    out.sort(key=lambda a: tuple(a[s] for s in states))
    return out


# --- registry -----------------------------------------------------------------

RULES = {
    "geu": DecisionRule("geu", _geu_applicability,
                        lambda d: {a: geu(d, a) for a in d.situation.act_names},
                        lambda d: d.expectation.v_leq),
    "eu": DecisionRule("eu", _eu_applicability,
                       lambda d: {a: standard_eu(d, a) for a in d.situation.act_names},
                       lambda d: (lambda x, y: x <= y)),
    "maximin": DecisionRule("maximin", _maximin_applicability,
                            lambda d: {a: worst_case_value(d, a) for a in d.situation.act_names},
                            lambda d: d.u_domain.leq),
    "regret": DecisionRule("regret", _regret_applicability,
                           lambda d: regret_table(d),
                           lambda d: (lambda x, y: x >= y)),
    "mmeu": DecisionRule("mmeu", _mmeu_applicability,
                         lambda d: {a: min_expected_utility(d, a) for a in d.situation.act_names},
                         lambda d: (lambda x, y: x <= y)),
    "ceu": DecisionRule("ceu", _ceu_applicability,
                        lambda d: {a: choquet_expectation(d.measure, utility_rv(d, a))
                                   for a in d.situation.act_names},
                        lambda d: (lambda x, y: x <= y)),
}
