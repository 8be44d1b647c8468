"""Seeded random problems, measures, and rule tables for the property suites.

Everything is driven by a caller-supplied ``random.Random``; the same seed
always produces the same case.  Utilities are rationals in [-10, 10] with
small denominators so regret gaps stay far above the float tolerance.
"""
from __future__ import annotations

import random
from fractions import Fraction

from .expectation import credal_expectation_domain, standard_expectation_domain
from .lottery import Lottery, LotteryDecisionSituation
from .plausibility import make_pl_from_probability_set, make_plausibility_measure, probability_measure, unit_interval_domain
from .problems import DecisionProblem, make_problem, relation_from_pairs, utility_rv
from .representations import RuleTable, _constant_acts, _constant_utility_acts, _indistinguishability_classes
from .rules import BeliefFunction, choquet_expectation

_STANDARD = standard_expectation_domain()


def rational_in(rng: random.Random, lo=-10, hi=10, max_den=10) -> Fraction:
    den = rng.randint(1, max_den)
    return Fraction(rng.randint(lo * den, hi * den), den)


def _labels(prefix, n):
    return [f"{prefix}{i}" for i in range(n)]


def _random_acts(rng, states, consequences, n_acts):
    acts = {}
    for i in range(n_acts):
        acts[f"a{i}"] = {s: rng.choice(consequences) for s in states}
    return acts


def _base_parts(rng, max_states, max_acts, distinct_utilities=False):
    n_states = rng.randint(2, max_states)
    n_cons = rng.randint(2, 6)
    states = _labels("s", n_states)
    consequences = _labels("c", n_cons)
    if distinct_utilities:
        values = set()
        while len(values) < n_cons:
            values.add(rational_in(rng))
        utility = dict(zip(consequences, sorted(values)))
    else:
        utility = {c: rational_in(rng) for c in consequences}
    acts = _random_acts(rng, states, consequences, rng.randint(2, max_acts))
    return states, consequences, acts, utility


def _add_clone(rng, acts):
    """Duplicate one act's map under a new name (an indistinguishable twin)."""
    source = rng.choice(sorted(acts))
    acts[f"{source}x"] = dict(acts[source])
    return source, f"{source}x"


def _add_constant_acts(rng, states, consequences, acts, k):
    for i in range(k):
        c = rng.choice(consequences)
        acts[f"k{i}"] = {s: c for s in states}


def gen_nonplaus_problem(rng, max_states=6, max_acts=6, clone=False,
                         constant_acts=0) -> DecisionProblem:
    base_cap = max(2, max_acts - (1 if clone else 0))
    states, consequences, acts, utility = _base_parts(rng, max_states, base_cap)
    if clone:
        _add_clone(rng, acts)
    if constant_acts:
        _add_constant_acts(rng, states, consequences, acts, constant_acts)
    return make_problem(states, consequences, acts, utility)


def random_probability_atoms(rng, states):
    weights = [rng.randint(0, 8) for _ in states]
    if not any(weights):
        weights[rng.randrange(len(states))] = 1
    total = sum(weights)
    return {s: Fraction(w, total) for s, w in zip(states, weights)}


def gen_standard_problem(rng, max_states=6, max_acts=6, clone=False,
                         constant_acts=0) -> DecisionProblem:
    base_cap = max(2, max_acts - (1 if clone else 0))
    states, consequences, acts, utility = _base_parts(rng, max_states, base_cap)
    if clone:
        _add_clone(rng, acts)
    if constant_acts:
        _add_constant_acts(rng, states, consequences, acts, constant_acts)
    measure = probability_measure(states, random_probability_atoms(rng, states))
    return make_problem(states, consequences, acts, utility,
                        expectation=_STANDARD, measure=measure)


def gen_belief_function(rng, states) -> BeliefFunction:
    n = len(states)
    k = rng.randint(1, min(4, (1 << n) - 1))
    focal = set()
    while len(focal) < k:
        focal.add(rng.randint(1, (1 << n) - 1))
    weights = {mask: rng.randint(1, 5) for mask in focal}
    total = sum(weights.values())
    masses = {mask: Fraction(w, total) for mask, w in weights.items()}
    return BeliefFunction.from_masses(states, masses)


def gen_belief_problem(rng, max_states=5, max_acts=6, clone=False,
                       constant_acts=0) -> DecisionProblem:
    base_cap = max(2, max_acts - (1 if clone else 0))
    states, consequences, acts, utility = _base_parts(rng, max_states, base_cap)
    if clone:
        _add_clone(rng, acts)
    if constant_acts:
        _add_constant_acts(rng, states, consequences, acts, constant_acts)
    bel = gen_belief_function(rng, states)
    return make_problem(states, consequences, acts, utility,
                        expectation=_STANDARD, measure=bel.measure)


def gen_credal_problem(rng, max_states=6, max_acts=6, max_measures=4,
                       clone=False, constant_acts=0) -> DecisionProblem:
    base_cap = max(2, max_acts - (1 if clone else 0))
    states, consequences, acts, utility = _base_parts(rng, max_states, base_cap)
    if clone:
        _add_clone(rng, acts)
    if constant_acts:
        _add_constant_acts(rng, states, consequences, acts, constant_acts)
    k = rng.randint(1, max_measures)
    measures = [(f"P{i}", random_probability_atoms(rng, states)) for i in range(k)]
    _, pl = make_pl_from_probability_set(states, measures)
    e = credal_expectation_domain([name for name, _ in measures], verify=False)
    return make_problem(states, consequences, acts, utility, expectation=e, measure=pl)


# --- rule tables -----------------------------------------------------------------

def gen_uniform_table(rng, d: DecisionProblem) -> RuleTable:
    """A reflexive, uniform, utility-respecting relation: decided per
    indistinguishability class, with constant-utility classes forced to
    follow the utility order."""
    classes = _indistinguishability_classes(d)
    consts = _constant_utility_acts(d)
    class_util = []
    for cls in classes:
        u = consts.get(cls[0])
        class_util.append(u if all(a in consts for a in cls) else None)
    k = len(classes)
    decide = [[False] * k for _ in range(k)]
    for i in range(k):
        for j in range(k):
            if i == j:
                decide[i][j] = True
            elif class_util[i] is not None and class_util[j] is not None:
                decide[i][j] = d.u_domain.leq(class_util[i], class_util[j])
            else:
                decide[i][j] = rng.random() < 0.6
    pairs = set()
    for i in range(k):
        for j in range(k):
            if decide[i][j]:
                pairs.update((a, b) for a in classes[i] for b in classes[j])
    return RuleTable(d, relation_from_pairs(d.situation.act_names, pairs))


def gen_weak_table(rng, d: DecisionProblem) -> RuleTable:
    """Reflexive and weakly utility-respecting, otherwise arbitrary.

    Acts are functions, so two names carrying the same state-consequence map
    are the same act; the table is decided per map-equality class.
    """
    acts = d.situation.act_names
    consts = _constant_acts(d)
    by_row = {}
    for a in acts:
        by_row.setdefault(d.situation.act_row(a), []).append(a)
    classes = list(by_row.values())
    k = len(classes)
    decide = [[False] * k for _ in range(k)]
    for i in range(k):
        for j in range(k):
            ai, aj = classes[i][0], classes[j][0]
            if i == j:
                decide[i][j] = True
            elif ai in consts and aj in consts:
                decide[i][j] = d.u_domain.leq(consts[ai], consts[aj])
            else:
                decide[i][j] = rng.random() < 0.5
    pairs = set()
    for i in range(k):
        for j in range(k):
            if decide[i][j]:
                pairs.update((a, b) for a in classes[i] for b in classes[j])
    return RuleTable(d, relation_from_pairs(acts, pairs))


def gen_nonuniform_table(rng, d: DecisionProblem):
    """Start from a uniform table on a problem with an indistinguishable twin
    pair and split the pair against a third act.  Returns the table plus the
    planted witness quadruple."""
    classes = _indistinguishability_classes(d)
    twins = next((cls for cls in classes if len(cls) >= 2), None)
    if twins is None:
        raise ValueError("problem has no indistinguishable acts to split")
    a, b = twins[0], twins[1]
    others = [x for x in d.situation.act_names if x not in (a, b)]
    c = rng.choice(others) if others else a
    base = gen_uniform_table(rng, d)
    pairs = set(base.relation.pairs)
    pairs.add((a, c))
    pairs.discard((b, c))
    return (RuleTable(d, relation_from_pairs(d.situation.act_names, pairs)),
            (a, c, b, c))


# --- special problem families ------------------------------------------------------

def gen_choquet_witness_problem(rng) -> DecisionProblem:
    """A problem where Choquet preference splits an indistinguishable pair:
    all singleton preimages, a two-state focal set, and a permuted twin act
    whose Choquet integral differs."""
    n = rng.randint(3, 5)
    states = _labels("s", n)
    consequences = _labels("c", n)
    values = set()
    while len(values) < n:
        values.add(rational_in(rng))
    utility = dict(zip(consequences, sorted(values)))
    i, j = sorted(rng.sample(range(n), 2))
    focal = (states[i], states[j])
    bel = BeliefFunction.from_masses(states, {focal: 1})
    base_row = list(consequences)

    def problem_with(perm_row):
        acts = {"a0": dict(zip(states, base_row)), "a1": dict(zip(states, perm_row))}
        return make_problem(states, consequences, acts, utility,
                            expectation=_STANDARD, measure=bel.measure)

    candidates = [list(reversed(base_row))]
    for shift in range(1, n):
        candidates.append(base_row[shift:] + base_row[:shift])
    for row in candidates:
        d = problem_with(row)
        c0 = choquet_expectation(d.measure, utility_rv(d, "a0"))
        c1 = choquet_expectation(d.measure, utility_rv(d, "a1"))
        if c0 != c1:
            return d
    raise AssertionError("no permutation changed the Choquet integral")


def gen_injective_standard_problem(rng, max_states=5) -> DecisionProblem:
    """Standard problem whose acts are injective over distinct utilities, so
    induced lotteries carry exactly the expectation terms."""
    n = rng.randint(2, max_states)
    states = _labels("s", n)
    consequences = _labels("c", n + rng.randint(0, 2))
    values = set()
    while len(values) < len(consequences):
        values.add(rational_in(rng))
    utility = dict(zip(consequences, sorted(values)))
    acts = {}
    for i in range(rng.randint(2, 5)):
        row = rng.sample(consequences, n)
        acts[f"a{i}"] = dict(zip(states, row))
    measure = probability_measure(states, random_probability_atoms(rng, states))
    return make_problem(states, consequences, acts, utility,
                        expectation=_STANDARD, measure=measure)


# --- lottery situations ---------------------------------------------------------------

_CONSEQUENCE_POOL = ["c0", "c1", "c2", "c3", "c4"]


def _general_lottery(rng, support) -> Lottery:
    """Random lottery over the support: additive, possibility-style, or a
    squared (distorted) probability."""
    flavor = rng.randrange(3)
    if flavor == 0:
        atoms = {c: 1 + rng.randint(0, 5) for c in support}
        total = sum(atoms.values())
        return Lottery.from_atoms({c: Fraction(w, total) for c, w in atoms.items()})
    unit = unit_interval_domain()
    n = len(support)
    support = tuple(sorted(support))
    if flavor == 1:
        weights = {c: Fraction(rng.randint(0, 8), 8) for c in support}
        weights[rng.choice(support)] = Fraction(1)
        table = {}
        for mask in range(1 << n):
            members = [support[i] for i in range(n) if mask >> i & 1]
            table[mask] = max((weights[c] for c in members), default=Fraction(0))
        return Lottery(support, make_plausibility_measure(support, table, unit))
    atoms = {c: 1 + rng.randint(0, 5) for c in support}
    total = sum(atoms.values())
    table = {}
    for mask in range(1 << n):
        members = [support[i] for i in range(n) if mask >> i & 1]
        p = sum((Fraction(atoms[c], total) for c in members), Fraction(0))
        table[mask] = p * p
    return Lottery(support, make_plausibility_measure(support, table, unit))


def gen_lottery_situation(rng, max_lotteries=3, max_support=3,
                          product_cap=16) -> LotteryDecisionSituation:
    k = rng.randint(1, max_lotteries)
    sizes = []
    budget = product_cap
    for _ in range(k):
        top = max(1, min(max_support, budget))
        size = rng.randint(1, top)
        sizes.append(size)
        budget //= size
    lotteries = []
    for idx, size in enumerate(sizes):
        support = rng.sample(_CONSEQUENCE_POOL, size)
        lotteries.append((f"l{idx}", _general_lottery(rng, support)))
    return LotteryDecisionSituation(tuple(_CONSEQUENCE_POOL),
                                    unit_interval_domain(), tuple(lotteries))


def gen_standard_lottery_situation(rng, max_lotteries=3, max_support=3) -> LotteryDecisionSituation:
    k = rng.randint(1, max_lotteries)
    lotteries = []
    for idx in range(k):
        support = rng.sample(_CONSEQUENCE_POOL, rng.randint(1, max_support))
        atoms = {c: 1 + rng.randint(0, 5) for c in support}
        total = sum(atoms.values())
        lotteries.append((f"l{idx}",
                          Lottery.from_atoms({c: Fraction(w, total) for c, w in atoms.items()})))
    return LotteryDecisionSituation(tuple(_CONSEQUENCE_POOL),
                                    unit_interval_domain(), tuple(lotteries))
