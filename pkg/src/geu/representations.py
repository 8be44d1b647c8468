"""Comparing and representing decision rules inside generalized expected utility.

Two problems are *congruent* when they share the decision situation and the
representation of tastes (and beliefs), differing at most in the valuation
machinery; they are *similar* when only the ordinal content of tastes and
beliefs must agree.  A tabulated rule has a congruent GEU representation
exactly when it is uniform and respects utility (``represent_uniform``),
and a similar one exactly when it weakly respects utility
(``represent_ordinal``); both constructions are explicit.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .domains import (Domain, finite_domain, pair_first_domain, powerset_domain,
                      reals_with_inf_domain, sets_of_pairs_domain,
                      unit_interval_domain)
from .exceptions import (DomainMismatch, NotReflexive, NotRespectingUtility,
                         NotUniform, NotWeaklyRespectingUtility)
from .expectation import credal_expectation_domain, make_expectation_domain
from .plausibility import make_plausibility_measure, recover_probability_set
from .problems import (DecisionProblem, PreferenceRelation, utility_lottery,
                       utility_rv)
from .rules import _numeric_utilities, _totally_ordered_utilities
from .values import POS_INF, canon_key

REGRET_TOLERANCE = 1e-9
_DEFAULT_PROBE = 1000


@dataclass(frozen=True)
class RuleTable:
    """A decision rule pinned to one problem: the problem plus its output."""
    problem: DecisionProblem
    relation: PreferenceRelation

    def __post_init__(self):
        if set(self.relation.universe) != set(self.problem.situation.act_names):
            raise DomainMismatch("table universe differs from the problem's acts")


def tabulate(rule, d: DecisionProblem) -> RuleTable:
    return RuleTable(d, rule(d))


# --- comparison predicates ----------------------------------------------------

def indistinguishable(d: DecisionProblem, a1: str, a2: str) -> bool:
    """Equal utility lotteries (plausibilistic) or equal utility random
    variables (nonplausibilistic)."""
    if d.plausibilistic:
        return utility_lottery(d, a1) == utility_lottery(d, a2)
    return utility_rv(d, a1) == utility_rv(d, a2)


def congruent(d1: DecisionProblem, d2: DecisionProblem) -> bool:
    """Same situation, utility domain and utility function; if both are
    plausibilistic, also the same plausibility domain and measure."""
    if d1.situation != d2.situation:
        return False
    if d1.u_domain != d2.u_domain or d1.utility != d2.utility:
        return False
    if d1.plausibilistic and d2.plausibilistic:
        return (d1.expectation.p == d2.expectation.p and d1.measure == d2.measure)
    return True


def similar(d1: DecisionProblem, d2: DecisionProblem) -> bool:
    """Same situation; utilities represent the same ordinal tastes; if both
    plausibilistic, measures represent the same ordinal beliefs (checked over
    the full powerset)."""
    if d1.situation != d2.situation:
        return False
    cs = d1.situation.consequences
    for c1 in cs:
        for c2 in cs:
            if (d1.u_domain.leq(d1.utility[c1], d1.utility[c2])
                    != d2.u_domain.leq(d2.utility[c1], d2.utility[c2])):
                return False
    if d1.plausibilistic and d2.plausibilistic:
        n = len(d1.situation.states)
        p1, p2 = d1.expectation.p, d2.expectation.p
        m1, m2 = d1.measure, d2.measure
        for x in range(1 << n):
            for y in range(1 << n):
                if (p1.leq(m1.value_of_mask(x), m1.value_of_mask(y))
                        != p2.leq(m2.value_of_mask(x), m2.value_of_mask(y))):
                    return False
    return True


def _as_relation(rule_or_relation, d: DecisionProblem) -> PreferenceRelation:
    if isinstance(rule_or_relation, PreferenceRelation):
        return rule_or_relation
    if isinstance(rule_or_relation, RuleTable):
        return rule_or_relation.relation
    return rule_or_relation(d)


def _constant_utility_acts(d: DecisionProblem) -> dict:
    out = {}
    for a in d.situation.act_names:
        vals = set(map(canon_key, utility_rv(d, a).values()))
        if len(vals) == 1:
            out[a] = next(iter(utility_rv(d, a).values()))
    return out


def _constant_acts(d: DecisionProblem) -> dict:
    out = {}
    for a in d.situation.act_names:
        row = d.situation.act_row(a)
        if len(set(row)) == 1:
            out[a] = d.utility[row[0]]
    return out


def _respect_witness(relation: PreferenceRelation, d: DecisionProblem, weak: bool):
    consts = _constant_acts(d) if weak else _constant_utility_acts(d)
    leq = d.u_domain.leq
    for a1, u1 in consts.items():
        for a2, u2 in consts.items():
            if relation.holds(a1, a2) != leq(u1, u2):
                return (a1, a2)
    return None


def respects_utility(rule_or_relation, d: DecisionProblem) -> bool:
    """Acts of constant utility are ordered exactly as their utilities are."""
    return _respect_witness(_as_relation(rule_or_relation, d), d, weak=False) is None


def weakly_respects_utility(rule_or_relation, d: DecisionProblem) -> bool:
    """Constant acts are ordered exactly as their utilities are."""
    return _respect_witness(_as_relation(rule_or_relation, d), d, weak=True) is None


def _indistinguishability_classes(d: DecisionProblem) -> list:
    classes = {}
    for a in d.situation.act_names:
        if d.plausibilistic:
            sig = tuple(sorted(((canon_key(u), canon_key(p))
                                for u, p in utility_lottery(d, a).items())))
        else:
            rv = utility_rv(d, a)
            sig = tuple(canon_key(rv[s]) for s in d.situation.states)
        classes.setdefault(sig, []).append(a)
    return list(classes.values())


def _uniform_witness(relation: PreferenceRelation, d: DecisionProblem):
    classes = _indistinguishability_classes(d)
    for ci in classes:
        for cj in classes:
            member = relation.holds(ci[0], cj[0])
            for a1 in ci:
                for a2 in cj:
                    if relation.holds(a1, a2) != member:
                        return (ci[0], cj[0], a1, a2)
    return None


def is_uniform(rule_or_relation, d: DecisionProblem) -> bool:
    """Replacing acts by indistinguishable ones never changes the relation."""
    return _uniform_witness(_as_relation(rule_or_relation, d), d) is None


def uniformity_witness(rule_or_relation, d: DecisionProblem):
    return _uniform_witness(_as_relation(rule_or_relation, d), d)


# --- the three example transformations -----------------------------------------

def tau_maximin(d: DecisionProblem, seed=0, probe=_DEFAULT_PROBE) -> DecisionProblem:
    """Worst-case preference as generalized expected utility.

    Plausibility is two-valued (is the event nonempty?), the sum is min, and
    impossible events contribute plus infinity, so the fold returns the worst
    utility the act can realize.
    """
    base = d.nonplausibilistic_reduct()
    if not (_numeric_utilities(base) and _totally_ordered_utilities(base)):
        raise DomainMismatch("worst-case transformation needs totally ordered real utilities")
    p = finite_domain([0, 1], order_pairs=[(0, 1)], bottom=Fraction(0), top=Fraction(1),
                      name="two_valued")
    v = reals_with_inf_domain()

    def otimes(pl, x):
        return x if pl == 1 else POS_INF

    e = make_expectation_domain(base.u_domain, p, v, otimes, min,
                                kind="worst_case", seed=seed, probe=probe)
    n = len(base.situation.states)
    table = {0: Fraction(0)}
    for mask in range(1, 1 << n):
        table[mask] = Fraction(1)
    pl = make_plausibility_measure(base.situation.states, table, p)
    return DecisionProblem(base.situation, base.u_domain, dict(base.utility), e, pl)


def _tolerant_reals_inf_domain(tol: float) -> Domain:
    base = reals_with_inf_domain()
    return Domain("reals_inf_tolerant", lambda x, y: x <= y + tol, base._contains,
                  sample=base._sample, params=(tol,),
                  total=True, transitive=None, antisymmetric=False)


def tau_regret(d: DecisionProblem, seed=0, probe=_DEFAULT_PROBE) -> DecisionProblem:
    """Regret-minimizing preference as generalized expected utility.

    Events are weighted by e^(M_X - M_S), where M_X is the best utility
    reachable on the event; combining with x (x) y = y - log(x) and min makes
    the fold equal M - max regret, up to binary64 error (compared with a 1e-9
    tolerance).
    """
    base = d.nonplausibilistic_reduct()
    if not _numeric_utilities(base):
        raise DomainMismatch("regret transformation needs real-valued utilities")
    states = base.situation.states
    rvs = {a: utility_rv(base, a) for a in base.situation.act_names}
    best = {s: max(rvs[a][s] for a in base.situation.act_names) for s in states}
    m_full = max(best.values())

    p = unit_interval_domain()
    v = _tolerant_reals_inf_domain(REGRET_TOLERANCE)

    def otimes(x, y):
        if x == 0:
            return POS_INF
        return float(y) - math.log(x)

    e = make_expectation_domain(base.u_domain, p, v, otimes, min,
                                embed=float, kind="regret", seed=seed, probe=probe)
    table = {0: Fraction(0)}
    n = len(states)
    for mask in range(1, 1 << n):
        m_x = max(best[states[i]] for i in range(n) if mask >> i & 1)
        table[mask] = math.exp(float(m_x - m_full))
    pl = make_plausibility_measure(states, table, p)
    return DecisionProblem(base.situation, base.u_domain, dict(base.utility), e, pl)


def tau_mmeu(d: DecisionProblem, seed=0, probe=_DEFAULT_PROBE) -> DecisionProblem:
    """Worst-case expected utility as generalized expected utility: keep the
    vector-valued measure, accumulate per-measure expectations pointwise, and
    order the result vectors by their minimum coordinate."""
    if not d.plausibilistic or recover_probability_set(d.measure) is None:
        raise DomainMismatch("transformation needs a represented probability set")
    names = d.measure.p_domain.params
    e = credal_expectation_domain(names, order="min", seed=seed, probe=probe)
    return DecisionProblem(d.situation, d.u_domain, dict(d.utility), e, d.measure)


def tau_identity(d: DecisionProblem) -> DecisionProblem:
    """The identity transformation: GEU on a standard problem is expected utility."""
    return d


# --- the generic constructive representations -----------------------------------

def _label_domain(labels) -> Domain:
    return finite_domain(labels, leq=lambda x, y: x == y, name="labels")


def _check_table(d: DecisionProblem, table: RuleTable, need_uniform: bool, weak: bool):
    if table.problem is not d and table.problem != d:
        raise DomainMismatch("table was tabulated on a different problem")
    rel = table.relation
    for a in rel.universe:
        if not rel.holds(a, a):
            raise NotReflexive((a, a))
    if need_uniform:
        witness = _uniform_witness(rel, d)
        if witness is not None:
            raise NotUniform(witness)
    witness = _respect_witness(rel, d, weak=weak)
    if witness is not None:
        if weak:
            raise NotWeaklyRespectingUtility(witness)
        raise NotRespectingUtility(witness)


def _set_order(u_domain: Domain, const_of, case3: frozenset):
    def v_leq(x, y):
        if x == y:
            return True
        cu, cv = const_of(x), const_of(y)
        if cu is not None and cv is not None and u_domain.leq(cu, cv):
            return True
        return (x, y) in case3
    return v_leq


def represent_uniform(d: DecisionProblem, table: RuleTable, seed=0,
                      probe=_DEFAULT_PROBE) -> DecisionProblem:
    """Congruent GEU representation of a uniform, utility-respecting table.

    Nonplausibilistic input: plausibility is the event itself (subsets under
    inclusion), values are sets of (state, utility) pairs combined by union,
    and the fold returns the act's utility random variable as a graph.
    Plausibilistic input: values are sets of (plausibility, utility) pairs and
    the fold returns the act's utility lottery as a set.  In both cases the
    constructed valuation order relates constant images by the utility order
    and act images by the table.
    """
    _check_table(d, table, need_uniform=True, weak=False)
    situation = d.situation
    states = situation.states
    acts = situation.act_names
    u1 = d.u_domain

    if not d.plausibilistic:
        graph = {a: frozenset(utility_rv(d, a).items()) for a in acts}
        case3 = frozenset((graph[a], graph[b]) for (a, b) in table.relation.pairs)
        full = frozenset(states)

        def const_of(x):
            us = {u for _, u in x}
            if len(us) == 1:
                u = next(iter(us))
                if x == frozenset((s, u) for s in states):
                    return u
            return None

        p = powerset_domain(states)
        v = sets_of_pairs_domain(_label_domain(states), u1,
                                 _set_order(u1, const_of, case3), "graph_sets")

        def otimes(event, u):
            return frozenset((s, u) for s in event)

        def embed(u):
            return frozenset((s, u) for s in states)

        e = make_expectation_domain(u1, p, v, otimes, lambda x, y: x | y,
                                    embed=embed, kind="uniform_repr", seed=seed, probe=probe)
        n = len(states)
        assignment = {mask: frozenset(states[i] for i in range(n) if mask >> i & 1)
                      for mask in range(1 << n)}
        pl = make_plausibility_measure(states, assignment, p)
        return DecisionProblem(situation, u1, dict(d.utility), e, pl)

    p1 = d.expectation.p
    lset = {a: frozenset((pl, u) for u, pl in utility_lottery(d, a).items())
            for a in acts}
    case3 = frozenset((lset[a], lset[b]) for (a, b) in table.relation.pairs)
    top = p1.top

    def const_of(x):
        if len(x) == 1:
            pl, u = next(iter(x))
            if pl == top:
                return u
        return None

    v = sets_of_pairs_domain(p1, u1, _set_order(u1, const_of, case3),
                             "lottery_sets")

    def otimes(pl, u):
        return frozenset([(pl, u)])

    def embed(u):
        return frozenset([(top, u)])

    e = make_expectation_domain(u1, p1, v, otimes, lambda x, y: x | y,
                                embed=embed, kind="uniform_repr", seed=seed, probe=probe)
    return DecisionProblem(situation, u1, dict(d.utility), e, d.measure)


def represent_ordinal(d: DecisionProblem, table: RuleTable, seed=0,
                      probe=_DEFAULT_PROBE) -> DecisionProblem:
    """Similar (ordinal) GEU representation of a weakly-utility-respecting table.

    Utilities become (utility, consequence) pairs ordered by the utility
    component, so distinct consequences of equal utility stay distinguishable;
    plausibility values become (plausibility, event) pairs ordered by the
    first component (a preorder, deliberately not antisymmetric).  The fold
    returns the act's graph decorated with those pairs, and the valuation
    order relates graphs by the table.
    """
    _check_table(d, table, need_uniform=False, weak=True)
    situation = d.situation
    states = situation.states
    consequences = situation.consequences
    acts = situation.act_names
    # Acts are functions; names aliasing the same map denote one act and the
    # table cannot treat them differently (their graphs coincide in V).
    by_row = {}
    for a in acts:
        by_row.setdefault(situation.act_row(a), []).append(a)
    rel = table.relation
    for group in by_row.values():
        for alias in group[1:]:
            for b in acts:
                if (rel.holds(group[0], b) != rel.holds(alias, b)
                        or rel.holds(b, group[0]) != rel.holds(b, alias)):
                    raise DomainMismatch(
                        f"table splits act names {group[0]!r} and {alias!r} that "
                        f"share one state-consequence map (against {b!r})")
    u1 = d.u_domain
    cset = frozenset(consequences)

    def u2_contains(v):
        return (isinstance(v, tuple) and len(v) == 2
                and u1.contains(v[0]) and v[1] in cset)

    def u2_leq(x, y):
        return u1.leq(x[0], y[0])

    def u2_sample(rng):
        return (u1.sample(rng), rng.choice(consequences))

    u2 = Domain("pair_utility", u2_leq, u2_contains, sample=u2_sample,
                total=u1.total, transitive=u1.transitive, antisymmetric=False)
    utility2 = {c: (d.utility[c], c) for c in consequences}

    graph2 = {a: frozenset((s, (d.utility[c], c))
                           for s, c in zip(states, situation.act_row(a)))
              for a in acts}
    case3 = frozenset((graph2[a], graph2[b]) for (a, b) in table.relation.pairs)

    def const_of(x):
        pairs = {uc for _, uc in x}
        if len(pairs) == 1:
            uc = next(iter(pairs))
            if x == frozenset((s, uc) for s in states):
                return uc
        return None

    v = sets_of_pairs_domain(_label_domain(states), u2,
                             _set_order(u2, const_of, case3), "decorated_graphs")

    def embed(uc):
        return frozenset((s, uc) for s in states)

    n = len(states)
    if d.plausibilistic:
        p1 = d.expectation.p
        p2 = pair_first_domain(p1, states, name="pair_plausibility")

        def otimes(pl2, uc):
            _, event = pl2
            return frozenset((s, uc) for s in event)

        e = make_expectation_domain(u2, p2, v, otimes, lambda x, y: x | y,
                                    embed=embed, kind="ordinal_repr", seed=seed, probe=probe)
        assignment = {mask: (d.measure.value_of_mask(mask),
                             frozenset(states[i] for i in range(n) if mask >> i & 1))
                      for mask in range(1 << n)}
        pl2 = make_plausibility_measure(states, assignment, p2)
        return DecisionProblem(situation, u2, utility2, e, pl2)

    p = powerset_domain(states)

    def otimes(event, uc):
        return frozenset((s, uc) for s in event)

    e = make_expectation_domain(u2, p, v, otimes, lambda x, y: x | y,
                                embed=embed, kind="ordinal_repr", seed=seed, probe=probe)
    assignment = {mask: frozenset(states[i] for i in range(n) if mask >> i & 1)
                  for mask in range(1 << n)}
    pl = make_plausibility_measure(states, assignment, p)
    return DecisionProblem(situation, u2, utility2, e, pl)


# --- transformation registry (names used by the CLI) ----------------------------

EXAMPLE_TRANSFORMS = {
    "id-eu": tau_identity,
    "maximin": tau_maximin,
    "regret": tau_regret,
    "mmeu": tau_mmeu,
}
