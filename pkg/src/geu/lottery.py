"""The lottery framework and its translation to and from the act framework.

A lottery is a plausibility measure over the powerset of its support (not
just atoms: general plausibility is not determined by singletons).  Acts in
a plausibilistic situation induce lotteries through preimages, and every
lottery situation is induced by a constructed plausibilistic situation whose
states are the choice functions over the lotteries.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Mapping

from .domains import Domain, unit_interval_domain
from .exceptions import (GeuError, NotStandard, TooLarge, UnknownLottery)
from .expectation import ExpectationDomain
from .plausibility import (MAX_STATES, PlausibilityMeasure, is_additive_probability,
                           make_plausibility_measure, probability_measure)
from .problems import (DecisionProblem, DecisionSituation, PlausibilisticSituation,
                       PreferenceRelation, relation_from_pairs, relation_from_scores)
from .values import Value, as_value, canon_key

CONSTRUCT_CAP = 1 << 16


@dataclass(frozen=True, eq=False)
class Lottery:
    support: tuple              # sorted consequence labels
    measure: PlausibilityMeasure  # states = support

    def __post_init__(self):
        if not self.support:
            raise GeuError("lottery support must be nonempty")
        if self.measure.states != self.support:
            raise GeuError("lottery measure must range over its support")

    @property
    def p_domain(self) -> Domain:
        return self.measure.p_domain

    def atom(self, c: str) -> Value:
        return self.measure.of([c])

    def of(self, subset) -> Value:
        return self.measure.of(subset)

    @property
    def degenerate(self) -> bool:
        return len(self.support) == 1

    def __eq__(self, other):
        if not isinstance(other, Lottery):
            return NotImplemented
        return self.support == other.support and self.measure == other.measure

    @staticmethod
    def from_table(support, assignment: Mapping, p_domain: Domain) -> "Lottery":
        support = tuple(sorted(set(support)))
        measure = make_plausibility_measure(support, assignment, p_domain)
        return Lottery(support, measure)

    @staticmethod
    def from_atoms(atoms: Mapping) -> "Lottery":
        """Standard lottery: positive rational atoms summing to one, extended
        additively to the powerset of the support."""
        cleaned = {}
        for c, raw in atoms.items():
            v = as_value(raw)
            if not isinstance(v, Fraction) or v <= 0:
                raise NotStandard(f"atom of {c!r} must be a positive rational, got {raw!r}")
            cleaned[c] = v
        if sum(cleaned.values()) != 1:
            raise NotStandard(f"atoms sum to {sum(cleaned.values())}, not 1")
        support = tuple(sorted(cleaned))
        measure = probability_measure(support, cleaned)
        return Lottery(support, measure)

    @staticmethod
    def degenerate_on(c: str, p_domain: Domain) -> "Lottery":
        table = {(): p_domain.bottom, (c,): p_domain.top}
        return Lottery.from_table([c], table, p_domain)


def is_standard_lottery(lot: Lottery) -> bool:
    return (lot.p_domain.kind == "unit" and is_additive_probability(lot.measure)
            and all(lot.atom(c) > 0 for c in lot.support))


@dataclass(frozen=True, eq=False)
class LotteryDecisionSituation:
    consequences: tuple
    p_domain: Domain
    lotteries: tuple  # (name, Lottery) pairs

    def __post_init__(self):
        if not self.lotteries:
            raise GeuError("lottery list must be nonempty")
        names = [n for n, _ in self.lotteries]
        if len(set(names)) != len(names):
            raise GeuError("lottery names must be unique")
        cs = set(self.consequences)
        for name, lot in self.lotteries:
            if not set(lot.support) <= cs:
                raise GeuError(f"lottery {name!r} has support outside the consequence set")
            if lot.p_domain != self.p_domain:
                raise GeuError(f"lottery {name!r} uses a different plausibility domain")

    def lottery(self, name: str) -> Lottery:
        for n, lot in self.lotteries:
            if n == name:
                return lot
        raise UnknownLottery(name)

    def lottery_set(self) -> list:
        """Distinct lotteries, first occurrence order."""
        out = []
        for _, lot in self.lotteries:
            if not any(lot == seen for seen in out):
                out.append(lot)
        return out


@dataclass(frozen=True, eq=False)
class LotteryDecisionProblem:
    situation: LotteryDecisionSituation
    expectation: ExpectationDomain
    utility: dict  # consequence -> utility value

    def __post_init__(self):
        if self.expectation.p != self.situation.p_domain:
            raise GeuError("expectation domain's plausibility domain must match the situation's")
        for c in self.situation.consequences:
            if c not in self.utility:
                raise GeuError(f"utility missing consequence {c!r}")


def lottery_geu(lp: LotteryDecisionProblem, name: str) -> Value:
    """Fold oplus over the support of the lottery: atom(c) otimes u(c),
    in ascending canonical order of the utilities."""
    lot = lp.situation.lottery(name)
    e = lp.expectation
    order = sorted(lot.support, key=lambda c: (canon_key(lp.utility[c]), c))
    terms = [e.otimes(lot.atom(c), lp.utility[c]) for c in order]
    acc = terms[0]
    for t in terms[1:]:
        acc = e.oplus(acc, t)
    return acc


def induce_lottery(ps: PlausibilisticSituation, act: str) -> Lottery:
    """The lottery an act induces: support is the act's range, and each set of
    consequences gets the plausibility of its preimage."""
    situation = ps.situation
    row = situation.act_row(act)
    support = tuple(sorted(set(row)))
    index = {c: i for i, c in enumerate(support)}
    cell = [0] * len(support)
    for i, c in enumerate(row):
        cell[index[c]] |= 1 << i
    table = {}
    for mask in range(1 << len(support)):
        pre = 0
        for j in range(len(support)):
            if mask >> j & 1:
                pre |= cell[j]
        table[mask] = ps.measure.value_of_mask(pre)
    measure = make_plausibility_measure(support, table, ps.p_domain)
    return Lottery(support, measure)


def _induce_map(ps: PlausibilisticSituation):
    names = []
    lots = []
    act_to_lottery = {}
    for act in ps.situation.act_names:
        lot = induce_lottery(ps, act)
        found = None
        for n, existing in zip(names, lots):
            if existing == lot:
                found = n
                break
        if found is None:
            names.append(act)
            lots.append(lot)
            found = act
        act_to_lottery[act] = found
    situation = LotteryDecisionSituation(ps.situation.consequences, ps.p_domain,
                                         tuple(zip(names, lots)))
    return situation, act_to_lottery


def induce_situation(ps: PlausibilisticSituation) -> LotteryDecisionSituation:
    """Collect the induced lotteries, deduplicated structurally (the map from
    acts to lotteries is many-to-one)."""
    situation, _ = _induce_map(ps)
    return situation


def construct_situation(ls: LotteryDecisionSituation, validate_samples=200) -> PlausibilisticSituation:
    """Build a plausibilistic situation inducing the given lottery situation.

    States are choice functions picking one support element per distinct
    lottery; the act for a lottery reads off its coordinate.  An event's
    plausibility depends on which preimage cells it swallows: none anywhere
    gives bottom, cells of exactly one lottery give that lottery's value on
    them, cells of two distinct lotteries give top.
    """
    names = []
    kept = []
    for name, lot in ls.lotteries:
        if any(lot == k for k in kept):
            continue
        names.append(name)
        kept.append(lot)
    supports = [lot.support for lot in kept]
    size = 1
    for sup in supports:
        size *= len(sup)
    if size > CONSTRUCT_CAP:
        raise TooLarge(size, CONSTRUCT_CAP)

    choices = list(product(*supports))
    states = [f"f{i}" for i in range(len(choices))]
    acts = {}
    for j, name in enumerate(names):
        acts[name] = {states[i]: choice[j] for i, choice in enumerate(choices)}
    situation = DecisionSituation.from_maps(states, ls.consequences, acts)

    # cell[j][c] = bitmask of states whose j-th coordinate picks c
    cells = []
    for j, sup in enumerate(supports):
        per = {c: 0 for c in sup}
        for i, choice in enumerate(choices):
            per[choice[j]] |= 1 << i
        cells.append(per)
    lotteries = kept
    p_domain = ls.p_domain

    def pl_of_mask(mask: int):
        hit_index = -1
        hit_sets = None
        hits = 0
        for j, per in enumerate(cells):
            swallowed = [c for c, cm in per.items() if cm and (cm & mask) == cm]
            if swallowed:
                hits += 1
                if hits > 1:
                    return p_domain.top
                hit_index, hit_sets = j, swallowed
        if hits == 0:
            return p_domain.bottom
        return lotteries[hit_index].of(hit_sets)

    if len(states) <= MAX_STATES:
        table = {mask: pl_of_mask(mask) for mask in range(1 << len(states))}
        measure = make_plausibility_measure(states, table, p_domain)
    else:
        measure = PlausibilityMeasure.lazy(states, p_domain, pl_of_mask)
        full = (1 << len(states)) - 1
        if measure.value_of_mask(0) != p_domain.bottom:
            raise GeuError("constructed measure fails at the empty set")
        if measure.value_of_mask(full) != p_domain.top:
            raise GeuError("constructed measure fails at the full set")
        rng = random.Random(20240)
        for _ in range(validate_samples):
            x = rng.getrandbits(len(states))
            i = rng.randrange(len(states))
            y = x | (1 << i)
            if not p_domain.leq(measure.value_of_mask(x), measure.value_of_mask(y)):
                raise GeuError("constructed measure failed a sampled monotonicity check")
    return PlausibilisticSituation(situation, p_domain, measure)


def construct_situation_standard(ls: LotteryDecisionSituation) -> PlausibilisticSituation:
    """Standard-case construction: partition the half-open unit interval at
    every cumulative breakpoint of every lottery, give each piece its length
    as probability, and let each lottery's act map a piece to the consequence
    whose cumulative band contains it.  Exact rationals throughout."""
    if ls.p_domain.kind != "unit":
        raise NotStandard("standard construction needs unit-interval lotteries")
    lots = []
    for name, lot in ls.lotteries:
        if not is_standard_lottery(lot):
            raise NotStandard(f"lottery {name!r} is not an additive rational lottery")
        lots.append((name, lot))

    breakpoints = {Fraction(0), Fraction(1)}
    bands = {}
    for name, lot in lots:
        acc = Fraction(0)
        bounds = []
        for c in lot.support:
            nxt = acc + lot.atom(c)
            bounds.append((acc, nxt, c))
            breakpoints.add(nxt)
            acc = nxt
        bands[name] = bounds
    cuts = sorted(breakpoints)
    intervals = list(zip(cuts[:-1], cuts[1:]))
    if len(intervals) > MAX_STATES:
        raise TooLarge(len(intervals), MAX_STATES, "interval partition")
    states = [f"[{lo},{hi})" for lo, hi in intervals]
    acts = {}
    for name, lot in lots:
        mapping = {}
        for (lo, hi), label in zip(intervals, states):
            for blo, bhi, c in bands[name]:
                if blo <= lo and hi <= bhi:
                    mapping[label] = c
                    break
        acts[name] = mapping
    situation = DecisionSituation.from_maps(states, ls.consequences, acts)
    lengths = {label: hi - lo for (lo, hi), label in zip(intervals, states)}
    measure = probability_measure(states, lengths)
    return PlausibilisticSituation(situation, unit_interval_domain(), measure)


def is_lottery_uniform(ps: PlausibilisticSituation, relation: PreferenceRelation) -> bool:
    return lottery_uniform_witness(ps, relation) is None


def lottery_uniform_witness(ps: PlausibilisticSituation, relation: PreferenceRelation):
    """Acts inducing the same lottery must be interchangeable against every
    third act; returns a violating (a1, a2, b) triple or None."""
    _, act_to_lottery = _induce_map(ps)
    acts = ps.situation.act_names
    for a1 in acts:
        for a2 in acts:
            if act_to_lottery[a1] != act_to_lottery[a2]:
                continue
            for b in acts:
                if relation.holds(a1, b) != relation.holds(a2, b):
                    return (a1, a2, b)
                if relation.holds(b, a1) != relation.holds(b, a2):
                    return (a1, a2, b)
    return None


def lift_lottery_rule(lottery_rule):
    """Turn a rule on lottery problems into a rule on plausibilistic act
    problems: acts are related the way their induced lotteries are."""
    def act_rule(d: DecisionProblem) -> PreferenceRelation:
        ps = d.plaus_situation()
        lsit, act_to_lottery = _induce_map(ps)
        lp = LotteryDecisionProblem(lsit, d.expectation, dict(d.utility))
        inner = lottery_rule(lp)
        pairs = {(a1, a2)
                 for a1 in d.situation.act_names for a2 in d.situation.act_names
                 if inner.holds(act_to_lottery[a1], act_to_lottery[a2])}
        return relation_from_pairs(d.situation.act_names, pairs)
    return act_rule


def lottery_rule_geu(lp: LotteryDecisionProblem) -> PreferenceRelation:
    names = [n for n, _ in lp.situation.lotteries]
    scores = {n: lottery_geu(lp, n) for n in names}
    return relation_from_scores(names, scores, lp.expectation.v_leq)
