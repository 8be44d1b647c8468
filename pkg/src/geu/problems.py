"""Decision situations, decision problems, and the two expectation formulas.

An act maps states to consequences; a problem adds a utility function and,
in the plausibilistic case, an expectation domain and a plausibility
measure.  ``standard_eu`` is the familiar probability-weighted sum;
``geu`` is its generalization with (+, *) replaced by the domain's
(oplus, otimes) and probability by plausibility.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional

from .domains import Domain, reals_domain
from .exceptions import (GeuError, NotPlausibilistic, NotStandard, TooLarge,
                         UniverseMismatch, UnknownAct)
from .expectation import ExpectationDomain
from .plausibility import MAX_STATES, PlausibilityMeasure, is_additive_probability
from .values import Value, as_value, canon_key, is_number


@dataclass(frozen=True)
class DecisionSituation:
    states: tuple
    consequences: tuple
    act_names: tuple
    act_tables: tuple  # per act: consequence per state index

    @staticmethod
    def from_maps(states, consequences, acts: Mapping) -> "DecisionSituation":
        states = tuple(states)
        consequences = tuple(consequences)
        if not states or len(set(states)) != len(states):
            raise GeuError("states must be a nonempty list of distinct labels")
        if not consequences or len(set(consequences)) != len(consequences):
            raise GeuError("consequences must be a nonempty list of distinct labels")
        if not acts:
            raise GeuError("act set must be nonempty")
        names = tuple(acts.keys())
        if len(set(names)) != len(names):
            raise GeuError("act names must be unique")
        cset = set(consequences)
        tables = []
        for name, mapping in acts.items():
            row = []
            for s in states:
                if s not in mapping:
                    raise GeuError(f"act {name!r} is not total: missing state {s!r}")
                c = mapping[s]
                if c not in cset:
                    raise GeuError(f"act {name!r} maps {s!r} to unknown consequence {c!r}")
                row.append(c)
            extra = set(mapping) - set(states)
            if extra:
                raise GeuError(f"act {name!r} mentions unknown states {sorted(extra)}")
            tables.append(tuple(row))
        return DecisionSituation(states, consequences, names, tuple(tables))

    def act_map(self, name: str) -> dict:
        try:
            idx = self.act_names.index(name)
        except ValueError:
            raise UnknownAct(name) from None
        return dict(zip(self.states, self.act_tables[idx]))

    def act_row(self, name: str) -> tuple:
        try:
            idx = self.act_names.index(name)
        except ValueError:
            raise UnknownAct(name) from None
        return self.act_tables[idx]


@dataclass(frozen=True)
class PlausibilisticSituation:
    """A decision situation plus beliefs but no tastes."""
    situation: DecisionSituation
    p_domain: Domain
    measure: PlausibilityMeasure


@dataclass(frozen=True, eq=False)
class DecisionProblem:
    situation: DecisionSituation
    u_domain: Domain
    utility: dict  # consequence -> Value
    expectation: Optional[ExpectationDomain] = None
    measure: Optional[PlausibilityMeasure] = None

    def __post_init__(self):
        for c in self.situation.consequences:
            if c not in self.utility:
                raise GeuError(f"utility missing consequence {c!r}")
            if not self.u_domain.contains(self.utility[c]):
                raise GeuError(f"utility of {c!r} lies outside the utility domain")
        extra = set(self.utility) - set(self.situation.consequences)
        if extra:
            raise GeuError(f"utility given for unknown consequences {sorted(extra)}")
        if (self.expectation is None) != (self.measure is None):
            raise GeuError("expectation domain and measure must come together")
        if self.measure is not None:
            if self.measure.states != self.situation.states:
                raise GeuError("measure states differ from the situation's states")
            if len(self.situation.states) > MAX_STATES and self.measure._values is not None:
                raise TooLarge(len(self.situation.states), MAX_STATES)

    @property
    def plausibilistic(self) -> bool:
        return self.measure is not None

    def nonplausibilistic_reduct(self) -> "DecisionProblem":
        if not self.plausibilistic:
            return self
        return DecisionProblem(self.situation, self.u_domain, dict(self.utility))

    def plaus_situation(self) -> PlausibilisticSituation:
        if not self.plausibilistic:
            raise NotPlausibilistic("problem has no plausibility measure")
        return PlausibilisticSituation(self.situation, self.expectation.p, self.measure)

    def __eq__(self, other):
        if not isinstance(other, DecisionProblem):
            return NotImplemented
        return (self.situation == other.situation and self.u_domain == other.u_domain
                and self.utility == other.utility
                and self.expectation is other.expectation and self.measure == other.measure)


def make_problem(states, consequences, acts, utility, u_domain=None,
                 expectation=None, measure=None) -> DecisionProblem:
    situation = DecisionSituation.from_maps(states, consequences, acts)
    u_domain = u_domain or reals_domain()
    util = {c: as_value(v) for c, v in utility.items()}
    return DecisionProblem(situation, u_domain, util, expectation, measure)


def utility_rv(d: DecisionProblem, act: str) -> dict:
    """The act's utility random variable: state -> utility of its consequence."""
    row = d.situation.act_row(act)
    return {s: d.utility[c] for s, c in zip(d.situation.states, row)}


def _preimage_masks(d: DecisionProblem, act: str) -> dict:
    rv = utility_rv(d, act)
    masks = {}
    for i, s in enumerate(d.situation.states):
        x = rv[s]
        key = canon_key(x)
        if key in masks:
            masks[key] = (x, masks[key][1] | (1 << i))
        else:
            masks[key] = (x, 1 << i)
    return masks


def utility_lottery(d: DecisionProblem, act: str) -> dict:
    """Map each utility level the act can reach to the plausibility of reaching it."""
    if not d.plausibilistic:
        raise NotPlausibilistic("utility lotteries need a plausibility measure")
    masks = _preimage_masks(d, act)
    out = {}
    for key in sorted(masks):
        x, mask = masks[key]
        out[x] = d.measure.value_of_mask(mask)
    return out


def geu(d: DecisionProblem, act: str) -> Value:
    """Generalized expected utility: oplus over utility levels x of
    Pl(preimage of x) otimes x, folded in ascending canonical order of x."""
    if not d.plausibilistic:
        raise NotPlausibilistic("generalized expected utility needs a plausibility measure")
    e = d.expectation
    masks = _preimage_masks(d, act)
    terms = []
    for key in sorted(masks):
        x, mask = masks[key]
        terms.append(e.otimes(d.measure.value_of_mask(mask), x))
    acc = terms[0]
    for t in terms[1:]:
        acc = e.oplus(acc, t)
    return acc


def is_standard_problem(d: DecisionProblem) -> bool:
    return (d.plausibilistic and d.expectation.kind == "standard"
            and all(is_number(v) for v in d.utility.values())
            and is_additive_probability(d.measure))


def standard_eu(d: DecisionProblem, act: str) -> Value:
    """Probability-weighted sum of utility levels, in exact rationals."""
    if not is_standard_problem(d):
        raise NotStandard("problem is not standard (real utilities, probability, standard domain)")
    masks = _preimage_masks(d, act)
    total = Fraction(0)
    for key in sorted(masks):
        x, mask = masks[key]
        total = total + d.measure.value_of_mask(mask) * x
    return total


@dataclass(frozen=True)
class PreferenceRelation:
    universe: tuple
    pairs: frozenset

    def __post_init__(self):
        uni = set(self.universe)
        for a, b in self.pairs:
            if a not in uni or b not in uni:
                raise GeuError(f"pair ({a!r}, {b!r}) outside the act universe")

    def holds(self, a, b) -> bool:
        return (a, b) in self.pairs

    def is_reflexive(self) -> bool:
        return all((a, a) in self.pairs for a in self.universe)

    def is_total(self) -> bool:
        return all((a, b) in self.pairs or (b, a) in self.pairs
                   for a in self.universe for b in self.universe)

    def is_transitive(self) -> bool:
        for a, b in self.pairs:
            for c in self.universe:
                if (b, c) in self.pairs and (a, c) not in self.pairs:
                    return False
        return True

    def classify(self, a, b) -> str:
        ab, ba = self.holds(a, b), self.holds(b, a)
        if ab and ba:
            return "~"
        if ab:
            return "<"
        if ba:
            return ">"
        return "?"


def relation_from_pairs(universe, pairs) -> PreferenceRelation:
    return PreferenceRelation(tuple(universe), frozenset(pairs))


def relation_from_scores(universe, scores: Mapping, leq) -> PreferenceRelation:
    universe = tuple(universe)
    pairs = frozenset((a, b) for a in universe for b in universe
                      if leq(scores[a], scores[b]))
    return PreferenceRelation(universe, pairs)


def relation_equal(r1: PreferenceRelation, r2: PreferenceRelation) -> bool:
    if set(r1.universe) != set(r2.universe):
        raise UniverseMismatch(f"{sorted(r1.universe)} vs {sorted(r2.universe)}")
    return r1.pairs == r2.pairs
