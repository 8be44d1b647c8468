"""Two-level decision problems: acts map states to lotteries over consequences.

The inner expectation domain evaluates the lotteries ("objective" chance);
the outer one aggregates over states ("subjective" belief).  The outer
utility domain must be the inner valuation domain, so inner expected
utilities are the outer utilities.  ``flatten`` exposes the whole thing as
an ordinary act problem whose consequences are the lotteries.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .exceptions import GeuError, MissingOuterPart, UnknownLottery
from .expectation import ExpectationDomain
from .lottery import LotteryDecisionProblem, LotteryDecisionSituation, lottery_geu
from .plausibility import PlausibilityMeasure
from .problems import DecisionProblem, DecisionSituation
from .values import Value, canon_key


@dataclass(frozen=True, eq=False)
class AAProblem:
    states: tuple
    inner: LotteryDecisionSituation
    horses: tuple                 # (name, lottery-name per state index)
    inner_e: ExpectationDomain
    utility: dict                 # consequence -> inner utility
    outer_e: Optional[ExpectationDomain] = None
    measure: Optional[PlausibilityMeasure] = None

    def __post_init__(self):
        if not self.states:
            raise GeuError("state set must be nonempty")
        if not self.horses:
            raise GeuError("need at least one horse lottery")
        if self.inner_e.p != self.inner.p_domain:
            raise GeuError("inner expectation domain must share the lottery plausibility domain")
        names = {n for n, _ in self.inner.lotteries}
        for hname, row in self.horses:
            if len(row) != len(self.states):
                raise GeuError(f"horse {hname!r} is not total on the states")
            for lname in row:
                if lname not in names:
                    raise UnknownLottery(f"horse {hname!r} uses unknown lottery {lname!r}")
        for c in self.inner.consequences:
            if c not in self.utility:
                raise GeuError(f"utility missing consequence {c!r}")
        if (self.outer_e is None) != (self.measure is None):
            raise GeuError("outer expectation domain and measure must come together")
        if self.outer_e is not None:
            if self.outer_e.u != self.inner_e.v:
                raise GeuError("outer utility domain must be the inner valuation domain")
            if self.measure.states != self.states:
                raise GeuError("measure states differ from the problem's states")

    @staticmethod
    def from_maps(states, inner, horses, inner_e, utility, outer_e=None, measure=None):
        states = tuple(states)
        rows = tuple((name, tuple(mapping[s] for s in states))
                     for name, mapping in horses.items())
        return AAProblem(states, inner, rows, inner_e, dict(utility), outer_e, measure)

    def horse_row(self, name: str) -> tuple:
        for n, row in self.horses:
            if n == name:
                return row
        raise GeuError(f"unknown horse lottery {name!r}")

    def _inner_problem(self) -> LotteryDecisionProblem:
        return LotteryDecisionProblem(self.inner, self.inner_e, dict(self.utility))


def extend_utility(p: AAProblem, lottery_name: str) -> Value:
    """Utility of a lottery: its inner generalized expected utility.  For a
    degenerate lottery this is the consequence's utility."""
    return lottery_geu(p._inner_problem(), lottery_name)


def horse_geu(p: AAProblem, horse: str) -> Value:
    """Two-level expectation: extend utilities over the inner lotteries, then
    fold the outer domain over the plausibility of their preimages."""
    if p.outer_e is None:
        raise MissingOuterPart("horse-lottery expectation needs the outer domain and measure")
    row = p.horse_row(horse)
    extended = {lname: extend_utility(p, lname) for lname in set(row)}
    levels = {}
    for i, lname in enumerate(row):
        x = extended[lname]
        key = canon_key(x)
        if key in levels:
            levels[key] = (x, levels[key][1] | (1 << i))
        else:
            levels[key] = (x, 1 << i)
    e = p.outer_e
    terms = []
    for key in sorted(levels):
        x, mask = levels[key]
        terms.append(e.otimes(p.measure.value_of_mask(mask), x))
    acc = terms[0]
    for t in terms[1:]:
        acc = e.oplus(acc, t)
    return acc


def flatten(p: AAProblem) -> DecisionProblem:
    """Repackage as an act problem: lotteries become consequences carrying
    their extended utilities, horses become acts.  Generalized expected
    utility of the flattened problem equals the two-level expectation."""
    if p.outer_e is None:
        raise MissingOuterPart("flattening needs the outer domain and measure")
    lottery_names = tuple(n for n, _ in p.inner.lotteries)
    acts = {name: dict(zip(p.states, row)) for name, row in p.horses}
    situation = DecisionSituation.from_maps(p.states, lottery_names, acts)
    utility = {lname: extend_utility(p, lname) for lname in lottery_names}
    return DecisionProblem(situation, p.outer_e.u, utility, p.outer_e, p.measure)
