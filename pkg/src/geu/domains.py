"""Ordered carriers: utility, plausibility, and valuation domains.

A ``Domain`` bundles a carrier (explicit finite list, or a membership
predicate for builtin infinite carriers), a reflexive order ``leq``,
optional bottom/top elements, and a seeded sampler used to probe axioms
on infinite carriers.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .exceptions import AxiomViolation, GeuError
from .values import POS_INF, Vec, as_value, canon_key, is_number


class Domain:
    def __init__(self, kind, leq, contains, carrier=None, bottom=None, top=None,
                 sample=None, params=(), total=None, transitive=None,
                 antisymmetric=None, name=None):
        self.kind = kind
        self._leq = leq
        self._contains = contains
        self.carrier = tuple(carrier) if carrier is not None else None
        self.bottom = bottom
        self.top = top
        self._sample = sample
        self.params = params
        self.total = total
        self.transitive = transitive
        self.antisymmetric = antisymmetric
        self.name = name or kind
        if self.carrier is not None:
            self._check_finite_invariants()

    def _check_finite_invariants(self):
        for x in self.carrier:
            if not self.leq(x, x):
                raise AxiomViolation("reflexivity", x, "order not reflexive on carrier")
        if self.bottom is not None:
            for x in self.carrier:
                if not self.leq(self.bottom, x):
                    raise AxiomViolation("bottom", x, "bottom not below carrier element")
        if self.top is not None:
            for x in self.carrier:
                if not self.leq(x, self.top):
                    raise AxiomViolation("top", x, "top not above carrier element")

    def leq(self, x, y) -> bool:
        return self._leq(x, y)

    def contains(self, v) -> bool:
        return self._contains(v)

    def sample(self, rng: random.Random):
        if self._sample is not None:
            return self._sample(rng)
        if self.carrier:
            return rng.choice(self.carrier)
        raise GeuError(f"domain {self.name} has no sampler")

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Domain):
            return NotImplemented
        if self.kind != other.kind:
            return False
        if self.kind == "finite":
            return (self.carrier == other.carrier
                    and self.params == other.params
                    and self.bottom == other.bottom and self.top == other.top)
        if self.carrier is None and self._sample is None and self.params == ():
            return self is other
        return self.params == other.params

    def __hash__(self):
        return hash((self.kind, self.params))

    def __repr__(self):
        return f"Domain({self.name})"


@dataclass(frozen=True)
class OrderReport:
    reflexive: bool
    transitive: bool
    antisymmetric: bool
    total: bool


def check_order_properties(d: Domain, carrier=None) -> OrderReport:
    """Exhaustively compute order flags over a finite carrier."""
    elems = list(carrier) if carrier is not None else (list(d.carrier) if d.carrier else None)
    if elems is None:
        raise GeuError(f"domain {d.name} has no finite carrier to check")
    leq = d.leq
    reflexive = all(leq(x, x) for x in elems)
    antisymmetric = True
    total = True
    for i, x in enumerate(elems):
        for y in elems[i + 1:]:
            xy, yx = leq(x, y), leq(y, x)
            if xy and yx and x != y:
                antisymmetric = False
            if not xy and not yx:
                total = False
    transitive = True
    for x in elems:
        for y in elems:
            if not leq(x, y):
                continue
            for z in elems:
                if leq(y, z) and not leq(x, z):
                    transitive = False
                    break
            if not transitive:
                break
        if not transitive:
            break
    return OrderReport(reflexive, transitive, antisymmetric, total)


def _num_leq(x, y):
    return x <= y


def _sample_rational(rng, lo=-1000, hi=1000, max_den=100):
    return Fraction(rng.randint(lo, hi), rng.randint(1, max_den))


def _sample_unit(rng):
    den = rng.randint(1, 100)
    return Fraction(rng.randint(0, den), den)


def rationals_domain() -> Domain:
    return Domain("rationals", _num_leq,
                  lambda v: isinstance(v, Fraction),
                  sample=_sample_rational,
                  total=True, transitive=True, antisymmetric=True)


def reals_domain() -> Domain:
    """Numbers (exact rationals included) without infinities."""
    return Domain("reals", _num_leq,
                  lambda v: is_number(v) and not (isinstance(v, float) and math.isinf(v)),
                  sample=_sample_rational,
                  total=True, transitive=True, antisymmetric=True)


def reals_with_inf_domain() -> Domain:
    def sample(rng):
        return POS_INF if rng.random() < 0.1 else _sample_rational(rng)
    return Domain("reals_inf", _num_leq,
                  lambda v: is_number(v) and not (isinstance(v, float) and v == -POS_INF),
                  sample=sample,
                  total=True, transitive=True, antisymmetric=True)


def unit_interval_domain() -> Domain:
    return Domain("unit", _num_leq,
                  lambda v: is_number(v) and 0 <= v <= 1,
                  bottom=Fraction(0), top=Fraction(1),
                  sample=_sample_unit,
                  total=True, transitive=True, antisymmetric=True)


def vectors_domain(names) -> Domain:
    """[0,1]-valued vectors indexed by the given names, ordered pointwise."""
    names = tuple(names)
    name_set = frozenset(names)

    def contains(v):
        return (isinstance(v, Vec) and frozenset(v.names) == name_set
                and all(is_number(x) and 0 <= x <= 1 for _, x in v.items))

    def leq(x, y):
        return all(a <= b for (_, a), (_, b) in zip(x.items, y.items))

    def sample(rng):
        return Vec.of({n: _sample_unit(rng) for n in names})

    return Domain("vectors", leq, contains,
                  bottom=Vec.of({n: Fraction(0) for n in names}),
                  top=Vec.of({n: Fraction(1) for n in names}),
                  sample=sample, params=names,
                  total=(len(names) <= 1), transitive=True, antisymmetric=True)


def real_vectors_domain(names, order="pointwise") -> Domain:
    """Real-valued vectors indexed by names; ordered pointwise or by their minimum."""
    names = tuple(names)
    name_set = frozenset(names)

    def contains(v):
        return (isinstance(v, Vec) and frozenset(v.names) == name_set
                and all(is_number(x) for _, x in v.items))

    if order == "pointwise":
        def leq(x, y):
            return all(a <= b for (_, a), (_, b) in zip(x.items, y.items))
        antisym, total = True, (len(names) <= 1)
    elif order == "min":
        def leq(x, y):
            return min(a for _, a in x.items) <= min(b for _, b in y.items)
        antisym, total = (len(names) <= 1), True
    else:
        raise ValueError(order)

    def sample(rng):
        return Vec.of({n: _sample_rational(rng) for n in names})

    return Domain(f"real_vectors_{order}", leq, contains,
                  sample=sample, params=names,
                  total=total, transitive=True, antisymmetric=antisym)


def powerset_domain(states) -> Domain:
    """Subsets of a fixed finite state set ordered by inclusion."""
    states = tuple(states)
    full = frozenset(states)

    def contains(v):
        return isinstance(v, frozenset) and v <= full

    def leq(x, y):
        return x <= y

    def sample(rng):
        return frozenset(s for s in states if rng.random() < 0.5)

    carrier = None
    if len(states) <= 10:
        carrier = []
        for mask in range(1 << len(states)):
            carrier.append(frozenset(s for i, s in enumerate(states) if mask >> i & 1))
    return Domain("powerset", leq, contains, carrier=carrier,
                  bottom=frozenset(), top=full, sample=sample, params=states,
                  total=(len(states) <= 1), transitive=True, antisymmetric=True)


def pair_first_domain(p1: Domain, states, name="pair_first") -> Domain:
    """Pairs (p, X) with p from an inner domain and X a subset of the states,
    ordered by the first component only.  A preorder: not antisymmetric as soon
    as two distinct subsets share an inner value."""
    states = tuple(states)
    full = frozenset(states)

    def contains(v):
        return (isinstance(v, tuple) and len(v) == 2
                and p1.contains(v[0]) and isinstance(v[1], frozenset) and v[1] <= full)

    def leq(x, y):
        return p1.leq(x[0], y[0])

    def sample(rng):
        subset = frozenset(s for s in states if rng.random() < 0.5)
        return (p1.sample(rng), subset)

    bottom = (p1.bottom, frozenset()) if p1.bottom is not None else None
    top = (p1.top, full) if p1.top is not None else None
    return Domain(name, leq, contains, bottom=bottom, top=top, sample=sample,
                  total=p1.total, transitive=p1.transitive, antisymmetric=False)


def finite_domain(carrier, order_pairs=None, leq=None, bottom=None, top=None, name=None) -> Domain:
    """Explicit finite domain; order given as a pair set or a comparator.

    Reflexivity is validated; transitivity/antisymmetry/totality are
    computed exhaustively and recorded as flags.
    """
    carrier = tuple(as_value(x) for x in carrier)
    if len(set(map(canon_key, carrier))) != len(carrier):
        raise GeuError("finite carrier has duplicate elements")
    if leq is None:
        if order_pairs is None:
            raise GeuError("finite domain needs order_pairs or leq")
        rel = frozenset((as_value(a), as_value(b)) for a, b in order_pairs)

        def leq(x, y, _rel=rel):
            return x == y or (x, y) in _rel
        params = (carrier, tuple(sorted(rel, key=lambda p: (canon_key(p[0]), canon_key(p[1])))))
    else:
        params = (carrier,)
    d = Domain("finite", leq, lambda v: v in carrier, carrier=carrier,
               bottom=bottom, top=top,
               sample=lambda rng: rng.choice(carrier), params=params, name=name)
    report = check_order_properties(d)
    d.total = report.total
    d.transitive = report.transitive
    d.antisymmetric = report.antisymmetric
    return d


def sets_of_pairs_domain(first: Domain, second: Domain, leq, name, sample_pair=None) -> Domain:
    """Finite sets of (first, second) pairs under a caller-supplied order.

    Used for the constructed valuation spaces whose sum is set union.
    """
    def contains(v):
        return (isinstance(v, frozenset)
                and all(isinstance(e, tuple) and len(e) == 2
                        and first.contains(e[0]) and second.contains(e[1]) for e in v))

    def sample(rng):
        k = rng.randint(1, 3)
        if sample_pair is not None:
            return frozenset(sample_pair(rng) for _ in range(k))
        return frozenset((first.sample(rng), second.sample(rng)) for _ in range(k))

    return Domain(name, leq, contains, sample=sample, transitive=None,
                  antisymmetric=None, total=False)
