"""Plausibility measures over finite state sets.

A measure assigns a plausibility value to every subset of the states
(subsets are bitmasks over the state list, capped at 16 states), and must
satisfy Pl1 (empty set at bottom), Pl2 (full set at top), and Pl3
(monotonicity under inclusion).
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .domains import Domain, unit_interval_domain, vectors_domain
from .exceptions import AxiomViolation, GeuError, NotAProbability, TooLarge
from .values import Vec, as_value

MAX_STATES = 16
_ALL_PAIRS_CAP = 200_000  # switch Pl3 to cover-based checking above this


class PlausibilityMeasure:
    """Monotone set function from subsets of a finite state list into a
    bounded plausibility domain.  Table-backed and fully validated in the
    normal case; a lazily evaluated backend exists for state spaces too
    large to tabulate (see ``lazy``)."""

    def __init__(self, states, p_domain: Domain, values=None, fn=None, fully_validated=False):
        self.states = tuple(states)
        self.p_domain = p_domain
        self._index = {s: i for i, s in enumerate(self.states)}
        self._values = values
        self._fn = fn
        self._cache = {}
        self.fully_validated = fully_validated

    @property
    def full_mask(self) -> int:
        return (1 << len(self.states)) - 1

    def mask_of(self, subset: Iterable[str]) -> int:
        m = 0
        for s in subset:
            m |= 1 << self._index[s]
        return m

    def subset_of(self, mask: int) -> frozenset:
        return frozenset(s for i, s in enumerate(self.states) if mask >> i & 1)

    def value_of_mask(self, mask: int):
        if self._values is not None:
            return self._values[mask]
        if mask in self._cache:
            return self._cache[mask]
        v = self._fn(mask)
        self._cache[mask] = v
        return v

    def of(self, subset):
        if isinstance(subset, int):
            return self.value_of_mask(subset)
        return self.value_of_mask(self.mask_of(subset))

    def table(self) -> dict:
        if self._values is None:
            raise GeuError("measure is lazily evaluated; no full table")
        return {self.subset_of(m): v for m, v in enumerate(self._values)}

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, PlausibilityMeasure):
            return NotImplemented
        if self._values is None or other._values is None:
            return self is other
        return (self.states == other.states and self.p_domain == other.p_domain
                and self._values == other._values)

    def __repr__(self):
        return f"PlausibilityMeasure({len(self.states)} states, {self.p_domain.name})"

    @staticmethod
    def lazy(states, p_domain, fn) -> "PlausibilityMeasure":
        return PlausibilityMeasure(states, p_domain, fn=fn)


def _check_pl_axioms(states, values, p_domain: Domain):
    n = len(states)
    if values[0] != p_domain.bottom:
        raise AxiomViolation("Pl1", (frozenset(), values[0]),
                             "empty set is not at bottom")
    full = (1 << n) - 1
    if values[full] != p_domain.top:
        raise AxiomViolation("Pl2", (frozenset(states), values[full]),
                             "full set is not at top")
    leq = p_domain.leq

    def subset(mask):
        return frozenset(s for i, s in enumerate(states) if mask >> i & 1)

    if 3 ** n <= _ALL_PAIRS_CAP:
        for y in range(full + 1):
            x = y
            while True:  # enumerate submasks of y
                if not leq(values[x], values[y]):
                    raise AxiomViolation("Pl3", (subset(x), subset(y)),
                                         "measure not monotone")
                if x == 0:
                    break
                x = (x - 1) & y
    else:
        # Cover-based: monotone along single-element extensions plus a
        # transitive plausibility order implies monotone everywhere.
        if p_domain.transitive is False:
            raise GeuError("Pl3 check needs a transitive plausibility order at this size")
        for x in range(full + 1):
            for i in range(n):
                if x >> i & 1:
                    continue
                y = x | (1 << i)
                if not leq(values[x], values[y]):
                    raise AxiomViolation("Pl3", (subset(x), subset(y)),
                                         "measure not monotone")


def make_plausibility_measure(states, assignment: Mapping, p_domain: Domain) -> PlausibilityMeasure:
    """Validate an explicit powerset assignment and wrap it as a measure.

    ``assignment`` maps subsets (iterables of state labels, or bitmask ints)
    to plausibility values and must cover every subset exactly once.
    """
    states = tuple(states)
    n = len(states)
    if n == 0:
        raise GeuError("state set must be nonempty")
    if n > MAX_STATES:
        raise TooLarge(n, MAX_STATES)
    index = {s: i for i, s in enumerate(states)}
    values = [None] * (1 << n)
    for key, raw in assignment.items():
        if isinstance(key, int):
            mask = key
        else:
            mask = 0
            for s in key:
                if s not in index:
                    raise GeuError(f"unknown state {s!r} in assignment")
                mask |= 1 << index[s]
        if not 0 <= mask < (1 << n):
            raise GeuError(f"subset mask {mask} out of range")
        if values[mask] is not None:
            raise GeuError(f"subset {sorted(key) if not isinstance(key, int) else key} assigned twice")
        v = as_value(raw)
        if not p_domain.contains(v):
            raise GeuError(f"value {v!r} outside plausibility domain {p_domain.name}")
        values[mask] = v
    missing = [m for m, v in enumerate(values) if v is None]
    if missing:
        raise GeuError(f"assignment missing {len(missing)} subsets (first mask: {missing[0]})")
    _check_pl_axioms(states, values, p_domain)
    return PlausibilityMeasure(states, p_domain, values=values, fully_validated=True)


def probability_measure(states, atoms: Mapping) -> PlausibilityMeasure:
    """Additive measure from exact per-state masses summing to one."""
    states = tuple(states)
    masses = {}
    for s in states:
        m = as_value(atoms.get(s, 0))
        if not isinstance(m, Fraction) or m < 0:
            raise NotAProbability("?", f"mass of {s!r} is not a nonnegative rational")
        masses[s] = m
    extra = set(atoms) - set(states)
    if extra:
        raise GeuError(f"atoms given for unknown states {sorted(extra)}")
    if sum(masses.values()) != 1:
        raise NotAProbability("?", f"total mass {sum(masses.values())} != 1")
    n = len(states)
    values = []
    for mask in range(1 << n):
        values.append(sum((masses[states[i]] for i in range(n) if mask >> i & 1),
                          Fraction(0)))
    unit = unit_interval_domain()
    _check_pl_axioms(states, values, unit)
    return PlausibilityMeasure(states, unit, values=values, fully_validated=True)


def is_additive_probability(pl: PlausibilityMeasure) -> bool:
    """True when the measure equals the sum of its singleton masses with total one."""
    if pl._values is None:
        return False
    n = len(pl.states)
    atoms = [pl.value_of_mask(1 << i) for i in range(n)]
    if any(not isinstance(a, (Fraction, int)) or a < 0 for a in atoms):
        return False
    if sum(atoms) != 1:
        return False
    for mask in range(1 << n):
        total = sum((atoms[i] for i in range(n) if mask >> i & 1), Fraction(0))
        if pl.value_of_mask(mask) != total:
            return False
    return True


def make_pl_from_probability_set(states, measures: Sequence) -> tuple:
    """Represent a set of named probability measures as one plausibility measure.

    Each subset maps to the vector of its probabilities under every measure;
    vectors are ordered pointwise, with the constant-0 and constant-1 vectors
    as bottom and top.  Returns ``(domain, measure)``.
    """
    states = tuple(states)
    if isinstance(measures, Mapping):
        measures = list(measures.items())
    names = [name for name, _ in measures]
    if len(set(names)) != len(names):
        raise GeuError("probability measure names must be unique")
    if not names:
        raise GeuError("need at least one probability measure")
    prob_tables = {}
    for name, atoms in measures:
        try:
            prob_tables[name] = probability_measure(states, atoms)
        except NotAProbability as e:
            raise NotAProbability(name, str(e)) from None
        except GeuError as e:
            raise NotAProbability(name, str(e)) from None
    domain = vectors_domain(names)
    n = len(states)
    values = []
    for mask in range(1 << n):
        values.append(Vec.of({name: prob_tables[name].value_of_mask(mask) for name in names}))
    _check_pl_axioms(states, values, domain)
    pl = PlausibilityMeasure(states, domain, values=values, fully_validated=True)
    return domain, pl


def recover_probability_set(pl: PlausibilityMeasure):
    """Invert ``make_pl_from_probability_set``: extract the named measures.

    Returns ``None`` unless the measure is vector-valued with every
    coordinate additive and normalized.
    """
    if pl.p_domain.kind != "vectors" or pl._values is None:
        return None
    names = pl.p_domain.params
    n = len(pl.states)
    out = []
    for name in names:
        atoms = {}
        for i, s in enumerate(pl.states):
            v = pl.value_of_mask(1 << i).get(name)
            if not isinstance(v, (Fraction, int)) or v < 0:
                return None
            atoms[s] = Fraction(v)
        if sum(atoms.values()) != 1:
            return None
        for mask in range(1 << n):
            total = sum((atoms[pl.states[i]] for i in range(n) if mask >> i & 1), Fraction(0))
            if pl.value_of_mask(mask).get(name) != total:
                return None
        out.append((name, atoms))
    return out
