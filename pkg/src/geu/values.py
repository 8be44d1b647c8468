"""Value algebra shared by every domain in the library.

A ``Value`` is one of:

* an exact rational (``fractions.Fraction``; integers are normalized to these),
* a binary64 float (only where a domain is declared real-valued; ``math.inf``
  stands for positive infinity),
* a label (``str``), used for states and consequences inside constructed
  value spaces,
* a pair (``tuple``), e.g. utility/consequence pairs,
* a finite set (``frozenset``) of values,
* a ``Vec``: a finite map from index names to values, e.g. a tuple of
  per-probability-measure evaluations.

Structural equality (``==``) is the one equality used everywhere.  A total
"canonical" order on values (``canon_key``) makes folds and rendered output
reproducible even for domains whose own order is partial.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Union

POS_INF = math.inf


@dataclass(frozen=True)
class Vec:
    """Immutable finite map from index names to values, sorted by name."""

    items: tuple

    @staticmethod
    def of(mapping: Mapping) -> "Vec":
        return Vec(tuple(sorted((k, as_value(v)) for k, v in mapping.items())))

    @property
    def names(self) -> tuple:
        return tuple(k for k, _ in self.items)

    def get(self, name: str):
        for k, v in self.items:
            if k == name:
                return v
        raise KeyError(name)

    def map(self, fn) -> "Vec":
        return Vec(tuple((k, fn(v)) for k, v in self.items))

    def __repr__(self):
        inner = ", ".join(f"{k}: {render_value(v)}" for k, v in self.items)
        return "Vec{" + inner + "}"


Value = Union[Fraction, float, str, tuple, frozenset, Vec]
ValueLike = Union[Value, int, set, dict, list]


def as_value(x: ValueLike) -> Value:
    """Normalize a Python object into a Value (ints become Fractions)."""
    if isinstance(x, bool):
        raise TypeError(f"booleans are not values: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, (Fraction, float, str, Vec)):
        return x
    if isinstance(x, tuple):
        return tuple(as_value(e) for e in x)
    if isinstance(x, (frozenset, set)):
        return frozenset(as_value(e) for e in x)
    if isinstance(x, dict):
        return Vec.of(x)
    if isinstance(x, list):
        return tuple(as_value(e) for e in x)
    raise TypeError(f"not a value: {x!r}")


def is_number(v) -> bool:
    return isinstance(v, (Fraction, float, int)) and not isinstance(v, bool)


def is_finite_number(v) -> bool:
    return is_number(v) and not (isinstance(v, float) and math.isinf(v))


_RANK_NUM, _RANK_STR, _RANK_TUP, _RANK_SET, _RANK_VEC = 0, 1, 2, 3, 4


def canon_key(v: Value):
    """Total sort key over values; numbers first, then labels, pairs, sets, vecs."""
    if is_number(v):
        return (_RANK_NUM, v)
    if isinstance(v, str):
        return (_RANK_STR, v)
    if isinstance(v, tuple):
        return (_RANK_TUP, tuple(canon_key(e) for e in v))
    if isinstance(v, frozenset):
        return (_RANK_SET, len(v), tuple(sorted(canon_key(e) for e in v)))
    if isinstance(v, Vec):
        return (_RANK_VEC, v.names, tuple(canon_key(x) for _, x in v.items))
    raise TypeError(f"not a value: {v!r}")


def sorted_values(vs):
    return sorted(vs, key=canon_key)


def render_value(v: Value) -> str:
    """Canonical nested literal: sets sorted, vectors keyed by name."""
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(v, float):
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return repr(v)
    if isinstance(v, int):
        return str(v)
    if isinstance(v, str):
        return v
    if isinstance(v, tuple):
        return "(" + ", ".join(render_value(e) for e in v) + ")"
    if isinstance(v, frozenset):
        return "{" + ", ".join(render_value(e) for e in sorted_values(v)) + "}"
    if isinstance(v, Vec):
        return "{" + ", ".join(f"{k}: {render_value(x)}" for k, x in v.items) + "}"
    raise TypeError(f"not a value: {v!r}")


def parse_rational(s) -> Fraction:
    """Parse an exact rational from an int or a "p/q" / "n" string."""
    if isinstance(s, bool):
        raise ValueError(f"not a rational: {s!r}")
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, Fraction):
        return s
    if isinstance(s, str):
        try:
            return Fraction(s.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"not a rational: {s!r} ({e})") from None
    raise ValueError(f"not a rational: {s!r}")
