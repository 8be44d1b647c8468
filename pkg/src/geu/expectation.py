"""Expectation domains: (U, P, V, otimes, oplus) with machine-checked laws.

The four laws:

* E1  oplus is associative,
* E2  oplus is commutative,
* E3  top otimes u = embed(u) for every utility u,
* E4  embed maps U into V preserving and reflecting the order
      (U is a substructure of V).

Finite carriers are checked exhaustively; builtin carriers are probed on a
documented seeded sample (default 1000 draws per law, ``random.Random(seed)``
with each domain's own sampler).
"""
from __future__ import annotations

import random

from .domains import Domain, real_vectors_domain, reals_domain, unit_interval_domain, vectors_domain
from .exceptions import AxiomViolation, GeuError
from .values import Vec, as_value

_EXHAUSTIVE_TRIPLE_CAP = 300_000


class ExpectationDomain:
    def __init__(self, u: Domain, p: Domain, v: Domain, otimes, oplus,
                 embed=None, kind="custom", params=()):
        if p.bottom is None or p.top is None:
            raise GeuError("plausibility domain needs bottom and top")
        self.u = u
        self.p = p
        self.v = v
        self.otimes = otimes
        self.oplus = oplus
        self.embed = embed if embed is not None else (lambda x: x)
        self.kind = kind
        self.params = params

    def v_leq(self, x, y) -> bool:
        return self.v.leq(x, y)

    def __repr__(self):
        return f"ExpectationDomain({self.kind})"


def _probe(dom: Domain, rng, n):
    if dom.carrier is not None and len(dom.carrier) <= n:
        return list(dom.carrier)
    return [dom.sample(rng) for _ in range(n)]


def verify_axioms(e: ExpectationDomain, seed=0, probe=1000):
    """Raise AxiomViolation on the first law that fails."""
    rng = random.Random(seed)
    u_elems = _probe(e.u, rng, probe)
    v_elems = _probe(e.v, rng, probe)

    exhaustive_v = e.v.carrier is not None and len(e.v.carrier) ** 3 <= _EXHAUSTIVE_TRIPLE_CAP
    if exhaustive_v:
        triples = [(x, y, z) for x in v_elems for y in v_elems for z in v_elems]
        pairs = [(x, y) for x in v_elems for y in v_elems]
    else:
        triples = [(rng.choice(v_elems), rng.choice(v_elems), rng.choice(v_elems))
                   for _ in range(probe)]
        pairs = [(rng.choice(v_elems), rng.choice(v_elems)) for _ in range(probe)]

    for x, y, z in triples:
        if e.oplus(e.oplus(x, y), z) != e.oplus(x, e.oplus(y, z)):
            raise AxiomViolation("E1", (x, y, z), "oplus not associative")
    for x, y in pairs:
        if e.oplus(x, y) != e.oplus(y, x):
            raise AxiomViolation("E2", (x, y), "oplus not commutative")
    for u in u_elems:
        if e.otimes(e.p.top, u) != e.embed(u):
            raise AxiomViolation("E3", u, "top is not a left identity of otimes")
    exhaustive_u = e.u.carrier is not None and len(e.u.carrier) ** 2 <= _EXHAUSTIVE_TRIPLE_CAP
    if exhaustive_u:
        u_pairs = [(a, b) for a in u_elems for b in u_elems]
    else:
        u_pairs = [(rng.choice(u_elems), rng.choice(u_elems)) for _ in range(probe)]
    for a, b in u_pairs:
        if e.u.leq(a, b) != e.v.leq(e.embed(a), e.embed(b)):
            raise AxiomViolation("E4", (a, b), "embedding does not preserve/reflect the utility order")


def make_expectation_domain(u, p, v, otimes, oplus, embed=None, kind="custom",
                            params=(), seed=0, probe=1000) -> ExpectationDomain:
    """Bundle the five components and verify E1-E4 before returning."""
    e = ExpectationDomain(u, p, v, otimes, oplus, embed=embed, kind=kind, params=params)
    verify_axioms(e, seed=seed, probe=probe)
    return e


_standard_cache = {}


def standard_expectation_domain(verify=True, seed=0, probe=1000) -> ExpectationDomain:
    """The standard domain: reals, the unit interval, +, and *.  Verified
    instances are cached per (seed, probe)."""
    cache_key = (verify, seed, probe)
    if cache_key in _standard_cache:
        return _standard_cache[cache_key]
    u = reals_domain()
    p = unit_interval_domain()
    v = reals_domain()
    e = ExpectationDomain(u, p, v,
                          otimes=lambda pl, x: pl * x,
                          oplus=lambda x, y: x + y,
                          kind="standard")
    if verify:
        verify_axioms(e, seed=seed, probe=probe)
    _standard_cache[cache_key] = e
    return e


_credal_cache = {}


def credal_expectation_domain(names, order="pointwise", verify=True, seed=0,
                              probe=1000) -> ExpectationDomain:
    """Expectation domain for a set of named probability measures.

    Plausibility values are [0,1]-vectors indexed by measure name; products
    scale every coordinate, sums add pointwise.  With ``order="min"`` the
    valuation order compares vectors by their worst coordinate, which makes
    generalized expected utility coincide with worst-case expected utility.
    Instances are cached per (names, order): the domain is immutable and its
    verification is deterministic.
    """
    names = tuple(names)
    cache_key = (names, order, verify, seed, probe)
    if cache_key in _credal_cache:
        return _credal_cache[cache_key]
    u = reals_domain()
    p = vectors_domain(names)
    v = real_vectors_domain(names, order=order)

    def otimes(pl: Vec, x):
        return pl.map(lambda coord: coord * x)

    def oplus(a: Vec, b: Vec):
        return Vec(tuple((k, x + y) for (k, x), (_, y) in zip(a.items, b.items)))

    def embed(x):
        return Vec.of({n: as_value(x) for n in names})

    e = ExpectationDomain(u, p, v, otimes, oplus, embed=embed,
                          kind=f"credal_{order}", params=names)
    if verify:
        verify_axioms(e, seed=seed, probe=probe)
    _credal_cache[cache_key] = e
    return e
