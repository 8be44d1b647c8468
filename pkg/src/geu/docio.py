"""Problem documents: the JSON schema the CLI and service accept.

Exact rationals travel as "p/q" strings (plain integers are fine); floats
are accepted only for utilities under a real-valued utility domain.
Unknown fields are rejected.  Documents come in three kinds: ``act``,
``lottery``, and ``aa`` (state-indexed lotteries).
"""
from __future__ import annotations

import json
from typing import Dict, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from .domains import finite_domain, rationals_domain, reals_domain, unit_interval_domain
from .exceptions import ParseError, TooLarge
from .expectation import credal_expectation_domain, standard_expectation_domain
from .horse import AAProblem
from .lottery import Lottery, LotteryDecisionProblem, LotteryDecisionSituation
from .plausibility import (MAX_STATES, make_pl_from_probability_set,
                           make_plausibility_measure, probability_measure)
from .problems import DecisionProblem, make_problem
from .rules import BeliefFunction
from .values import parse_rational

MAX_ACTS = 12
MAX_TABLE_ENTRIES = 1 << 16

RationalLike = Union[int, str]
UtilityLike = Union[int, str, float]


class _Model(BaseModel):
    model_config = ConfigDict(extra="forbid")


class BuiltinDomainSpec(_Model):
    builtin: Literal["reals", "rationals", "unit"]


class FiniteDomainSpec(_Model):
    values: List[str]
    order: List[List[str]]
    bottom: Optional[str] = None
    top: Optional[str] = None


DomainSpec = Union[BuiltinDomainSpec, FiniteDomainSpec]


class ProbabilityMeasureSpec(_Model):
    type: Literal["probability"]
    atoms: Dict[str, RationalLike]


class CredalMeasureSpec(_Model):
    type: Literal["credal"]
    measures: Dict[str, Dict[str, RationalLike]]


class BeliefMassSpec(_Model):
    type: Literal["belief_mass"]
    masses: Dict[str, RationalLike]


class TableMeasureSpec(_Model):
    type: Literal["table"]
    values: Dict[str, RationalLike]


MeasureSpec = Union[ProbabilityMeasureSpec, CredalMeasureSpec, BeliefMassSpec,
                    TableMeasureSpec]


class ActDocument(_Model):
    version: Literal["1"]
    kind: Literal["act"]
    states: List[str] = Field(min_length=1)
    consequences: List[str] = Field(min_length=1)
    acts: Dict[str, Dict[str, str]] = Field(min_length=1)
    utility: Dict[str, UtilityLike]
    utility_domain: Optional[DomainSpec] = None
    measure: Optional[MeasureSpec] = None


class LotterySpec(_Model):
    atoms: Optional[Dict[str, RationalLike]] = None
    support: Optional[List[str]] = None
    table: Optional[Dict[str, RationalLike]] = None


class LotteryDocument(_Model):
    version: Literal["1"]
    kind: Literal["lottery"]
    consequences: List[str] = Field(min_length=1)
    lotteries: Dict[str, LotterySpec] = Field(min_length=1)
    utility: Dict[str, UtilityLike]
    utility_domain: Optional[DomainSpec] = None


class AADocument(_Model):
    version: Literal["1"]
    kind: Literal["aa"]
    states: List[str] = Field(min_length=1)
    consequences: List[str] = Field(min_length=1)
    lotteries: Dict[str, LotterySpec] = Field(min_length=1)
    horses: Dict[str, Dict[str, str]] = Field(min_length=1)
    utility: Dict[str, UtilityLike]
    measure: Optional[ProbabilityMeasureSpec] = None


_DOCUMENT_TYPES = {"act": ActDocument, "lottery": LotteryDocument, "aa": AADocument}


def _split_subset(key: str) -> tuple:
    return tuple(part for part in key.split(",") if part != "")


def _build_utility_domain(spec):
    if spec is None or isinstance(spec, BuiltinDomainSpec) and spec.builtin == "reals":
        return reals_domain(), True
    if isinstance(spec, BuiltinDomainSpec):
        if spec.builtin == "rationals":
            return rationals_domain(), False
        return unit_interval_domain(), False
    pairs = [(a, b) for a, b in spec.order]
    return finite_domain(spec.values, order_pairs=pairs, bottom=spec.bottom,
                         top=spec.top, name="utility"), False


def _parse_utility(raw: Dict[str, UtilityLike], domain, allow_float: bool, finite: bool):
    out = {}
    for c, v in raw.items():
        if finite:
            if not isinstance(v, str) or not domain.contains(v):
                raise ParseError(f"utility of {c!r} must be a carrier label, got {v!r}")
            out[c] = v
        elif isinstance(v, float):
            if not allow_float:
                raise ParseError(f"float utility for {c!r} needs a real-valued utility domain")
            out[c] = v
        else:
            try:
                out[c] = parse_rational(v)
            except ValueError as e:
                raise ParseError(f"utility of {c!r}: {e}") from None
    return out


def _rationals(mapping: Dict[str, RationalLike], what: str) -> dict:
    out = {}
    for k, v in mapping.items():
        try:
            out[k] = parse_rational(v)
        except ValueError as e:
            raise ParseError(f"{what} {k!r}: {e}") from None
    return out


def _check_subset_labels(states):
    for s in states:
        if "," in s:
            raise ParseError(f"state label {s!r} may not contain a comma "
                             "(commas separate subset members)")


def _build_act_problem(doc: ActDocument) -> DecisionProblem:
    if len(doc.states) > MAX_STATES and doc.measure is not None:
        raise TooLarge(len(doc.states), MAX_STATES)
    if len(doc.acts) > MAX_ACTS:
        raise TooLarge(len(doc.acts), MAX_ACTS, "act list")
    u_domain, is_real = _build_utility_domain(doc.utility_domain)
    finite = isinstance(doc.utility_domain, FiniteDomainSpec)
    utility = _parse_utility(doc.utility, u_domain, is_real, finite)

    expectation = measure = None
    spec = doc.measure
    if spec is not None:
        if isinstance(spec, ProbabilityMeasureSpec):
            measure = probability_measure(doc.states, _rationals(spec.atoms, "atom"))
            expectation = standard_expectation_domain()
        elif isinstance(spec, CredalMeasureSpec):
            named = [(name, _rationals(atoms, f"atom of {name}"))
                     for name, atoms in spec.measures.items()]
            _, measure = make_pl_from_probability_set(doc.states, named)
            expectation = credal_expectation_domain([n for n, _ in named])
        elif isinstance(spec, BeliefMassSpec):
            _check_subset_labels(doc.states)
            masses = {_split_subset(k): v for k, v in _rationals(spec.masses, "mass").items()}
            measure = BeliefFunction.from_masses(doc.states, masses).measure
            expectation = standard_expectation_domain()
        else:
            _check_subset_labels(doc.states)
            if len(spec.values) > MAX_TABLE_ENTRIES:
                raise TooLarge(len(spec.values), MAX_TABLE_ENTRIES, "powerset table")
            table = {_split_subset(k): v for k, v in _rationals(spec.values, "entry").items()}
            measure = make_plausibility_measure(doc.states, table, unit_interval_domain())
            expectation = standard_expectation_domain()
    return make_problem(doc.states, doc.consequences, doc.acts, utility,
                        u_domain=u_domain, expectation=expectation, measure=measure)


def _build_lottery(name: str, spec: LotterySpec) -> Lottery:
    if spec.atoms is not None:
        if spec.table is not None:
            raise ParseError(f"lottery {name!r}: give atoms or a table, not both")
        return Lottery.from_atoms(_rationals(spec.atoms, f"atom of {name}"))
    if spec.table is None or spec.support is None:
        raise ParseError(f"lottery {name!r}: a table lottery needs 'support' and 'table'")
    table = {_split_subset(k): v for k, v in _rationals(spec.table, f"entry of {name}").items()}
    return Lottery.from_table(spec.support, table, unit_interval_domain())


def _build_lottery_problem(doc: LotteryDocument) -> LotteryDecisionProblem:
    for c in doc.consequences:
        if "," in c:
            raise ParseError(f"consequence label {c!r} may not contain a comma")
    lotteries = tuple((name, _build_lottery(name, spec))
                      for name, spec in doc.lotteries.items())
    situation = LotteryDecisionSituation(tuple(doc.consequences),
                                         unit_interval_domain(), lotteries)
    u_domain, is_real = _build_utility_domain(doc.utility_domain)
    finite = isinstance(doc.utility_domain, FiniteDomainSpec)
    utility = _parse_utility(doc.utility, u_domain, is_real, finite)
    return LotteryDecisionProblem(situation, standard_expectation_domain(),
                                  utility)


def _build_aa_problem(doc: AADocument) -> AAProblem:
    lotteries = tuple((name, _build_lottery(name, spec))
                      for name, spec in doc.lotteries.items())
    inner = LotteryDecisionSituation(tuple(doc.consequences),
                                     unit_interval_domain(), lotteries)
    utility = _parse_utility(doc.utility, reals_domain(), True, False)
    outer_e = measure = None
    if doc.measure is not None:
        measure = probability_measure(doc.states, _rationals(doc.measure.atoms, "atom"))
        outer_e = standard_expectation_domain()
    return AAProblem.from_maps(doc.states, inner, doc.horses,
                               standard_expectation_domain(),
                               utility, outer_e=outer_e, measure=measure)


def parse_document(data) -> Union[ActDocument, LotteryDocument, AADocument]:
    if not isinstance(data, dict):
        raise ParseError("document must be a JSON object")
    kind = data.get("kind")
    model = _DOCUMENT_TYPES.get(kind)
    if model is None:
        raise ParseError(f"unknown document kind {kind!r}; expected one of "
                         f"{sorted(_DOCUMENT_TYPES)}")
    try:
        return model.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        loc = ".".join(str(p) for p in first["loc"])
        raise ParseError(f"{loc}: {first['msg']}") from None


def build_problem(data):
    doc = parse_document(data)
    if isinstance(doc, ActDocument):
        return _build_act_problem(doc)
    if isinstance(doc, LotteryDocument):
        return _build_lottery_problem(doc)
    return _build_aa_problem(doc)


def parse_problem(text: str):
    """Parse a UTF-8 JSON document into a validated in-memory problem.

    Axiom checks (measure laws, domain order laws) run here; violations
    propagate with their witnesses.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, line=e.lineno) from None
    return build_problem(data)
