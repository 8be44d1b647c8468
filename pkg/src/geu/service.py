"""HTTP service wrapping the decision-theory core.

Request/response models are pydantic; the handler functions are plain
(model in, model out) so the CLI can call them in-process, and the FastAPI
app routes to the same handlers.  Input errors (parsing, axiom violations,
rule-domain mismatches) surface as HTTP 422; precondition failures of the
representation constructions are ordinary responses with ``ok=false`` and
a witness.
"""
from __future__ import annotations

from typing import Dict, List, Literal, Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, ConfigDict

from .docio import build_problem
from .exceptions import (GeuError, NotReflexive, NotRespectingUtility,
                         NotUniform, NotWeaklyRespectingUtility)
from .horse import AAProblem, flatten, horse_geu
from .lottery import (LotteryDecisionProblem, construct_situation,
                      construct_situation_standard, induce_lottery,
                      lottery_uniform_witness, _induce_map)
from .problems import DecisionProblem, PreferenceRelation, geu, relation_equal
from .representations import (EXAMPLE_TRANSFORMS, RuleTable, _respect_witness,
                              _uniform_witness, congruent, represent_ordinal,
                              represent_uniform, similar)
from .rules import RULES, rule_geu
from .suites import SUITES, run_suites
from .values import render_value


class _Model(BaseModel):
    model_config = ConfigDict(extra="forbid")


class ErrorInfo(_Model):
    category: str
    message: str
    witness: Optional[str] = None


class EvalRequest(_Model):
    document: dict
    rule: str


class PairInfo(_Model):
    left: str
    right: str
    relation: Literal["<", ">", "~", "?"]


class EvalResponse(_Model):
    ok: bool = True
    rule: str
    acts: List[str]
    values: Dict[str, str]
    matrix: List[List[bool]]
    pairs: List[PairInfo]


class RepresentRequest(_Model):
    document: dict
    rule: str
    mode: str  # example | thm2/uniform | thm3/ordinal


class RepresentResponse(_Model):
    ok: bool
    rule: str
    mode: str
    congruent: Optional[bool] = None
    similar: Optional[bool] = None
    relation_equal: Optional[bool] = None
    values: Optional[Dict[str, str]] = None
    axioms: Optional[str] = None
    error: Optional[ErrorInfo] = None


class CheckRequest(_Model):
    document: dict
    property: Literal["uniform", "respects-utility", "weakly-respects-utility",
                      "lottery-uniform"]
    rule: str = "geu"


class CheckResponse(_Model):
    ok: bool = True
    property: str
    rule: str
    verdict: bool
    witness: Optional[str] = None


class DocumentRequest(_Model):
    document: dict


class LotteryRender(_Model):
    support: List[str]
    table: Dict[str, str]


class LotteryInduceResponse(_Model):
    ok: bool = True
    lotteries: Dict[str, LotteryRender]
    act_to_lottery: Dict[str, str]


class LotteryConstructRequest(_Model):
    document: dict
    standard: bool = False


class SituationRender(_Model):
    states: List[str]
    consequences: List[str]
    acts: Dict[str, Dict[str, str]]
    measure: Dict[str, str]


class LotteryConstructResponse(_Model):
    ok: bool = True
    standard: bool
    situation: SituationRender
    roundtrip: bool


class AAFlattenResponse(_Model):
    ok: bool = True
    states: List[str]
    consequences: List[str]
    acts: Dict[str, Dict[str, str]]
    utility: Dict[str, str]
    equivalent: bool


class FuzzRequest(_Model):
    seed: int = 42
    count: int = 200
    suite: Optional[str] = None


class SuiteReport(_Model):
    name: str
    cases: int
    passed: int
    failed: int
    first_failure: Optional[dict] = None
    note: Optional[str] = None


class FuzzResponse(_Model):
    ok: bool
    suites: List[SuiteReport]


# --- handlers -------------------------------------------------------------------


def _act_problem(data) -> DecisionProblem:
    problem = build_problem(data)
    if not isinstance(problem, DecisionProblem):
        raise GeuError("this operation needs an act-framework document")
    return problem


def _get_rule(name: str):
    if name not in RULES:
        raise GeuError(f"unknown rule {name!r}; known: {sorted(RULES)}")
    return RULES[name]


def _relation_payload(relation: PreferenceRelation, acts):
    matrix = [[relation.holds(a, b) for b in acts] for a in acts]
    pairs = [PairInfo(left=a, right=b, relation=relation.classify(a, b))
             for i, a in enumerate(acts) for b in acts[i + 1:]]
    return matrix, pairs


def handle_eval(req: EvalRequest) -> EvalResponse:
    d = _act_problem(req.document)
    rule = _get_rule(req.rule)
    reason = rule.applicability(d)
    if reason is not None:
        raise GeuError(f"rule {req.rule} does not apply: {reason}")
    acts = list(d.situation.act_names)
    scores = rule.scores(d)
    relation = rule(d)
    matrix, pairs = _relation_payload(relation, acts)
    return EvalResponse(rule=req.rule, acts=acts,
                        values={a: render_value(scores[a]) for a in acts},
                        matrix=matrix, pairs=pairs)


_MODE_ALIASES = {"thm2": "thm2", "uniform": "thm2", "thm3": "thm3",
                 "ordinal": "thm3", "example": "example"}


def handle_represent(req: RepresentRequest) -> RepresentResponse:
    mode = _MODE_ALIASES.get(req.mode)
    if mode is None:
        raise GeuError(f"unknown mode {req.mode!r}; expected example, thm2 or thm3")
    d = _act_problem(req.document)
    rule = _get_rule(req.rule)
    reason = rule.applicability(d)
    if reason is not None:
        raise GeuError(f"rule {req.rule} does not apply: {reason}")
    base_relation = rule(d)

    if mode == "example":
        transform_name = "id-eu" if req.rule == "eu" else req.rule
        transform = EXAMPLE_TRANSFORMS.get(transform_name)
        if transform is None:
            raise GeuError(f"no example transformation for rule {req.rule!r}; "
                           "use thm2 or thm3")
        t = transform(d)
        # worst-case rules read only the nonplausibilistic part, so their
        # transformations preserve the tastes of that reduct
        target = d.nonplausibilistic_reduct() if transform_name in ("maximin", "regret") else d
        equal = relation_equal(rule_geu(t), base_relation)
        return RepresentResponse(ok=equal and congruent(t, target), rule=req.rule,
                                 mode=req.mode, congruent=congruent(t, target),
                                 similar=similar(t, target), relation_equal=equal,
                                 values=_geu_values(t),
                                 axioms="E1-E4 verified at construction (seeded probe)")

    table = RuleTable(d, base_relation)
    build = represent_uniform if mode == "thm2" else represent_ordinal
    try:
        t = build(d, table)
    except (NotUniform, NotRespectingUtility, NotWeaklyRespectingUtility, NotReflexive) as e:
        return RepresentResponse(ok=False, rule=req.rule, mode=req.mode,
                                 error=ErrorInfo(category=type(e).__name__,
                                                 message=str(e),
                                                 witness=repr(e.witness)))
    equal = relation_equal(rule_geu(t), base_relation)
    return RepresentResponse(ok=equal, rule=req.rule, mode=req.mode,
                             congruent=congruent(t, d), similar=similar(t, d),
                             relation_equal=equal, values=_geu_values(t),
                             axioms="E1-E4 verified at construction (seeded probe)")


def _geu_values(t: DecisionProblem) -> Dict[str, str]:
    return {a: render_value(geu(t, a)) for a in t.situation.act_names}


def handle_check(req: CheckRequest) -> CheckResponse:
    d = _act_problem(req.document)
    rule = _get_rule(req.rule)
    reason = rule.applicability(d)
    if reason is not None:
        raise GeuError(f"rule {req.rule} does not apply: {reason}")
    relation = rule(d)
    if req.property == "uniform":
        witness = _uniform_witness(relation, d)
    elif req.property == "respects-utility":
        witness = _respect_witness(relation, d, weak=False)
    elif req.property == "weakly-respects-utility":
        witness = _respect_witness(relation, d, weak=True)
    else:
        witness = lottery_uniform_witness(d.plaus_situation(), relation)
    return CheckResponse(property=req.property, rule=req.rule,
                         verdict=witness is None,
                         witness=None if witness is None else repr(witness))


def _render_lottery(lot) -> LotteryRender:
    table = {}
    n = len(lot.support)
    for mask in range(1 << n):
        key = ",".join(lot.support[i] for i in range(n) if mask >> i & 1)
        table[key] = render_value(lot.measure.value_of_mask(mask))
    return LotteryRender(support=list(lot.support), table=table)


def handle_lottery_induce(req: DocumentRequest) -> LotteryInduceResponse:
    d = _act_problem(req.document)
    ps = d.plaus_situation()
    situation, act_to_lottery = _induce_map(ps)
    lotteries = {name: _render_lottery(lot) for name, lot in situation.lotteries}
    return LotteryInduceResponse(lotteries=lotteries, act_to_lottery=act_to_lottery)


def handle_lottery_construct(req: LotteryConstructRequest) -> LotteryConstructResponse:
    problem = build_problem(req.document)
    if not isinstance(problem, LotteryDecisionProblem):
        raise GeuError("this operation needs a lottery document")
    ls = problem.situation
    ps = construct_situation_standard(ls) if req.standard else construct_situation(ls)
    if ps.measure._values is None:
        raise GeuError(f"constructed state space has {len(ps.situation.states)} states; "
                       "its measure cannot be rendered as a powerset table "
                       "(16-state limit) - use the library interface")
    roundtrip = True
    for name, lot in ls.lotteries:
        if name in ps.situation.act_names and induce_lottery(ps, name) != lot:
            roundtrip = False
    measure_table = {}
    n = len(ps.situation.states)
    for mask in range(1 << n):
        key = ",".join(ps.situation.states[i] for i in range(n) if mask >> i & 1)
        measure_table[key] = render_value(ps.measure.value_of_mask(mask))
    situation = SituationRender(
        states=list(ps.situation.states),
        consequences=list(ps.situation.consequences),
        acts={a: ps.situation.act_map(a) for a in ps.situation.act_names},
        measure=measure_table)
    return LotteryConstructResponse(standard=req.standard, situation=situation,
                                    roundtrip=roundtrip)


def _aa_problem(data) -> AAProblem:
    problem = build_problem(data)
    if not isinstance(problem, AAProblem):
        raise GeuError("this operation needs a state-indexed lottery (aa) document")
    return problem


def handle_aa_flatten(req: DocumentRequest) -> AAFlattenResponse:
    p = _aa_problem(req.document)
    flat = flatten(p)
    equivalent = all(geu(flat, name) == horse_geu(p, name)
                     for name, _ in p.horses)
    return AAFlattenResponse(states=list(flat.situation.states),
                             consequences=list(flat.situation.consequences),
                             acts={a: flat.situation.act_map(a)
                                   for a in flat.situation.act_names},
                             utility={c: render_value(v)
                                      for c, v in flat.utility.items()},
                             equivalent=equivalent)


def handle_aa_eval(req: DocumentRequest) -> EvalResponse:
    p = _aa_problem(req.document)
    flat = flatten(p)
    names = [n for n, _ in p.horses]
    scores = {n: horse_geu(p, n) for n in names}
    relation = rule_geu(flat)
    matrix, pairs = _relation_payload(relation, names)
    return EvalResponse(rule="geu", acts=names,
                        values={n: render_value(scores[n]) for n in names},
                        matrix=matrix, pairs=pairs)


def handle_fuzz(req: FuzzRequest) -> FuzzResponse:
    if req.count < 0:
        raise GeuError("count must be nonnegative")
    if req.suite is not None and req.suite not in SUITES:
        raise GeuError(f"unknown suite {req.suite!r}; known: {sorted(SUITES)}")
    results = run_suites(seed=req.seed, count=req.count, suite=req.suite)
    reports = [SuiteReport(name=r.name, cases=r.cases, passed=r.passed,
                           failed=r.failed, first_failure=r.first_failure,
                           note=r.note)
               for r in results]
    return FuzzResponse(ok=all(r.failed == 0 for r in results), suites=reports)


# --- FastAPI app ------------------------------------------------------------------

app = FastAPI(title="geu",
              description="Generalized expected utility: decision rules, "
                          "representations, and lottery translations over "
                          "arbitrary expectation domains.")


def _wrap(handler, request):
    try:
        return handler(request)
    except GeuError as e:
        raise HTTPException(status_code=422,
                            detail={"category": type(e).__name__, "message": str(e)})


@app.get("/health")
def health() -> dict:
    return {"status": "ok"}


@app.get("/rules")
def rules() -> dict:
    return {"rules": sorted(RULES), "suites": sorted(SUITES),
            "transforms": sorted(EXAMPLE_TRANSFORMS) + ["thm2", "thm3"]}


@app.post("/eval", response_model=EvalResponse)
def eval_endpoint(req: EvalRequest):
    return _wrap(handle_eval, req)


@app.post("/represent", response_model=RepresentResponse)
def represent_endpoint(req: RepresentRequest):
    return _wrap(handle_represent, req)


@app.post("/check", response_model=CheckResponse)
def check_endpoint(req: CheckRequest):
    return _wrap(handle_check, req)


@app.post("/lottery/induce", response_model=LotteryInduceResponse)
def lottery_induce_endpoint(req: DocumentRequest):
    return _wrap(handle_lottery_induce, req)


@app.post("/lottery/construct", response_model=LotteryConstructResponse)
def lottery_construct_endpoint(req: LotteryConstructRequest):
    return _wrap(handle_lottery_construct, req)


@app.post("/aa/flatten", response_model=AAFlattenResponse)
def aa_flatten_endpoint(req: DocumentRequest):
    return _wrap(handle_aa_flatten, req)


@app.post("/aa/eval", response_model=EvalResponse)
def aa_eval_endpoint(req: DocumentRequest):
    return _wrap(handle_aa_eval, req)


@app.post("/fuzz", response_model=FuzzResponse)
def fuzz_endpoint(req: FuzzRequest):
    return _wrap(handle_fuzz, req)
