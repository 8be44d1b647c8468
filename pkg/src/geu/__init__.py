"""Generalized expected utility over arbitrary expectation domains.

Core objects: Value algebra (exact rationals, pairs, finite sets, indexed
vectors), ordered domains with machine-checked laws, plausibility measures,
decision problems, a catalogue of decision rules, constructive
representations of rules inside generalized expected utility, and the
lottery / two-level (state-indexed lottery) frameworks.
"""

from .domains import (Domain, OrderReport, check_order_properties, finite_domain,
                      powerset_domain, rationals_domain, reals_domain,
                      reals_with_inf_domain, unit_interval_domain, vectors_domain)
from .exceptions import (AxiomViolation, GeuError, ParseError, TooLarge)
from .expectation import (ExpectationDomain, credal_expectation_domain,
                          make_expectation_domain, standard_expectation_domain,
                          verify_axioms)
from .horse import AAProblem, extend_utility, flatten, horse_geu
from .lottery import (Lottery, LotteryDecisionProblem, LotteryDecisionSituation,
                      construct_situation, construct_situation_standard,
                      induce_lottery, induce_situation, is_lottery_uniform,
                      lift_lottery_rule, lottery_geu, lottery_rule_geu)
from .plausibility import (PlausibilityMeasure, make_pl_from_probability_set,
                           make_plausibility_measure, probability_measure)
from .problems import (DecisionProblem, DecisionSituation, PlausibilisticSituation,
                       PreferenceRelation, geu, make_problem, relation_equal,
                       relation_from_pairs, standard_eu, utility_lottery, utility_rv)
from .representations import (RuleTable, congruent, indistinguishable, is_uniform,
                              represent_ordinal, represent_uniform,
                              respects_utility, similar, tabulate, tau_maximin,
                              tau_mmeu, tau_regret, weakly_respects_utility)
from .rules import (RULES, BeliefFunction, choquet_expectation, core_extreme_points,
                    rule_ceu, rule_eu, rule_geu, rule_maximin, rule_mmeu, rule_regret)
from .values import Value, Vec, as_value, render_value

__version__ = "0.1.0"
