"""Fusion mechanisms: confidence hypotheses h1..h5, fixed rules, voting, Dempster-Shafer, boosting, bagging."""

from .bagging import bagging_fit, bagging_predict, bagging_train_predict, bootstrap_sample
from .boosting import AdaBoostModel, Stump, adaboost_alpha, adaboost_train, stump_learner
from .dempster_shafer import (
    ClassifierReliability,
    MassFunction,
    belief,
    ds_combine,
    ds_decide,
    ds_from_evidence,
    plausibility,
    singleton,
)
from .ensemble import EnsembleDecision, best_label, binomial_ensemble_error
from .fixed_rules import RULES, averaged_bayes, fixed_rule, harden, rule_scores
from .hypotheses import confidence_weighted_vote, hypothesis1, hypothesis2, hypothesis3, hypothesis4, hypothesis5
from .voting import VARIANTS, vote

# names accepted by the CLI's --hypothesis option
RULE_NAMES = (
    "h1", "h2", "h3", "h4", "h5",
    "product", "sum", "max", "min", "mean", "median",
    "vote-unanimous", "vote-noconflict", "vote-margin",
    "avg-bayes", "ds", "adaboost", "bagging",
)
