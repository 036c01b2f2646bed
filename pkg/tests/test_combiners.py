import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fusionbench.combiners import (
    ClassifierReliability,
    MassFunction,
    adaboost_alpha,
    adaboost_train,
    averaged_bayes,
    bagging_fit,
    bagging_predict,
    bagging_train_predict,
    belief,
    binomial_ensemble_error,
    bootstrap_sample,
    ds_combine,
    ds_decide,
    ds_from_evidence,
    fixed_rule,
    harden,
    hypothesis1,
    hypothesis2,
    hypothesis3,
    hypothesis4,
    hypothesis5,
    rule_scores,
    singleton,
    stump_learner,
    vote,
)
from fusionbench.combiners.fixed_rules import RULES
from fusionbench.rng import spawn_seeds
from fusionbench.errors import (
    DegenerateWeakLearner,
    InvalidAlpha,
    InvalidK,
    InvalidPriors,
    InvalidReliability,
    LabelOutOfRange,
    LengthMismatch,
    TotalConflict,
)


def random_posteriors(rng, R, M):
    P = rng.random((R, M))
    return P / P.sum(axis=1, keepdims=True)


class TestBinomialError:
    def test_reference_value(self):
        assert binomial_ensemble_error(0.35, 25) == pytest.approx(0.06, abs=0.005)

    def test_trivial(self):
        assert binomial_ensemble_error(0.0, 7) == 0.0
        assert binomial_ensemble_error(0.5, 3) == pytest.approx(0.5)
        assert binomial_ensemble_error(0.2, 1) == pytest.approx(0.2)

    def test_even_k(self):
        with pytest.raises(InvalidK):
            binomial_ensemble_error(0.3, 4)


class TestHypotheses:
    def test_h1_split_vote_sample(self):
        conf = np.zeros((64, 3))
        conf[25] = (1.0, 0.8, 0.6)
        conf[4] = (1.0, 1.0, 1.0)
        d = hypothesis1([25, 4, 25], conf)
        assert d.label == 25
        assert d.scores == {4: pytest.approx(1.0), 25: pytest.approx(1.6)}

    def test_h1_unanimous(self):
        conf = np.full((8, 3), 0.4)
        assert hypothesis1([7, 7, 7], conf).label == 7

    def test_h1_strong_single_voter(self):
        conf = np.zeros((2, 3))
        conf[0, :2] = 0.3
        conf[1, 2] = 0.9
        assert hypothesis1([0, 0, 1], conf).label == 1

    def test_h1_errors(self):
        with pytest.raises(LabelOutOfRange):
            hypothesis1([5, 0, 0], np.ones((3, 3)))
        with pytest.raises(LengthMismatch):
            hypothesis1([0, 0], np.ones((3, 3)))

    def test_h2(self):
        assert hypothesis2([9, 9, 63], [2.1, 0.0, 1.2], 64).label == 9
        assert hypothesis2([3, 4, 5], [1.0, 1.0, 1.0], 64).label == 3
        with pytest.raises(LengthMismatch):
            hypothesis2([1, 2], [1.0], 64)

    def test_h2_bypasses_zero_confidence_voter(self):
        # only classifier 2 is right (class 9) but its margin ratio is 0
        assert hypothesis2([13, 9, 14], [0.4, 0.0, 0.3], 64).label == 13

    def test_h3(self):
        conf = np.zeros((64, 3))
        conf[0, :2] = 1.0
        conf[63, 2] = 1.0
        assert hypothesis3([0, 0, 63], conf).label == 0
        assert hypothesis3([5, 3, 9], np.zeros((10, 3))).label == 3

    def test_h4(self):
        conf = np.full((64, 3), 0.2)
        assert hypothesis4([60, 60, 60], conf).label == 60
        conf = np.zeros((4, 3))
        conf[1, :2] = 0.2
        conf[2, 2] = 1.0
        assert hypothesis4([1, 1, 2], conf).label == 2
        assert hypothesis4([0, 0, 0], np.ones((1, 3))).label == 0

    def test_h5(self):
        d = hypothesis5([0, 0, 47], [0.89, 0.66, 0.17], 64)
        assert d.label == 0 and d.scores[0] == pytest.approx(1.55)
        assert hypothesis5([4, 4, 4], [0.1, 0.2, 0.3], 64).label == 4
        assert hypothesis5([1, 2, 3], [0.2, 0.9, 0.4], 64).label == hypothesis2([1, 2, 3], [0.2, 0.9, 0.4], 64).label


class TestFixedRules:
    def test_two_by_two_all_rules(self):
        P = [[0.6, 0.4], [0.7, 0.3]]
        # hand values: product 4*0.42 vs 4*0.12, sum 0.8 vs 0.2, max .7/.4, min .6/.3, mean .65/.35
        expected = {"product": (0.84, 0.24), "sum": (0.8, 0.2), "max": (0.7, 0.4),
                    "min": (0.6, 0.3), "mean": (0.65, 0.35), "median": (0.65, 0.35)}
        for rule, vals in expected.items():
            np.testing.assert_allclose(rule_scores(rule, P), vals)
            assert fixed_rule(rule, P).label == 0

    def test_one_hot_annihilator(self):
        P = [[1.0, 0.0, 0.0], [0.2, 0.5, 0.3]]
        assert fixed_rule("product", P).label == 0
        assert fixed_rule("min", P).label == 0
        P = [[0.0, 1.0], [1.0, 0.0]]
        assert fixed_rule("product", P).label == 0  # 0-vs-0 tie
        assert fixed_rule("min", P).label == 0

    @settings(max_examples=200, deadline=None)
    @given(st.integers(0, 2**32 - 1), st.integers(1, 5), st.integers(2, 6))
    def test_identical_rows(self, seed, R, M):
        row = random_posteriors(np.random.default_rng(seed), 1, M)
        P = np.repeat(row, R, axis=0)
        for rule in RULES:
            assert fixed_rule(rule, P).label == int(np.argmax(row))

    def test_priors(self):
        P = [[0.5, 0.5], [0.5, 0.5]]
        assert fixed_rule("product", P, priors=[0.8, 0.2]).label == 1  # 0.25/0.8 < 0.25/0.2
        assert fixed_rule("sum", P, priors=[0.8, 0.2]).label == 1
        with pytest.raises(InvalidPriors):
            fixed_rule("sum", P, priors=[0.5, 0.6])

    @settings(max_examples=300, deadline=None)
    @given(st.integers(0, 2**32 - 1), st.integers(1, 5), st.integers(1, 6))
    def test_bound_chain(self, seed, R, M):
        P = random_posteriors(np.random.default_rng(seed), R, M)
        pr, mn, me, mx = (rule_scores(r, P) for r in ("product", "min", "mean", "max"))
        pr = pr * (1.0 / M) ** (R - 1)  # undo the equal-prior scaling to get the raw product
        assert np.all(pr <= mn) and np.all(mn <= me) and np.all(me <= mx)

    def test_harden(self):
        assert harden([[0.2, 0.5, 0.3]]).tolist() == [[0, 1, 0]]
        assert harden([[0.25] * 4]).tolist() == [[1, 0, 0, 0]]
        P = random_posteriors(np.random.default_rng(1), 5, 6)
        H = harden(P)
        assert np.all(H.sum(axis=1) == 1)
        assert np.all(H[np.arange(5), np.argmax(P, axis=1)] == 1)

    def test_averaged_bayes(self):
        assert averaged_bayes([[0.1, 0.9], [0.1, 0.9]]).label == 1
        assert averaged_bayes([[1.0, 0.0], [0.0, 1.0]]).label == 0

    @settings(max_examples=300, deadline=None)
    @given(st.integers(0, 2**32 - 1), st.integers(1, 5), st.integers(1, 6))
    def test_averaged_bayes_is_mean_rule(self, seed, R, M):
        P = random_posteriors(np.random.default_rng(seed), R, M)
        assert averaged_bayes(P).label == fixed_rule("mean", P).label


class TestVoting:
    def test_unanimous(self):
        assert vote("unanimous", [5, 5, 5], 10).label == 5
        assert vote("unanimous", [5, 10, 5], 10).rejected
        assert vote("unanimous", [5, 4, 5], 10).label == 10

    def test_no_conflict(self):
        assert vote("no_conflict", [5, 10, 5], 10).label == 5
        assert vote("no_conflict", [10, 10, 10], 10).rejected
        assert vote("no_conflict", [5, 4, 10], 10).rejected

    def test_margin(self):
        preds = [0, 0, 0, 1, 1]
        assert vote("margin", preds, 2, alpha=0.2).label == 0
        assert vote("margin", preds, 2, alpha=0.4).rejected
        assert vote("margin", [1, 1, 1], 2, alpha=1.0).label == 1
        with pytest.raises(InvalidAlpha):
            vote("margin", preds, 2, alpha=0.0)
        with pytest.raises(InvalidAlpha):
            vote("margin", preds, 2, alpha=1.5)

    def test_margin_float_alpha(self):
        # 0.6 * 5 evaluates to 3.0000000000000004
        assert vote("margin", [0, 0, 0, 0, 1], 2, alpha=0.6).label == 0


def brute_combine(m1, m2, n):
    """Dense 2^n-vector Dempster rule over every pair of subsets."""
    size = 1 << n
    v1 = np.array([m1[s] for s in range(size)])
    v2 = np.array([m2[s] for s in range(size)])
    out = np.zeros(size)
    for x in range(size):
        for y in range(size):
            out[x & y] += v1[x] * v2[y]
    kinv = 1.0 - out[0]
    if kinv <= 1e-12:
        return None, kinv
    out[0] = 0
    return out / kinv, kinv


def random_mass(rng, n, max_focal=4, allow_theta=True):
    theta = (1 << n) - 1
    pool = list(range(1, theta + 1)) if allow_theta else list(range(1, theta))
    k = int(rng.integers(1, min(max_focal, len(pool)) + 1))
    focal = rng.choice(pool, size=k, replace=False)
    w = rng.random(k)
    w /= w.sum()
    return MassFunction(n, {int(a): float(v) for a, v in zip(focal, w)})


def dense(m, n):
    return np.array([m[s] for s in range(1 << n)])


class TestDempsterShafer:
    def test_vacuous_identity(self):
        m1 = MassFunction(3, {0b001: 0.6, 0b110: 0.3, 0b111: 0.1})
        out = ds_combine(m1, MassFunction.vacuous(3))
        for a in range(8):
            assert out[a] == pytest.approx(m1[a], abs=1e-12)

    def test_hand_expansion(self):
        m = MassFunction(2, {0b01: 0.5, 0b11: 0.5})
        out = ds_combine(m, m)
        assert out[0b01] == pytest.approx(0.75) and out[0b11] == pytest.approx(0.25)

    def test_total_conflict(self):
        with pytest.raises(TotalConflict):
            ds_combine(MassFunction(2, {0b01: 1.0}), MassFunction(2, {0b10: 1.0}))

    def test_invalid_mass(self):
        with pytest.raises(ValueError):
            MassFunction(2, {0b01: 0.7})
        with pytest.raises(ValueError):
            MassFunction(2, {0b100: 1.0})

    @settings(max_examples=300, deadline=None)
    @given(st.integers(0, 2**32 - 1), st.integers(1, 4))
    def test_against_oracle(self, seed, n):
        rng = np.random.default_rng(seed)
        m1, m2, m3 = (random_mass(rng, n) for _ in range(3))
        ref, kinv = brute_combine(m1, m2, n)
        if ref is None:
            with pytest.raises(TotalConflict):
                ds_combine(m1, m2)
            return
        got = ds_combine(m1, m2)
        np.testing.assert_allclose(dense(got, n), ref, atol=1e-9)
        np.testing.assert_allclose(dense(ds_combine(m2, m1), n), ref, atol=1e-9)
        assert sum(got.masses.values()) == pytest.approx(1.0, abs=1e-9)
        try:
            left = ds_combine(got, m3)
            right = ds_combine(m1, ds_combine(m2, m3))
        except TotalConflict:
            return
        np.testing.assert_allclose(dense(left, n), dense(right, n), atol=1e-9)

    def test_belief(self):
        m = MassFunction(3, {0b001: 0.5, 0b011: 0.2, 0b111: 0.3})
        assert belief(m, 0b001) == pytest.approx(0.5)
        assert belief(m, 0b011) == pytest.approx(0.7)
        assert belief(m, 0b111) == pytest.approx(1.0)

    def test_from_evidence(self):
        rel = ClassifierReliability(0.9, 0.05)
        assert ds_from_evidence(4, rel, 4).masses == {0b1111: 1.0}
        m = ds_from_evidence(2, rel, 4)
        assert m[singleton(2)] == pytest.approx(0.9)
        assert m[0b1011] == pytest.approx(0.05)
        assert m[0b1111] == pytest.approx(0.05)
        assert ds_from_evidence(1, ClassifierReliability(1.0, 0.0), 3).masses == {0b010: 1.0}
        with pytest.raises(InvalidReliability):
            ClassifierReliability(0.8, 0.3)

    def test_decide_single(self):
        assert ds_decide([MassFunction(4, {singleton(2): 0.9, 0b1111: 0.1})]).label == 2

    def test_agreement_reinforces(self):
        rel = ClassifierReliability(0.8, 0.1)
        one = ds_from_evidence(1, rel, 4)
        two = ds_combine(one, ds_from_evidence(1, rel, 4))
        assert belief(two, singleton(1)) > belief(one, singleton(1))
        assert ds_decide([one, one]).label == 1

    def test_symmetric_disagreement(self):
        rel = ClassifierReliability(0.7, 0.2)
        d = ds_decide([ds_from_evidence(3, rel, 5), ds_from_evidence(1, rel, 5)])
        assert d.scores[1] == pytest.approx(d.scores[3])
        assert d.label == 1
        # brute force the same beliefs on the dense representation
        ref, _ = brute_combine(ds_from_evidence(3, rel, 5), ds_from_evidence(1, rel, 5), 5)
        bel1 = sum(ref[s] for s in range(32) if s & ~0b00010 == 0)
        assert d.scores[1] == pytest.approx(bel1)


class TestAdaBoost:
    def test_alpha(self):
        assert adaboost_alpha(0.5) == 0.0
        assert adaboost_alpha(0.1) == pytest.approx(0.5 * math.log(9))
        assert adaboost_alpha(0.1) == pytest.approx(1.0986, abs=1e-4)
        assert adaboost_alpha(0.0) == pytest.approx(0.5 * math.log((1 - 1e-10) / 1e-10))

    def test_four_sample_reweighting(self):
        X = np.array([[0.0], [1.0], [2.0], [3.0]])
        y = np.array([1, 1, -1, -1])

        def learner(X, y, D):
            return lambda Z: np.where(np.asarray(Z)[:, 0] < 2.5, 1, -1)  # wrong on sample 2

        m = adaboost_train(X, y, 1, learner)
        assert m.errors[0] == pytest.approx(0.25)
        a = 0.5 * math.log(3)
        assert m.alphas[0] == pytest.approx(a)
        Z = 3 * 0.25 * math.exp(-a) + 0.25 * math.exp(a)
        assert m.normalizers[0] == pytest.approx(Z)
        expected = np.array([0.25 * math.exp(-a)] * 2 + [0.25 * math.exp(a)] + [0.25 * math.exp(-a)]) / Z
        np.testing.assert_allclose(m.weights[1], expected)
        assert m.weights[1][2] == pytest.approx(0.5)  # misclassified sample now carries half the weight
        assert m.weights[1][0] < 0.25

    def test_perfect_learner_stops(self):
        X = np.array([[0.0], [1.0]])
        y = np.array([-1, 1])
        m = adaboost_train(X, y, 10, stump_learner)
        assert m.rounds == 1 and m.errors == [0.0]
        assert np.all(m.predict(X) == y)

    def test_degenerate(self):
        X = np.zeros((4, 1))
        y = np.array([1, -1, 1, -1])
        with pytest.raises(DegenerateWeakLearner):
            adaboost_train(X, y, 3, lambda X, y, D: (lambda Z: np.ones(len(Z))))

    def test_retry_once(self):
        calls = []

        def learner(X, y, D):
            calls.append(1)
            if len(calls) == 1:
                return lambda Z: -np.asarray([1, -1])
            return lambda Z: np.asarray([1, -1])

        m = adaboost_train(np.zeros((2, 1)), np.array([1, -1]), 1, learner)
        assert len(calls) == 2 and m.errors == [0.0]

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_weights_normalised(self, seed):
        rng = np.random.default_rng(seed)
        X = rng.normal(size=(40, 2))
        y = np.where(X[:, 0] * X[:, 1] > 0, 1, -1)
        m = adaboost_train(X, y, 8, stump_learner)
        for D in m.weights:
            assert abs(D.sum() - 1) <= 1e-9
        for a, e in zip(m.alphas, m.errors):
            assert (a > 0) == (e < 0.5)


class TestBagging:
    def test_bootstrap_small(self):
        assert bootstrap_sample(1, 5).tolist() == [0]

    def test_bootstrap_deterministic(self):
        assert bootstrap_sample(50, 11).tolist() == bootstrap_sample(50, 11).tolist()
        s = bootstrap_sample(50, 11)
        assert s.min() >= 0 and s.max() < 50 and len(s) == 50

    def test_unique_fraction(self):
        fr = np.mean([len(np.unique(bootstrap_sample(100, s))) / 100 for s in range(2000)])
        assert fr == pytest.approx(1 - (1 - 1 / 100) ** 100, abs=0.01)

    @staticmethod
    def threshold_learner(X, y):
        # nearest class-mean on one feature
        m0, m1 = X[y == 0, 0].mean() if np.any(y == 0) else -np.inf, X[y == 1, 0].mean() if np.any(y == 1) else np.inf
        return lambda q: 0 if abs(q[0] - m0) <= abs(q[0] - m1) else 1

    def test_single_bag(self):
        X = np.array([[0.0], [1.0], [9.0], [10.0]])
        y = np.array([0, 0, 1, 1])
        preds = bagging_fit(X, y, 1, self.threshold_learner, seed=3)
        idx = bootstrap_sample(4, spawn_seeds(3, 1)[0])
        solo = self.threshold_learner(X[idx], y[idx])
        q = np.array([4.0])
        assert bagging_predict(preds, q).label == solo(q)

    def test_constant_predictors(self):
        preds = [lambda q: 2] * 5
        assert bagging_predict(preds, None, n_classes=3).label == 2

    def test_vote_recount(self):
        rng = np.random.default_rng(0)
        X = np.concatenate([rng.normal(-3, 1, size=(20, 1)), rng.normal(3, 1, size=(20, 1))])
        y = np.repeat([0, 1], 20)
        preds = bagging_fit(X, y, 15, self.threshold_learner, seed=7)
        for q in rng.normal(0, 3, size=(10, 1)):
            votes = [p(q) for p in preds]
            d = bagging_predict(preds, q)
            assert d.scores == {lab: float(votes.count(lab)) for lab in sorted(set(votes))}
            assert d.label == max(sorted(set(votes)), key=votes.count)
        assert bagging_train_predict(X, y, 15, self.threshold_learner, np.array([5.0]), seed=7) == 1
