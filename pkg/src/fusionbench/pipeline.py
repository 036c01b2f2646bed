"""End-to-end driver: split, features, base classifiers, fusion, accounting."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .classifiers import (
    CentroidModel,
    ExemplarModel,
    accuracy,
    avgdist_classify_batch,
    build_confusion,
    centroid_classify_batch,
    nn_classify_batch,
    pairwise_distances,
)
from .combiners import (
    RULES,
    ClassifierReliability,
    EnsembleDecision,
    adaboost_train,
    averaged_bayes,
    bagging_fit,
    bagging_predict,
    confidence_weighted_vote,
    ds_decide,
    ds_from_evidence,
    fixed_rule,
    hypothesis2,
    hypothesis5,
    stump_learner,
    vote,
)
from .confidence import centroid_ratio_confidence_batch, confidence_matrix, margin_confidence
from .config import RunConfig
from .dataset import load_corpus, load_manifest, plan_corpus, synth_corpus
from .errors import ConfigError, DegenerateInput, InsufficientSamples, TotalConflict
from .features import default_bank, gabor_feature, gabor_kernel, radial_feature, raw_feature
from .pca import pca_fit, pca_project
from .rng import RNG_NAME, spawn_seeds

SPLITS = ("train", "test", "validation")
N_BASE = 3
VOTE_VARIANTS = {"vote-unanimous": "unanimous", "vote-noconflict": "no_conflict", "vote-margin": "margin"}


@dataclass
class SummaryRow:
    sample: int  # position in the validation split
    preds: list[int]
    actual: int
    predicted: int  # n_classes means REJECT
    confs: list[float] | None = None
    result: float | None = None


@dataclass
class RunReport:
    hypothesis: str
    seed: int
    rng: str
    class_labels: list[int]
    confidence: list[list[float]]
    base_accuracies: list[float]
    confusions: list[list[list[int]]]
    rows: list[SummaryRow] = field(default_factory=list)
    considered: int = 0
    correct: int = 0
    accuracy: float = 0.0
    discarded: list[int] = field(default_factory=list)

    @property
    def n_classes(self) -> int:
        return len(self.class_labels)


def accuracy_percent(correct: int, considered: int) -> float:
    """Percentage truncated (not rounded) to two decimals."""
    if considered == 0:
        return 0.0
    return (correct * 10000 // considered) / 100


def format_percent(fraction: float) -> str:
    """Two-decimal percentage, truncated; guards against 0.29 * 100 = 28.999..."""
    return f"{math.floor(round(fraction * 10000, 6)) / 100:.2f}"


def filtered_accuracy(rows):
    """Score only samples at least one base classifier got right.

    Returns (considered, correct, accuracy, discarded sample numbers ascending).
    """
    considered = correct = 0
    discarded = []
    for r in rows:
        if r.actual in r.preds:
            considered += 1
            correct += int(r.predicted == r.actual)
        else:
            discarded.append(r.sample)
    acc = correct / considered if considered else 0.0
    return considered, correct, acc, sorted(discarded)


# ---------------------------------------------------------------- data

@dataclass
class SplitData:
    class_labels: list[int]
    images: dict[str, list[np.ndarray]]
    y: dict[str, np.ndarray]  # class indices 0..M-1


def load_split(cfg: RunConfig) -> SplitData:
    synth_seed, split_seed = spawn_seeds(cfg.seed, 2)
    if cfg.manifest is not None:
        items = load_corpus(load_manifest(cfg.manifest), cfg.threshold)
    else:
        items = synth_corpus(cfg.synth_classes, cfg.synth_per_class, cfg.synth_noise, synth_seed)
    classes, _, plan = plan_corpus(items, split_seed, cfg.min_samples, cfg.quota, cfg.cap)
    if len(classes) < 2:
        raise InsufficientSamples(f"need at least 2 classes with >= {cfg.min_samples} samples, found {len(classes)}")
    index = {c: i for i, c in enumerate(classes)}
    by_id = {s.id: s for s in items}
    images, y = {}, {}
    for name in SPLITS:
        ids = getattr(plan, name)
        images[name] = [by_id[i].image for i in ids]
        y[name] = np.array([index[by_id[i].label] for i in ids], dtype=np.int64)
    return SplitData(classes, images, y)


def extract_features(cfg: RunConfig, data: SplitData) -> list[dict[str, np.ndarray]]:
    """Raw, radial and Gabor+PCA matrices, one dict (split -> n x d) per base classifier."""
    raw = {s: np.array([raw_feature(im) for im in data.images[s]]) for s in SPLITS}
    radial = {s: np.array([radial_feature(im, cfg.radial_rays) for im in data.images[s]]) for s in SPLITS}
    bank = default_bank(cfg.gabor_kernel, cfg.gabor_omega, cfg.gabor_sigma)
    kernels = [gabor_kernel(p) for p in bank.params]
    gabor = {s: np.array([gabor_feature(im, bank, kernels) for im in data.images[s]]) for s in SPLITS}
    try:
        model = pca_fit(gabor["train"], cfg.pca_k)
    except DegenerateInput as exc:
        raise ConfigError(f"pca_k={cfg.pca_k} is infeasible for {len(gabor['train'])} training samples: {exc}") from exc
    pca = {s: pca_project(model, gabor[s]) for s in SPLITS}
    return [raw, radial, pca]


# ---------------------------------------------------------------- base classifiers

def _class_min_distances(model: ExemplarModel, Q, n_classes: int) -> np.ndarray:
    D = pairwise_distances(Q, model.features)
    out = np.full((D.shape[0], n_classes), np.inf)
    for c in range(n_classes):
        mask = model.labels == c
        if mask.any():
            out[:, c] = D[:, mask].min(axis=1)
    return out


def distance_posteriors(dist: np.ndarray) -> np.ndarray:
    """Softmax of -d/T per row with T the row's median class distance."""
    dist = np.asarray(dist, dtype=np.float64)
    T = np.median(dist, axis=1, keepdims=True)
    T = np.where(T > 0, T, 1.0)
    z = -(dist - dist.min(axis=1, keepdims=True)) / T
    P = np.exp(z)
    return P / P.sum(axis=1, keepdims=True)


@dataclass
class BaseOutputs:
    """Predictions of one base classifier on every split, plus per-sample extras."""

    preds: dict[str, np.ndarray]
    extra: dict[str, np.ndarray] = field(default_factory=dict)


def _family(hypothesis: str) -> str:
    if hypothesis == "h3":
        return "centroid"
    if hypothesis == "h4":
        return "avgdist"
    if hypothesis == "h5":
        return "ratio"
    return "exemplar"


def run_base(family: str, feats: dict[str, np.ndarray], y_train: np.ndarray, n_classes: int,
             posteriors: bool = False) -> BaseOutputs:
    if family == "exemplar":
        model = ExemplarModel.fit(feats["train"], y_train)
        out = BaseOutputs({})
        for s in SPLITS:
            lab, d1, d2 = nn_classify_batch(model, feats[s])
            out.preds[s] = lab
            if s == "validation":
                out.extra["margin"] = margin_confidence(d1, d2)
                if posteriors:
                    out.extra["posteriors"] = distance_posteriors(_class_min_distances(model, feats[s], n_classes))
        return out
    model = CentroidModel.fit(feats["train"], y_train)
    if family == "centroid":
        return BaseOutputs({s: centroid_classify_batch(model, feats[s])[0] for s in SPLITS})
    if family == "avgdist":
        return BaseOutputs({s: avgdist_classify_batch(model, feats[s]) for s in SPLITS})
    out = BaseOutputs({})
    for s in SPLITS:
        lab, conf = centroid_ratio_confidence_batch(model, feats[s])
        out.preds[s] = lab
        if s == "validation":
            out.extra["ratio"] = conf
    return out


# ---------------------------------------------------------------- fusion

def _ds_label(preds, reliabilities, n_classes) -> EnsembleDecision:
    masses = [ds_from_evidence(int(p), rel, n_classes) for p, rel in zip(preds, reliabilities)]
    try:
        return ds_decide(masses)
    except TotalConflict:
        return EnsembleDecision(n_classes, n_classes)


def _fuse(cfg: RunConfig, data: SplitData, feats, bases: list[BaseOutputs], conf: np.ndarray):
    """Fused labels on the validation split, with optional (confs, result) per sample."""
    hyp, m = cfg.hypothesis, len(data.class_labels)
    val_preds = np.column_stack([b.preds["validation"] for b in bases]) if bases else np.zeros((0, N_BASE), int)
    n_val = len(data.y["validation"])
    fused, confs, results = [], None, None

    if hyp in ("h1", "h3", "h4"):
        fused = [confidence_weighted_vote(p, conf).label for p in val_preds]
    elif hyp in ("h2", "h5"):
        key = "margin" if hyp == "h2" else "ratio"
        confs = np.column_stack([b.extra[key] for b in bases])
        fn = hypothesis2 if hyp == "h2" else hypothesis5
        decisions = [fn(p, c, m) for p, c in zip(val_preds, confs)]
        fused = [d.label for d in decisions]
        results = [d.scores[d.label] for d in decisions]
    elif hyp in RULES or hyp == "avg-bayes":
        for i in range(n_val):
            P = np.vstack([b.extra["posteriors"][i] for b in bases])
            fused.append((averaged_bayes(P) if hyp == "avg-bayes" else fixed_rule(hyp, P)).label)
    elif hyp in VOTE_VARIANTS:
        fused = [vote(VOTE_VARIANTS[hyp], p, m, cfg.margin_alpha).label for p in val_preds]
    elif hyp == "ds":
        rels = []
        for b in bases:
            acc = accuracy(b.preds["test"], data.y["test"])
            rels.append(ClassifierReliability(acc * (1 - cfg.ds_discount), (1 - acc) * (1 - cfg.ds_discount)))
        fused = [_ds_label(p, rels, m).label for p in val_preds]
    elif hyp == "adaboost":
        if m != 2:
            raise ConfigError(f"adaboost is a two-class combiner; the corpus has {m} classes")
        X = feats[0]
        model = adaboost_train(X["train"], 2 * data.y["train"] - 1, cfg.adaboost_rounds, stump_learner)
        fused = [int(v > 0) for v in model.predict(X["validation"])]
    elif hyp == "bagging":
        X = feats[0]
        _, _, bag_seed = spawn_seeds(cfg.seed, 3)

        def learner(Xb, yb):
            model = ExemplarModel.fit(Xb, yb)
            return lambda q: nn_classify_batch(model, q[None, :])[0][0]

        predictors = bagging_fit(X["train"], data.y["train"], cfg.bagging_bags, learner, bag_seed)
        fused = [bagging_predict(predictors, q, m).label for q in X["validation"]]
    else:  # pragma: no cover - RunConfig validates names
        raise ConfigError(f"unknown hypothesis {hyp!r}")
    return val_preds, [int(f) for f in fused], confs, results


def run_pipeline(cfg: RunConfig, data: SplitData | None = None, feats=None) -> RunReport:
    """One deterministic run; ``data``/``feats`` may be passed in to reuse work."""
    if data is None:
        data = load_split(cfg)
    if feats is None:
        feats = extract_features(cfg, data)
    m = len(data.class_labels)
    family = _family(cfg.hypothesis)
    need_post = cfg.hypothesis in RULES or cfg.hypothesis == "avg-bayes"
    bases = [run_base(family, f, data.y["train"], m, posteriors=need_post) for f in feats]

    split = cfg.confidence_split
    conf = confidence_matrix([build_confusion(b.preds[split], data.y[split], m) for b in bases])
    val_preds, fused, confs, results = _fuse(cfg, data, feats, bases, conf)

    y_val = data.y["validation"]
    rows = []
    for i, (p, t, f) in enumerate(zip(val_preds, y_val, fused)):
        rows.append(SummaryRow(
            sample=i, preds=[int(v) for v in p], actual=int(t), predicted=f,
            confs=None if confs is None else [float(c) for c in confs[i]],
            result=None if results is None else float(results[i]),
        ))
    considered, correct, acc, discarded = filtered_accuracy(rows)
    return RunReport(
        hypothesis=cfg.hypothesis,
        seed=cfg.seed,
        rng=RNG_NAME,
        class_labels=[int(c) for c in data.class_labels],
        confidence=conf.tolist(),
        base_accuracies=[accuracy(b.preds["validation"], y_val) for b in bases],
        confusions=[build_confusion(b.preds["validation"], y_val, m).tolist() for b in bases],
        rows=rows,
        considered=considered,
        correct=correct,
        accuracy=acc,
        discarded=discarded,
    )


# ---------------------------------------------------------------- sweeps

SWEEP_PARAMS = {
    "pca_k": ("Number of Principal components retained", "Final accuracy of the classifier"),
    "gabor_kernel": ("Size of the GABOR kernel", "Accuracy"),
}


def sweep(cfg: RunConfig, param: str, values) -> list[tuple[int, float]]:
    """Validation accuracy of the Gabor+PCA nearest-neighbour classifier per value."""
    if param not in SWEEP_PARAMS:
        raise ConfigError(f"sweep parameter must be one of {', '.join(SWEEP_PARAMS)}")
    values = list(values)
    if not values:
        raise ConfigError("sweep needs at least one value")
    data = load_split(cfg)
    out = []
    for v in values:
        run_cfg = cfg.replace(**{param: int(v)})
        feats = extract_features(run_cfg, data)
        model = ExemplarModel.fit(feats[2]["train"], data.y["train"])
        pred = nn_classify_batch(model, feats[2]["validation"])[0]
        out.append((int(v), accuracy(pred, data.y["validation"])))
    return out


def format_sweep(param: str, table) -> str:
    left, right = SWEEP_PARAMS[param]
    width = len(left) + 4
    lines = [f"{left:<{width}}{right}"]
    for v, acc in table:
        lines.append(f"{v:<{width}d}{format_percent(acc)} %")
    return "\n".join(lines) + "\n"
