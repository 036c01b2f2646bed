"""Dempster-Shafer evidence combination over a finite frame of class labels.

Subsets of the frame are int bitmasks (bit j set <=> label j in the subset);
the full frame is ``(1 << n_labels) - 1``.  Python ints are unbounded, so the
frame size is not limited by a machine word.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

from ..errors import InvalidReliability, TotalConflict
from .ensemble import EnsembleDecision, best_label

CONFLICT_TOL = 1e-12


@dataclass(frozen=True)
class MassFunction:
    n_labels: int
    masses: dict  # bitmask -> mass, focal elements only

    def __post_init__(self):
        full = self.theta
        for a, v in self.masses.items():
            if a <= 0 or a & ~full:
                raise ValueError(f"focal element {a:#b} is empty or outside the frame")
            if v < 0:
                raise ValueError("masses must be nonnegative")
        if abs(sum(self.masses.values()) - 1.0) > 1e-9:
            raise ValueError("masses must sum to 1")

    @property
    def theta(self) -> int:
        return (1 << self.n_labels) - 1

    def __getitem__(self, subset: int) -> float:
        return self.masses.get(subset, 0.0)

    @classmethod
    def vacuous(cls, n_labels: int) -> "MassFunction":
        return cls(n_labels, {(1 << n_labels) - 1: 1.0})


def singleton(label: int) -> int:
    return 1 << label


def ds_combine(m1: MassFunction, m2: MassFunction) -> MassFunction:
    """Dempster's rule: conjunctive combination renormalised by 1 - conflict."""
    if m1.n_labels != m2.n_labels:
        raise ValueError("mass functions live on different frames")
    joint: dict[int, float] = {}
    agreement = 0.0
    for x, mx in m1.masses.items():
        for y, my in m2.masses.items():
            a = x & y
            if a:
                joint[a] = joint.get(a, 0.0) + mx * my
                agreement += mx * my
    if agreement <= CONFLICT_TOL:
        raise TotalConflict("the evidences are in total conflict (k^-1 = 0)")
    k = 1.0 / agreement
    return MassFunction(m1.n_labels, {a: v * k for a, v in sorted(joint.items()) if v > 0})


def belief(m: MassFunction, subset: int) -> float:
    """Total mass of the focal elements contained in ``subset``."""
    return sum(v for b, v in m.masses.items() if b & ~subset == 0)


def plausibility(m: MassFunction, subset: int) -> float:
    return sum(v for b, v in m.masses.items() if b & subset)


@dataclass(frozen=True)
class ClassifierReliability:
    recognition_rate: float
    substitution_rate: float

    def __post_init__(self):
        r, s = self.recognition_rate, self.substitution_rate
        if not (0 <= r <= 1 and 0 <= s <= 1) or r + s > 1 + 1e-12:
            raise InvalidReliability(f"need 0 <= rates and recognition + substitution <= 1, got {r} + {s}")


def ds_from_evidence(evidence: int, rel: ClassifierReliability, n_labels: int) -> MassFunction:
    """Mass function induced by one classifier's label (``n_labels`` = reject)."""
    theta = (1 << n_labels) - 1
    if evidence == n_labels:
        return MassFunction.vacuous(n_labels)
    if not 0 <= evidence < n_labels:
        raise ValueError(f"evidence label {evidence} outside 0..{n_labels}")
    a = singleton(evidence)
    not_a = theta & ~a
    raw = {a: rel.recognition_rate, theta: 1.0 - rel.recognition_rate - rel.substitution_rate}
    if not_a:
        raw[not_a] = rel.substitution_rate
    else:
        raw[theta] += rel.substitution_rate  # one-label frame: the complement is empty
    return MassFunction(n_labels, {s: v for s, v in sorted(raw.items()) if v > 0})


def ds_decide(masses) -> EnsembleDecision:
    """Left-fold Dempster combination, then argmax of singleton beliefs."""
    masses = list(masses)
    combined = reduce(ds_combine, masses)
    n = combined.n_labels
    scores = {j: belief(combined, singleton(j)) for j in range(n)}
    return EnsembleDecision(best_label(scores), n, scores)
