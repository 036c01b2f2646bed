"""Corpus handling: manifests, class eligibility, book-balanced sampling, splits, synthetic glyphs."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import InsufficientSamples, ManifestError
from .image_core import SIDE, as_binary_image, bresenham_line
from .rng import make_rng

MAX_LABEL = 231
N_BOOKS = 4
QUOTA = 25
BOOK_CAP = 6
SPLIT_SIZES = (("train", 15), ("test", 5), ("validation", 5))


@dataclass(frozen=True)
class ManifestRecord:
    path: str
    label: int
    book: int
    invert: bool = False


@dataclass(frozen=True)
class Sample:
    """One glyph with its corpus metadata; ``id`` is unique within the corpus."""

    id: int
    label: int
    book: int
    image: np.ndarray
    path: str = ""


def parse_manifest(text: str, base: Path | None = None, max_label: int = MAX_LABEL) -> list[ManifestRecord]:
    """Parse ``path,label,book[,invert]`` lines; ``#`` starts a comment."""
    records, seen = [], set()
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) not in (3, 4):
            raise ManifestError(f"line {lineno}: expected path,label,book[,invert]")
        try:
            label, book = int(parts[1]), int(parts[2])
        except ValueError:
            raise ManifestError(f"line {lineno}: label and book must be integers") from None
        if not 0 <= label <= max_label:
            raise ManifestError(f"line {lineno}: label {label} outside 0..{max_label}")
        if not 1 <= book <= N_BOOKS:
            raise ManifestError(f"line {lineno}: book {book} outside 1..{N_BOOKS}")
        invert = False
        if len(parts) == 4:
            flag = parts[3].lower()
            if flag not in ("0", "1", "true", "false", "invert", ""):
                raise ManifestError(f"line {lineno}: bad invert flag {parts[3]!r}")
            invert = flag in ("1", "true", "invert")
        path = parts[0]
        if base is not None and not Path(path).is_absolute():
            path = str(base / path)
        if path in seen:
            raise ManifestError(f"line {lineno}: duplicate path {path}")
        seen.add(path)
        records.append(ManifestRecord(path, label, book, invert))
    return records


def load_manifest(path) -> list[ManifestRecord]:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ManifestError(f"cannot read manifest {path}: {exc}") from exc
    return parse_manifest(text, base=path.parent)


def write_manifest(path, records) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write("# path,label,book[,invert]\n")
        for r in records:
            fh.write(f"{r.path},{r.label},{r.book}" + (",1" if r.invert else "") + "\n")


def load_corpus(records, threshold: int = 128) -> list[Sample]:
    from .image_core import resize_to_canonical
    from .imageio import read_gray

    return [Sample(i, r.label, r.book, resize_to_canonical(read_gray(r.path), threshold, r.invert), r.path)
            for i, r in enumerate(records)]


def class_book_counts(items) -> dict[int, list[int]]:
    """label -> per-book sample counts (books 1..4 at positions 0..3)."""
    counts: dict[int, list[int]] = {}
    for it in items:
        counts.setdefault(it.label, [0] * N_BOOKS)[it.book - 1] += 1
    return counts


def eligible_classes(items, min_samples: int = QUOTA) -> list[int]:
    counts = class_book_counts(items)
    return sorted(c for c, per in counts.items() if sum(per) >= min_samples)


def book_balanced_selection(per_book_counts, quota: int = QUOTA, cap: int = BOOK_CAP) -> list[int]:
    """How many samples of one class to take from each book.

    Books are visited from smallest to largest count (lower index first on
    ties).  Every book but the last gives min(count, cap); the last book
    fills the remainder of the quota.
    """
    counts = [int(c) for c in per_book_counts]
    if any(c < 0 for c in counts):
        raise ValueError("book counts must be nonnegative")
    order = sorted(range(len(counts)), key=lambda b: (counts[b], b))
    take = [0] * len(counts)
    for b in order[:-1]:
        take[b] = min(counts[b], cap)
    last = order[-1]
    rest = quota - sum(take)
    if rest < 0 or rest > counts[last]:
        raise InsufficientSamples(
            f"book {last + 1} must supply {rest} samples but holds {counts[last]} (counts {counts})")
    take[last] = rest
    return take


@dataclass
class SplitPlan:
    """Per-split sample id lists, ordered by class then by draw order."""

    train: list[int] = field(default_factory=list)
    test: list[int] = field(default_factory=list)
    validation: list[int] = field(default_factory=list)

    def serialize(self, samples_by_id) -> str:
        out = []
        for name in ("train", "test", "validation"):
            out.append(name.upper())
            for sid in getattr(self, name):
                s = samples_by_id[sid]
                out.append(f"{s.label},{s.book},{s.id},{s.path}")
        return "\n".join(out) + "\n"


def draw_samples(items, plan_counts: dict[int, list[int]], seed) -> SplitPlan:
    """Randomly pick the planned per-book quotas, then deal 15/5/5 per class.

    ``plan_counts`` maps class label -> per-book take counts; classes are
    processed in ascending label order and books in ascending index order,
    all from one seeded stream.
    """
    rng = make_rng(seed)
    by_cell: dict[tuple[int, int], list[int]] = {}
    for it in sorted(items, key=lambda s: s.id):
        by_cell.setdefault((it.label, it.book), []).append(it.id)
    plan = SplitPlan()
    for label in sorted(plan_counts):
        chosen = []
        for b, k in enumerate(plan_counts[label], start=1):
            pool = by_cell.get((label, b), [])
            if k > len(pool):
                raise InsufficientSamples(f"class {label} book {b}: need {k}, have {len(pool)}")
            if k:
                pick = rng.choice(len(pool), size=k, replace=False)
                chosen.extend(pool[i] for i in sorted(pick))
        dealt = [chosen[i] for i in rng.permutation(len(chosen))]
        start = 0
        for name, size in SPLIT_SIZES:
            getattr(plan, name).extend(dealt[start:start + size])
            start += size
    return plan


def plan_corpus(items, seed, min_samples: int = QUOTA, quota: int = QUOTA, cap: int = BOOK_CAP):
    """Eligible classes, their per-book quotas, and the seeded split."""
    counts = class_book_counts(items)
    classes = eligible_classes(items, min_samples)
    plan_counts = {c: book_balanced_selection(counts[c], quota, cap) for c in classes}
    return classes, plan_counts, draw_samples(items, plan_counts, seed)


def _prototype(rng, strokes: int) -> np.ndarray:
    img = np.zeros((SIDE, SIDE), dtype=np.uint8)
    for _ in range(strokes):
        a, b = rng.integers(4, SIDE - 4, size=2), rng.integers(4, SIDE - 4, size=2)
        for x, y in bresenham_line(a, b):
            img[y, x] = 1
            if x + 1 < SIDE:
                img[y, x + 1] = 1  # two-pixel pen width
    return img


def synth_corpus(classes: int, per_class: int, noise: float, seed, strokes: int = 4) -> list[Sample]:
    """Random stroke prototypes, one per class, with i.i.d. pixel flips.

    Samples are spread round-robin over the four books.
    """
    if classes < 2:
        raise ValueError("synthetic corpus needs at least 2 classes")
    if per_class < 1:
        raise ValueError("per_class must be positive")
    if not 0.0 <= noise <= 1.0:
        raise ValueError("noise is a flip probability in [0, 1]")
    rng = make_rng(seed)
    protos = [_prototype(rng, strokes) for _ in range(classes)]
    samples = []
    sid = 0
    for label, proto in enumerate(protos):
        for j in range(per_class):
            flips = rng.random(proto.shape) < noise
            img = np.where(flips, 1 - proto, proto)
            if not img.any():
                img[SIDE // 2, SIDE // 2] = 1  # keep every glyph non-blank
            samples.append(Sample(sid, label, 1 + j % N_BOOKS, as_binary_image(img), f"synth/{label:03d}_{j:03d}.pgm"))
            sid += 1
    return samples
