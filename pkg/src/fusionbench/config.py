"""Run configuration parsed from line-oriented ``key = value`` text."""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, fields
from pathlib import Path

from .combiners import RULE_NAMES
from .errors import ConfigError

CONFIDENCE_SPLITS = ("test", "train")
RAY_MODES = ("perimeter", "relative")


@dataclass(frozen=True)
class RunConfig:
    """Everything a pipeline run depends on; a run is a pure function of this."""

    seed: int
    manifest: str | None = None
    synth_classes: int | None = None
    synth_per_class: int = 25
    synth_noise: float = 0.02
    hypothesis: str = "h1"
    threshold: int = 128
    radial_rays: str = "perimeter"
    gabor_kernel: int = 7
    gabor_omega: float = math.pi / 2
    gabor_sigma: float | None = None  # None -> kernel / 5
    pca_k: int = 110
    confidence_split: str = "test"
    margin_alpha: float = 0.5
    min_samples: int = 25
    quota: int = 25
    cap: int = 6
    ds_discount: float = 0.01
    adaboost_rounds: int = 20
    bagging_bags: int = 15

    def __post_init__(self):
        if (self.manifest is None) == (self.synth_classes is None):
            raise ConfigError("give exactly one of 'manifest' or 'synth_classes'")
        if self.hypothesis not in RULE_NAMES:
            raise ConfigError(f"unknown hypothesis {self.hypothesis!r}; choose from {', '.join(RULE_NAMES)}")
        if self.radial_rays not in RAY_MODES:
            raise ConfigError(f"radial_rays must be one of {RAY_MODES}")
        if self.confidence_split not in CONFIDENCE_SPLITS:
            raise ConfigError(f"confidence_split must be one of {CONFIDENCE_SPLITS}")
        if self.synth_classes is not None and self.synth_classes < 2:
            raise ConfigError("synth_classes must be at least 2")
        if not 0.0 <= self.synth_noise <= 1.0:
            raise ConfigError("synth_noise must lie in [0, 1]")
        if not 0 <= self.threshold <= 255:
            raise ConfigError("threshold must lie in 0..255")
        if self.gabor_kernel < 3 or self.gabor_kernel % 2 == 0:
            raise ConfigError("gabor_kernel must be odd and at least 3")
        if self.gabor_sigma is not None and self.gabor_sigma <= 0:
            raise ConfigError("gabor_sigma must be positive")
        if self.pca_k < 1:
            raise ConfigError("pca_k must be positive")
        if not 0.0 < self.margin_alpha <= 1.0:
            raise ConfigError("margin_alpha must lie in (0, 1]")
        if not 0.0 <= self.ds_discount <= 1.0:
            raise ConfigError("ds_discount must lie in [0, 1]")
        for name in ("synth_per_class", "min_samples", "quota", "adaboost_rounds", "bagging_bags"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be positive")
        if self.cap < 0:
            raise ConfigError("cap must be nonnegative")
        if self.quota != 25:
            raise ConfigError("quota is fixed at 25 by the 15/5/5 split")

    def replace(self, **changes) -> "RunConfig":
        return dataclasses.replace(self, **changes)


def _convert(name: str, raw: str, kind):
    if raw.lower() in ("none", "") and "None" in str(kind):
        return None
    target = str(kind).replace(" | None", "")
    try:
        if target == "int":
            return int(raw)
        if target == "float":
            return float(raw)
    except ValueError:
        raise ConfigError(f"{name}: cannot parse {raw!r} as {target}") from None
    return raw


def parse_config(text: str, base: Path | None = None, **overrides) -> RunConfig:
    """Parse config text; ``#`` starts a comment, unknown keys are errors.

    A relative ``manifest`` path is resolved against ``base``.  Keyword
    overrides (e.g. from the command line) win over the file.
    """
    known = {f.name: f.type for f in fields(RunConfig)}
    values: dict = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, raw = line.partition("=")
        key, raw = key.strip(), raw.strip()
        if not sep:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        if key not in known:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in values:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        values[key] = _convert(key, raw, known[key])
    values.update({k: v for k, v in overrides.items() if v is not None})
    if "seed" not in values:
        raise ConfigError("config must set 'seed'")
    if values.get("manifest") and base is not None and not Path(values["manifest"]).is_absolute():
        values["manifest"] = str(base / values["manifest"])
    return RunConfig(**values)


def load_config(path, **overrides) -> RunConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return parse_config(text, base=path.parent, **overrides)
