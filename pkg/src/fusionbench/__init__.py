"""Multiple-classifier fusion on 32x32 binary glyphs.

Base classifiers (nearest exemplar, nearest centroid, average distance) over
raw, radial and Gabor+PCA features feed confidence-weighted hypotheses and
the classical combiners; see :mod:`fusionbench.pipeline` for the driver.
"""

from .config import RunConfig, load_config, parse_config
from .pipeline import RunReport, filtered_accuracy, run_pipeline, sweep
from .report import emit_report
from .rng import RNG_NAME

__version__ = "0.1.0"
