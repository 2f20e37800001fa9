"""Quantum probe states from classical binary codes and their QFI under erasures."""

from .bounds import (
    QfiReport,
    boosted_lower,
    report,
    sandwich_symmetric,
    simple_upper,
    sweep,
    thm1_lower,
    thm2_upper,
)
from .codes import (
    BinaryCode,
    GeneratorMatrix,
    concatenate_repetition,
    coset_code,
    dual,
    from_generator,
    is_linear,
    load_code,
    min_distance,
    reed_muller,
    repetition,
    save_code,
    weight_enumerator,
)
from .estimator import moment_curves, mse, observable_L, theorem3_bound
from .oracle import (
    build_rho,
    exact_qfi,
    full_space_crosscheck,
    gen2norm_lower,
    sld_pure,
    variance_upper,
)
from .shorten import ErasurePattern, partition, unpunctured_variance, weight_stats

__version__ = "0.1.0"
