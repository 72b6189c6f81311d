# Numeric evaluators for the spectral zeta functions

from .continuation import (
    zeta_continuation,
    residue_numeric,
    limit_numeric,
)

from .dirichlet import dirichlet_oracle

from .batch import evaluate_batch
