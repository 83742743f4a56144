"""Shared test configuration.

BLAS thread pools are pinned to one thread before numpy loads so that
timing-sensitive tests measure single-threaded behavior and results are
reproducible across machines.
"""

import os

for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS",
            "NUMEXPR_NUM_THREADS"):
    os.environ.setdefault(var, "1")
