"""Randomized verification suites run by ``rectvar selftest``."""

from suites.fbm import fbm_suite
from suites.oracles import oracle_suite
from suites.variation import (
    control_suite,
    crucial_lemma_suite,
    equality_suite,
    ordering_suite,
    sandwich_suite,
)
from suites.young import young_1d_suite, young_2d_suite

# Run order of selftest
SUITES = (
    ("equality", equality_suite),
    ("ordering", ordering_suite),
    ("sandwich", sandwich_suite),
    ("controls", control_suite),
    ("dual-step", crucial_lemma_suite),
    ("young-1d", young_1d_suite),
    ("young-2d", young_2d_suite),
    ("fbm", fbm_suite),
    ("oracles", oracle_suite),
)
