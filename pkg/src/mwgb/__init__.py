"""Truncated Gröbner bases of matrix-weighted homogeneous systems over GF(p)."""

from .algebra import DEFAULT_PRIME, PolyRing, Polynomial, buchberger_oracle, normal_form
from .errors import *  # noqa: F401,F403
from .f5 import F5Config, GBasis, RunStats, Signature, Step, run_matrix_f5
from .grading import MgrevlexOrder, WeightMatrix, weight_properties
from .hilbert import (
    TruncatedMultiseries,
    classify_sequence,
    hs_algebra,
    hs_quotient_oracle,
    hs_regular,
    hs_semiregular,
    multiplication_map,
    random_system,
)
from .steps import (
    algosteps_mwh,
    algosteps_w1_default,
    embed_fw,
    section_fw,
    truncated_groebner,
    y_index,
)
from .systemfile import SystemFile, emit_system, parse_system

__version__ = "0.1.0"
