"""Exact computations of multigraded Castelnuovo-Mumford regularity for toric coordinate rings."""

from .errors import (
    DegenerateChamberPoint,
    GroupMismatch,
    HypothesisViolated,
    InvalidSetup,
    MgregError,
    NotPointed,
    Overflow,
    SearchExhausted,
    SubsetCapExceeded,
    TorsionUnsupported,
)
from .fan import GradingSetup, SimplicialComplex, build_setup, setup_from_rays
from .grading import AbelianGroup, GroupElement
from .local_cohomology import INFINITE, cech_dimension, hilbert_dim, support_table
from .regularity import (
    BettiTable,
    PointSet,
    Verdict,
    fujita_witness,
    is_regular_S,
    multiplication_surjective,
    points_regularity,
    reg_window,
    resolution_bound,
)

__version__ = "0.1.0"
