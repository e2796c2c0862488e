"""Exact nonarchimedean dynamics on P^N over Q_p."""

from .dynamics import (
    BadAtIterate,
    CertifiedFatou,
    GreenEstimate,
    HolderConstants,
    OrbitalGood,
    Unknown,
    certify_fatou,
    classify_orbit,
    g,
    g_n,
    good_reduction_at,
    green_hat,
    green_homogeneous,
    holder_constants,
    lipschitz_constant,
    local_constancy_radius,
    min_bound_lemma,
)
from .errors import *  # noqa: F401,F403
from .morphism import (
    HomogeneousMap,
    MinimalLift,
    apply,
    evaluate,
    gauss_norm_valuation,
    macaulay_resultant_valuation,
    make_map,
    minimal_lift,
    parse_map,
    reduce_map,
    reduce_point,
)
from .padic import INFINITY, LogValue, PadicRational, PrimeContext, abs_log, normalize_lift, sup_norm_valuation, valuation
from .projective import Disk, ProjectivePoint, affine_embed, affine_extract, chordal_distance, make_point

__version__ = "0.1.0"
