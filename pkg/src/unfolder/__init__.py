"""Numerical singularity-theory toolkit for scalar bifurcation problems.

Classifies degenerate singular points of scalar bifurcation problems
g(x, lam) = 0, constructs their universal unfoldings, traces stationary
branches by pseudo-arclength continuation, and enumerates the
qualitatively distinct perturbed diagrams of the built-in SH and LDGC
plasma transition models.
"""

from . import errors
from .catalogue import (
    FAMILIES,
    GermFamily,
    QualSignature,
    distinct_signatures,
    enumerate_catalogue,
    persistence_check,
    signature_of,
)
from .continuation import (
    Branch,
    BranchPoint,
    SpecialPoint,
    StepControl,
    Window,
    branches_to_csv,
    detect_special_points,
    full_diagram,
    switch_branch,
    trace_branch,
)
from .jet import Jet, jet_div, jet_mul, jet_pow, partial, seed_variables
from .models import (
    Germ,
    LdgcParams,
    ShParams,
    ldgc_germ_B,
    ldgc_germ_C,
    load_params_file,
    sh_germ,
    sh_shear_energy,
)
from .svg import render_diagram
from .recognition import (
    SingularityReport,
    UnfoldingDescriptor,
    classify_point,
    derivatives_at,
    locate_crossing,
    locate_pitchfork,
    unfolding_template,
)

__version__ = "0.1.0"

__all__ = [
    "errors",
    "Jet",
    "seed_variables",
    "jet_mul",
    "jet_pow",
    "jet_div",
    "partial",
    "Germ",
    "ShParams",
    "LdgcParams",
    "sh_germ",
    "sh_shear_energy",
    "ldgc_germ_B",
    "ldgc_germ_C",
    "load_params_file",
    "SingularityReport",
    "UnfoldingDescriptor",
    "classify_point",
    "derivatives_at",
    "locate_crossing",
    "locate_pitchfork",
    "unfolding_template",
    "Branch",
    "BranchPoint",
    "SpecialPoint",
    "StepControl",
    "Window",
    "trace_branch",
    "detect_special_points",
    "switch_branch",
    "full_diagram",
    "branches_to_csv",
    "QualSignature",
    "GermFamily",
    "FAMILIES",
    "signature_of",
    "enumerate_catalogue",
    "distinct_signatures",
    "persistence_check",
    "render_diagram",
]
