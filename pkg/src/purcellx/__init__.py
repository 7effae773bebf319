"""Decay-rate modification for point and extended coherent dipole sources.

The cross density of states (CDOS) is the interference kernel throughout:
LDOS ratios set point-dipole Purcell factors, CDOS cross terms decide
whether an extended coherent source is super- or subradiant and how its
emission spectrum reshapes.
"""

from .core import (
    DegenerateReferenceError,
    GridFileError,
    InvalidArgumentError,
    Orientation,
    OutOfDomainError,
    PolarizedPoint,
    Position,
    PurcellxError,
    Spectrum,
    SweepPointError,
    UndefinedPhaseError,
    Wavenumber,
    free_space_ldos,
    wavelength_to_k,
)
from .engine import (
    CompositeGreens,
    LengthSweep,
    RateResult,
    coherence_classification,
    decay_rate,
    sweep_length,
    sweep_spectrum,
    two_dipole_rate,
    worker_count,
)
from .fields import (
    AnalyticSurrogate,
    AnalyticSurrogateParams,
    GridField,
    VectorFieldModel,
    field_at,
    load_grid_field,
    projected_field,
    save_grid_field,
)
from .homogeneous import HomogeneousGreens, cdos, im_g_projected
from .modal import LossyMode, ModeSet, cdos_modal, surrogate_l3
from .qnm import (
    FanoQParams,
    FanoTerm,
    Qnm,
    QnmPair,
    cdos_qnm,
    fano_decompose_cdos,
    fano_profile,
    fano_q_params,
    green_qnm_projected,
    mean_q_report,
    qnm_phase,
    reconstruct_cdos,
)
from .sources import (
    DipoleElement,
    ExtendedSource,
    SamplingGrid,
    default_element_count,
    line_source,
    pair_source,
    point_source,
    sampled_source,
)

__version__ = "0.1.0"

__all__ = [
    "AnalyticSurrogate",
    "AnalyticSurrogateParams",
    "CompositeGreens",
    "DegenerateReferenceError",
    "DipoleElement",
    "ExtendedSource",
    "FanoQParams",
    "FanoTerm",
    "GridField",
    "GridFileError",
    "HomogeneousGreens",
    "InvalidArgumentError",
    "LengthSweep",
    "LossyMode",
    "ModeSet",
    "Orientation",
    "OutOfDomainError",
    "PolarizedPoint",
    "Position",
    "PurcellxError",
    "Qnm",
    "QnmPair",
    "RateResult",
    "SamplingGrid",
    "Spectrum",
    "SweepPointError",
    "UndefinedPhaseError",
    "VectorFieldModel",
    "Wavenumber",
    "cdos",
    "cdos_modal",
    "cdos_qnm",
    "coherence_classification",
    "decay_rate",
    "default_element_count",
    "fano_decompose_cdos",
    "fano_profile",
    "fano_q_params",
    "field_at",
    "free_space_ldos",
    "green_qnm_projected",
    "im_g_projected",
    "line_source",
    "load_grid_field",
    "mean_q_report",
    "pair_source",
    "point_source",
    "projected_field",
    "qnm_phase",
    "reconstruct_cdos",
    "sampled_source",
    "save_grid_field",
    "surrogate_l3",
    "sweep_length",
    "sweep_spectrum",
    "two_dipole_rate",
    "wavelength_to_k",
    "worker_count",
]
