"""Exact certification of DRY classes ``phi*sigma + omega`` on elliptic threefolds over
P2, F0, F1 and del Pezzo surfaces, with realization certificates by extension bundles."""

from .atlas import CensusReport, enumerate_phis, exception_census, sweep_bound
from .dry import CandidateClass, DryEvaluation, dry_threshold, evaluate, is_dry
from .errors import (
    DimensionMismatch,
    DryCertError,
    NotDryFeasible,
    ParityError,
    PolarizationError,
    UnsupportedCase,
)
from .extension import ExtensionConfig, PolarizationData
from .picard import BaseSurface, DivClass, neg_one_curves
from .spectral import SpectralData
from .witness import ExceptionCandidate, NotDry, Realized, Unsupported, Witness, realize, verify_witness

__all__ = [
    "BaseSurface",
    "CandidateClass",
    "CensusReport",
    "DimensionMismatch",
    "DivClass",
    "DryCertError",
    "DryEvaluation",
    "ExceptionCandidate",
    "ExtensionConfig",
    "NotDry",
    "NotDryFeasible",
    "ParityError",
    "PolarizationData",
    "PolarizationError",
    "Realized",
    "SpectralData",
    "Unsupported",
    "UnsupportedCase",
    "Witness",
    "dry_threshold",
    "enumerate_phis",
    "evaluate",
    "exception_census",
    "is_dry",
    "neg_one_curves",
    "realize",
    "sweep_bound",
    "verify_witness",
]
