"""Newcomb-Benford discrepancy and classical baselines for designs of experiments."""
from .benford import (
    DEFAULT_JOINT_MODE,
    JOINT_MODES,
    DesignError,
    DigitHistogram,
    NBReference,
    NbdResult,
    PairDigitHistogram,
    as_design,
    digit_histogram_flat,
    first_digit,
    marginal_reference,
    nb_probability,
    nbd_flat,
    nbd_joint,
    pair_digit_histogram,
    pair_reference,
    rmse_vs_reference,
)
from .discrepancy import DiscrepancyResult, centered_l2_squared, find_fig1_designs
from .samplers import SamplerSpec, permute_column, sample, sample_lhs, sample_mc, sample_sobol

__version__ = "0.1.0"
