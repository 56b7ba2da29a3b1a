"""
MaxEnt algebra for the semiquantum oscillator.

Invariants, multiplier/expectation-value maps, entropy and spectrum of the
maximum-entropy density operator, plus the classical phase-space relations.
"""

from .algebra import check_admissible
from .algebra import classical_relations
from .algebra import energy
from .algebra import entropy
from .algebra import evs_to_multipliers
from .algebra import i_lambda
from .algebra import invariant_columns
from .algebra import invariant_i
from .algebra import invariant_set
from .algebra import k_nl
from .algebra import moments_from_normal_modes
from .algebra import multipliers_to_evs
from .algebra import normal_mode_matrix
from .algebra import relative_energy
from .algebra import spectrum
from .algebra import transform_coeffs
from .models import ClassicalRelations
from .models import ExpectationState
from .models import InvariantSet
from .models import Mode
from .models import ModelParams
from .models import MultiplierState
from .models import SpectrumSummary
from .models import TransformCoeffs
from .special import EPS_PURE
from .special import ilambda_condition
from .special import ilambda_from_i
from .special import lambda0
from .special import pure_threshold
from .special import purity
from .special import spectral_entropy
from .special import t_of_ilambda

__all__ = [
    "EPS_PURE",
    "ClassicalRelations",
    "ExpectationState",
    "InvariantSet",
    "Mode",
    "ModelParams",
    "MultiplierState",
    "SpectrumSummary",
    "TransformCoeffs",
    "check_admissible",
    "classical_relations",
    "energy",
    "entropy",
    "evs_to_multipliers",
    "i_lambda",
    "ilambda_condition",
    "ilambda_from_i",
    "invariant_columns",
    "invariant_i",
    "invariant_set",
    "k_nl",
    "lambda0",
    "moments_from_normal_modes",
    "multipliers_to_evs",
    "normal_mode_matrix",
    "pure_threshold",
    "purity",
    "relative_energy",
    "spectral_entropy",
    "spectrum",
    "t_of_ilambda",
    "transform_coeffs",
]
