"""
Chaos quantifiers for the semiquantum oscillator.

Maximal Lyapunov exponent, Poincare sections on A = 0 and E_r regime sweeps.
"""

from .lyapunov import LyapunovEstimator
from .lyapunov import lyapunov_max
from .lyapunov import perturbation_direction
from .models import LyapunovParams
from .models import LyapunovResult
from .models import PoincareSection
from .models import RegimeLabel
from .models import RegimeSweep
from .models import SectionSummary
from .models import SweepPoint
from .models import SweepThresholds
from .poincare import PoincareSectioner
from .poincare import poincare
from .poincare import summarize_section
from .sweep import RegimeSweeper
from .sweep import classify_regime
from .sweep import evaluate_point
from .sweep import fluctuation_share
from .sweep import regime_sweep

__all__ = [
    "LyapunovEstimator",
    "LyapunovParams",
    "LyapunovResult",
    "PoincareSection",
    "PoincareSectioner",
    "RegimeLabel",
    "RegimeSweep",
    "RegimeSweeper",
    "SectionSummary",
    "SweepPoint",
    "SweepThresholds",
    "classify_regime",
    "evaluate_point",
    "fluctuation_share",
    "lyapunov_max",
    "perturbation_direction",
    "poincare",
    "regime_sweep",
    "summarize_section",
]
