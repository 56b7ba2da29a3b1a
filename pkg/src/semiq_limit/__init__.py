"""
Classical limit of the semiquantum MaxEnt dynamics.

Both limit orderings (hbar first, I first), the classical reference trajectory and
its convergence in I, the pure-state moment check and moment factorization.
"""

from .factorization import factorization_check
from .limits import LimitRunner
from .limits import classical_convergence
from .limits import classical_reference
from .limits import fit_order
from .limits import ground_state_check
from .limits import run_limit
from .models import ConvergenceRecord
from .models import ConvergenceReport
from .models import FactorizationResult
from .models import GroundStateVerdict
from .models import LimitRecord
from .models import LimitReport
from .models import LimitSchedule
from .models import Ordering
from .models import ReductionPattern
from .states import invariant_for_relative_energy
from .states import paired_distance
from .states import state_with_invariant

__all__ = [
    "ConvergenceRecord",
    "ConvergenceReport",
    "FactorizationResult",
    "GroundStateVerdict",
    "LimitRecord",
    "LimitReport",
    "LimitRunner",
    "LimitSchedule",
    "Ordering",
    "ReductionPattern",
    "classical_convergence",
    "classical_reference",
    "factorization_check",
    "fit_order",
    "ground_state_check",
    "invariant_for_relative_energy",
    "paired_distance",
    "run_limit",
    "state_with_invariant",
]
