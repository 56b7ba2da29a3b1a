"""
Dynamics engine for the semiquantum oscillator.

Right-hand sides for the multiplier, expectation-value and point-particle systems,
the rk45/rk4 step engine, trajectory integration and invariant-drift monitoring.
"""

from .integrator import Integrator
from .integrator import integrate
from .integrator import relative_drift
from .models import DriftReport
from .models import IntegratorConfig
from .models import Method
from .models import Representation
from .models import Trajectory
from .monitor import monitor_invariants
from .rhs import energy_point
from .rhs import rhs_expectations
from .rhs import rhs_multipliers
from .rhs import rhs_point

__all__ = [
    "DriftReport",
    "Integrator",
    "IntegratorConfig",
    "Method",
    "Representation",
    "Trajectory",
    "energy_point",
    "integrate",
    "monitor_invariants",
    "relative_drift",
    "rhs_expectations",
    "rhs_multipliers",
    "rhs_point",
]
