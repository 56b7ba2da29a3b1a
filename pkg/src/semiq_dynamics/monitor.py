"""
Invariant-drift audit of sampled trajectories.
"""

import numpy as np

from semiq_maxent.models import ModelParams

from .integrator import relative_drift
from .models import DriftReport
from .models import Representation
from .models import Trajectory


def monitor_invariants(traj: Trajectory, p: ModelParams) -> DriftReport:
    """
    Max relative drift of I_lambda (multiplier runs) or I (expectation runs), of I and of E.

    Drift of I is normalized by max(|I(0)|, <x^2><p^2>(0)) so trajectories with I = 0
    report a finite number.
    """
    inv = traj.invariants
    i_scale = float(abs(traj.evs[0, 0] * traj.evs[0, 1]))
    i_drift = relative_drift(inv["i_uncert"], float(inv["i_uncert"][0]), i_scale)
    energy = inv["energy"]
    e_drift = relative_drift(energy, float(energy[0]))
    worst = int(np.argmax(e_drift))

    if traj.representation is Representation.MULTIPLIERS:
        quantity = "I_lambda"
        q_drift = relative_drift(inv["i_lambda"], float(inv["i_lambda"][0]))
    else:
        quantity = "I"
        q_drift = i_drift

    return DriftReport(
        quantity=quantity,
        invariant_drift=float(np.max(q_drift)),
        i_drift=float(np.max(i_drift)),
        energy_drift=float(e_drift[worst]),
        worst_energy_time=float(traj.times[worst]),
    )
