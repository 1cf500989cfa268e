import numpy as np
import pytest

from rotorlab.invariants import KinematicJet


@pytest.fixture
def rotator_jet():
    """Kinematic jet of the circular solution at t=0 (M = ell = 1, phidot = 1).

    Along x(t) = (t, sin(t)/2, cos(t)/2, 0), k(t) = (1, cos t, -sin t, 0),
    completed with a = (0, 0, 0, 1) constant and b = (0, sin t, cos t, 0).
    """
    return KinematicJet(
        xdot=np.array([1.0, 0.5, 0.0, 0.0]),
        k=np.array([1.0, 1.0, 0.0, 0.0]),
        m=np.array([1.0, -1.0, 0.0, 0.0]),
        a=np.array([0.0, 0.0, 0.0, 1.0]),
        b=np.array([0.0, 0.0, 1.0, 0.0]),
        kdot=np.array([0.0, 0.0, -1.0, 0.0]),
        mdot=np.array([0.0, 0.0, 1.0, 0.0]),
        adot=np.zeros(4),
        bdot=np.array([0.0, 1.0, 0.0, 0.0]),
    )
