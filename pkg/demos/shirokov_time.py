"""
Shirokov time of a moving quanton
=================================

A velocity eigenstate is born undecayed on the hyperplane orthogonal to
eta(u). The parallel hyperplane one rest lifetime further along eta is reached
after a coordinate time tau0 / eta0 = tau0 sqrt(1 - u^2), which is shorter,
not longer, than tau0.
"""
import numpy as np

from quanton_decay.dynamics import shirokov_time, velocity_eigenstate_half_life
from quanton_decay.minkowski import Hyperplane, Velocity3, eta_from_velocity, time_gap_between_parallel
from quanton_decay.spectra import make_breit_wigner

tau0 = 20.0
spectrum = make_breit_wigner(1.0, 0.05)

print(f"{'u':>5} {'t_S':>10} {'plane gap':>10} {'half-life':>10} {'ratio':>8}")
h_rest = velocity_eigenstate_half_life(spectrum, Velocity3())
for speed in np.linspace(0.0, 0.9, 4):
    u = Velocity3(speed, 0.0, 0.0)
    eta = eta_from_velocity(u)
    gap = time_gap_between_parallel(Hyperplane(eta, 0.0), Hyperplane(eta, tau0))
    half = velocity_eigenstate_half_life(spectrum, u)
    print(f"{speed:5.2f} {shirokov_time(tau0, u):10.5f} {gap:10.5f} {half:10.5f} "
          f"{half / h_rest:8.5f}")

# the last column follows sqrt(1 - u^2): the decay curve is the rest curve
# read at the stretched argument eta0 * t
