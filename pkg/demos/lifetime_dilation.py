"""
Lifetime dilation of space-like momentum eigenstates
====================================================

An SLM eigenstate with s = -p.p > 0 decays more slowly than the state at rest
on the same hyperplane. For a narrow mass spectrum the ratio T(s)/T(0)
approaches the classical gamma = sqrt(M^2 + s)/M; for a broad one it does not.
"""
import math

from quanton_decay.dynamics import lifetime_closed_form, lifetime_numeric
from quanton_decay.errors import TailNotDecaying
from quanton_decay.spectra import make_breit_wigner, make_gaussian

spectra = {
    "narrow gaussian": make_gaussian(1.0, 1e-3),
    "gaussian w=0.02": make_gaussian(1.0, 0.02),
    "breit-wigner": make_breit_wigner(1.0, 0.05),
    "broad breit-wigner": make_breit_wigner(1.0, 0.5, support_sigmas=20),
}

for name, d in spectra.items():
    t0 = lifetime_closed_form(d, 0.0).value
    print(f"\n{name}: T(0) = {t0:.5f}")
    print(f"{'s':>5} {'T closed':>12} {'T numeric':>12} {'T/T0':>9} {'gamma':>9}")
    for s in (0.0, 1.0, 3.0, 8.0):
        closed = lifetime_closed_form(d, s).value
        try:
            numeric = lifetime_numeric(d, s).value
        except TailNotDecaying:
            numeric = float("nan")
        print(f"{s:5.1f} {closed:12.5f} {numeric:12.5f} {closed / t0:9.5f} "
              f"{math.sqrt(1 + s):9.5f}")

# The broad resonance still has weight near mu = 0. For s > 0 that mass
# threshold makes |I|^2 fall off as a power law, the tau integral does not
# settle, and the numeric route refuses (nan) instead of guessing a tail.
# The closed form is then sensitive to the lower support edge.
