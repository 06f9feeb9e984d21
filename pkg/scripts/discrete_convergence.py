"""Discrete-mode grand canonical energy against the continuum U(T).

Reduced units (hbar = k_B = m = 1) at density 1 and T = 2 T_crit; the
relative gap should shrink roughly as 1/L.
"""

from bosewitness.constants import reduced_units
from bosewitness.gas import GasSpec, critical_temperature, discrete_grand_canonical, internal_energy

if __name__ == "__main__":
    units = reduced_units()
    print(f"{'L':>6} {'modes U':>14} {'continuum U':>14} {'rel gap':>10}")
    for side in (5.0, 10.0, 20.0, 40.0):
        spec = GasSpec(3, side, 1.0, side**3)
        T = 2 * critical_temperature(spec, units)
        exact = discrete_grand_canonical(T, spec, constants=units).internal_energy
        smooth = internal_energy(T, spec, units)
        print(f"{side:6g} {exact:14.6e} {smooth:14.6e} {exact / smooth - 1:10.3e}")
