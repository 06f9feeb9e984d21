"""Where U(T) meets E_lowest(M): condensed branch against the full curve.

Above T_crit the fugacity drops below one and the full U(T) falls under the
condensed-branch extrapolation, so it reaches the separable floor later.
"""

import numpy as np

from bosewitness.gas import critical_temperature
from bosewitness.oracle import crossing_temperature
from bosewitness.scenario import KETTERLE, parse_scenario
from bosewitness.witness import Partition

if __name__ == "__main__":
    gas = parse_scenario(KETTERLE).gas
    tc = critical_temperature(gas)
    print(f"T_crit = {tc:.4e} K")
    print(f"{'M':>8} {'condensed (K)':>15} {'full U (K)':>15} {'ratio':>8}")
    for M in np.unique(np.geomspace(1, 400, 8).round()):
        cross = crossing_temperature(gas, Partition(float(M)))
        print(f"{M:8g} {cross.condensed:15.4e} {cross.piecewise:15.4e} {cross.piecewise / cross.condensed:8.4f}")
