"""Witness numbers for the sodium condensate (N = 7e5, L = 10 um, onset 20 uK)."""

from bosewitness.records import render
from bosewitness.scenario import REPRODUCTIONS

if __name__ == "__main__":
    for name in ("ketterle", "dimensions-table", "planck"):
        print(render(REPRODUCTIONS[name](), "table", include_meta=False))
