"""Write T_trans and E_lowest against M for the sodium gas as CSV."""

import argparse
from pathlib import Path

from bosewitness.records import default_meta, to_csv
from bosewitness.scenario import KETTERLE, parse_scenario, run_scenario


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-M", type=int, default=400)
    ap.add_argument("--out", type=Path, default=Path("partition_sweep.csv"))
    args = ap.parse_args()

    doc = dict(KETTERLE, name="partition-sweep")
    doc["sweep"] = {"variable": "M", "from": 1, "to": args.max_M, "points": args.max_M}
    table = run_scenario(parse_scenario(doc))
    table.meta = default_meta(**table.meta)
    args.out.write_text(to_csv(table))
    print(f"wrote {len(table.rows)} rows to {args.out}")


if __name__ == "__main__":
    main()
