#!/usr/bin/env python3
"""Generate synthetic demo inputs for netload-uq.

Writes two aligned 15-minute CSV series:
  base.csv     household base load in kW (double daily peak plus noise)
  pv_norm.csv  normalized PV generation in kW per kWp (clear-sky bell)

Both start at 2022-01-01T00:00 and cover whole days, so the daily
partitioning keeps every sample. Deterministic for a fixed --seed.
"""

import argparse
import csv
import math
import random
from datetime import datetime, timedelta
from pathlib import Path

STEP_MIN = 15
STEPS_PER_DAY = 24 * 60 // STEP_MIN


def base_kw(day: int, step: int, rng: random.Random) -> float:
    h = step * STEP_MIN / 60.0
    # Morning and evening humps over a standby floor, with weekly and
    # seasonal modulation and small measurement noise.
    morning = 0.55 * math.exp(-0.5 * ((h - 7.8) / 1.9) ** 2)
    evening = 1.05 * math.exp(-0.5 * ((h - 19.2) / 2.4) ** 2)
    weekly = 1.0 + 0.08 * math.sin(2.0 * math.pi * day / 7.0)
    seasonal = 1.0 + 0.25 * math.cos(2.0 * math.pi * day / 365.0)
    kw = (0.35 + morning + evening) * weekly * seasonal
    return max(0.05, kw + rng.gauss(0.0, 0.04))


def pv_norm_kw_per_kwp(day: int, step: int) -> float:
    h = step * STEP_MIN / 60.0
    sunrise = 6.5 + 1.5 * math.cos(2.0 * math.pi * day / 365.0)
    sunset = 20.0 - 1.5 * math.cos(2.0 * math.pi * day / 365.0)
    if not sunrise < h < sunset:
        return 0.0
    v = math.sin(math.pi * (h - sunrise) / (sunset - sunrise))
    return round(0.9 * v**1.3, 6)


def write_series(path: Path, days: int, value_fn) -> None:
    start = datetime(2022, 1, 1)
    with path.open("w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["timestamp", "power_kw"])
        for day in range(days):
            for step in range(STEPS_PER_DAY):
                stamp = start + timedelta(days=day, minutes=step * STEP_MIN)
                writer.writerow([stamp.isoformat(), f"{value_fn(day, step):.6f}"])


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--days", type=int, default=28, help="number of whole days (default 28)")
    parser.add_argument("--seed", type=int, default=2022, help="RNG seed for the load noise")
    parser.add_argument("--out", type=Path, default=Path("data"), help="output directory (default data/)")
    args = parser.parse_args()

    args.out.mkdir(parents=True, exist_ok=True)
    rng = random.Random(args.seed)
    write_series(args.out / "base.csv", args.days, lambda d, s: base_kw(d, s, rng))
    write_series(args.out / "pv_norm.csv", args.days, pv_norm_kw_per_kwp)
    print(f"wrote {args.out / 'base.csv'} and {args.out / 'pv_norm.csv'} ({args.days} days at {STEP_MIN} min)")


if __name__ == "__main__":
    main()
