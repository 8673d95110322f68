"""Writes the bundled monthly fixture: 51 months, 528 disengagements.

Monthly mileage ramps up with a mild seasonal wobble; miles per
disengagement improve geometrically from --start-mpd to --end-mpd. Counts
are the expected values rounded by largest remainder so they sum exactly.

    python3 data/generate_fixture.py > data/waymo_monthly.csv
"""

import argparse

import numpy as np


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--start-mpd", type=float, default=300.0)
    parser.add_argument("--end-mpd", type=float, default=5000.0)
    parser.add_argument("--miles-scale", type=float, default=0.6)
    parser.add_argument("--months", type=int, default=51)
    parser.add_argument("--events", type=int, default=528)
    args = parser.parse_args()

    i = np.arange(args.months)
    ramp = i / (args.months - 1)
    miles = np.round(18000 + ramp**1.3 * 92000, -2) * (1 + 0.08 * np.sin(i * 1.7))
    miles = np.round(miles * args.miles_scale, -2)

    mpd = args.start_mpd * (args.end_mpd / args.start_mpd) ** ramp
    expected = miles / mpd
    expected *= args.events / expected.sum()
    counts = np.floor(expected).astype(int)
    order = np.argsort(-(expected - counts))
    counts[order[: args.events - counts.sum()]] += 1

    print("month,miles,disengagements")
    for k in range(args.months):
        year, month = 2014 + k // 12, k % 12 + 1
        print(f"{year}-{month:02d},{int(miles[k])},{counts[k]}")


if __name__ == "__main__":
    main()
