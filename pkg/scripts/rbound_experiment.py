#!/usr/bin/env python3
"""Rademacher-ratio sweep across sector angles.

For each angle theta the family {(cos arg z) T_z} is sampled on log-spaced
moduli along the rays arg z = +-theta and the empirical Rademacher ratio is
recorded; a flat profile across theta is the numerical signature of the
angle-free boundedness the calculus machinery relies on.  Emits one JSON
record per angle.

Usage:
    python scripts/rbound_experiment.py --thetas 0.3 0.7 1.1 1.4 --trials 200
"""

import argparse
import json
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from qharm.calculus import rademacher_ratio
from qharm.field import FieldParams
from qharm.verification import SEED_RBOUND, rbound_family


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--thetas", type=float, nargs="+", default=[0.3, 0.7, 1.1, 1.4])
    ap.add_argument("--points", type=int, default=16)
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--seed", type=int, default=SEED_RBOUND)
    ap.add_argument("--p", type=float, default=4.0)
    ap.add_argument("--q", type=int, default=2)
    ap.add_argument("--n", type=int, default=1)
    ap.add_argument("--alpha", type=float, default=1.0)
    args = ap.parse_args()

    params = FieldParams(args.q, args.n, args.alpha)
    for theta in args.thetas:
        fam = rbound_family(theta, args.points)
        ratio = rademacher_ratio(fam, args.p, args.trials, args.seed, params)
        print(
            json.dumps(
                {
                    "family": f"cos(arg z) T_z on rays arg = +-{theta}",
                    "theta": theta,
                    "p": args.p,
                    "trials": args.trials,
                    "seed": args.seed,
                    "ratio": ratio,
                },
                sort_keys=True,
            )
        )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
