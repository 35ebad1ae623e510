"""Count how often a perturbed robustness curve dips below the error-free one.

For each seed, sample encoding-error matrices at the given magnitudes and
report at how many T points the perturbed error is below the zeta=0 error.
"""
import argparse

import numpy as np

from dgmsim.scenarios.robustness import KINDS, robustness_sweep


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--kind", choices=KINDS, default="lindbladian")
    ap.add_argument("--seeds", type=int, default=4)
    ap.add_argument("--magnitudes", type=float, nargs="+", default=[0.5, 1.0])
    ap.add_argument("--points", type=int, default=13)
    args = ap.parse_args(argv)

    times = np.logspace(1, 4, args.points)
    print("seed  " + "  ".join(f"|zeta|={m:<5g}" for m in args.magnitudes))
    for seed in range(args.seeds):
        sweeps = robustness_sweep(args.kind, args.magnitudes, seed=seed, times=times)
        ref = sweeps[0].errors
        counts = [int(np.sum(r.errors < ref)) for r in sweeps[1:]]
        print(f"{seed:4d}  " + "  ".join(f"{c:>5d}/{len(ref):<5d}" for c in counts))


if __name__ == "__main__":
    main()
