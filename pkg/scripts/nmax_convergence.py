"""Boson truncation study for the coupled-cavity effective generator.

Prints the relative change of the numerically projected generator as the
Fock cutoff grows, against the closed-form generator.
"""
import argparse
from dataclasses import replace

from dgmsim.numerics import spectral_norm
from dgmsim.scenarios.jc import JcParams, jc_effective_analytic, jc_factored_effective


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--nmax", type=int, nargs="+", default=[2, 3, 4])
    ap.add_argument("--J", type=float, default=1.3)
    ap.add_argument("--tau", type=float, default=0.6)
    args = ap.parse_args(argv)

    base = JcParams(g_a=0.7, g_b=1.3, J=args.J, tau=args.tau)
    ana = jc_effective_analytic(base).liouvillian()
    scale = spectral_norm(ana)
    prev = None
    print("n_max  rel_vs_closed_form  rel_change")
    for n in args.nmax:
        gen = jc_factored_effective(replace(base, n_max=n))
        change = float("nan") if prev is None else spectral_norm(gen - prev) / scale
        print(f"{n:5d}  {spectral_norm(gen - ana) / scale:18.3e}  {change:10.3e}")
        prev = gen


if __name__ == "__main__":
    main()
