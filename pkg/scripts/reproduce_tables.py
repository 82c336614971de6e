#!/usr/bin/env python3
"""Closed-form quantities: law moments, generalized-gamma variances, gamma geometry.

    python scripts/reproduce_tables.py
"""

import math

from scipy.optimize import brentq

from spacinglab import laws
from spacinglab.infogeo import distance_from_randomness
from spacinglab.laws import EnsembleClass


def main():
    print("law,mean,variance,cv,unit_mean_kappa")
    for name in ("exponential", "wigner", "goe-lower", "goe-upper"):
        law = laws.law_from_name(name)
        m = laws.law_moments(law)
        print(f"{name},{m.mean:.10f},{m.variance:.10f},{m.cv:.10f},{m.unit_mean_kappa:.6f}")

    print("\nensemble,beta,omega,variance,tabulated_variance,omega_for_tabulated")
    for ens in (EnsembleClass.GOE, EnsembleClass.GUE, EnsembleClass.GSE):
        beta, omega, target = ens.caer_beta, ens.caer_omega, ens.caer_variance
        var = laws.law_moments(ens.caer_law()).variance

        def excess(w):
            return laws.law_moments(laws.GeneralizedGamma(beta, w)).variance - target

        w_needed = brentq(excess, 1.2, 3.0, xtol=1e-10)
        print(f"{ens.label},{beta},{omega},{var:.6f},{target},{w_needed:.5f}")

    print("\nkappa,distance_from_randomness")
    for kappa in (1.0, 2.42, 3.502, 4.247, 5.35, 9.606):
        print(f"{kappa},{distance_from_randomness(kappa):.10f}")
    print(f"\nupper-bound mean 5/(3 sqrt(pi)) = {5 / (3 * math.sqrt(math.pi)):.10f}")


if __name__ == "__main__":
    main()
