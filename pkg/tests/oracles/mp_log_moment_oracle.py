"""Independent oracle for the log-moment of the Marchenko-Pastur bulk.

Evaluates integral(ln(lam) * sqrt((g+ - lam)(lam - g-)) / (2 pi g lam), lam
in [g-, g+]) with g+- = (1 +- sqrt(g))^2 two independent ways:

1. mpmath adaptive quadrature at 30 significant digits, integrating in lam
   directly (the package integrates in a trig substitution variable, so the
   two routes share nothing beyond the density definition);
2. the closed form (g - 1)/g * ln(1 - g) - 1 for g < 1, and -1 at g = 1,
   obtained by residue calculus.

Run:  python3 tests/oracles/mp_log_moment_oracle.py
Frozen into tests/test_randmat.py.
"""

import mpmath as mp

mp.mp.dps = 30


def quadrature(g):
    g = mp.mpf(g)
    lo = (1 - mp.sqrt(g)) ** 2
    hi = (1 + mp.sqrt(g)) ** 2

    def integrand(lam):
        return mp.log(lam) * mp.sqrt((hi - lam) * (lam - lo)) / (2 * mp.pi * g * lam)

    return mp.quad(integrand, [lo, hi])


def closed_form(g):
    g = mp.mpf(g)
    if g == 1:
        return mp.mpf(-1)
    return (g - 1) / g * mp.log(1 - g) - 1


if __name__ == "__main__":
    for g in ("0.1", "0.25", "0.5", "0.9", "1.0"):
        q = quadrature(g)
        c = closed_form(g)
        print(f"g = {g:>4}: quadrature {mp.nstr(q, 17)}  closed {mp.nstr(c, 17)}  "
              f"diff {mp.nstr(abs(q - c), 3)}")
