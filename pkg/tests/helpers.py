"""Shared fixtures-as-functions and independent reference formulas.

The reference formulas here are deliberately written from scratch (no reuse
of package internals) so that tests exercise two separate routes to the same
number; see tests/oracles/ for the standalone derivation scripts.
"""

import numpy as np

from wishartscape import (
    FIELD_C,
    FIELD_H,
    FIELD_R,
    RngState,
    SectorModel,
    SimpleComponent,
)

FIELDS = {1: FIELD_R, 2: FIELD_C, 4: FIELD_H}

# one-sample Kolmogorov-Smirnov critical points: c(alpha) / sqrt(n)
KS_COEFF = {0.10: 1.224, 0.05: 1.358, 0.01: 1.628}


def ks_critical(n: int, alpha: float = 0.01) -> float:
    return KS_COEFF[alpha] / np.sqrt(n)


def ks_2samp_critical(n: int, m: int, alpha: float = 0.01) -> float:
    return KS_COEFF[alpha] * np.sqrt((n + m) / (n * m))


def exact_conjugation_variance(beta: int, obs, rho, index: float = 1.0) -> float:
    """Variance of index * Tr(rho U O U+) under Haar conjugation.

    Exact at every size; validated against independent group samplers in
    tests/oracles/haar_variance_oracle.py.  Eigenvalue sums throughout
    (quaternionic eigenvalues counted once).
    """
    obs = np.asarray(obs, dtype=float)
    rho = np.asarray(rho, dtype=float)
    n = obs.size
    oc = obs - obs.mean()
    rc = rho - rho.mean()
    d0 = {1: (n - 1) * (n + 2) / 2.0, 2: float(n * n - 1), 4: float(2 * n * n - n - 1)}
    return float(index**2 * np.sum(oc**2) * np.sum(rc**2) / d0[beta])


def component(beta=2, dim=8, index=1.0, obs=None, rho=None, params=0) -> SimpleComponent:
    if obs is None:
        obs = np.linspace(0.0, 1.0, dim)
    if rho is None:
        rho = np.zeros(dim)
        rho[0] = 1.0
    return SimpleComponent(
        field=FIELDS[beta],
        dim=dim,
        index=index,
        observable_spectrum=np.asarray(obs, dtype=float),
        input_spectrum=np.asarray(rho, dtype=float),
        sector_params=params,
    )


def single_model(comp: SimpleComponent, total_params=None, normalization=1.0) -> SectorModel:
    if total_params is None:
        total_params = max(comp.sector_params, 1)
    return SectorModel(
        components=(comp,), total_params=total_params, normalization=normalization
    )


def rng(seed: int = 0) -> RngState:
    return RngState(seed)
