"""Random matrix sampling: Gaussian ensembles, Wishart matrices, Haar groups.

The three division algebras are addressed by beta in {1, 2, 4} (real, complex,
quaternion).  Real and complex matrices are plain ndarrays; quaternion matrices
use the (..., n, m, 4) layout from the quaternion module.

Scaling convention: gauss_matrix entries have each real component distributed
N(0, 1), so E|entry|^2 = beta.  The Wishart samplers divide by beta so that
beta * W_ii is chi^2 with beta * dof degrees of freedom and E[W] = dof * I.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np
from scipy import integrate

from .errors import ValidationError
from . import quaternion as quat

__all__ = [
    "RngState",
    "BETAS",
    "gauss_matrix",
    "WishartSample",
    "wishart_direct",
    "wishart_bartlett",
    "haar_group",
    "haar_columns",
    "marchenko_pastur_support",
    "marchenko_pastur_pdf",
    "marchenko_pastur_atom",
    "mp_log_moment",
]

BETAS = (1, 2, 4)


def _check_beta(beta: int) -> int:
    if beta not in BETAS:
        raise ValidationError(f"beta must be one of {BETAS}, got {beta!r}")
    return int(beta)


def _check_positive(name: str, value: int) -> int:
    if int(value) != value or value < 1:
        raise ValidationError(f"{name} must be a positive integer, got {value!r}")
    return int(value)


class RngState:
    """Deterministic random stream with reproducible splitting.

    Wraps numpy's SeedSequence/PCG64 machinery: the same seed always yields
    the same stream, and split() derives independent child streams whose
    draws do not interact with the parent's.
    """

    def __init__(self, seed):
        if isinstance(seed, RngState):
            self._seq = seed._seq
        elif isinstance(seed, np.random.SeedSequence):
            self._seq = seed
        else:
            self._seq = np.random.SeedSequence(int(seed))
        self._generator = np.random.Generator(np.random.PCG64(self._seq))

    @property
    def generator(self) -> np.random.Generator:
        return self._generator

    def split(self, n: int) -> list["RngState"]:
        n = _check_positive("n", n)
        return [RngState(child) for child in self._seq.spawn(n)]

    def __repr__(self) -> str:
        return f"RngState(entropy={self._seq.entropy!r})"


def gauss_matrix(beta: int, rows: int, cols: int, rng: RngState) -> np.ndarray:
    """Standard Gaussian matrix over the field addressed by beta.

    Every real component of every entry is independent N(0, 1).
    """
    _check_beta(beta)
    _check_positive("rows", rows)
    _check_positive("cols", cols)
    g = rng.generator
    if beta == 1:
        return g.standard_normal((rows, cols))
    if beta == 2:
        parts = g.standard_normal((rows, cols, 2))
        return parts[..., 0] + 1j * parts[..., 1]
    return g.standard_normal((rows, cols, 4))


def _gauss_batch(beta: int, size: int, rows: int, cols: int, rng: RngState) -> np.ndarray:
    g = rng.generator
    if beta == 1:
        return g.standard_normal((size, rows, cols))
    if beta == 2:
        parts = g.standard_normal((size, rows, cols, 2))
        return parts[..., 0] + 1j * parts[..., 1]
    return g.standard_normal((size, rows, cols, 4))


def _adjoint(beta: int, x: np.ndarray) -> np.ndarray:
    if beta == 4:
        return quat.qdagger(x)
    return np.conj(np.swapaxes(x, -2, -1))


def _matmul(beta: int, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if beta == 4:
        return quat.qmatmul(a, b)
    return np.matmul(a, b)


@dataclass(frozen=True)
class WishartSample:
    """One Wishart draw.  Invariant: beta * matrix_ii ~ chi^2(beta * dof)."""

    beta: int
    dim: int
    dof: int
    matrix: np.ndarray = dc_field(repr=False)

    def real_diagonal(self) -> np.ndarray:
        if self.beta == 4:
            return np.ascontiguousarray(
                self.matrix[np.arange(self.dim), np.arange(self.dim), 0]
            )
        return np.real(np.diagonal(self.matrix)).copy()


def wishart_direct(beta: int, dim: int, dof: int, rng: RngState) -> WishartSample:
    """Wishart sample as X X^dagger / beta with X standard Gaussian dim x dof."""
    _check_beta(beta)
    _check_positive("dim", dim)
    _check_positive("dof", dof)
    x = gauss_matrix(beta, dim, dof, rng)
    w = _matmul(beta, x, _adjoint(beta, x)) / beta
    return WishartSample(beta=beta, dim=dim, dof=dof, matrix=w)


def _bartlett_factor(beta: int, dim: int, dof: int, rng: RngState) -> np.ndarray:
    """Lower factor L with W = L L^dagger equal in law to wishart_direct.

    The first min(dim, dof) rows are lower triangular with chi-distributed
    diagonal; when dim > dof the remaining rows are fully Gaussian.  Each
    off-diagonal real component is N(0, 1/beta) and the diagonal is
    chi(beta * (dof - i)) / sqrt(beta) for row i (0-indexed).
    """
    g = rng.generator
    m = min(dim, dof)
    scale = 1.0 / np.sqrt(beta)
    if beta == 4:
        L = np.zeros((dim, dof, 4))
        gauss = g.standard_normal((dim, dof, 4)) * scale
    elif beta == 2:
        L = np.zeros((dim, dof), dtype=complex)
        parts = g.standard_normal((dim, dof, 2)) * scale
        gauss = parts[..., 0] + 1j * parts[..., 1]
    else:
        L = np.zeros((dim, dof))
        gauss = g.standard_normal((dim, dof)) * scale
    rows, cols = np.tril_indices(m, k=-1, m=dof)
    L[rows, cols] = gauss[rows, cols]
    if dim > dof:
        L[dof:] = gauss[dof:]
    diag_df = beta * (dof - np.arange(m))
    diag = np.sqrt(g.chisquare(diag_df)) * scale
    if beta == 4:
        L[np.arange(m), np.arange(m), 0] = diag
    else:
        L[np.arange(m), np.arange(m)] = diag
    return L


def wishart_bartlett(beta: int, dim: int, dof: int, rng: RngState) -> WishartSample:
    """Wishart sample via the triangular (Bartlett) factorization."""
    _check_beta(beta)
    _check_positive("dim", dim)
    _check_positive("dof", dof)
    L = _bartlett_factor(beta, dim, dof, rng)
    w = _matmul(beta, L, _adjoint(beta, L))
    return WishartSample(beta=beta, dim=dim, dof=dof, matrix=w)


def _haar_unitary_batch(beta: int, dim: int, size: int, rng: RngState) -> np.ndarray:
    """Batch of Haar matrices: SO(dim), U(dim) or Sp(dim) depending on beta."""
    if beta == 4:
        return _haar_symplectic_batch(dim, size, rng)
    g = _gauss_batch(beta, size, dim, dim, rng)
    q, r = np.linalg.qr(g)
    d = np.diagonal(r, axis1=-2, axis2=-1)
    # Fix the QR gauge so the decomposition has positive (real) diagonal in R.
    if beta == 2:
        phase = d / np.abs(d)
    else:
        phase = np.sign(d)
    q = q * phase[:, None, :].conj()
    if beta == 1:
        # Fold O(dim) onto SO(dim): flip the last column of the det = -1 draws.
        neg = np.linalg.det(q) < 0
        q[neg, :, -1] *= -1.0
    return q


def _q_columns_mgs(g: np.ndarray) -> np.ndarray:
    """Orthonormalize quaternion columns in place, two Gram-Schmidt passes."""
    size, n, k, _ = g.shape
    cols = np.array(g, copy=True)
    for j in range(k):
        v = cols[:, :, j, :]
        for _pass in range(2):
            for i in range(j):
                u = cols[:, :, i, :]
                # coefficient u^dagger v, then v -= u * coeff (right action)
                coeff = np.sum(quat.qmul(quat.qconj(u), v), axis=1)
                v = v - quat.qmul(u, coeff[:, None, :])
        norm = np.sqrt(np.sum(quat.qabs2(v), axis=1))
        cols[:, :, j, :] = v / norm[:, None, None]
    return cols


def _haar_symplectic_batch(dim: int, size: int, rng: RngState) -> np.ndarray:
    g = _gauss_batch(4, size, dim, dim, rng)
    return _q_columns_mgs(g)


def haar_group(beta: int, dim: int, rng: RngState, size: int | None = None) -> np.ndarray:
    """Haar-random compact group element: SO(N), U(N) or Sp(N).

    With size=None returns a single matrix; otherwise a leading batch axis.
    beta = 1 draws land in SO(N) (determinant +1); beta = 4 uses the native
    quaternion layout.
    """
    _check_beta(beta)
    _check_positive("dim", dim)
    n = 1 if size is None else _check_positive("size", size)
    batch = _haar_unitary_batch(beta, dim, n, rng)
    return batch[0] if size is None else batch


def haar_columns(beta: int, dim: int, n_cols: int, rng: RngState,
                 size: int | None = None) -> np.ndarray:
    """First n_cols columns of a Haar matrix (uniform Stiefel frame).

    Equal in law to slicing haar_group output but only orthonormalizes the
    requested columns, which is what the Monte Carlo paths batch over.
    """
    _check_beta(beta)
    _check_positive("dim", dim)
    n_cols = _check_positive("n_cols", n_cols)
    if n_cols > dim:
        raise ValidationError(f"n_cols {n_cols} exceeds dim {dim}")
    n = 1 if size is None else _check_positive("size", size)
    g = _gauss_batch(beta, n, dim, n_cols, rng)
    if beta == 4:
        out = _q_columns_mgs(g)
    else:
        q, r = np.linalg.qr(g)
        d = np.diagonal(r, axis1=-2, axis2=-1)
        phase = d / np.abs(d) if beta == 2 else np.sign(d)
        out = q * phase[:, None, :].conj()
    return out[0] if size is None else out


# ---------------------------------------------------------------------------
# Marchenko-Pastur law for W / dof with aspect ratio gamma = dim / dof.

def _check_gamma(gamma: float) -> float:
    gamma = float(gamma)
    if not np.isfinite(gamma) or gamma <= 0.0:
        raise ValidationError(f"gamma must be a positive float, got {gamma!r}")
    return gamma


def marchenko_pastur_support(gamma: float) -> tuple[float, float]:
    gamma = _check_gamma(gamma)
    lo = (1.0 - np.sqrt(gamma)) ** 2
    hi = (1.0 + np.sqrt(gamma)) ** 2
    return lo, hi


def marchenko_pastur_atom(gamma: float) -> float:
    """Mass of the point at zero (nonzero only past the square aspect)."""
    gamma = _check_gamma(gamma)
    return max(0.0, 1.0 - 1.0 / gamma)


def marchenko_pastur_pdf(gamma: float, lam) -> np.ndarray:
    """Density of the continuous part at lam; zero off the bulk support."""
    gamma = _check_gamma(gamma)
    lam = np.asarray(lam, dtype=float)
    lo, hi = marchenko_pastur_support(gamma)
    inside = (lam > lo) & (lam < hi)
    out = np.zeros_like(lam)
    lam_in = lam[inside]
    out[inside] = np.sqrt((hi - lam_in) * (lam_in - lo)) / (2.0 * np.pi * gamma * lam_in)
    return out


def mp_log_moment(gamma: float) -> float:
    """Integral of ln(lambda) against the Marchenko-Pastur law.

    For gamma > 1 the atom at zero makes the integral diverge to -inf.  The
    bulk part is integrated after the substitution lam = lo + (hi-lo) sin^2(u),
    which removes the edge square-root singularities.
    """
    gamma = _check_gamma(gamma)
    if gamma > 1.0:
        return -np.inf
    lo, hi = marchenko_pastur_support(gamma)
    width = hi - lo

    def integrand(u: float) -> float:
        s2 = np.sin(u) ** 2
        lam = lo + width * s2
        # sqrt((hi-lam)(lam-lo)) = width * sin(u) cos(u); dlam = 2 width sin cos du
        weight = 2.0 * width**2 * s2 * np.cos(u) ** 2 / (2.0 * np.pi * gamma * lam)
        return np.log(lam) * weight

    value, abserr = integrate.quad(integrand, 0.0, np.pi / 2.0, limit=200,
                                   epsabs=1e-12, epsrel=1e-12)
    if abserr > 1e-8:
        raise ArithmeticError(f"log-moment quadrature failed to converge: abserr={abserr}")
    return float(value)
