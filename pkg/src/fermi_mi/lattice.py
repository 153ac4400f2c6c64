"""Free-fermion entropies from covariance-matrix spectra.

A quasi-free state restricted to a set of modes ``R`` has entropy

    S(R) = -sum_nu [nu ln nu + (1 - nu) ln(1 - nu)],

the sum running over the eigenvalues of the covariance matrix restricted
to ``R``.  Two covariance models are provided:

* :func:`build_half_filled_covariance` -- ground state of the half-filled
  hopping chain.  It is real and has two Fermi points, so it carries two
  chiral components (a left and a right mover).
* :func:`build_hardy_cell_covariance` -- the Hardy projection compressed
  onto indicator functions of unit cells.  Being a compression of a
  projection its spectrum lies in ``[0, 1]`` by construction, and it
  carries a single chiral component.

Mutual information per chiral component is what the closed form ``F`` with
``r = 1`` predicts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from scipy.linalg import block_diag

from .cft import EntropyReport, Method, check_fermion_count, mutual_information_exact
from .errors import DomainError, InvalidInterval, RegionsOverlap, SpectrumOutOfRange, ValidationError
from .geometry import Interval, MultiInterval, normalize

SPECTRUM_TOL = 1e-10

__all__ = [
    "CovarianceMatrix",
    "SiteRegion",
    "build_half_filled_covariance",
    "build_hardy_cell_covariance",
    "restriction_spectrum",
    "binary_entropy_sum",
    "region_entropy",
    "mutual_information_lattice",
    "direct_sum",
    "regularized_covariance",
    "sites_for_interval",
    "ConvergenceRow",
    "convergence_study",
]


class CovarianceMatrix:
    """Hermitian matrix with spectrum in ``[0, 1]``.

    Parameters
    ----------
    entries : array_like
        Square Hermitian matrix.
    chiral_components : int
        Number of chiral fermions the discretisation carries; used to
        normalise lattice mutual information against the closed form.
    validate : bool
        Check the full spectrum on construction.  Builders whose spectrum is
        in ``[0, 1]`` by construction skip this.
    """

    def __init__(self, entries, chiral_components: int = 1, validate: bool = True):
        m = np.asarray(entries)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValidationError(f"covariance must be square, got shape {m.shape}")
        if not np.allclose(m, m.conj().T, atol=1e-12, rtol=0):
            raise ValidationError("covariance matrix is not Hermitian")
        if validate and m.size:
            w = np.linalg.eigvalsh(m)
            if w[0] < -SPECTRUM_TOL or w[-1] > 1 + SPECTRUM_TOL:
                raise SpectrumOutOfRange(f"spectrum [{w[0]:.3e}, {w[-1]:.3e}] leaves [0, 1]")
        self.entries = m
        self.entries.setflags(write=False)
        self.chiral_components = int(chiral_components)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def __repr__(self):
        return f"CovarianceMatrix(dim={self.dim}, chiral_components={self.chiral_components})"


@dataclass(frozen=True)
class SiteRegion:
    """Sorted set of distinct site indices."""

    indices: tuple[int, ...] = ()

    def __post_init__(self):
        idx = sorted({int(i) for i in self.indices})
        if idx and idx[0] < 0:
            raise ValidationError(f"negative site index {idx[0]}")
        object.__setattr__(self, "indices", tuple(idx))

    @classmethod
    def block(cls, start: int, stop: int) -> "SiteRegion":
        return cls(tuple(range(start, stop)))

    def __len__(self):
        return len(self.indices)

    def __or__(self, other: "SiteRegion") -> "SiteRegion":
        return SiteRegion(self.indices + other.indices)

    def isdisjoint(self, other: "SiteRegion") -> bool:
        return set(self.indices).isdisjoint(other.indices)

    def check_within(self, n: int) -> None:
        if self.indices and self.indices[-1] >= n:
            raise ValidationError(f"site {self.indices[-1]} outside a chain of {n} sites")


def _as_region(R) -> SiteRegion:
    return R if isinstance(R, SiteRegion) else SiteRegion(tuple(R))


def build_half_filled_covariance(N: int) -> CovarianceMatrix:
    """``C_jk = sin(pi (j-k)/2) / (pi (j-k))``, ``C_jj = 1/2``."""
    if N < 1:
        raise ValidationError(f"need N >= 1, got {N}")
    d = np.subtract.outer(np.arange(N), np.arange(N)).astype(float)
    off = d != 0
    c = np.full((N, N), 0.5)
    c[off] = np.sin(0.5 * np.pi * d[off]) / (np.pi * d[off])
    # exact zeros at even separations instead of sin(k*pi) roundoff
    c[off & (np.abs(d) % 2 == 0)] = 0.0
    # restriction of a projection on the infinite chain: spectrum in [0, 1]
    return CovarianceMatrix(c, chiral_components=2, validate=False)


def _xlogx(z: np.ndarray) -> np.ndarray:
    out = np.zeros_like(z, dtype=float)
    nz = z != 0
    out[nz] = z[nz] * np.log(np.abs(z[nz]))
    return out


def build_hardy_cell_covariance(N: int) -> CovarianceMatrix:
    """Hardy projection compressed onto the normalised indicators of ``N`` unit cells.

    With ``n = j - k``, ``C_jk = 1/2 delta_jk - (i / 2 pi) f(n)`` where

        f(n) = (n+1) ln|n+1| - 2 n ln|n| + (n-1) ln|n-1|

    is the principal-value double integral of ``1/(x - y)`` over two unit
    cells ``n`` apart.
    """
    if N < 1:
        raise ValidationError(f"need N >= 1, got {N}")
    n = np.subtract.outer(np.arange(N), np.arange(N)).astype(float)
    f = _xlogx(n + 1) - 2.0 * _xlogx(n) + _xlogx(n - 1)
    c = np.eye(N) * 0.5 - 0.5j / np.pi * f
    # compression of a projection: spectrum in [0, 1]
    return CovarianceMatrix(c, chiral_components=1, validate=False)


def restriction_spectrum(C: CovarianceMatrix, R) -> np.ndarray:
    """Eigenvalues of ``C`` restricted to ``R``, clamped into ``[0, 1]``."""
    R = _as_region(R)
    R.check_within(C.dim)
    if not len(R):
        return np.zeros(0)
    idx = np.asarray(R.indices)
    w = np.linalg.eigvalsh(C.entries[np.ix_(idx, idx)])
    if w[0] < -SPECTRUM_TOL or w[-1] > 1 + SPECTRUM_TOL:
        raise SpectrumOutOfRange(
            f"restricted spectrum [{w[0]:.3e}, {w[-1]:.3e}] leaves [0, 1] beyond {SPECTRUM_TOL}")
    return np.clip(w, 0.0, 1.0)


def binary_entropy_sum(nu: np.ndarray) -> float:
    """``-sum [nu ln nu + (1-nu) ln(1-nu)]`` with ``0 ln 0 = 0``."""
    nu = np.asarray(nu, dtype=float)
    inner = (nu > 0) & (nu < 1)
    v = nu[inner]
    return float(-np.sum(v * np.log(v) + (1 - v) * np.log1p(-v)))


def region_entropy(C: CovarianceMatrix, R) -> float:
    return binary_entropy_sum(restriction_spectrum(C, R))


def mutual_information_lattice(C: CovarianceMatrix, A, B) -> EntropyReport:
    """``S(A) + S(B) - S(A u B)`` for disjoint site sets (raw, not normalised)."""
    A, B = _as_region(A), _as_region(B)
    if not A.isdisjoint(B):
        raise RegionsOverlap("site regions A and B share sites")
    s_a, s_b = region_entropy(C, A), region_entropy(C, B)
    s_ab = region_entropy(C, A | B) if len(A) and len(B) else s_a + s_b
    value = s_a + s_b - s_ab
    return EntropyReport(
        value,
        Method.LATTICE,
        {"sites_A": len(A), "sites_B": len(B), "dim": C.dim},
        {"S_A": s_a, "S_B": s_b, "S_AB": s_ab, "chiral_components": C.chiral_components},
    )


def direct_sum(C: CovarianceMatrix, copies: int) -> CovarianceMatrix:
    """Block-diagonal covariance of ``copies`` independent fermion species."""
    copies = check_fermion_count(copies)
    return CovarianceMatrix(block_diag(*([C.entries] * copies)),
                            chiral_components=C.chiral_components * copies, validate=False)


def lift_region(R, dim: int, copies: int) -> SiteRegion:
    """The same sites in every block of a :func:`direct_sum`."""
    R = _as_region(R)
    return SiteRegion(tuple(i + k * dim for k in range(copies) for i in R.indices))


def regularized_covariance(C: CovarianceMatrix, eps0: float) -> CovarianceMatrix:
    """``E = (C + eps0) / (1 + 2 eps0)``, spectrum inside ``[eps0, 1 + eps0] / (1 + 2 eps0)``."""
    if not eps0 > 0:
        raise DomainError(f"eps0 must be positive, got {eps0}")
    e = (C.entries + eps0 * np.eye(C.dim)) / (1.0 + 2.0 * eps0)
    return CovarianceMatrix(e, chiral_components=C.chiral_components, validate=False)


def sites_for_interval(interval: Interval, scale: int, offset: int = 0) -> SiteRegion:
    """Sites ``j`` whose cells ``[j/scale, (j+1)/scale)`` lie inside the interval.

    ``offset`` is subtracted from every index so regions start at site 0.
    """
    lo = math.ceil(interval.a * scale - 1e-9)
    hi = math.floor(interval.b * scale + 1e-9)
    if hi <= lo:
        raise InvalidInterval(f"{interval.as_pair()} holds no complete cell at scale {scale}")
    return SiteRegion.block(lo - offset, hi - offset)


@dataclass(frozen=True)
class ConvergenceRow:
    scale: int
    sites_A: int
    sites_B: int
    S_A: float
    S_B: float
    S_AB: float
    mi_lattice: float
    mi_closed: float
    rel_error: float


_BUILDERS = {
    "hardy": build_hardy_cell_covariance,
    "hopping": build_half_filled_covariance,
}


def convergence_study(shape: Sequence, scales: Iterable[int], r: int = 1,
                      discretization: str = "hardy") -> list[ConvergenceRow]:
    """Lattice mutual information of a fixed two-region shape at growing resolution.

    ``shape`` is a pair ``(A, B)`` of intervals (or ``(a, b)`` pairs) on the
    line, ``scales`` the number of sites per unit length.  The lattice value
    is reported per chiral component and multiplied by ``r`` (independent
    species contribute additively), then compared with the closed form.
    Entropy columns are those of a single species on the raw lattice.
    """
    r = check_fermion_count(r)
    if discretization not in _BUILDERS:
        raise ValidationError(f"unknown discretization {discretization!r}")
    A_shape, B_shape = shape
    A_iv = A_shape if isinstance(A_shape, Interval) else Interval(*A_shape)
    B_iv = B_shape if isinstance(B_shape, Interval) else Interval(*B_shape)
    A_mi, B_mi = normalize([A_iv.as_pair()]), normalize([B_iv.as_pair()])
    exact = mutual_information_exact(A_mi, B_mi, r).value

    rows = []
    for scale in scales:
        scale = int(scale)
        if scale < 1:
            raise ValidationError(f"scale must be a positive integer, got {scale}")
        offset = math.ceil(min(A_iv.a, B_iv.a) * scale - 1e-9)
        sa = sites_for_interval(A_iv, scale, offset)
        sb = sites_for_interval(B_iv, scale, offset)
        n = max(sa.indices[-1], sb.indices[-1]) + 1
        C = _BUILDERS[discretization](n)
        rep = mutual_information_lattice(C, sa, sb)
        mi = r * rep.value / C.chiral_components
        rows.append(ConvergenceRow(
            scale, len(sa), len(sb),
            rep.diagnostics["S_A"], rep.diagnostics["S_B"], rep.diagnostics["S_AB"],
            mi, exact, (mi - exact) / exact,
        ))
    return rows
