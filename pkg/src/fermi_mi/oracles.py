"""Finite-dimensional ground truth for the entropy inequalities.

Everything here works on dense matrices through their spectral
decomposition: entropies, relative entropy with explicit support handling,
the trace inequalities behind the continuum argument, and a step-path
evaluation of Kosaki's variational formula

    S(rho, sigma) = sup_x [ ln k - int_{1/k}^inf ( Tr(rho x_t^* x_t) / t
                                                 + Tr(sigma y_t y_t^*) / t^2 ) dt ],
    y_t = 1 - x_t,

which yields a lower bound for every admissible path.  Randomised audits
(:func:`run_audit`) draw reproducible instances from ``default_rng(seed + trial)``.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import DimensionMismatch, InvalidDensityMatrix, InvalidPath, SupportViolation, ValidationError

ZERO_EIG = 1e-14
GAP_TOL = 1e-9

__all__ = [
    "DensityMatrix",
    "von_neumann_entropy",
    "relative_entropy",
    "partial_trace",
    "mutual_information_density",
    "ssa_gap",
    "sherman_davis_gap",
    "lieb_convexity_gap",
    "lieb_concavity_gap",
    "theorem_ab_gap",
    "StepPath",
    "scalar_path",
    "optimal_path",
    "kosaki_lower_bound",
    "monotonicity_gap",
    "dominance_bound_check",
    "dominance_constant",
    "AuditResult",
    "AUDITS",
    "run_audit",
]


# ---------------------------------------------------------------------------
# Basic matrix helpers
# ---------------------------------------------------------------------------

def _hermitian(m, name: str = "matrix", tol: float = 1e-10) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValidationError(f"{name} must be square, got shape {m.shape}")
    if not np.allclose(m, m.conj().T, atol=tol * max(1.0, np.abs(m).max(initial=0.0)), rtol=0):
        raise ValidationError(f"{name} is not Hermitian")
    return 0.5 * (m + m.conj().T)


def _funm(m: np.ndarray, f: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
    w, v = np.linalg.eigh(m)
    return (v * f(w)) @ v.conj().T


def _xlogx(w: np.ndarray) -> np.ndarray:
    out = np.zeros_like(w)
    pos = w > ZERO_EIG
    out[pos] = w[pos] * np.log(w[pos])
    return out


def _logm_pd(m: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh(m)
    if w[0] <= 0:
        raise ValidationError(f"matrix is not positive definite (min eigenvalue {w[0]:.3e})")
    return (v * np.log(w)) @ v.conj().T


def _check_pd(m, name: str) -> np.ndarray:
    m = _hermitian(m, name)
    if np.linalg.eigvalsh(m)[0] <= 0:
        raise ValidationError(f"{name} must be positive definite")
    return m


def _check_projection(p, name: str = "p", tol: float = 1e-10) -> np.ndarray:
    p = _hermitian(p, name, tol)
    if not np.allclose(p @ p, p, atol=tol, rtol=0):
        raise ValidationError(f"{name} is not idempotent")
    return p


def _range_basis(p: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh(p)
    return v[:, w > 0.5]


def _tr(m: np.ndarray) -> float:
    return float(np.real(np.trace(m)))


# ---------------------------------------------------------------------------
# States and entropies
# ---------------------------------------------------------------------------

class DensityMatrix:
    """Positive semidefinite, unit-trace Hermitian matrix."""

    def __init__(self, entries, tol: float = 1e-12):
        try:
            m = _hermitian(entries, "density matrix")
        except ValidationError as exc:
            raise InvalidDensityMatrix(str(exc)) from None
        w = np.linalg.eigvalsh(m)
        if w[0] < -tol:
            raise InvalidDensityMatrix(f"negative eigenvalue {w[0]:.3e}")
        if abs(_tr(m) - 1.0) > tol:
            raise InvalidDensityMatrix(f"trace {_tr(m)!r} differs from 1")
        self.entries = m
        self.entries.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @classmethod
    def from_spectrum(cls, probs, basis=None) -> "DensityMatrix":
        probs = np.asarray(probs, dtype=float)
        v = np.eye(len(probs)) if basis is None else np.asarray(basis)
        return cls((v * probs) @ v.conj().T)

    @classmethod
    def pure(cls, psi) -> "DensityMatrix":
        psi = np.asarray(psi, dtype=complex)
        psi = psi / np.linalg.norm(psi)
        return cls(np.outer(psi, psi.conj()))

    @classmethod
    def maximally_mixed(cls, d: int) -> "DensityMatrix":
        return cls(np.eye(d) / d)

    def __matmul__(self, other):
        return self.entries @ (other.entries if isinstance(other, DensityMatrix) else other)

    def __repr__(self):
        return f"DensityMatrix(dim={self.dim})"


def _matrix(x) -> np.ndarray:
    return x.entries if isinstance(x, DensityMatrix) else np.asarray(x, dtype=complex)


def _entropy_matrix(m: np.ndarray) -> float:
    return float(-np.sum(_xlogx(np.linalg.eigvalsh(m))))


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """``-Tr(rho ln rho)``."""
    if not isinstance(rho, DensityMatrix):
        rho = DensityMatrix(rho)
    return max(_entropy_matrix(rho.entries), 0.0)


def relative_entropy(rho, sigma, strict: bool = True) -> float:
    """``Tr(rho ln rho - rho ln sigma)``.

    ``sigma`` may be any positive semidefinite matrix; for ``sigma = c * rho``
    the value is ``-ln c``.  If the support of ``rho`` is not contained in
    that of ``sigma`` the value is ``+inf``: :class:`SupportViolation` is
    raised when ``strict`` is true, otherwise ``inf`` is returned.
    """
    rho = rho if isinstance(rho, DensityMatrix) else DensityMatrix(rho)
    s = _hermitian(_matrix(sigma), "sigma")
    if rho.dim != s.shape[0]:
        raise DimensionMismatch(f"rho is {rho.dim}x{rho.dim}, sigma is {s.shape[0]}x{s.shape[0]}")
    ws, vs = np.linalg.eigh(s)
    if ws[0] < -1e-12:
        raise ValidationError(f"sigma has a negative eigenvalue {ws[0]:.3e}")
    support = ws > ZERO_EIG
    r_in_sigma_basis = np.real(np.einsum("ij,jk,ki->i", vs.conj().T, rho.entries, vs))
    if np.sum(r_in_sigma_basis[~support]) > 1e-12:
        if strict:
            raise SupportViolation("support(rho) is not contained in support(sigma)")
        return math.inf
    wr = np.linalg.eigvalsh(rho.entries)
    return float(np.sum(_xlogx(wr)) - np.sum(r_in_sigma_basis[support] * np.log(ws[support])))


def partial_trace(m, dims: Sequence[int], keep: Sequence[int]) -> np.ndarray:
    """Trace out every tensor factor not listed in ``keep``."""
    m = _matrix(m)
    dims = [int(d) for d in dims]
    n = len(dims)
    if int(np.prod(dims)) != m.shape[0]:
        raise DimensionMismatch(f"dims {dims} do not multiply to {m.shape[0]}")
    keep = sorted(set(keep))
    t = m.reshape(dims + dims)
    letters = "abcdefghijklmnopqrstuvwxyz"
    row = [letters[i] for i in range(n)]
    col = [letters[i + n] if i in keep else letters[i] for i in range(n)]
    out = "".join(row[i] for i in keep) + "".join(col[i] for i in keep)
    dk = int(np.prod([dims[i] for i in keep])) if keep else 1
    return np.einsum("".join(row) + "".join(col) + "->" + out, t).reshape(dk, dk)


def _check_dims(rho, dims) -> DensityMatrix:
    rho = rho if isinstance(rho, DensityMatrix) else DensityMatrix(rho)
    if int(np.prod(dims)) != rho.dim:
        raise DimensionMismatch(f"dims {tuple(dims)} do not multiply to {rho.dim}")
    return rho


def mutual_information_density(rho_AB, dims: tuple[int, int]) -> float:
    """``S(rho_A) + S(rho_B) - S(rho_AB)``."""
    rho = _check_dims(rho_AB, dims)
    s_a = _entropy_matrix(partial_trace(rho.entries, dims, [0]))
    s_b = _entropy_matrix(partial_trace(rho.entries, dims, [1]))
    return s_a + s_b - _entropy_matrix(rho.entries)


def ssa_gap(rho_ABC, dims: tuple[int, int, int]) -> float:
    """``S(AB) + S(AC) - S(A) - S(ABC)``, non-negative by strong subadditivity."""
    rho = _check_dims(rho_ABC, dims)
    m = rho.entries

    def s(keep):
        return _entropy_matrix(partial_trace(m, dims, keep))

    return s([0, 1]) + s([0, 2]) - s([0]) - _entropy_matrix(m)


# ---------------------------------------------------------------------------
# Trace inequalities
# ---------------------------------------------------------------------------

def sherman_davis_gap(A, p) -> float:
    """Smallest eigenvalue of ``p f(A) p - p f(pAp) p`` on the range of ``p``, ``f(t) = t ln t``."""
    A = _check_pd(_matrix(A), "A")
    p = _check_projection(_matrix(p))
    if A.shape != p.shape:
        raise DimensionMismatch("A and p differ in size")
    V = _range_basis(p)
    if V.shape[1] == 0:
        return 0.0
    lhs = V.conj().T @ _funm(A, _xlogx) @ V
    rhs = _funm(V.conj().T @ A @ V, _xlogx)
    return float(np.linalg.eigvalsh(0.5 * (lhs - rhs + (lhs - rhs).conj().T))[0])


def _lieb_phi(A: np.ndarray, B: np.ndarray, K: np.ndarray) -> float:
    Kh = K.conj().T
    return _tr(Kh @ A @ _logm_pd(A) @ K) - _tr(Kh @ A @ K @ _logm_pd(B))


def _pairs(pairs, K):
    (A1, B1), (A2, B2) = pairs
    mats = [_check_pd(_matrix(X), n) for X, n in ((A1, "A1"), (B1, "B1"), (A2, "A2"), (B2, "B2"))]
    K = np.asarray(K, dtype=complex)
    if any(X.shape != mats[0].shape for X in mats) or K.shape != mats[0].shape:
        raise DimensionMismatch("all matrices must share one size")
    return mats, K


def lieb_convexity_gap(pairs, K) -> float:
    """Midpoint-convexity gap of ``Phi(A, B) = Tr(K* A ln A K - K* A K ln B)``:
    ``(Phi(A1,B1) + Phi(A2,B2)) / 2 - Phi((A1+A2)/2, (B1+B2)/2)``."""
    (A1, B1, A2, B2), K = _pairs(pairs, K)
    mid = _lieb_phi(0.5 * (A1 + A2), 0.5 * (B1 + B2), K)
    return 0.5 * (_lieb_phi(A1, B1, K) + _lieb_phi(A2, B2, K)) - mid


def lieb_concavity_gap(pairs, K, t: float = 0.5) -> float:
    """Midpoint-concavity gap of ``Tr(K* A^(1-t) K B^t)`` for ``0 <= t <= 1``."""
    if not 0.0 <= t <= 1.0:
        raise ValidationError(f"t must lie in [0, 1], got {t}")
    (A1, B1, A2, B2), K = _pairs(pairs, K)

    def psi(A, B):
        Ap = _funm(A, lambda w: w ** (1.0 - t))
        Bp = _funm(B, lambda w: w ** t)
        return _tr(K.conj().T @ Ap @ K @ Bp)

    return psi(0.5 * (A1 + A2), 0.5 * (B1 + B2)) - 0.5 * (psi(A1, B1) + psi(A2, B2))


def _rel_trace(A: np.ndarray, B: np.ndarray) -> float:
    return _tr(A @ (_logm_pd(A) - _logm_pd(B)))


def theorem_ab_gap(A, P1, p) -> float:
    """``Tr(A(ln A - ln B)) - Tr(A_p(ln A_p - ln B_p))`` with ``B = P1 A P1 + P2 A P2``,
    ``P2 = 1 - P1`` and ``X_p`` the compression of ``X`` to the range of ``p``."""
    A = _check_pd(_matrix(A), "A")
    P1 = _check_projection(_matrix(P1), "P1")
    p = _check_projection(_matrix(p))
    if not (A.shape == P1.shape == p.shape):
        raise DimensionMismatch("A, P1 and p differ in size")
    if not np.allclose(p @ P1, P1 @ p, atol=1e-10, rtol=0):
        raise ValidationError("p must commute with P1")
    P2 = np.eye(A.shape[0]) - P1
    B = P1 @ A @ P1 + P2 @ A @ P2
    V = _range_basis(p)
    full = _rel_trace(A, B)
    if V.shape[1] == 0:
        return full
    Vh = V.conj().T
    return full - _rel_trace(Vh @ A @ V, Vh @ B @ V)


def monotonicity_gap(rho, sigma, dims: tuple[int, int]) -> float:
    """``S(rho, sigma) - S(rho_A, sigma_A)``, tracing out the second factor."""
    rho = _check_dims(rho, dims)
    sigma = _check_dims(sigma, dims)
    r_a = DensityMatrix(partial_trace(rho.entries, dims, [0]), tol=1e-10)
    s_a = partial_trace(sigma.entries, dims, [0])
    return relative_entropy(rho, sigma) - relative_entropy(r_a, s_a)


def dominance_constant(rho, sigma) -> float:
    """Largest ``mu`` with ``sigma >= mu rho`` (``sigma`` positive definite)."""
    s = _check_pd(_matrix(sigma), "sigma")
    r = _matrix(rho)
    inv_sqrt = _funm(s, lambda w: w ** -0.5)
    top = np.linalg.eigvalsh(inv_sqrt @ r @ inv_sqrt)[-1]
    return float(1.0 / top)


def dominance_bound_check(rho, sigma, mu: float) -> bool:
    """Whether ``S(rho, sigma) <= ln(1/mu) + 1e-9``, given ``sigma >= mu rho``."""
    if not 0.0 < mu <= 1.0:
        raise ValidationError(f"mu must lie in (0, 1], got {mu}")
    r, s = _matrix(rho), _matrix(sigma)
    if np.linalg.eigvalsh(_hermitian(s - mu * r, "sigma - mu rho"))[0] < -1e-12:
        raise ValidationError("sigma >= mu * rho does not hold")
    return relative_entropy(rho, sigma) <= -math.log(mu) + GAP_TOL


# ---------------------------------------------------------------------------
# Kosaki step paths
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StepPath:
    """Step function ``x_t``: ``values[i]`` on ``[knots[i], knots[i+1])``, zero beyond ``knots[-1]``.

    ``knots[0]`` must equal ``1/k`` and ``knots[-1]`` is the horizon ``m``.
    ``values`` holds scalars (multiples of the identity) or ``d x d`` matrices.
    """

    knots: np.ndarray
    values: np.ndarray
    k: float

    def __post_init__(self):
        t = np.asarray(self.knots, dtype=float)
        x = np.asarray(self.values)
        if t.ndim != 1 or len(t) < 2:
            raise InvalidPath("need at least two knots")
        if not np.all(np.diff(t) > 0):
            raise InvalidPath("knots must be strictly increasing")
        if not self.k > 0 or not math.isclose(t[0], 1.0 / self.k, rel_tol=1e-12):
            raise InvalidPath(f"first knot {t[0]} must equal 1/k = {1.0 / self.k}")
        if x.shape[0] != len(t) - 1 or x.ndim not in (1, 3):
            raise InvalidPath(f"expected {len(t) - 1} step values, got shape {x.shape}")
        if x.ndim == 3 and x.shape[1] != x.shape[2]:
            raise InvalidPath("matrix step values must be square")
        object.__setattr__(self, "knots", t)
        object.__setattr__(self, "values", x)

    @property
    def horizon(self) -> float:
        return float(self.knots[-1])


def _geometric_knots(k: float, m: float, per_decade: int) -> np.ndarray:
    if not (k > 0 and m > 1.0 / k):
        raise InvalidPath(f"need 0 < 1/k < m, got k={k}, m={m}")
    n = max(1, int(math.ceil(per_decade * math.log10(m * k))))
    t = np.geomspace(1.0 / k, m, n + 1)
    t[0], t[-1] = 1.0 / k, m
    return t


def scalar_path(lam: float, k: float, m: float | None = None, per_decade: int = 2000) -> StepPath:
    """Steps of ``x_t = lam / (lam + t)`` sampled at geometric midpoints of log-spaced knots.

    The default horizon ``m = 1e6 * max(k, 1)`` leaves a tail error of about
    ``lam^2 / (2 m^2)``.
    """
    if not lam > 0:
        raise InvalidPath(f"lam must be positive, got {lam}")
    m = 1e6 * max(k, 1.0) if m is None else m
    t = _geometric_knots(k, m, per_decade)
    mid = np.sqrt(t[:-1] * t[1:])
    return StepPath(t, lam / (lam + mid), k)


def optimal_path(rho, sigma, k: float, m: float | None = None, per_decade: int = 200) -> StepPath:
    """Matrix path minimising the integrand pointwise: ``t x rho + sigma x = sigma``.

    For ``sigma = lam * rho`` this is the scalar path ``lam / (lam + t)``.
    """
    r, s = _matrix(rho), _hermitian(_matrix(sigma), "sigma")
    m = 1e6 * max(k, 1.0) if m is None else m
    t = _geometric_knots(k, m, per_decade)
    mid = np.sqrt(t[:-1] * t[1:])
    d = r.shape[0]
    eye = np.eye(d)
    # column-major vec:  (I (x) sigma + t rho^T (x) I) vec(x) = vec(sigma)
    ops = np.kron(eye, s)[None] + mid[:, None, None] * np.kron(r.T, eye)[None]
    rhs = np.broadcast_to(s.reshape(-1, order="F"), (len(mid), d * d))
    vecs = np.linalg.solve(ops, rhs[..., None])[..., 0]
    xs = vecs.reshape(len(mid), d, d).transpose(0, 2, 1)
    return StepPath(t, xs, k)


def kosaki_lower_bound(rho, sigma, path: StepPath) -> float:
    """Kosaki's functional on a step path, integrated exactly segment by segment.

    ``sigma`` is any positive semidefinite matrix (a positive functional).
    """
    r = _matrix(rho)
    s = _hermitian(_matrix(sigma), "sigma")
    if r.shape != s.shape:
        raise DimensionMismatch("rho and sigma differ in size")
    t = path.knots
    log_w = np.log(t[1:] / t[:-1])
    inv_w = 1.0 / t[:-1] - 1.0 / t[1:]
    x = path.values
    if x.ndim == 1:
        a = x * x * _tr(r)
        b = (1.0 - x) ** 2 * _tr(s)
    else:
        if x.shape[1] != r.shape[0]:
            raise DimensionMismatch("path matrices do not match rho")
        y = np.eye(r.shape[0])[None] - x
        a = np.real(np.einsum("ij,nkj,nki->n", r, x.conj(), x))      # Tr(rho x* x)
        b = np.real(np.einsum("ij,njk,nik->n", s, y, y.conj()))      # Tr(sigma y y*)
    integral = float(np.sum(a * log_w) + np.sum(b * inv_w)) + _tr(s) / path.horizon
    return math.log(path.k) - integral


# ---------------------------------------------------------------------------
# Randomised audits
# ---------------------------------------------------------------------------

def random_pd(d: int, rng: np.random.Generator, eps: float = 1e-3) -> np.ndarray:
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return g @ g.conj().T + eps * np.eye(d)


def random_density(d: int, rng: np.random.Generator) -> DensityMatrix:
    m = random_pd(d, rng, eps=0.0)
    return DensityMatrix(m / _tr(m), tol=1e-10)


def random_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    q, r = np.linalg.qr(rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d)))
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_projection(d: int, rank: int, rng: np.random.Generator) -> np.ndarray:
    u = random_unitary(d, rng)[:, :rank]
    return u @ u.conj().T


def _trial_sherman_davis(rng):
    return sherman_davis_gap(random_pd(6, rng), random_projection(6, 3, rng))


def _trial_lieb(rng):
    pairs = ((random_pd(5, rng), random_pd(5, rng)), (random_pd(5, rng), random_pd(5, rng)))
    K = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
    return lieb_convexity_gap(pairs, K)


def _trial_lieb_concavity(rng):
    pairs = ((random_pd(5, rng), random_pd(5, rng)), (random_pd(5, rng), random_pd(5, rng)))
    K = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
    return lieb_concavity_gap(pairs, K, float(rng.uniform()))


def _trial_theorem_ab(rng):
    # P1 and p commute: both diagonal in one random basis, with ranks 4 and 4
    u = random_unitary(8, rng)
    d1 = np.zeros(8)
    d1[rng.choice(8, 4, replace=False)] = 1.0
    dp = np.zeros(8)
    dp[rng.choice(8, 4, replace=False)] = 1.0
    P1 = (u * d1) @ u.conj().T
    p = (u * dp) @ u.conj().T
    return theorem_ab_gap(random_pd(8, rng), P1, p)


def _trial_ssa(rng):
    return ssa_gap(random_density(8, rng), (2, 2, 2))


def _trial_monotonicity(rng):
    return monotonicity_gap(random_density(4, rng), random_density(4, rng), (2, 2))


def _trial_kosaki(rng):
    rho, sigma = random_density(2, rng), random_density(2, rng)
    exact = relative_entropy(rho, sigma)
    k = 10.0 ** rng.uniform(0, 3)
    bounds = [kosaki_lower_bound(rho, sigma, optimal_path(rho, sigma, k, per_decade=40))]
    for lam in (0.1, 0.5, 1.0, 2.0):
        bounds.append(kosaki_lower_bound(rho, sigma, scalar_path(lam, k, per_decade=40)))
    return exact - max(bounds)


def _trial_dominance(rng):
    rho, sigma = random_density(3, rng), random_density(3, rng)
    if rng.uniform() < 0.5:
        # mixture with the maximally mixed state: sigma >= rho / 2 by construction
        sigma = DensityMatrix(0.5 * (rho.entries + np.eye(3) / 3), tol=1e-10)
        mu = 0.5
    else:
        mu = min(1.0, dominance_constant(rho, sigma) * (1.0 - 1e-12))
    ok = dominance_bound_check(rho, sigma, mu)
    gap = -math.log(mu) - relative_entropy(rho, sigma)
    return gap if ok else min(gap, -1.0)


AUDITS: dict[str, Callable[[np.random.Generator], float]] = {
    "sherman_davis": _trial_sherman_davis,
    "lieb_convexity": _trial_lieb,
    "lieb_concavity": _trial_lieb_concavity,
    "theorem_ab": _trial_theorem_ab,
    "ssa": _trial_ssa,
    "monotonicity": _trial_monotonicity,
    "kosaki": _trial_kosaki,
    "dominance": _trial_dominance,
}


@dataclass(frozen=True)
class AuditResult:
    name: str
    trials: int
    min_gap: float
    argmin_seed: int

    @property
    def passed(self) -> bool:
        return self.min_gap >= -GAP_TOL


def run_audit(name: str, trials: int = 500, seed: int = 0, threads: int = 1) -> AuditResult:
    """Evaluate one inequality on ``trials`` random instances.

    Trial ``i`` uses ``numpy.random.default_rng(seed + i)``, so a failing
    instance is replayed from ``argmin_seed`` alone.  Results do not depend
    on ``threads``.
    """
    if name not in AUDITS:
        raise ValidationError(f"unknown audit {name!r}; choose from {sorted(AUDITS)}")
    if int(trials) < 1:
        raise ValidationError("trials must be >= 1")
    trial = AUDITS[name]
    seeds = [int(seed) + i for i in range(int(trials))]

    def one(s):
        return trial(np.random.default_rng(s))

    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            gaps = list(pool.map(one, seeds))
    else:
        gaps = [one(s) for s in seeds]
    i = int(np.argmin(gaps))
    return AuditResult(name, len(seeds), float(gaps[i]), seeds[i])
