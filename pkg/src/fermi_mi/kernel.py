"""Singular-integral kernels of the Hardy projection and their traces.

For a region ``I`` on the line with endpoints ``a_i < b_i``,

    Z_I(x) = log( -prod(x - a_i) / prod(x - b_i) )

enters the resolvent of the Hardy-projection kernel restricted to ``I``.
Splitting ``I`` into a sub-collection ``I1`` and the rest ``I2``, the
difference ``Z_I - Z_I1 = sum_{I2} ln((x - a_i) / (x - b_i))`` is smooth on
the closure of ``I1``, which is what makes the kernel ``K`` below
continuous and its trace over ``I1`` finite:

    int_{I1} K(x, x) dx = (1/12) sum_{i in I2, j in I1}
        ln[ (a_j - a_i)(b_j - b_i) / ((b_j - a_i)(a_j - b_i)) ].

The spectral variable ``t`` runs over ``(1/2, inf)``; every ``t``-integral
is evaluated after the substitution ``u = ln((t - 1/2)/(t + 1/2))``, which
maps it onto ``(-inf, 0)`` with an exponentially decaying integrand.
"""

from __future__ import annotations

import hashlib
import json
import math
import warnings
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy import integrate

from .cft import EntropyReport, Method, check_fermion_count
from .errors import DomainError, QuadratureFailure, ValidationError
from .geometry import Geometry, MultiInterval

__all__ = [
    "QuadratureConfig",
    "QuadResult",
    "KernelConfig",
    "z_function",
    "z_prime",
    "z_difference",
    "z_difference_prime",
    "resolvent_kernel_regular_part",
    "g_kernel",
    "lipschitz_constant",
    "kernel_value",
    "k0_diagonal",
    "k0_trace",
    "k0_trace_closed_form",
    "kernel_trace",
    "t_profile_integral",
    "dilog_integral",
    "regularized_spectrum_bounds",
    "mutual_information_kernel",
]


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances and limits for every adaptive quadrature in this module.

    ``t_truncation`` cuts the spectral integral at ``t = T`` (``inf`` means
    no cut); it exists to study the ``O(1/T)`` tail.
    """

    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    max_subdivisions: int = 200
    t_truncation: float = math.inf

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ValidationError("quadrature tolerances must be positive")
        if int(self.max_subdivisions) < 1:
            raise ValidationError("max_subdivisions must be >= 1")
        if not self.t_truncation > 0.5:
            raise ValidationError("t_truncation must exceed 1/2")


@dataclass(frozen=True)
class QuadResult:
    value: float
    abserr: float
    subdivisions: int


def _integrate(f: Callable[[float], float], lo: float, hi: float, abs_tol: float,
               quad: QuadratureConfig, what: str) -> QuadResult:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        out = integrate.quad(f, lo, hi, epsabs=abs_tol, epsrel=quad.rel_tol,
                             limit=int(quad.max_subdivisions), full_output=1)
    value, abserr, info = out[0], out[1], out[2]
    ier = 0 if len(out) == 3 else 1
    if not math.isfinite(value) or (ier and abserr > max(abs_tol, quad.rel_tol * abs(value))):
        raise QuadratureFailure(
            f"{what}: tolerance {abs_tol:.1e} not met within {quad.max_subdivisions} "
            f"subdivisions (estimate {abserr:.2e})")
    return QuadResult(float(value), float(abserr), int(info["last"]))


def _log_ratio(t: float) -> float:
    """``ln((t - 1/2) / (t + 1/2))`` without cancellation at either end."""
    if t > 1.0:
        return math.log1p(-1.0 / (t + 0.5))
    return math.log(t - 0.5) - math.log(t + 0.5)


def _t_of_u(u: float) -> float:
    return 0.5 * (1.0 + math.exp(u)) / -math.expm1(u)


def _window(abs_tol: float, scale: float = 1.0) -> float:
    """Smallest ``U`` with ``scale * (U + 1) exp(-U) <= abs_tol / 10``: the
    neglected part of an ``|u| exp(u)`` tail below ``u = -U``."""
    U = 1.0
    while scale * (U + 1.0) * math.exp(-U) > abs_tol / 10.0:
        U += 0.25
    return U


def _u_upper(quad: QuadratureConfig) -> float:
    return 0.0 if math.isinf(quad.t_truncation) else _log_ratio(quad.t_truncation)


# ---------------------------------------------------------------------------
# Z-functions
# ---------------------------------------------------------------------------

def _check_line(I: MultiInterval) -> None:
    if I.geometry is not Geometry.LINE:
        raise DomainError("kernel functions are defined on the line")


def _check_interior(x: float, I: MultiInterval, name: str = "I") -> None:
    if not I.contains(x):
        raise DomainError(f"x={x} is not interior to {name}={I.to_pairs()}")


def z_function(x: float, I: MultiInterval) -> float:
    _check_line(I)
    _check_interior(x, I)
    return (sum(math.log(abs(x - a)) for a in I.starts)
            - sum(math.log(abs(x - b)) for b in I.ends))


def z_prime(x: float, I: MultiInterval) -> float:
    _check_line(I)
    _check_interior(x, I)
    return sum(1.0 / (x - a) for a in I.starts) - sum(1.0 / (x - b) for b in I.ends)


def _log_abs_ratio(x: float, y: float, c: float) -> float:
    """``ln|x - c| - ln|y - c|`` accurate when ``x`` is close to ``y``."""
    rho = (x - y) / (y - c)
    return math.log1p(rho) if rho > -1.0 else math.log(abs(1.0 + rho))


def _dz(x: float, y: float, starts, ends) -> float:
    return (sum(_log_abs_ratio(x, y, a) for a in starts)
            - sum(_log_abs_ratio(x, y, b) for b in ends))


def z_difference(x: float, cfg: "KernelConfig") -> float:
    """``Z_I(x) - Z_I1(x)``, smooth on the closure of ``I1``."""
    I2 = cfg.I2
    return sum(math.log(abs(x - a)) - math.log(abs(x - b)) for a, b in zip(I2.starts, I2.ends))


def z_difference_prime(x: float, cfg: "KernelConfig") -> float:
    I2 = cfg.I2
    return sum(1.0 / (x - a) - 1.0 / (x - b) for a, b in zip(I2.starts, I2.ends))


def resolvent_kernel_regular_part(beta: float, x: float, y: float, I: MultiInterval) -> complex:
    """Non-delta part of the resolvent kernel of ``C - 1/2 + beta`` on ``I``::

        (beta^2 - 1/4)^-1 (i / 2 pi) exp(-(i / 2 pi) ln((beta-1/2)/(beta+1/2)) (Z(x) - Z(y))) / (x - y)
    """
    _check_line(I)
    if not abs(beta) > 0.5:
        raise DomainError(f"|beta| must exceed 1/2, got {beta}")
    if x == y:
        raise DomainError("the regular part is singular on the diagonal")
    _check_interior(x, I)
    _check_interior(y, I)
    phase = math.log((beta - 0.5) / (beta + 0.5))
    dz = _dz(x, y, I.starts, I.ends)
    return (1j / (2.0 * math.pi)) * np.exp(-1j / (2.0 * math.pi) * phase * dz) / (
        (beta * beta - 0.25) * (x - y))


# ---------------------------------------------------------------------------
# Kernel configuration and the G / K kernels
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KernelConfig:
    """Region ``I``, the sub-collection ``I1`` of its components, the
    regularisation ``eps0`` and the quadrature settings."""

    I: MultiInterval
    I1: MultiInterval
    eps0: float = 0.0
    quad: QuadratureConfig = field(default_factory=QuadratureConfig)

    def __post_init__(self):
        _check_line(self.I)
        _check_line(self.I1)
        if not self.eps0 >= 0:
            raise ValidationError(f"eps0 must be >= 0, got {self.eps0}")
        missing = [p.as_pair() for p in self.I1.parts if p not in self.I.parts]
        if missing:
            raise ValidationError(f"components {missing} of I1 are not components of I")

    @property
    def I2(self) -> MultiInterval:
        return MultiInterval(tuple(p for p in self.I.parts if p not in self.I1.parts))

    def digest(self) -> str:
        payload = {
            "I": self.I.to_pairs(), "I1": self.I1.to_pairs(), "eps0": self.eps0,
            "quad": [self.quad.abs_tol, self.quad.rel_tol, self.quad.max_subdivisions,
                     repr(self.quad.t_truncation)],
        }
        return hashlib.sha256(json.dumps(payload, sort_keys=True).encode()).hexdigest()[:12]


def _g_from_log(lam: float, x: float, y: float, cfg: KernelConfig) -> float:
    k = lam / (2.0 * math.pi)
    if x == y:
        return k * z_difference_prime(x, cfg)
    I1, I2 = cfg.I1, cfg.I2
    d_sub = _dz(x, y, I1.starts, I1.ends)
    d_rest = _dz(x, y, I2.starts, I2.ends)
    # sin(k dZ_I) - sin(k dZ_I1) written as a product: the difference of the
    # two arguments, k * d_rest, is the smooth part and carries no cancellation
    return 2.0 * math.cos(k * (d_sub + 0.5 * d_rest)) * math.sin(0.5 * k * d_rest) / (x - y)


def g_kernel(t: float, x: float, y: float, cfg: KernelConfig) -> float:
    """Continuous kernel ``G(t, x, y)`` on ``(1/2, inf) x I1 x I1``.

    Off the diagonal it is the difference of ``sin(ln((t-1/2)/(t+1/2)) dZ / 2 pi)``
    for ``Z_I`` and ``Z_I1``, divided by ``x - y``; on the diagonal it is
    ``ln((t-1/2)/(t+1/2)) (Z_I'(x) - Z_I1'(x)) / 2 pi``.
    """
    if not t > 0.5:
        raise DomainError(f"t must exceed 1/2, got {t}")
    _check_interior(x, cfg.I1, "I1")
    _check_interior(y, cfg.I1, "I1")
    return _g_from_log(_log_ratio(t), x, y, cfg)


def lipschitz_constant(cfg: KernelConfig) -> float:
    """``max |Z_{I,I1}(x) - Z_{I,I1}(y)| / |x - y|`` over the closure of ``I1``.

    ``|Z_{I,I1}'|`` is a sum of positive convex terms on each component, so
    the maximum sits at a component endpoint.
    """
    if not cfg.I2.parts:
        return 0.0
    ends = cfg.I1.starts + cfg.I1.ends
    return max(abs(z_difference_prime(x, cfg)) for x in ends)


def _kernel_quad(x: float, y: float, cfg: KernelConfig, eps0: float,
                 abs_tol: float | None = None) -> QuadResult:
    quad = cfg.quad
    abs_tol = quad.abs_tol if abs_tol is None else abs_tol
    if not cfg.I2.parts:
        return QuadResult(0.0, 0.0, 0)
    scale = 1.0 + 2.0 * eps0
    upper = _u_upper(quad)
    if eps0 > 0:
        lower = math.log(eps0 / (1.0 + eps0))
    else:
        lower = -_window(abs_tol, lipschitz_constant(cfg) / (2.0 * math.pi ** 2))
    if lower >= upper:
        return QuadResult(0.0, 0.0, 0)

    def integrand(u: float) -> float:
        # (t/(1+2 eps0) - 1/2)/(t^2 - 1/4) dt  ==  (t(u)/(1+2 eps0) - 1/2) du
        weight = _t_of_u(u) / scale - 0.5
        return weight * _g_from_log(u, x, y, cfg)

    res = _integrate(integrand, lower, upper, abs_tol, quad, "kernel t-integral")
    # positive prefactor 1/pi: with Z as defined above, this is the sign for
    # which the trace equals the (non-negative) closed form
    return QuadResult(res.value / math.pi, res.abserr / math.pi, res.subdivisions)


def kernel_value(x: float, y: float, cfg: KernelConfig) -> float:
    """``K^{eps0}(x, y)`` with ``eps0 = cfg.eps0``."""
    _check_interior(x, cfg.I1, "I1")
    _check_interior(y, cfg.I1, "I1")
    return _kernel_quad(x, y, cfg, cfg.eps0).value


def k0_diagonal(x: float, cfg: KernelConfig) -> float:
    """Unregularised kernel on the diagonal, ``K^0(x, x)``, by quadrature in ``t``."""
    _check_interior(x, cfg.I1, "I1")
    return _kernel_quad(x, x, cfg, 0.0).value


def _trace(cfg: KernelConfig, eps0: float) -> QuadResult:
    comps = cfg.I1.parts
    if not comps or not cfg.I2.parts:
        return QuadResult(0.0, 0.0, 0)
    total_len = sum(p.length for p in comps)
    outer_tol = 0.5 * cfg.quad.abs_tol / len(comps)
    inner_tol = 0.1 * cfg.quad.abs_tol / total_len
    value = err = 0.0
    subdivisions = 0
    for p in comps:
        # Z_{I,I1} is smooth on the closed component: integrate straight
        # through, no endpoint treatment needed
        res = _integrate(lambda x: _kernel_quad(x, x, cfg, eps0, inner_tol).value,
                         p.a, p.b, outer_tol, cfg.quad, "kernel trace")
        value += res.value
        err += res.abserr
        subdivisions += res.subdivisions
    return QuadResult(value, err, subdivisions)


def k0_trace_closed_form(cfg: KernelConfig) -> float:
    total = 0.0
    for ai, bi in zip(cfg.I2.starts, cfg.I2.ends):
        for aj, bj in zip(cfg.I1.starts, cfg.I1.ends):
            total += math.log(((aj - ai) * (bj - bi)) / ((bj - ai) * (aj - bi)))
    return total / 12.0


def k0_trace(cfg: KernelConfig) -> tuple[float, float]:
    """``(numeric, closed_form)`` for ``int_{I1} K^0(x, x) dx``."""
    if not cfg.I2.parts:
        raise ValidationError("k0_trace needs I1 to be a proper sub-collection of I")
    return _trace(cfg, 0.0).value, k0_trace_closed_form(cfg)


def k0_trace_detail(cfg: KernelConfig) -> tuple[QuadResult, float]:
    if not cfg.I2.parts:
        raise ValidationError("k0_trace needs I1 to be a proper sub-collection of I")
    return _trace(cfg, 0.0), k0_trace_closed_form(cfg)


def kernel_trace(cfg: KernelConfig) -> float:
    """``int_{I1} K^{eps0}(x, x) dx`` at ``eps0 = cfg.eps0``."""
    return _trace(cfg, cfg.eps0).value


# ---------------------------------------------------------------------------
# Scalar integrals behind the 1/12
# ---------------------------------------------------------------------------

def _profile_t(t: float) -> float:
    return _log_ratio(t) / (t + 0.5)


def t_profile_integral_detail(quad: QuadratureConfig | None = None) -> QuadResult:
    quad = quad or QuadratureConfig()
    T = quad.t_truncation
    # [1/2, 1]: integrable log singularity at t = 1/2
    near = _integrate(_profile_t, 0.5, min(1.0, T), 0.5 * quad.abs_tol * math.pi ** 2, quad,
                      "t-profile near 1/2")
    value, err, sub = near.value, near.abserr, near.subdivisions
    if T > 1.0:
        # [1, T] with s = 1/t; the integrand stays bounded as s -> 0
        s_lo = 0.0 if math.isinf(T) else 1.0 / T
        far = _integrate(lambda s: _profile_t(1.0 / s) / (s * s) if s > 0 else -1.0,
                         s_lo, 1.0, 0.5 * quad.abs_tol * math.pi ** 2, quad, "t-profile tail")
        value, err, sub = value + far.value, err + far.abserr, sub + far.subdivisions
    c = -1.0 / (2.0 * math.pi ** 2)
    return QuadResult(c * value, abs(c) * err, sub)


def t_profile_integral(quad: QuadratureConfig | None = None) -> float:
    """``-(1/2 pi^2) int_{1/2}^{T} ln((t-1/2)/(t+1/2)) / (t+1/2) dt``, which is
    ``1/12`` for ``T = inf``.  Computed directly in ``t``."""
    return t_profile_integral_detail(quad).value


def _dilog_integrand(u: float) -> float:
    # u e^u / (1 - e^u), finite (-> -1) at u = 0
    return u / math.expm1(-u) if u != 0.0 else -1.0


def dilog_integral_detail(quad: QuadratureConfig | None = None) -> QuadResult:
    quad = quad or QuadratureConfig()
    U = _window(quad.abs_tol)
    return _integrate(_dilog_integrand, -U, _u_upper(quad), 0.5 * quad.abs_tol, quad,
                      "dilogarithm integral")


def dilog_integral(quad: QuadratureConfig | None = None) -> float:
    """``int_{-inf}^0 u e^u / (1 - e^u) du = -pi^2 / 6``."""
    return dilog_integral_detail(quad).value


def regularized_spectrum_bounds(eps0: float) -> tuple[float, float]:
    """Spectral bounds of ``E = (C + eps0) / (1 + 2 eps0)`` for any ``0 <= C <= 1``."""
    if not eps0 > 0:
        raise DomainError(f"eps0 must be positive, got {eps0}")
    return eps0 / (1.0 + 2.0 * eps0), (1.0 + eps0) / (1.0 + 2.0 * eps0)


def mutual_information_kernel(A: MultiInterval, B: MultiInterval, r: int = 1,
                              quad: QuadratureConfig | None = None) -> EntropyReport:
    """Mutual information as the sum of the two kernel traces (``I1 = A`` and ``I1 = B``)."""
    r = check_fermion_count(r)
    quad = quad or QuadratureConfig()
    I = A.union(B)
    if len(I) != len(A) + len(B):
        raise ValidationError("A and B must have disjoint closures")
    numeric = closed = err = 0.0
    subdivisions = 0
    for I1 in (A, B):
        res, cf = k0_trace_detail(KernelConfig(I, I1, 0.0, quad))
        numeric += res.value
        closed += cf
        err += res.abserr
        subdivisions += res.subdivisions
    return EntropyReport(
        r * numeric, Method.KERNEL_TRACE,
        {"A": A.to_pairs(), "B": B.to_pairs(), "r": r},
        {"closed_form": r * closed, "abserr": r * err, "subdivisions": subdivisions},
    )
