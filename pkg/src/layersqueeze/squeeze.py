"""Three-scale squeezing of the double layer and its limit point interactions.

A squeeze is fixed by exponents (mu, nu, tau), the width ratio eta, the
intensities (a1, a2) and the gap coefficient; for 0 < eps <= 1

    l1 = eps,          h1 = a1 eps^-mu,
    l2 = eta eps^(1 - mu + nu),  h2 = a2 eps^-nu,
    r  = c eps^tau     (c0 eps^tau on the face tau = 2(mu - 1)).

As eps -> 0 the transfer matrix tends either to a point interaction
[[theta, 0], [alpha, 1/theta]] or diverges (separated, Dirichlet limit).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from . import resonance
from .errors import DomainError, ExcludedValueError, PoleError, RegionError
from .resonance import POLE_MARGIN
from .numerics import cos_kernel, sinc_kernel
from .regions import (
    EQ_TOL,
    FIRST_TYPE,
    OPAQUE,
    SECOND_TYPE,
    THIRD_TYPE,
    Region,
    classify_region,
)
from .scattering import DoubleLayerPotential, TransferMatrix, double_layer_closed_form

__all__ = [
    "SqueezeSpec",
    "InteractionKind",
    "PointInteraction",
    "ConvergenceReport",
    "classify_region",
    "realize_potential",
    "a_arguments",
    "finite_eps_residual",
    "limit_interaction",
    "kurasov_theta",
    "kurasov_intensities",
    "delta_prime_strength",
    "delta_limit",
    "epsilon_sweep",
    "fit_order",
]

# gate for declaring a sweep divergent (separated limit)
DIVERGENCE_LEVEL = 1e3


@dataclass(frozen=True)
class SqueezeSpec:
    mu: float
    nu: float
    tau: float
    eta: float = 1.0
    a1: float = 0.0
    a2: float = 0.0
    c: float = 0.0
    c0: float = 0.0

    def __post_init__(self):
        vals = (self.mu, self.nu, self.tau, self.eta, self.a1, self.a2, self.c, self.c0)
        if not all(math.isfinite(v) for v in vals):
            raise DomainError(f"non-finite squeeze parameters: {vals}")
        # mu = 1 is the plain delta-profile regime, kept for the delta limit
        if self.mu < 1.0:
            raise DomainError(f"need mu >= 1, got {self.mu}")
        if not (self.nu > 0 and self.tau > 0 and self.eta > 0):
            raise DomainError(
                f"need nu, tau, eta > 0; got nu={self.nu}, tau={self.tau}, eta={self.eta}"
            )
        if not 1.0 - self.mu + self.nu > 0:
            raise DomainError(f"need 1 - mu + nu > 0 so that l2 -> 0, got {1 - self.mu + self.nu}")
        if self.c < 0 or self.c0 < 0:
            raise DomainError(f"gap coefficients must be >= 0: c={self.c}, c0={self.c0}")

    @property
    def on_second_face(self) -> bool:
        return self.mu > 1.0 and abs(self.tau - 2.0 * (self.mu - 1.0)) <= EQ_TOL

    @property
    def gap_coefficient(self) -> float:
        """Prefactor of eps^tau in r: c0 on tau = 2(mu-1), c elsewhere."""
        return self.c0 if self.on_second_face else self.c

    def region(self) -> Region:
        if self.mu == 1.0:
            raise DomainError("mu = 1 is the delta regime; it has no region tag")
        return classify_region(self.mu, self.nu, self.tau)


def _check_eps(eps: float) -> None:
    if not (math.isfinite(eps) and 0 < eps <= 1):
        raise DomainError(f"eps must lie in (0, 1], got {eps}")


def realize_potential(spec: SqueezeSpec, eps: float) -> DoubleLayerPotential:
    _check_eps(eps)
    return DoubleLayerPotential(
        h1=spec.a1 * eps ** (-spec.mu),
        l1=eps,
        r=spec.gap_coefficient * eps**spec.tau,
        h2=spec.a2 * eps ** (-spec.nu),
        l2=spec.eta * eps ** (1.0 - spec.mu + spec.nu),
    )


def a_arguments(spec: SqueezeSpec, eps: float) -> tuple[float, float]:
    """Squared phases (A1^2, A2^2) of the two layers at E = 0.

    Negative values mean imaginary A (barrier layers).
    """
    _check_eps(eps)
    A1sq = -spec.a1 * eps ** (2.0 - spec.mu)
    A2sq = -(spec.eta**2) * spec.a2 * eps ** (2.0 * (1.0 - spec.mu) + spec.nu)
    return A1sq, A2sq


def finite_eps_residual(spec: SqueezeSpec, eps: float, E: float = 0.0) -> float:
    """Finite-eps resonance residual, scaled by eps^(1-mu).

    tan(kr)/k - sum_j (l_j / A_j) cot A_j, each term written through the
    entire kernels as S/C and C/(z S); the scaling makes the value tend to
    the limit residual c - R1 - R2 of the base set as eps -> 0.
    """
    pot = realize_potential(spec, eps)
    z1, z2 = E - pot.h1, E - pot.h2
    cr = cos_kernel(E, pot.r)
    if abs(cr) <= POLE_MARGIN:
        raise PoleError("tan(kr) has a pole at this eps", factor="tan(kr)")
    gap = sinc_kernel(E, pot.r) / cr
    terms = []
    for name, z, l in (("cot A1", z1, pot.l1), ("cot A2", z2, pot.l2)):
        S = sinc_kernel(z, l)
        # sin(A) = sqrt(z) S vanishing marks the pole of cot A
        if abs(S) * math.sqrt(abs(z)) <= POLE_MARGIN or not math.isfinite(S):
            raise PoleError(f"{name} has a pole at eps = {eps}", factor=name)
        terms.append(cos_kernel(z, l) / (z * S))
    return eps ** (1.0 - spec.mu) * (gap - terms[0] - terms[1])


# --------------------------------------------------------------------------
# point interactions
# --------------------------------------------------------------------------


class InteractionKind(enum.Enum):
    DELTA = "Delta"
    DELTA_PRIME_DIAGONAL = "DeltaPrimeDiagonal"
    DELTA_DELTA_PRIME = "DeltaDeltaPrime"
    REFLECTIONLESS = "Reflectionless"
    DIRICHLET = "Dirichlet"

    def __str__(self):
        return self.value


def _fmt(x: float) -> str:
    # + 0.0 folds a signed zero into 0
    return f"{x + 0.0:.12g}"


@dataclass(frozen=True)
class PointInteraction:
    """Limit point interaction with matrix [[theta, 0], [alpha, 1/theta]]."""

    kind: InteractionKind
    theta: float = 1.0
    alpha: float = 0.0

    def __post_init__(self):
        k = self.kind
        if k is InteractionKind.DIRICHLET:
            return
        if not (math.isfinite(self.theta) and self.theta != 0):
            raise DomainError(f"theta must be finite and non-zero, got {self.theta}")
        if not math.isfinite(self.alpha):
            raise DomainError(f"alpha must be finite, got {self.alpha}")
        if k is InteractionKind.DELTA and self.theta != 1.0:
            raise DomainError("a delta interaction has theta = 1")
        if k is InteractionKind.REFLECTIONLESS and (abs(self.theta) != 1.0 or self.alpha != 0):
            raise DomainError("a reflectionless interaction has theta = +-1, alpha = 0")
        if k is InteractionKind.DELTA_PRIME_DIAGONAL and self.alpha != 0:
            raise DomainError("a diagonal delta' interaction has alpha = 0")

    @classmethod
    def dirichlet(cls) -> "PointInteraction":
        return cls(InteractionKind.DIRICHLET, math.nan, math.nan)

    @property
    def is_dirichlet(self) -> bool:
        return self.kind is InteractionKind.DIRICHLET

    def matrix(self) -> TransferMatrix:
        if self.is_dirichlet:
            raise DomainError("the separated (Dirichlet) limit has no transfer matrix")
        return TransferMatrix(self.theta, 0.0, self.alpha, 1.0 / self.theta)

    @property
    def label(self) -> str:
        k = self.kind
        if k is InteractionKind.DIRICHLET:
            return "Dirichlet"
        if k is InteractionKind.DELTA:
            return f"Delta({_fmt(self.alpha)})"
        if k is InteractionKind.DELTA_PRIME_DIAGONAL:
            return f"DeltaPrimeDiagonal({_fmt(self.theta)})"
        if k is InteractionKind.REFLECTIONLESS:
            return f"Reflectionless({int(self.theta):+d})"
        return f"DeltaDeltaPrime({_fmt(self.theta)}, {_fmt(self.alpha)})"

    def __str__(self):
        return self.label


def kurasov_theta(gamma: float) -> float:
    """theta = (2 + gamma) / (2 - gamma) of the diagonal delta' interaction."""
    if abs(gamma) == 2.0:
        raise ExcludedValueError(f"gamma = {gamma} is excluded (gamma must differ from +-2)")
    return (2.0 + gamma) / (2.0 - gamma)


def kurasov_intensities(gamma: float, c: float, eta: float) -> tuple[float, float]:
    """Resonant (a1, a2) on the open set realizing strength ``gamma``."""
    if abs(gamma) == 2.0:
        raise ExcludedValueError(f"gamma = {gamma} is excluded (gamma must differ from +-2)")
    if not c > 0:
        raise DomainError(f"need c > 0, got {c}")
    if not eta > 0:
        raise DomainError(f"need eta > 0, got {eta}")
    a1 = 2.0 * gamma / (c * (2.0 - gamma))
    a2 = -2.0 * gamma / (eta * c * (2.0 + gamma))
    return a1, a2


def delta_prime_strength(region: Region, a1: float, eta: float) -> float:
    """Strength gamma of the distributional gamma delta' when a1 + eta a2 = 0."""
    factor = {Region.B0: 1.0 + eta, Region.B1: eta, Region.B2: 1.0}.get(region)
    if factor is None:
        raise DomainError(f"delta' strength is defined on B0, B1, B2, got {region}")
    return 0.5 * a1 * factor


def delta_limit(alpha1: float, alpha2: float) -> TransferMatrix:
    if not (math.isfinite(alpha1) and math.isfinite(alpha2)):
        raise DomainError("delta strengths must be finite")
    return TransferMatrix(1.0, 0.0, alpha1 + alpha2, 1.0)


def _diagonal(base, spec, c, tol):
    """theta on the resonance row of ``base`` or None when off resonance."""
    if not resonance.on_resonance(base, spec.a1, spec.a2, spec.eta, c, tol):
        return None
    try:
        theta = resonance.theta_limit(base, spec.a1, spec.a2, spec.eta, c)
    except PoleError:
        return None
    if theta == 0 or not math.isfinite(theta):
        return None
    return theta


def limit_interaction(spec: SqueezeSpec, tol: float = resonance.RESIDUAL_TOL) -> PointInteraction:
    """Limit point interaction of the squeeze as eps -> 0."""
    if spec.mu == 1.0:
        # both layers shrink to delta profiles of strengths a1 and eta a2
        return PointInteraction(InteractionKind.DELTA, 1.0, spec.a1 + spec.eta * spec.a2)
    region = spec.region()
    if region is Region.OUTSIDE:
        raise RegionError(
            f"(mu, nu, tau) = ({spec.mu}, {spec.nu}, {spec.tau}) lies outside the classified domain"
        )
    if region in OPAQUE:
        return PointInteraction.dirichlet()
    if region in FIRST_TYPE:
        theta = _diagonal(FIRST_TYPE[region], spec, spec.c, tol)
        if theta is None:
            return PointInteraction.dirichlet()
        return PointInteraction(InteractionKind.DELTA_PRIME_DIAGONAL, theta, 0.0)
    if region in SECOND_TYPE:
        base = SECOND_TYPE[region]
        theta = _diagonal(base, spec, 0.0, tol)
        if theta is None:
            return PointInteraction.dirichlet()
        alpha = resonance.alpha_limit(base, spec.a1, spec.a2, spec.eta, spec.c0)
        return PointInteraction(InteractionKind.DELTA_DELTA_PRIME, theta, alpha)
    if region in THIRD_TYPE:
        base = THIRD_TYPE[region]
        theta = _diagonal(base, spec, 0.0, tol)
        if theta is None:
            return PointInteraction.dirichlet()
        if base is Region.OMEGA:
            return PointInteraction(InteractionKind.REFLECTIONLESS, 1.0, 0.0)
        return PointInteraction(InteractionKind.DELTA_PRIME_DIAGONAL, theta, 0.0)
    raise RegionError(f"no limit interaction is defined for region {region}")


# --------------------------------------------------------------------------
# eps sweeps
# --------------------------------------------------------------------------


@dataclass
class ConvergenceReport:
    eps_values: list
    matrices: list
    target: PointInteraction
    errors_per_eps: list
    fitted_order: float
    region: Region | None = None
    diverged: bool = False
    overflow_eps: list = field(default_factory=list)


def fit_order(eps_values, errors) -> float:
    """Least-squares slope of log(error) against log(eps).

    Points with zero or non-finite error are ignored; nan if fewer than two
    remain.
    """
    x, y = [], []
    for e, err in zip(eps_values, errors):
        if err > 0 and math.isfinite(err):
            x.append(math.log(e))
            y.append(math.log(err))
    if len(x) < 2:
        return math.nan
    slope, _ = np.polyfit(x, y, 1)
    return float(slope)


def limit_error(m: TransferMatrix, target: PointInteraction) -> float:
    """Distance of ``m`` to the limit; |lam21| for the separated limit."""
    if target.is_dirichlet:
        return abs(m.lam21)
    scale = max(1.0, abs(target.theta), abs(target.alpha))
    return m.max_abs_diff(target.matrix()) / scale


def epsilon_sweep(
    spec: SqueezeSpec, E: float, eps_list, tol: float = resonance.RESIDUAL_TOL
) -> ConvergenceReport:
    eps_list = [float(e) for e in eps_list]
    if not eps_list:
        raise DomainError("eps_list is empty")
    for e in eps_list:
        _check_eps(e)
    if any(b >= a for a, b in zip(eps_list, eps_list[1:])):
        raise DomainError("eps_list must be strictly decreasing")
    target = limit_interaction(spec, tol)
    region = None if spec.mu == 1.0 else spec.region()

    eps_out, mats, errs, overflow = [], [], [], []
    for e in eps_list:
        m = double_layer_closed_form(realize_potential(spec, e), E)
        err = limit_error(m, target)
        if not (math.isfinite(err) and all(math.isfinite(x) for x in m.entries())):
            overflow.append(e)
            continue
        eps_out.append(e)
        mats.append(m)
        errs.append(err)

    diverged = bool(overflow) and target.is_dirichlet
    if target.is_dirichlet and len(mats) >= 3:
        l21 = [abs(m.lam21) for m in mats[-3:]]
        if l21[-1] > DIVERGENCE_LEVEL and l21[0] < l21[1] < l21[2]:
            diverged = True
    return ConvergenceReport(
        eps_values=eps_out,
        matrices=mats,
        target=target,
        errors_per_eps=errs,
        fitted_order=fit_order(eps_out, errs),
        region=region,
        diverged=diverged,
        overflow_eps=overflow,
    )
