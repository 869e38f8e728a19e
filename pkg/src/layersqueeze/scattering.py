"""Transfer matrices of the finite-range double-layer potential.

Three independent constructions are provided:

* ``double_layer_closed_form`` -- the explicit four-entry expansion,
  written with the entire kernels so that no entry divides by a wavenumber;
* ``double_layer_product`` -- composition ``slab(h2) @ free(r) @ slab(h1)``;
* ``ode_matrix`` -- fixed-step RK4 integration of ``-psi'' + V psi = E psi``.

The matrix maps ``(psi, psi')`` at ``x = 0`` to ``(psi, psi')`` at
``x = l1 + r + l2``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, StepSizeError
from .numerics import cos_kernel, sinc_kernel


@dataclass(frozen=True)
class DoubleLayerPotential:
    """Two rectangular layers (h1 over [0, l1], h2 over [l1+r, l1+r+l2])."""

    h1: float
    l1: float
    r: float
    h2: float
    l2: float

    def __post_init__(self):
        vals = (self.h1, self.l1, self.r, self.h2, self.l2)
        if not all(math.isfinite(v) for v in vals):
            raise DomainError(f"non-finite potential parameters: {vals}")
        if self.l1 <= 0 or self.l2 <= 0:
            raise DomainError(f"layer widths must be positive: l1={self.l1}, l2={self.l2}")
        if self.r < 0:
            raise DomainError(f"gap must be non-negative: r={self.r}")

    @property
    def length(self) -> float:
        return self.l1 + self.r + self.l2


@dataclass(frozen=True)
class TransferMatrix:
    lam11: complex
    lam12: complex
    lam21: complex
    lam22: complex

    @classmethod
    def from_array(cls, a) -> "TransferMatrix":
        return cls(a[0][0], a[0][1], a[1][0], a[1][1])

    @classmethod
    def identity(cls) -> "TransferMatrix":
        return cls(1.0, 0.0, 0.0, 1.0)

    def entries(self) -> tuple:
        return (self.lam11, self.lam12, self.lam21, self.lam22)

    def as_array(self) -> np.ndarray:
        return np.array([[self.lam11, self.lam12], [self.lam21, self.lam22]])

    def __matmul__(self, other: "TransferMatrix") -> "TransferMatrix":
        a, b = self, other
        return TransferMatrix(
            a.lam11 * b.lam11 + a.lam12 * b.lam21,
            a.lam11 * b.lam12 + a.lam12 * b.lam22,
            a.lam21 * b.lam11 + a.lam22 * b.lam21,
            a.lam21 * b.lam12 + a.lam22 * b.lam22,
        )

    def det(self):
        return self.lam11 * self.lam22 - self.lam12 * self.lam21

    def det_scale(self) -> float:
        """Magnitude of the two products forming the determinant (>= 1).

        Rounding in ``det`` is proportional to this, so Wronskian checks are
        stated relative to it.
        """
        return max(1.0, abs(self.lam11 * self.lam22) + abs(self.lam12 * self.lam21))

    def det_error(self) -> float:
        """``|det - 1|`` divided by ``det_scale``."""
        return abs(self.det() - 1.0) / self.det_scale()

    def scale(self) -> float:
        return max(1.0, *(abs(x) for x in self.entries()))

    def max_abs_diff(self, other: "TransferMatrix") -> float:
        return max(abs(x - y) for x, y in zip(self.entries(), other.entries()))

    def rel_diff(self, other: "TransferMatrix") -> float:
        """Entrywise max difference relative to the larger matrix scale."""
        return self.max_abs_diff(other) / max(self.scale(), other.scale())


@dataclass(frozen=True)
class ScatteringResult:
    t: complex
    rr: complex
    T: float
    R: float


def wavenumber_squared(E: float, h: float) -> float:
    return E - h


def slab_matrix(h: float, l: float, E: float) -> TransferMatrix:
    """Transfer matrix across a constant-potential slab of height ``h``."""
    if l < 0:
        raise DomainError(f"slab length must be >= 0, got {l}")
    z = E - h
    C = cos_kernel(z, l)
    S = sinc_kernel(z, l)
    return TransferMatrix(C, S, -z * S, C)


def free_matrix(r: float, E: float) -> TransferMatrix:
    return slab_matrix(0.0, r, E)


def double_layer_closed_form(pot: DoubleLayerPotential, E: float) -> TransferMatrix:
    z1, z2, z = E - pot.h1, E - pot.h2, E
    C1, S1 = cos_kernel(z1, pot.l1), sinc_kernel(z1, pot.l1)
    C2, S2 = cos_kernel(z2, pot.l2), sinc_kernel(z2, pot.l2)
    C, S = cos_kernel(z, pot.r), sinc_kernel(z, pot.r)

    lam11 = (C1 * C2 - z1 * S1 * S2) * C - (z1 * S1 * C2 + z * C1 * S2) * S
    lam12 = (S1 * C2 + C1 * S2) * C + (C1 * C2 - z * S1 * S2) * S
    lam21 = -(z1 * S1 * C2 + z2 * C1 * S2) * C - (z * C1 * C2 - z1 * z2 * S1 * S2) * S
    lam22 = (C1 * C2 - z2 * S1 * S2) * C - (z * S1 * C2 + z2 * C1 * S2) * S
    return TransferMatrix(lam11, lam12, lam21, lam22)


def double_layer_product(pot: DoubleLayerPotential, E: float) -> TransferMatrix:
    return (
        slab_matrix(pot.h2, pot.l2, E)
        @ free_matrix(pot.r, E)
        @ slab_matrix(pot.h1, pot.l1, E)
    )


def _rk4_step_matrix(z: float, h: float) -> np.ndarray:
    """One classical RK4 step for y' = A y, A = [[0, 1], [-z, 0]], on a basis."""
    A = np.array([[0.0, 1.0], [-z, 0.0]])
    y = np.eye(2)
    k1 = A @ y
    k2 = A @ (y + 0.5 * h * k1)
    k3 = A @ (y + 0.5 * h * k2)
    k4 = A @ (y + h * k3)
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def _rk4_segment(z: float, length: float, step: float) -> np.ndarray:
    if length == 0:
        return np.eye(2)
    n = max(1, math.ceil(length / step - 1e-9))
    # V is constant on the segment, so n identical RK4 steps compose
    # into a matrix power of the one-step propagator.
    return np.linalg.matrix_power(_rk4_step_matrix(z, length / n), n)


def ode_matrix(pot: DoubleLayerPotential, E: float, step: float) -> TransferMatrix:
    """RK4 integration of both fundamental solutions across the potential.

    Each constant segment is covered by equal steps no longer than ``step``,
    so the global error is O(step**4).
    """
    if not step > 0:
        raise StepSizeError(f"step must be positive, got {step}")
    widths = [pot.l1, pot.l2] + ([pot.r] if pot.r > 0 else [])
    limit = min(widths) / 10.0
    if step > limit:
        raise StepSizeError(
            f"step {step} exceeds min(layer widths)/10 = {limit}; refine the step"
        )
    m = (
        _rk4_segment(E - pot.h2, pot.l2, step)
        @ _rk4_segment(E, pot.r, step)
        @ _rk4_segment(E - pot.h1, pot.l1, step)
    )
    return TransferMatrix.from_array(m.tolist())


def transmission(m: TransferMatrix, E: float, L: float) -> ScatteringResult:
    """Plane-wave amplitudes for a wave incident from the left.

    ``m`` connects ``x = 0`` to ``x = L``; use ``L = 0`` for point
    interactions.
    """
    if not E > 0:
        raise DomainError(f"scattering needs E > 0, got {E}")
    if m.det_error() > 1e-8:
        raise DomainError(f"transfer matrix violates det = 1: det = {m.det()!r}")
    k = math.sqrt(E)
    l11, l12, l21, l22 = m.entries()
    D = 1j * k * (l11 + l22) + k * k * l12 - l21
    t = 2j * k * cmath.exp(-1j * k * L) / D
    rr = (k * k * l12 + l21 - 1j * k * (l11 - l22)) / D
    return ScatteringResult(t=t, rr=rr, T=abs(t) ** 2, R=abs(rr) ** 2)


@dataclass(frozen=True)
class PerfectTransmission:
    """Outcome of the double-well perfect-transmission test.

    ``family`` is 1 (both layers hold an integer number of half waves),
    2 (equal depths, both layers odd quarter-wave) or None. ``sign`` is the
    sign of the resulting ``+-I`` matrix when r = 0.
    """

    family: int | None
    indices: tuple = ()
    sign: int = 0

    def __bool__(self):
        return self.family is not None


def _near_integer(x: float, tol: float):
    n = round(x)
    return n if abs(x - n) <= tol else None


def perfect_transmission_conditions(
    pot: DoubleLayerPotential, tol: float = 1e-10
) -> PerfectTransmission:
    if pot.h1 > 0 or pot.h2 > 0:
        return PerfectTransmission(None)
    phase1 = math.sqrt(-pot.h1) * pot.l1 / math.pi
    phase2 = math.sqrt(-pot.h2) * pot.l2 / math.pi
    m, n = _near_integer(phase1, tol), _near_integer(phase2, tol)
    if m is not None and n is not None:
        return PerfectTransmission(1, (m, n), (-1) ** (m + n))
    if abs(pot.h1 - pot.h2) <= tol * max(1.0, abs(pot.h1)):
        m = _near_integer(phase1 - 0.5, tol)
        n = _near_integer(phase2 - 0.5, tol)
        if m is not None and n is not None and m >= 0 and n >= 0:
            return PerfectTransmission(2, (m, n), -((-1) ** (m + n)))
    return PerfectTransmission(None)
