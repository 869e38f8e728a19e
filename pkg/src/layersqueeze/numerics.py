"""Branch-safe trigonometric kernels and bracketed scalar root finding.

The kernels treat ``cos(l*sqrt(z))`` and ``sin(l*sqrt(z))/sqrt(z)`` as entire
functions of the squared wavenumber ``z``, so barrier (z < 0) and well
(z > 0) layers go through the same real code path and ``z = 0`` is not a
removable singularity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .errors import BracketError, ConvergenceError, DomainError

# below this value of |z| l^2 the Taylor series is used
SERIES_THRESHOLD = 1e-4
_SERIES_TERMS = 6

DEFAULT_TOL = 1e-12
DEFAULT_MAX_ITER = 200


def _check(zeta: float, l: float) -> None:
    if not (math.isfinite(zeta) and math.isfinite(l)):
        raise DomainError(f"non-finite kernel input: zeta={zeta!r}, l={l!r}")
    if l < 0:
        raise DomainError(f"kernel length must be >= 0, got {l!r}")


def cos_kernel(zeta: float, l: float) -> float:
    """C(z, l) = cos(l sqrt(z)), continued as cosh(l sqrt(-z)) for z < 0."""
    _check(zeta, l)
    x = zeta * l * l
    if abs(x) < SERIES_THRESHOLD:
        # sum_n (-x)^n / (2n)!
        term, total = 1.0, 1.0
        for n in range(1, _SERIES_TERMS):
            term *= -x / ((2 * n - 1) * (2 * n))
            total += term
        return total
    if zeta > 0:
        return math.cos(l * math.sqrt(zeta))
    try:
        return math.cosh(l * math.sqrt(-zeta))
    except OverflowError:
        return math.inf


def sinc_kernel(zeta: float, l: float) -> float:
    """S(z, l) = sin(l sqrt(z)) / sqrt(z), continued as sinh(l sqrt(-z)) / sqrt(-z).

    ``S(z, 0) = 0``, ``S(0, l) = l`` and ``C**2 + z * S**2 == 1``.
    """
    _check(zeta, l)
    x = zeta * l * l
    if abs(x) < SERIES_THRESHOLD:
        # l * sum_n (-x)^n / (2n+1)!
        term, total = 1.0, 1.0
        for n in range(1, _SERIES_TERMS):
            term *= -x / ((2 * n) * (2 * n + 1))
            total += term
        return l * total
    if zeta > 0:
        k = math.sqrt(zeta)
        return math.sin(k * l) / k
    kappa = math.sqrt(-zeta)
    try:
        return math.sinh(kappa * l) / kappa
    except OverflowError:
        return math.inf


@dataclass(frozen=True)
class Bracket:
    lo: float
    hi: float
    tol_abs: float = DEFAULT_TOL
    max_iter: int = DEFAULT_MAX_ITER

    def __post_init__(self):
        if not (self.lo < self.hi):
            raise DomainError(f"bracket needs lo < hi, got [{self.lo}, {self.hi}]")
        if not self.tol_abs > 0:
            raise DomainError("bracket tolerance must be positive")
        if self.max_iter < 1:
            raise DomainError("max_iter must be a positive integer")


def find_root(f: Callable[[float], float], bracket: Bracket, secant: bool = False) -> float:
    """Bisection root finder; the returned point always lies in ``[lo, hi]``.

    With ``secant=True`` a secant step is tried first on every iteration and
    kept only if it lands strictly inside the current bracket; the bracket
    still halves at least every other step, so the bisection guarantee holds.
    Iteration stops once the bracket is narrower than ``tol_abs`` or can no
    longer be split in floating point.
    """
    lo, hi = bracket.lo, bracket.hi
    flo, fhi = f(lo), f(hi)
    if flo == 0:
        return lo
    if fhi == 0:
        return hi
    if not (math.isfinite(flo) and math.isfinite(fhi)) or flo * fhi > 0:
        raise BracketError(
            f"no sign change on [{lo!r}, {hi!r}]: f(lo)={flo!r}, f(hi)={fhi!r}"
        )
    use_secant = secant
    for _ in range(bracket.max_iter):
        if hi - lo <= bracket.tol_abs:
            return lo if abs(flo) < abs(fhi) else hi
        mid = 0.5 * (lo + hi)
        if use_secant:
            cand = hi - fhi * (hi - lo) / (fhi - flo)
            if lo < cand < hi:
                mid = cand
        if not (lo < mid < hi):
            # bracket is down to adjacent floats
            return lo if abs(flo) < abs(fhi) else hi
        fmid = f(mid)
        if fmid == 0:
            return mid
        if (fmid < 0) == (flo < 0):
            lo, flo = mid, fmid
        else:
            hi, fhi = mid, fmid
        if secant:
            use_secant = not use_secant
    raise ConvergenceError(
        f"root not converged after {bracket.max_iter} iterations; "
        f"last bracket [{lo!r}, {hi!r}]"
    )
