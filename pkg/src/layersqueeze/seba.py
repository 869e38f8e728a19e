"""Two-delta comb squeezed at a rate set by vartheta = (mu - 1) / tau.

After the layers themselves have become delta profiles at x = 0 and x = r
(with eta = 1), the potential is (c/r)^vartheta [a1 delta(x) + a2 delta(x - r)]
and the r -> 0 limit changes character at vartheta = 1/2.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import DomainError, NoBoundStateError
from .scattering import TransferMatrix

TRANSITION_TOL = 1e-12


@dataclass(frozen=True)
class TwoDeltaModel:
    a1: float
    a2: float
    c: float
    vartheta: float
    r: float

    def __post_init__(self):
        vals = (self.a1, self.a2, self.c, self.vartheta, self.r)
        if not all(math.isfinite(v) for v in vals):
            raise DomainError(f"non-finite model parameters: {vals}")
        if not self.c > 0:
            raise DomainError(f"need c > 0, got {self.c}")
        if not self.r > 0:
            raise DomainError(f"need r > 0, got {self.r}")
        _check_vartheta(self.vartheta)

    @property
    def coupling(self) -> float:
        """(c/r)^vartheta, the common prefactor of both deltas."""
        return (self.c / self.r) ** self.vartheta


def _check_vartheta(vartheta: float) -> None:
    if not (math.isfinite(vartheta) and 0 < vartheta <= 1):
        raise DomainError(f"vartheta must lie in (0, 1], got {vartheta}")


def two_delta_matrix(m: TwoDeltaModel) -> TransferMatrix:
    # p = r (c/r)^vartheta = c^vartheta r^(1 - vartheta)
    p = m.c**m.vartheta * m.r ** (1.0 - m.vartheta)
    return TransferMatrix(
        1.0 + p * m.a1,
        m.r,
        m.coupling * (m.a1 + m.a2 + p * m.a1 * m.a2),
        1.0 + p * m.a2,
    )


class Transition(enum.Enum):
    REFLECTIONLESS = "Reflectionless"
    DELTA_S = "DeltaS"
    DIRICHLET = "Dirichlet"
    KURASOV_PLANE = "KurasovPlane"

    def __str__(self):
        return self.value


def transition_classify(vartheta: float) -> Transition:
    """Character of the r -> 0 limit on the line a1 + a2 = 0."""
    _check_vartheta(vartheta)
    if abs(vartheta - 1.0) <= TRANSITION_TOL:
        return Transition.KURASOV_PLANE
    if abs(vartheta - 0.5) <= TRANSITION_TOL:
        return Transition.DELTA_S
    return Transition.REFLECTIONLESS if vartheta < 0.5 else Transition.DIRICHLET


def bound_state_energy(alpha: float) -> float:
    """Energy -alpha^2/4 of the single bound state of an attractive delta."""
    if not math.isfinite(alpha):
        raise DomainError(f"alpha must be finite, got {alpha}")
    if alpha >= 0:
        raise NoBoundStateError(f"a delta of strength {alpha} >= 0 has no bound state")
    return -0.25 * alpha * alpha
