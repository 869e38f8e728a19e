"""Classification of squeezing exponents (mu, nu, tau).

The base plane (mu, nu) holds the open set Omega = {1 < mu < 2,
nu > 2(mu - 1)} and its boundary pieces B0 (the point mu = nu = 2),
B1 (1 < mu < 2, nu = 2(mu - 1)) and B2 (mu = 2, nu > 2). Over each of
them the gap exponent tau is compared with the two faces tau = mu - 1 and
tau = 2(mu - 1).
"""

from __future__ import annotations

import enum
import math

from .errors import DomainError

EQ_TOL = 1e-12


class Region(enum.Enum):
    OMEGA = "Omega"
    B0 = "B0"
    B1 = "B1"
    B2 = "B2"
    P1 = "P1"
    K1 = "K1"
    L1 = "L1"
    Q_K = "Q_K"
    P2 = "P2"
    K2 = "K2"
    L2 = "L2"
    Q_S = "Q_S"
    V1 = "V1"
    V2 = "V2"
    N1 = "N1"
    N2 = "N2"
    Q1 = "Q1"
    Q2 = "Q2"
    O1 = "O1"
    O2 = "O2"
    OUTSIDE = "Outside"

    def __str__(self):
        return self.value

    @classmethod
    def parse(cls, name: str) -> "Region":
        key = name.strip().lower()
        for member in cls:
            if member.value.lower() == key or member.name.lower() == key:
                return member
        raise DomainError(f"unknown region {name!r}")


BASE_SETS = (Region.OMEGA, Region.B0, Region.B1, Region.B2)

# rows: base set; columns: tau = mu-1, (mu-1, 2(mu-1)), tau = 2(mu-1), tau > 2(mu-1)
_LAYOUT = {
    Region.OMEGA: (Region.Q_K, Region.V1, Region.Q_S, Region.V2),
    Region.B0: (Region.P1, Region.N1, Region.P2, Region.N2),
    Region.B1: (Region.K1, Region.Q1, Region.K2, Region.Q2),
    Region.B2: (Region.L1, Region.O1, Region.L2, Region.O2),
}

FIRST_TYPE = {Region.Q_K: Region.OMEGA, Region.P1: Region.B0, Region.K1: Region.B1, Region.L1: Region.B2}
SECOND_TYPE = {Region.Q_S: Region.OMEGA, Region.P2: Region.B0, Region.K2: Region.B1, Region.L2: Region.B2}
THIRD_TYPE = {Region.V2: Region.OMEGA, Region.N2: Region.B0, Region.Q2: Region.B1, Region.O2: Region.B2}
OPAQUE = {Region.V1: Region.OMEGA, Region.N1: Region.B0, Region.Q1: Region.B1, Region.O1: Region.B2}


def _eq(x: float, y: float) -> bool:
    return abs(x - y) <= EQ_TOL


def _check(*vals: float) -> None:
    if not all(math.isfinite(v) for v in vals):
        raise DomainError(f"non-finite exponents {vals}")


def base_region(mu: float, nu: float) -> Region:
    """Locate (mu, nu) among Omega, B0, B1, B2 (or Outside)."""
    _check(mu, nu)
    if not (mu > 1 and nu > 0):
        raise DomainError(f"need mu > 1 and nu > 0, got mu={mu}, nu={nu}")
    floor = 2.0 * (mu - 1.0)
    if _eq(mu, 2.0):
        if _eq(nu, 2.0):
            return Region.B0
        return Region.B2 if nu > 2.0 else Region.OUTSIDE
    if mu > 2.0:
        return Region.OUTSIDE
    if _eq(nu, floor):
        return Region.B1
    return Region.OMEGA if nu > floor else Region.OUTSIDE


def base_of(region: Region) -> Region | None:
    """Base-plane set underlying a three-dimensional region."""
    if region in BASE_SETS:
        return region
    for table in (FIRST_TYPE, SECOND_TYPE, THIRD_TYPE, OPAQUE):
        if region in table:
            return table[region]
    return None


def classify_region(mu: float, nu: float, tau: float) -> Region:
    _check(mu, nu, tau)
    if not tau > 0:
        raise DomainError(f"need tau > 0, got {tau}")
    base = base_region(mu, nu)
    if base is Region.OUTSIDE:
        return Region.OUTSIDE
    lower, upper = mu - 1.0, 2.0 * (mu - 1.0)
    row = _LAYOUT[base]
    if _eq(tau, lower):
        return row[0]
    if _eq(tau, upper):
        return row[2]
    if tau < lower:
        return Region.OUTSIDE
    return row[1] if tau < upper else row[3]
