"""Resonance sets of the squeezed double layer in the intensity plane (a1, a2).

Every row of the resonance condition has the shape

    c = R1(a1) + R2(a2),     R(a) = cot(eta sqrt(-a)) / sqrt(-a),

where a layer whose argument stays finite in the limit keeps the full
cotangent ratio and a layer whose argument shrinks to zero is linearised to
R(a) = -1 / (eta a). On Omega both layers are linearised, on B0 both are
full, on B1 only the second layer and on B2 only the first one (with
eta = 1, since its width is the squeezing parameter itself).

Writing R = C / g with C(a) = cos(eta sqrt(-a)) and
g(a) = sqrt(-a) sin(eta sqrt(-a)) (both entire in a), the row is cleared of
poles as ``G = c g1 g2 - C1 g2 - C2 g1 = 0``; the limit diagonal element
and the delta strength are

    theta = (C1 - c g1) / C2 = C1 / (C2 - c g2) = -g1 / g2,
    alpha = c0 g1 g2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import DomainError, PoleError
from .numerics import Bracket, cos_kernel, find_root, sinc_kernel
from .regions import BASE_SETS, Region

POLE_MARGIN = 1e-9
RESIDUAL_TOL = 1e-8


def _check_base(region: Region) -> None:
    if region not in BASE_SETS:
        raise DomainError(f"resonance rows exist only for {[str(r) for r in BASE_SETS]}, got {region}")


def _full(region: Region) -> tuple[bool, bool]:
    return region in (Region.B0, Region.B2), region in (Region.B0, Region.B1)


def layer_terms(a: float, eta: float, full: bool) -> tuple[float, float]:
    """(C, g) of one layer; the linearised layer has C = 1, g = -eta a."""
    if not full:
        return 1.0, -eta * a
    return cos_kernel(-a, eta), -a * sinc_kernel(-a, eta)


def cot_ratio(a: float, eta: float, full: bool = True) -> float:
    """R(a) = C/g; barrier side evaluated as -1/(t tanh(eta t)), t = sqrt(a)."""
    if not full:
        if abs(a) <= POLE_MARGIN:
            raise PoleError(f"linearised cot term has a pole at a = {a}", factor="1/a")
        return -1.0 / (eta * a)
    if a > 0 and eta * math.sqrt(a) > 1e-2:
        t = math.sqrt(a)
        return -1.0 / (t * math.tanh(eta * t))
    C, g = layer_terms(a, eta, True)
    if abs(g) <= POLE_MARGIN:
        raise PoleError(f"cot(eta sqrt(-a))/sqrt(-a) has a pole at a = {a}", factor="cot")
    return C / g


def _terms(region, a1, a2, eta):
    f1, f2 = _full(region)
    return (*layer_terms(a1, 1.0, f1), *layer_terms(a2, eta, f2))


def residual(region: Region, a1: float, a2: float, eta: float, c: float) -> float:
    """``c`` minus the right-hand side of the region's resonance row."""
    _check_base(region)
    f1, f2 = _full(region)
    return c - cot_ratio(a1, 1.0, f1) - cot_ratio(a2, eta, f2)


def cleared_residual(region: Region, a1: float, a2: float, eta: float, c: float) -> tuple[float, float]:
    """Pole-free form ``g1 g2 * residual`` and the magnitude of its terms."""
    _check_base(region)
    C1, g1, C2, g2 = _terms(region, a1, a2, eta)
    parts = (c * g1 * g2, C1 * g2, C2 * g1)
    return parts[0] - parts[1] - parts[2], sum(abs(p) for p in parts)


def on_resonance(region: Region, a1: float, a2: float, eta: float, c: float, tol: float = RESIDUAL_TOL) -> bool:
    _check_base(region)
    f1, f2 = _full(region)
    try:
        r1 = cot_ratio(a1, 1.0, f1)
        r2 = cot_ratio(a2, eta, f2)
    except PoleError:
        G, scale = cleared_residual(region, a1, a2, eta, c)
        return abs(G) <= tol * max(1.0, scale)
    return abs(c - r1 - r2) <= tol * max(1.0, abs(c) + abs(r1) + abs(r2))


def theta_limit(region: Region, a1: float, a2: float, eta: float, c: float) -> float:
    """Limit diagonal element theta on the resonance set (c = 0 for types 2, 3)."""
    _check_base(region)
    C1, g1, C2, g2 = _terms(region, a1, a2, eta)
    den_a, den_b = C2, C2 - c * g2
    if max(abs(den_a), abs(den_b)) > 1e-8:
        if abs(den_a) >= abs(den_b):
            return (C1 - c * g1) / den_a
        return C1 / den_b
    if g2 == 0:
        raise PoleError(f"theta undefined at (a1, a2) = ({a1}, {a2})", factor="theta")
    return -g1 / g2


def alpha_limit(region: Region, a1: float, a2: float, eta: float, c0: float) -> float:
    """Limit delta strength ``c0 g1 g2`` of the second interaction type."""
    _check_base(region)
    _, g1, _, g2 = _terms(region, a1, a2, eta)
    return c0 * g1 * g2


# --------------------------------------------------------------------------
# characteristic points
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class CharacteristicPoints:
    b: list
    d: list
    s: list
    eta: float
    c: float


def d_point(n: int, eta: float) -> float:
    return -(((n + 0.5) * math.pi / eta) ** 2)


def s_point(n: int, eta: float) -> float:
    return 0.0 - (n * math.pi / eta) ** 2


def b_point(n: int, eta: float, c: float) -> float:
    """(n+1)-th root of cot(eta sqrt(-b)) = c sqrt(-b), b < 0."""
    if c == 0:
        return d_point(n, eta)

    def f(b):
        C, g = layer_terms(b, eta, True)
        return C - c * g

    lo, hi = d_point(n, eta), s_point(n, eta)
    return find_root(f, Bracket(lo, hi, tol_abs=1e-15 * max(1.0, abs(lo))))


def characteristic_points(nmax: int, eta: float, c: float) -> CharacteristicPoints:
    if nmax < 0 or not eta > 0 or c < 0:
        raise DomainError(f"need nmax >= 0, eta > 0, c >= 0; got {nmax}, {eta}, {c}")
    ns = range(nmax + 1)
    return CharacteristicPoints(
        b=[b_point(n, eta, c) for n in ns],
        d=[d_point(n, eta) for n in ns],
        s=[s_point(n, eta) for n in ns],
        eta=eta,
        c=c,
    )


# --------------------------------------------------------------------------
# curves
# --------------------------------------------------------------------------


def omega_curve(a1: float, eta: float, c: float) -> float:
    den = eta * (1.0 + c * a1)
    if den == 0:
        raise PoleError(f"a1 = {a1} lies on the asymptote a1 = -1/c", factor="1 + c a1")
    return -a1 / den


@dataclass
class ResonanceCurve:
    region: Region
    branch: int
    c: float
    eta: float
    points: list = field(default_factory=list)
    residuals: list = field(default_factory=list)
    annotations: list = field(default_factory=list)
    skipped: list = field(default_factory=list)


@dataclass(frozen=True)
class Annotation:
    a1: float
    a2: float
    label: str
    verified: bool


def _layer1_index(region: Region, a1: float) -> int:
    """Index i of the a1 interval J_i on which R1 runs monotonically."""
    full1, _ = _full(region)
    if a1 > 0:
        return -1
    if not full1:
        return 0
    return int(math.floor(math.sqrt(-a1) / math.pi))


def solve_a2(region: Region, branch: int, a1: float, eta: float, c: float) -> float | None:
    """a2 on branch ``branch`` above ``a1``, or None if the branch misses a1.

    Branch n takes its a2 from the interval I_m, m = n - 1 - i, where J_i
    holds a1; I_{-1} = (0, inf) and I_m = (s_{m+1}, s_m) for m >= 0 are the
    monotone pieces of R2 between its poles.
    """
    _check_base(region)
    if branch < 0:
        raise DomainError(f"branch must be >= 0, got {branch}")
    full1, full2 = _full(region)
    m = branch - 1 - _layer1_index(region, a1)
    if m < -1:
        return None
    try:
        y = c - cot_ratio(a1, 1.0, full1)
    except PoleError:
        # a1 sits on a pole of R1 (approached from J_i, R1 -> +inf)
        if m == -1:
            return 0.0
        return s_point(m + 1, eta) if full2 else None
    if not full2:
        if y == 0:
            return None
        a2 = -1.0 / (eta * y)
        ok = (m == -1 and a2 > 0) or (m == 0 and a2 < 0)
        return a2 if ok else None
    if m == -1:
        if not y < 0:
            return None
        w = -1.0 / y
        t = find_root(
            lambda t: t * math.tanh(eta * t) - w,
            Bracket(0.0, w + 2.0 / eta, tol_abs=1e-16 * (w + 2.0 / eta)),
        )
        return t * t
    lo, hi = s_point(m + 1, eta), s_point(m, eta)

    def F(a2):
        C2, g2 = layer_terms(a2, eta, True)
        return y * g2 - C2

    return find_root(F, Bracket(lo, hi, tol_abs=1e-16 * max(1.0, abs(lo))))


def branch_characteristic_points(region: Region, branch: int, eta: float, c: float) -> list:
    """Named characteristic points expected on a branch: (a1, a2, label)."""
    _check_base(region)
    n = branch
    out = []
    if region is Region.OMEGA:
        if n == 0:
            out.append((0.0, 0.0, "origin"))
        elif n == 1 and c > 0:
            out.append((-2.0 / c, -2.0 / (eta * c), "(-2/c, -2/(eta c)) perfect -I"))
        return out
    if n == 0:
        return [(0.0, 0.0, "origin")]
    if region is Region.B1:
        if c > 0:
            out.append((-1.0 / c, d_point(n - 1, eta), f"(-1/c, d_{n-1})"))
        out.append((0.0, s_point(n, eta), f"(0, s_{n})"))
    elif region is Region.B2:
        if c > 0:
            out.append((d_point(n - 1, 1.0), -1.0 / (eta * c), f"(~d_{n-1}, -1/(eta c))"))
        out.append((s_point(n, 1.0), 0.0, f"(~s_{n}, 0)"))
    else:
        for i in range(n + 1):
            out.append((s_point(i, 1.0), s_point(n - i, eta), f"(~s_{i}, s_{n-i})"))
        for i in range(n):
            j = n - 1 - i
            out.append((b_point(i, 1.0, c), d_point(j, eta), f"(~b_{i}, d_{j})"))
            out.append((d_point(i, 1.0), b_point(j, eta, c), f"(~d_{i}, b_{j})"))
    return out


def _verify_point(region, branch, a1, a2, eta, c) -> bool:
    G, scale = cleared_residual(region, a1, a2, eta, c)
    if abs(G) > 1e-10 * max(1.0, scale):
        return False
    tol = 1e-6 * max(1.0, abs(a2))
    f1, _ = _full(region)
    try:
        cot_ratio(a1, 1.0, f1)
    except PoleError:
        pass
    else:
        got = solve_a2(region, branch, a1, eta, c)
        return got is not None and abs(got - a2) <= tol
    # pole of R1: the branch must close in on a2 from both sides
    delta = 1e-8 * max(1.0, abs(a1))
    tol = 1e-4 * max(1.0, abs(a2))
    for side in (-delta, delta):
        got = solve_a2(region, branch, a1 + side, eta, c)
        if got is None or abs(got - a2) > tol:
            return False
    return True


def trace_curve(
    region: Region,
    branch: int,
    eta: float,
    c: float,
    a1_range: tuple,
    npts: int,
    tol: float = RESIDUAL_TOL,
) -> ResonanceCurve:
    """Sample branch ``branch`` of the region's resonance set over ``a1_range``.

    Characteristic a1 values falling inside the range are added to the
    samples. Points on poles of the residual or whose residual exceeds
    ``tol`` are listed in ``skipped`` rather than ``points``.
    """
    _check_base(region)
    if npts < 2:
        raise DomainError("npts must be >= 2")
    if not eta > 0 or c < 0:
        raise DomainError(f"need eta > 0 and c >= 0, got eta={eta}, c={c}")
    lo, hi = a1_range
    if not lo < hi:
        raise DomainError(f"empty a1 range [{lo}, {hi}]")
    curve = ResonanceCurve(region, branch, c, eta)

    chars = [p for p in branch_characteristic_points(region, branch, eta, c) if lo <= p[0] <= hi]
    for a1, a2, label in chars:
        curve.annotations.append(
            Annotation(a1, a2, label, _verify_point(region, branch, a1, a2, eta, c))
        )

    step = (hi - lo) / (npts - 1)
    samples = sorted({lo + k * step for k in range(npts)} | {p[0] for p in chars})
    for a1 in samples:
        a2 = solve_a2(region, branch, a1, eta, c)
        if a2 is None:
            curve.skipped.append((a1, "branch does not cover this a1"))
            continue
        try:
            res = residual(region, a1, a2, eta, c)
        except PoleError as exc:
            curve.skipped.append((a1, f"pole of residual ({exc.factor})"))
            continue
        if abs(res) > tol:
            curve.skipped.append((a1, f"residual {res:.3g} above tolerance"))
            continue
        curve.points.append((a1, a2))
        curve.residuals.append(res)
    return curve


# --------------------------------------------------------------------------
# intersections with the line a1 + eta a2 = 0 and perfect-transmission points
# --------------------------------------------------------------------------


def gamma_delta_prime_points(region: Region, eta: float, c: float, nmax: int) -> list:
    """Intersections of the region's resonance set with a1 + eta a2 = 0.

    Returns ``(a1, gamma)`` pairs: the trivial a1 = 0 followed by one root
    per interval x in (n pi, (n+1) pi), n = 1..nmax, of
    x cot x = 1 + kappa x**2 (x**2 = eta a1 on B1, x**2 = -a1 on B2).
    """
    if region not in (Region.B1, Region.B2):
        raise DomainError(f"gamma-delta' points are defined on B1 and B2, got {region}")
    if c < 0 or not eta > 0:
        raise DomainError(f"need c >= 0 and eta > 0, got c={c}, eta={eta}")
    kappa = c / eta if region is Region.B1 else c

    def f(x):
        return x * math.cos(x) - (1.0 + kappa * x * x) * math.sin(x)

    out = [(0.0, 0.0)]
    for n in range(1, nmax + 1):
        lo, hi = n * math.pi, (n + 1) * math.pi
        x = find_root(f, Bracket(lo, hi, tol_abs=1e-15 * hi))
        if region is Region.B1:
            a1 = x * x / eta
            out.append((a1, eta * a1 / 2.0))
        else:
            a1 = -x * x
            out.append((a1, a1 / 2.0))
    return out


@dataclass(frozen=True)
class PerfectPoint:
    a1: float
    a2: float
    theta: float
    n: int
    c_zero_only: bool = False


def perfect_points(region: Region, eta: float, nmax: int, c: float = 0.0) -> list:
    """Points of the resonance set with theta = (-1)^n (perfect transmission).

    The odd diagonal points (~d_k, d_k), k = 1, 3, exist only at eta = 1 and
    c = 0 and are returned only then.
    """
    _check_base(region)
    pts = []
    if region is Region.B1:
        pts = [(0.0, s_point(n, eta), n) for n in range(nmax + 1)]
    elif region is Region.B2:
        pts = [(s_point(n, 1.0), 0.0, n) for n in range(nmax + 1)]
    elif region is Region.B0:
        pts = [
            (s_point(i, 1.0), s_point(n - i, eta), n)
            for n in range(nmax + 1)
            for i in range(n + 1)
        ]
    elif region is Region.OMEGA:
        pts = [(0.0, 0.0, 0)]
    out = [PerfectPoint(a1, a2, theta_limit(region, a1, a2, eta, c), n) for a1, a2, n in pts]
    if region is Region.B0 and eta == 1.0 and c == 0:
        for k in (1, 3):
            if k <= nmax:
                a = d_point(k, 1.0)
                out.append(PerfectPoint(a, a, theta_limit(region, a, a, eta, 0.0), k, True))
    return out
