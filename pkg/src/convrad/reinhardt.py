"""Multivariate branches: directional radii of the convergence domain.

The engine lifts a branch of P(X_1..X_n, T) = 0 to a truncated
multivariate series, estimates the directional radius from the
absolute-coefficient sums (which govern absolute convergence on
polydiscs), and pairs each direction with an exact algebraic upper
bound obtained by restricting to the diagonal X = d*S.  The sampled
log-boundary is then checked for the midpoint convexity that a
logarithmically convex Reinhardt domain must satisfy.

The estimate, not the diagonal bound, is the primary number: diagonal
restriction can enlarge the radius through coefficient cancellation, so
the exact value is only certified as an upper bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd as _int_gcd

from .branch import hensel_lift, validate_branch
from .errors import InsufficientDataError, NotARootError, RamifiedBranchError
from .exactpoly import BiPoly, UniPoly
from .radius import INFINITY, EngineConfig, exact_radius
from .realalg import RealAlgebraic

_MAX_VARS = 3


class MultiBiPoly:
    """Polynomial in X_1..X_n and T; T-coefficients are exponent maps."""

    __slots__ = ("n", "tcoeffs")

    def __init__(self, n: int, tcoeffs):
        if n < 1:
            raise ValueError("need at least one variable")
        if n > _MAX_VARS:
            raise ValueError(f"at most {_MAX_VARS} variables are supported")
        self.n = n
        cleaned = []
        for mapping in tcoeffs:
            cleaned.append(
                {
                    tuple(k): Fraction(v)
                    for k, v in mapping.items()
                    if Fraction(v) != 0
                }
            )
        while cleaned and not cleaned[-1]:
            cleaned.pop()
        self.tcoeffs = tuple(cleaned)

    @property
    def deg_t(self) -> int:
        return len(self.tcoeffs) - 1

    def at_origin(self) -> UniPoly:
        """P(0, T) as a univariate polynomial in T."""
        zero = (0,) * self.n
        return UniPoly([m.get(zero, Fraction(0)) for m in self.tcoeffs])

    def to_bipoly(self) -> BiPoly:
        if self.n != 1:
            raise ValueError("only single-variable polynomials convert")
        out = []
        for m in self.tcoeffs:
            deg = max((k[0] for k in m), default=0)
            cs = [Fraction(0)] * (deg + 1)
            for k, v in m.items():
                cs[k[0]] = v
            out.append(UniPoly(cs))
        return BiPoly(out)

    def diagonal(self, direction) -> BiPoly:
        """Substitute X_i = d_i * S; polynomial in (S, T)."""
        d = [Fraction(v) for v in direction]
        if len(d) != self.n or any(v <= 0 for v in d):
            raise ValueError("direction must be a positive rational n-vector")
        out = []
        for m in self.tcoeffs:
            deg = max((sum(k) for k in m), default=0)
            cs = [Fraction(0)] * (deg + 1)
            for k, v in m.items():
                w = v
                for di, ki in zip(d, k):
                    w *= di**ki
                cs[sum(k)] += w
            out.append(UniPoly(cs))
        return BiPoly(out)


@dataclass(frozen=True)
class MultiSeries:
    """Truncated multivariate branch series: exponent tuple -> coefficient."""

    n: int
    coeffs: dict
    order: int

    def coefficient(self, alpha) -> Fraction:
        return self.coeffs.get(tuple(alpha), Fraction(0))

    @property
    def t0(self) -> Fraction:
        return self.coefficient((0,) * self.n)


@dataclass
class DirectionalProfile:
    """One direction of the convergence domain boundary."""

    direction: tuple
    rho_estimate: float
    rho_upper: object  # RealAlgebraic | INFINITY
    gap_flag: bool = False


@dataclass
class LogConvexityReport:
    passed: bool
    worst_violation: float
    pairs_checked: int
    slack: float


# -- truncated multivariate series kernel ------------------------------------
#
# a series is (layers, den): layers[k] maps packed exponents of total
# degree k to integer numerators; pack base N+1 admits no carries because
# surviving products keep every component <= N.


class _MKernel:
    def __init__(self, n: int, order: int):
        self.n = n
        self.N = order
        self.base = order + 1

    def pack(self, alpha) -> int:
        key = 0
        for a in reversed(alpha):
            key = key * self.base + a
        return key

    def unpack(self, key: int):
        out = []
        for _ in range(self.n):
            key, a = divmod(key, self.base)
            out.append(a)
        return tuple(out)

    def zero(self):
        return [dict() for _ in range(self.N + 1)], 1

    def const(self, c: Fraction):
        layers = [dict() for _ in range(self.N + 1)]
        if c != 0:
            layers[0][0] = c.numerator
        return layers, c.denominator

    def from_mapping(self, mapping):
        den = 1
        for v in mapping.values():
            den = den * v.denominator // _int_gcd(den, v.denominator)
        layers = [dict() for _ in range(self.N + 1)]
        for alpha, v in mapping.items():
            k = sum(alpha)
            if k <= self.N and v != 0:
                layers[k][self.pack(alpha)] = int(v * den)
        return layers, den

    def add(self, a, b):
        la, da = a
        lb, db = b
        g = _int_gcd(da, db)
        fa, fb = db // g, da // g
        layers = []
        for ka, kb in zip(la, lb):
            dst = {k: fa * v for k, v in ka.items()}
            for k, v in kb.items():
                dst[k] = dst.get(k, 0) + fb * v
            layers.append(dst)
        return layers, da * fa

    def neg(self, a):
        la, da = a
        return [{k: -v for k, v in layer.items()} for layer in la], da

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        la, da = a
        lb, db = b
        out = [dict() for _ in range(self.N + 1)]
        for ka, layer_a in enumerate(la):
            if not layer_a:
                continue
            for kb in range(self.N - ka + 1):
                layer_b = lb[kb]
                if not layer_b:
                    continue
                dst = out[ka + kb]
                for key_a, va in layer_a.items():
                    for key_b, vb in layer_b.items():
                        key = key_a + key_b
                        if key in dst:
                            dst[key] += va * vb
                        else:
                            dst[key] = va * vb
        return out, da * db

    def normalize(self, a):
        la, da = a
        g = da
        for layer in la:
            for v in layer.values():
                g = _int_gcd(g, v)
                if g == 1:
                    return a
        if g > 1:
            la = [{k: v // g for k, v in layer.items()} for layer in la]
            da //= g
        return la, da

    def eval_poly(self, tcoeff_series, f):
        acc = tcoeff_series[-1]
        for c in reversed(tcoeff_series[:-1]):
            acc = self.add(self.mul(acc, f), c)
        return acc

    def to_series(self, a, n_vars) -> dict:
        la, da = a
        out = {}
        for layer in la:
            for key, v in layer.items():
                if v:
                    out[self.unpack(key)] = Fraction(v, da)
        return out


def multivariate_expand(P: MultiBiPoly, t0, N: int) -> MultiSeries:
    """Unique branch series through (0, t0), exact to total degree N."""
    t0 = Fraction(t0)
    if N < 0:
        raise ValueError("order must be >= 0")
    p0 = P.at_origin()
    if p0(t0) != 0:
        raise NotARootError(f"P(0, {t0}) != 0")
    if p0.derivative()(t0) == 0:
        raise RamifiedBranchError("dP/dT(0, t0) = 0: ramified multivariate branch")
    kern = _MKernel(P.n, N)
    pt_tc = _derivative_t_maps(P)
    f = kern.const(t0)
    g = kern.const(1 / p0.derivative()(t0))
    p_series = [kern.from_mapping(m) for m in P.tcoeffs]
    pt_series = [kern.from_mapping(m) for m in pt_tc]
    m = 1
    target = N + 1
    while m < target:
        m = min(2 * m, target)
        pf = kern.eval_poly(p_series, f)
        f = kern.normalize(kern.sub(f, kern.mul(pf, g)))
        if m < target:
            ptf = kern.eval_poly(pt_series, f)
            two = kern.const(Fraction(2))
            g = kern.normalize(kern.mul(g, kern.sub(two, kern.mul(ptf, g))))
    coeffs = kern.to_series(f, P.n)
    coeffs.setdefault((0,) * P.n, t0)
    return MultiSeries(n=P.n, coeffs=coeffs, order=N)


def _derivative_t_maps(P: MultiBiPoly):
    out = []
    for j, m in enumerate(P.tcoeffs):
        if j == 0:
            continue
        out.append({k: j * v for k, v in m.items()})
    return out or [{}]


def directional_estimate(s: MultiSeries, direction) -> float:
    """Hadamard-style estimate of the directional radius from the
    absolute-coefficient sums c_k(d) = sum_{|alpha|=k} |a_alpha| d^alpha."""
    d = [Fraction(v) for v in direction]
    if len(d) != s.n or any(v <= 0 for v in d):
        raise ValueError("direction must be a positive rational n-vector")
    N = s.order
    if N < 8:
        raise ValueError("need order >= 8")
    sums = [Fraction(0)] * (N + 1)
    for alpha, v in s.coeffs.items():
        k = sum(alpha)
        if v == 0 or k > N:
            continue
        w = abs(v)
        for di, ai in zip(d, alpha):
            w *= di**ai
        sums[k] += w
    best = None
    for k in range(N // 2, N + 1):
        if k == 0 or sums[k] == 0:
            continue
        v = (math.log(sums[k].numerator) - math.log(sums[k].denominator)) / k
        if best is None or v > best:
            best = v
    if best is None:
        return math.inf
    return math.exp(-best)


def diagonal_exact_bound(P: MultiBiPoly, t0, direction, cfg: EngineConfig | None = None):
    """Exact radius of the diagonal restriction g_d(S) = f(d_1 S, .., d_n S).

    An upper bound for the directional radius; equality is not asserted
    because cancellation can enlarge the diagonal radius.
    """
    restricted = P.diagonal(direction)
    b = validate_branch(restricted, t0)
    result = exact_radius(b, cfg)
    return result.value


def make_profile(
    s: MultiSeries, P: MultiBiPoly, t0, direction, cfg: EngineConfig | None = None
) -> DirectionalProfile:
    est = directional_estimate(s, direction)
    upper = diagonal_exact_bound(P, t0, direction, cfg)
    gap = False
    if upper is not INFINITY and not math.isinf(est):
        ub = float(upper)
        gap = est < 0.95 * ub or est > 1.0001 * ub
    return DirectionalProfile(
        direction=tuple(Fraction(v) for v in direction),
        rho_estimate=est,
        rho_upper=upper,
        gap_flag=gap,
    )


def log_convexity_check(profiles, slack: float) -> LogConvexityReport:
    """Midpoint convexity of the region below the sampled log-boundary.

    Two-variable form: boundary samples (log r1, log r2) sorted by the
    first coordinate must dominate, within ``slack``, the midpoint of
    every sample pair, using linear interpolation between neighbors.
    """
    finite = [p for p in profiles if math.isfinite(p.rho_estimate)]
    if len(finite) < 3:
        raise InsufficientDataError("need at least 3 finite directional profiles")
    n = len(finite[0].direction)
    if n != 2:
        raise InsufficientDataError(
            "log-convexity sampling is implemented for two variables"
        )
    seen = set()
    pts = []
    for p in finite:
        key = tuple(p.direction)
        if key in seen:
            raise ValueError("directions must be pairwise distinct")
        seen.add(key)
        r = [p.rho_estimate * float(c) for c in p.direction]
        pts.append((math.log(r[0]), math.log(r[1])))
    pts.sort()
    worst = 0.0
    checked = 0
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            mu = (pts[i][0] + pts[j][0]) / 2
            mv = (pts[i][1] + pts[j][1]) / 2
            bv = _interp_boundary(pts, mu)
            if bv is None:
                continue
            checked += 1
            worst = max(worst, mv - bv)
    return LogConvexityReport(
        passed=worst <= slack,
        worst_violation=worst,
        pairs_checked=checked,
        slack=slack,
    )


def _interp_boundary(pts, u):
    for (u1, v1), (u2, v2) in zip(pts, pts[1:]):
        if u1 <= u <= u2:
            if u2 == u1:
                return max(v1, v2)
            w = (u - u1) / (u2 - u1)
            return v1 + w * (v2 - v1)
    return None
