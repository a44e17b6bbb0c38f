"""Branch selection and exact power-series expansion.

A branch is the unique power series f with f(0) = t0 and P(X, f(X)) = 0
through a simple root t0 of P(0, T).  Coefficients are produced by a
coupled Newton iteration (root update plus reciprocal update for
1/(dP/dT)), which doubles the correct order every round and needs no
series division beyond the rational seed.

The truncated-series kernel keeps one integer numerator list over a
common denominator; Fraction objects only appear at the boundary.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd as _int_gcd

from .errors import NotARootError, RamifiedBranchError
from .exactpoly import BiPoly, UniPoly, squarefree_part_T


@dataclass(frozen=True)
class BranchSpec:
    """The pair (P, t0) selecting a branch; P is squarefree in T,
    P(0, t0) = 0 and dP/dT(0, t0) != 0."""

    P: BiPoly
    t0: Fraction


@dataclass(frozen=True)
class SeriesCoefficients:
    """Exact series coefficients a_0 .. a_N of a lifted branch."""

    coeffs: tuple
    order: int

    def __post_init__(self):
        assert len(self.coeffs) == self.order + 1

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k]

    def prefix(self, n: int) -> "SeriesCoefficients":
        if n > self.order:
            raise ValueError("prefix longer than the series")
        return SeriesCoefficients(self.coeffs[: n + 1], n)


def validate_branch(P: BiPoly, t0) -> BranchSpec:
    """Check (P, t0) selects a simple branch; store the squarefree part.

    Raises NotARootError when P(0, t0) != 0 and RamifiedBranchError when
    the T-derivative vanishes there (out of the supported input class).
    """
    t0 = Fraction(t0)
    if P.is_zero:
        raise NotARootError("zero polynomial annihilates nothing")
    if P.at_x(0)(t0) != 0:
        raise NotARootError(f"P(0, {t0}) = {P.at_x(0)(t0)} != 0")
    if P.derivative_t().at_x(0)(t0) == 0:
        raise RamifiedBranchError(
            f"dP/dT(0, {t0}) = 0: ramified branch; Newton-polygon expansion "
            "of ramified branches is not supported"
        )
    sq = squarefree_part_T(P)
    if sq.at_x(0)(t0) != 0 or sq.derivative_t().at_x(0)(t0) == 0:
        # cannot happen for a simple root of P(0, .); defensive only
        raise NotARootError("branch degenerates under squarefree reduction")
    return BranchSpec(sq, t0)


def ramify(Q: BiPoly, p: int) -> BiPoly:
    """Substitute X -> X^p in every coefficient of Q."""
    if p < 1:
        raise ValueError("ramification index must be >= 1")
    if p == 1:
        return Q
    return Q.subs_x_power(p)


# -- truncated series kernel: (nums, den) with den > 0 ---------------------


def _norm(nums, den):
    if den < 0:
        den = -den
        nums = [-v for v in nums]
    g = den
    for v in nums:
        g = _int_gcd(g, v)
        if g == 1:
            return nums, den
    if g > 1:
        nums = [v // g for v in nums]
        den //= g
    return nums, den


def _add(a, b, n):
    an, ad = a
    bn, bd = b
    g = _int_gcd(ad, bd)
    fa, fb = bd // g, ad // g
    den = ad * fa
    out = [fa * x for x in an]
    out.extend([0] * (n - len(out)))
    for i, y in enumerate(bn[:n]):
        out[i] += fb * y
    return out[:n], den


def _sub(a, b, n):
    bn, bd = b
    return _add(a, ([-y for y in bn], bd), n)


def _mul(a, b, n):
    an, ad = a
    bn, bd = b
    if not an or not bn:
        return [], ad * bd
    out = [0] * min(n, len(an) + len(bn) - 1)
    la = min(len(an), n)
    for i in range(la):
        ai = an[i]
        if not ai:
            continue
        top = min(len(bn), n - i)
        for j in range(top):
            out[i + j] += ai * bn[j]
    return out, ad * bd

def _from_fraction(c: Fraction):
    return [c.numerator], c.denominator


def _series_of_unipoly(u: UniPoly, n: int):
    den = 1
    for c in u.coeffs[:n]:
        den = den * c.denominator // _int_gcd(den, c.denominator)
    nums = [int(c * den) for c in u.coeffs[:n]]
    return nums, den


def _to_fractions(a, n):
    nums, den = a
    out = [Fraction(v, den) for v in nums[:n]]
    out.extend([Fraction(0)] * (n - len(out)))
    return out


def _eval_bipoly(P: BiPoly, f, n, cache):
    """P(X, f) mod X^n by Horner in T; coefficient series are cached per n."""
    key = ("coeffs", n)
    if key not in cache:
        cache[key] = [_series_of_unipoly(u, n) for u in P.tcoeffs]
    cs = cache[key]
    acc = cs[-1]
    for c in reversed(cs[:-1]):
        acc = _add(_mul(acc, f, n), c, n)
    return acc


def hensel_lift(b: BranchSpec, N: int) -> SeriesCoefficients:
    """Coefficients a_0 .. a_N of the branch series, exactly.

    Newton root iteration f <- f - P(X, f) * g with the reciprocal
    g ~ 1/P_T(X, f) advanced by g <- g * (2 - P_T(X, f) * g); each round
    doubles the trusted order.
    """
    if N < 0:
        raise ValueError("order must be >= 0")
    P = b.P
    PT = P.derivative_t()
    n_target = N + 1
    f = _from_fraction(b.t0)
    g0 = 1 / PT.at_x(0)(b.t0)
    g = _from_fraction(g0)
    m = 1
    cache_p = {}
    cache_pt = {}
    while m < n_target:
        m = min(2 * m, n_target)
        pf = _eval_bipoly(P, f, m, cache_p)
        f = _norm(*_sub(f, _mul(pf, g, m), m))
        if m < n_target:
            ptf = _eval_bipoly(PT, f, m, cache_pt)
            # g * (2 - ptf * g)
            two = ([2], 1)
            g = _norm(*_mul(g, _sub(two, _mul(ptf, g, m), m), m))
    return SeriesCoefficients(tuple(_to_fractions(f, n_target)), N)


def verify_annihilation(b: BranchSpec, s: SeriesCoefficients) -> bool:
    """True iff P(X, f_N(X)) = 0 mod X^(N+1), by exact arithmetic."""
    n = s.order + 1
    den = 1
    for c in s.coeffs:
        den = den * c.denominator // _int_gcd(den, c.denominator)
    f = ([int(c * den) for c in s.coeffs], den)
    val = _eval_bipoly(b.P, f, n, {})
    return all(v == 0 for v in val[0])
