"""Exact real algebraic numbers as (squarefree integer polynomial,
isolating rational interval).

Isolation and counting use Sturm sequences over exact rationals; equality
between two numbers is decided through the gcd of the defining
polynomials, so comparison always terminates.  Rational roots are
snapped to point intervals when the continued-fraction search finds
them within the refinement budget.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .exactpoly import BiPoly, UniPoly, resultant_T

LT, EQ, GT = -1, 0, 1

# bisection budget when probing an isolating interval for a rational root;
# denominators up to ~2^40 are recovered
_SNAP_STEPS = 84


class RealAlgebraic:
    """A real algebraic number.

    ``defining`` is squarefree and integer-primitive with exactly one real
    root in [lo, hi]; either lo == hi (the root is that rational) or the
    signs of ``defining`` at the endpoints differ and are nonzero.
    """

    __slots__ = ("defining", "lo", "hi")

    def __init__(self, defining: UniPoly, lo, hi):
        self.defining = defining
        self.lo = Fraction(lo)
        self.hi = Fraction(hi)

    @classmethod
    def from_rational(cls, r) -> "RealAlgebraic":
        r = Fraction(r)
        poly = UniPoly([-r.numerator, r.denominator]).primitive()
        return cls(poly, r, r)

    @property
    def is_rational(self) -> bool:
        return self.lo == self.hi

    def rational_value(self) -> Fraction:
        if not self.is_rational:
            raise ValueError("not pinned to a rational")
        return self.lo

    def __repr__(self):
        return f"RealAlgebraic({self.defining!r}, [{self.lo}, {self.hi}])"

    def __float__(self):
        a = self.refined(Fraction(1, 10**17))
        return float((a.lo + a.hi) / 2)

    # -- refinement ------------------------------------------------------

    def refined(self, eps) -> "RealAlgebraic":
        """Same root, interval width <= eps, by sign-preserving bisection."""
        eps = Fraction(eps)
        if eps <= 0:
            raise ValueError("eps must be positive")
        lo, hi = self.lo, self.hi
        if lo == hi:
            return self
        f = self.defining
        slo = _sign(f(lo))
        while hi - lo > eps:
            mid = (lo + hi) / 2
            smid = _sign(f(mid))
            if smid == 0:
                return RealAlgebraic(f, mid, mid)
            if smid == slo:
                lo = mid
            else:
                hi = mid
        return RealAlgebraic(f, lo, hi)

    def decimal(self, digits: int = 12) -> str:
        """Decimal string with the given number of significant digits."""
        a = self
        # refine until the leading digit position is stable
        width = Fraction(1, 10 ** (digits + 4))
        while True:
            a = a.refined(width * max(1, abs(a.lo) + abs(a.hi)) / 2)
            mid = (a.lo + a.hi) / 2
            if mid != 0 or a.lo == a.hi:
                break
            width /= 10**4
        if mid == 0:
            return "0"
        exp = _decimal_exponent(abs(mid))
        quant = exp - digits + 1
        scaled = mid / Fraction(10) ** quant
        n = _round_half_even(scaled)
        s = str(abs(n))
        if len(s) > digits:  # rounding bumped to the next power of ten
            exp += 1
            quant += 1
            n = _round_half_even(mid / Fraction(10) ** quant)
            s = str(abs(n))
        sign = "-" if n < 0 else ""
        if 0 <= exp < digits:
            intpart = s[: exp + 1]
            fracpart = s[exp + 1 :]
            return sign + intpart + ("." + fracpart if fracpart else "")
        if -5 < exp < 0:
            return sign + "0." + "0" * (-exp - 1) + s
        return f"{sign}{s[0]}.{s[1:]}e{exp:+d}"

    # -- comparison --------------------------------------------------------

    def compare(self, other: "RealAlgebraic") -> int:
        """Exact trichotomy: LT, EQ, or GT."""
        a, b = self, other
        if a.is_rational and b.is_rational:
            return _cmp(a.lo, b.lo)
        # quick interval separation
        for _ in range(4):
            if a.hi < b.lo:
                return LT
            if b.hi < a.lo:
                return GT
            a = a.refined((a.hi - a.lo) / 4 if a.hi > a.lo else Fraction(1))
            b = b.refined((b.hi - b.lo) / 4 if b.hi > b.lo else Fraction(1))
        # overlapping: decide equality through the common factor
        g = a.defining.gcd(b.defining)
        lo = max(a.lo, b.lo)
        hi = min(a.hi, b.hi)
        if g.degree >= 1 and lo <= hi and count_roots(g, lo, hi) > 0:
            return EQ
        # roots are distinct; bisect until the intervals separate
        while True:
            if a.hi < b.lo:
                return LT
            if b.hi < a.lo:
                return GT
            wa = a.hi - a.lo
            wb = b.hi - b.lo
            if wa >= wb and wa > 0:
                a = a.refined(wa / 4)
            elif wb > 0:
                b = b.refined(wb / 4)
            else:
                # both rational-pinned and still overlapping: equal rationals
                return _cmp(a.lo, b.lo)

    def compare_rational(self, r) -> int:
        return self.compare(RealAlgebraic.from_rational(r))

    def sign(self) -> int:
        return self.compare_rational(0)

    def pow(self, p: int) -> "RealAlgebraic":
        """p-th power, p >= 1, as an exact real algebraic number."""
        if p < 1:
            raise ValueError("power must be >= 1")
        if p == 1:
            return self
        if self.is_rational:
            return RealAlgebraic.from_rational(self.lo**p)
        # eliminate s between defining(s) = 0 and u = s^p
        elim = BiPoly(
            [UniPoly.const(c) for c in self.defining.coeffs]
        )  # defining(s), constant in u
        power_rel = [UniPoly()] * (p + 1)
        power_rel[0] = UniPoly.x()  # u
        power_rel[p] = UniPoly.const(-1)  # -s^p
        target = resultant_T(elim, BiPoly(power_rel)).squarefree()
        a = self
        # interval for the power: monotone on a sign-definite interval
        while _sign(a.lo) != _sign(a.hi):
            a = a.refined((a.hi - a.lo) / 4)
        while True:
            bounds = sorted((a.lo**p, a.hi**p))
            matches = [
                r for r in isolate_real_roots(target) if _overlaps(r, bounds[0], bounds[1])
            ]
            if len(matches) == 1:
                m = matches[0]
                lo, hi = max(m.lo, bounds[0]), min(m.hi, bounds[1])
                if m.is_rational:
                    return m
                return RealAlgebraic(m.defining, lo, hi)
            a = a.refined((a.hi - a.lo) / 8)


def _overlaps(root: RealAlgebraic, lo, hi) -> bool:
    return not (root.hi < lo or root.lo > hi)


def _sign(x) -> int:
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


def _cmp(a, b) -> int:
    if a < b:
        return LT
    if a > b:
        return GT
    return EQ


def _decimal_exponent(x: Fraction) -> int:
    """floor(log10(x)) for positive rational x, exactly."""
    e = len(str(x.numerator)) - len(str(x.denominator))
    for cand in (e + 1, e, e - 1, e - 2):
        if Fraction(10) ** cand <= x:
            return cand
    raise AssertionError("unreachable")


def _round_half_even(x: Fraction) -> int:
    n = x.numerator // x.denominator
    rem = x - n
    if rem > Fraction(1, 2) or (rem == Fraction(1, 2) and n % 2):
        n += 1
    return n


# -- Sturm machinery -----------------------------------------------------


def sturm_chain(poly: UniPoly):
    """Sturm sequence of a squarefree integer polynomial, kept integral
    by positive-content removal (positive scaling preserves variations)."""
    chain = [poly, poly.derivative().primitive() if poly.degree >= 1 else UniPoly()]
    if chain[1].is_zero:
        return chain[:1]
    while True:
        a, b = chain[-2], chain[-1]
        r = _signed_prem(a, b)
        if r.is_zero:
            break
        chain.append(_positive_primitive(r))
    return chain


def _signed_prem(a: UniPoly, b: UniPoly) -> UniPoly:
    """-(a mod b) up to a positive factor, via pseudo-division."""
    da, db = a.degree, b.degree
    if da < db:
        return -a
    lc = b.lead
    r = a
    e = 0
    while not r.is_zero and r.degree >= db:
        k = r.degree - db
        r = r.scale(lc) - b.shift_up(k).scale(r.lead)
        e += 1
    # r = lc^e * (a mod b); flip so the result is a positive multiple of -(a mod b)
    if lc < 0 and e % 2:
        return r
    return -r


def _positive_primitive(p: UniPoly) -> UniPoly:
    prim = p.primitive()
    return prim if p.lead > 0 else -prim


def _variations(chain, x: Fraction) -> int:
    signs = [s for s in (_sign(f(x)) for f in chain) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(poly: UniPoly, lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots of poly in (lo, hi], Sturm count."""
    sq = poly.squarefree()
    if sq.degree < 1:
        return 0
    chain = sturm_chain(sq)
    return _variations(chain, lo) - _variations(chain, hi)


def root_bound(poly: UniPoly) -> Fraction:
    """Cauchy bound: all real roots lie in (-B, B)."""
    lead = abs(poly.lead)
    m = max(abs(c) for c in poly.coeffs)
    return 1 + m / lead


def isolate_real_roots(poly: UniPoly):
    """All real roots as RealAlgebraic values, ascending.

    The squarefree part is taken internally.  Rational roots found by the
    simplest-rational probe come back as point intervals.
    """
    if poly.is_zero:
        raise ValueError("cannot isolate roots of the zero polynomial")
    sq = poly.squarefree()
    if sq.degree < 1:
        return []
    chain = sturm_chain(sq)
    bound = root_bound(sq)
    lo, hi = -bound, bound
    # the Cauchy bound is strict, so endpoints are never roots
    intervals = []
    _isolate(sq, chain, lo, _variations(chain, lo), hi, _variations(chain, hi), intervals)
    roots = []
    for a, b in intervals:
        if a == b:
            roots.append(RealAlgebraic(_minimal_rational_poly(sq, a), a, a))
            continue
        r = _snap_rational(sq, a, b)
        if r is not None:
            roots.append(RealAlgebraic(_minimal_rational_poly(sq, r), r, r))
        else:
            # keep the reported intervals reasonably tight
            roots.append(RealAlgebraic(sq, a, b).refined(Fraction(1, 2)))
    return roots


def _minimal_rational_poly(sq: UniPoly, r: Fraction) -> UniPoly:
    return UniPoly([-r.numerator, r.denominator]).primitive()


def _isolate(f, chain, lo, vlo, hi, vhi, out):
    n = vlo - vhi
    if n == 0:
        return
    if n == 1 and _sign(f(lo)) * _sign(f(hi)) < 0:
        out.append((lo, hi))
        return
    mid = (lo + hi) / 2
    if f(mid) == 0:
        out_mid = True
    else:
        out_mid = False
    if out_mid:
        # nudge the split points off the root for clean sign counts
        left = mid - (hi - lo) / 1024
        right = mid + (hi - lo) / 1024
        while f(left) == 0:
            left = (lo + left) / 2
        while f(right) == 0:
            right = (right + hi) / 2
        _isolate(f, chain, lo, vlo, left, _variations(chain, left), out)
        out.append((mid, mid))
        _isolate(f, chain, right, _variations(chain, right), hi, vhi, out)
        return
    vmid = _variations(chain, mid)
    _isolate(f, chain, lo, vlo, mid, vmid, out)
    _isolate(f, chain, mid, vmid, hi, vhi, out)


def _snap_rational(f: UniPoly, lo: Fraction, hi: Fraction):
    """Probe an isolating interval for a rational root via the simplest
    rational it contains; bisect up to the budget."""
    slo = _sign(f(lo))
    for _ in range(_SNAP_STEPS):
        cand = simplest_in_interval(lo, hi)
        if f(cand) == 0:
            return cand
        mid = (lo + hi) / 2
        smid = _sign(f(mid))
        if smid == 0:
            return mid
        if smid == slo:
            lo = mid
        else:
            hi = mid
    return None


def simplest_in_interval(lo: Fraction, hi: Fraction) -> Fraction:
    """The rational with smallest denominator (then magnitude) in [lo, hi]."""
    if lo > hi:
        raise ValueError("empty interval")
    if lo == hi:
        return lo
    if lo <= 0 <= hi:
        return Fraction(0)
    if hi < 0:
        return -simplest_in_interval(-hi, -lo)
    n = lo.numerator // lo.denominator  # floor, lo > 0
    if lo == n:
        return Fraction(n)
    if n + 1 <= hi:
        return Fraction(n + 1)
    inner = simplest_in_interval(1 / (hi - n), 1 / (lo - n))
    return n + 1 / inner


def refine(a: RealAlgebraic, eps) -> RealAlgebraic:
    """Functional alias for RealAlgebraic.refined."""
    return a.refined(eps)


def compare(a: RealAlgebraic, b: RealAlgebraic) -> int:
    """Functional alias for RealAlgebraic.compare."""
    return a.compare(b)


def pair_product_poly(D: UniPoly) -> UniPoly:
    """A polynomial whose roots contain every product of two roots of D.

    M(s) = Res_y(D(y), y^deg(D) * D(s/y)).  In particular every squared
    modulus |alpha|^2 of a root alpha of a real D is a root of M, since
    the conjugate of a root is again a root.  Requires D(0) != 0 so the
    second argument keeps full degree.
    """
    if D.is_zero:
        raise ValueError("zero polynomial")
    if D[0] == 0:
        raise ValueError("D(0) = 0; strip the x^k factor first")
    d = D.degree
    if d == 0:
        raise ValueError("constant polynomial has no roots to pair")
    # polynomial in y with UniPoly-in-s coefficients:
    #   coefficient of y^j is  c_{d-j} * s^{d-j}
    first = BiPoly([UniPoly.const(c) for c in D.coeffs])
    second = BiPoly(
        [UniPoly.monomial(d - j, D.coeffs[d - j]) for j in range(d + 1)]
    )
    return resultant_T(first, second).primitive()


def modulus_of_real(root: RealAlgebraic) -> RealAlgebraic:
    """|alpha| for a real algebraic alpha."""
    s = root.sign()
    if s == 0:
        return RealAlgebraic.from_rational(0)
    if s > 0:
        a = root
        while a.lo < 0:
            a = a.refined((a.hi - a.lo) / 4)
        return a
    if root.is_rational:
        return RealAlgebraic.from_rational(-root.lo)
    a = root
    while a.hi > 0:
        a = a.refined((a.hi - a.lo) / 4)
    return RealAlgebraic(a.defining.mirror().primitive(), -a.hi, -a.lo)
