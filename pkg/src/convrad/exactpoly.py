"""Dense exact polynomial arithmetic over Q.

``UniPoly`` is a dense univariate polynomial with ``Fraction`` coefficients
stored low to high.  ``BiPoly`` is a polynomial in a main variable T whose
coefficients are ``UniPoly`` values in a second variable X.

Resultants use the subresultant polynomial remainder sequence; the exact
divisions it prescribes keep coefficient growth at subresultant size
instead of the blowup of naive elimination over Q(X).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _int_gcd


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    return Fraction(c)


class UniPoly:
    """Dense polynomial in one variable over Q, coefficients low to high."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [_as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> "UniPoly":
        return cls(())

    @classmethod
    def one(cls) -> "UniPoly":
        return cls((1,))

    @classmethod
    def const(cls, c) -> "UniPoly":
        return cls((c,))

    @classmethod
    def x(cls) -> "UniPoly":
        return cls((0, 1))

    @classmethod
    def monomial(cls, k: int, c=1) -> "UniPoly":
        return cls((0,) * k + (c,))

    # -- basic queries -------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[-1]

    def __getitem__(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"UniPoly({list(self.coeffs)!r})"

    # -- ring operations -----------------------------------------------

    def __add__(self, other: "UniPoly") -> "UniPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UniPoly(out)

    def __neg__(self) -> "UniPoly":
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
        return UniPoly(out)

    def __pow__(self, n: int) -> "UniPoly":
        if n < 0:
            raise ValueError("negative polynomial power")
        result = UniPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c) -> "UniPoly":
        c = _as_fraction(c)
        return UniPoly([c * a for a in self.coeffs])

    def shift_up(self, k: int) -> "UniPoly":
        """Multiply by x^k."""
        if self.is_zero:
            return self
        return UniPoly((Fraction(0),) * k + self.coeffs)

    def derivative(self) -> "UniPoly":
        return UniPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        """Horner evaluation; works for Fraction, float, complex, mpmath."""
        acc = 0 * x  # matches the numeric type of x
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # -- division ------------------------------------------------------

    def divmod(self, other: "UniPoly"):
        """Quotient and remainder over the field Q."""
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        d = other.degree
        lc = other.lead
        q = [Fraction(0)] * max(len(r) - d, 0)
        for k in range(len(r) - d - 1, -1, -1):
            coeff = r[k + d] / lc
            if coeff:
                q[k] = coeff
                for j, c in enumerate(other.coeffs):
                    r[k + j] -= coeff * c
        return UniPoly(q), UniPoly(r[:d])

    def exact_div(self, other: "UniPoly") -> "UniPoly":
        q, r = self.divmod(other)
        if not r.is_zero:
            raise ArithmeticError("division is not exact")
        return q

    def divides(self, other: "UniPoly") -> bool:
        """True when self divides other in Q[x]."""
        if self.is_zero:
            return other.is_zero
        _, r = other.divmod(self)
        return r.is_zero

    # -- integer normalization ------------------------------------------

    def primitive(self) -> "UniPoly":
        """Integer-primitive associate: integer coefficients, content 1,
        positive leading coefficient."""
        if self.is_zero:
            return self
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // _int_gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = _int_gcd(g, abs(v))
        if ints[-1] < 0:
            g = -g
        return UniPoly([Fraction(v, g) for v in ints])

    def int_coeffs(self) -> list:
        """Coefficients of the primitive associate as plain ints."""
        return [int(c) for c in self.primitive().coeffs]

    def monic(self) -> "UniPoly":
        if self.is_zero:
            return self
        return self.scale(1 / self.lead)

    # -- gcd and squarefree ----------------------------------------------

    def gcd(self, other: "UniPoly") -> "UniPoly":
        """Primitive gcd in Q[x] by the primitive remainder sequence."""
        a, b = self.primitive(), other.primitive()
        if a.is_zero:
            return b
        if b.is_zero:
            return a
        if a.degree < b.degree:
            a, b = b, a
        while not b.is_zero:
            r = _uni_prem(a, b)
            a, b = b, r.primitive()
        return a.primitive()

    def squarefree(self) -> "UniPoly":
        """Squarefree part, integer-primitive with positive lead."""
        if self.is_zero:
            raise ValueError("squarefree part of the zero polynomial")
        if self.degree == 0:
            return UniPoly.one()
        g = self.gcd(self.derivative())
        return self.exact_div(g).primitive()

    # -- substitutions ---------------------------------------------------

    def compose(self, inner: "UniPoly") -> "UniPoly":
        acc = UniPoly()
        for c in reversed(self.coeffs):
            acc = acc * inner + UniPoly.const(c)
        return acc

    def mirror(self) -> "UniPoly":
        """p(-x)."""
        return UniPoly([-c if i & 1 else c for i, c in enumerate(self.coeffs)])

    def dilate_power(self, p: int) -> "UniPoly":
        """p(x^p): spread coefficients to every p-th slot."""
        if p < 1:
            raise ValueError("power must be >= 1")
        if self.is_zero:
            return self
        out = [Fraction(0)] * (p * self.degree + 1)
        for i, c in enumerate(self.coeffs):
            out[p * i] = c
        return UniPoly(out)

    def strip_root_at_zero(self):
        """Split off the x^k factor; returns (k, quotient)."""
        k = 0
        cs = self.coeffs
        while k < len(cs) and cs[k] == 0:
            k += 1
        return k, UniPoly(cs[k:])


def _uni_prem(a: UniPoly, b: UniPoly) -> UniPoly:
    """Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b."""
    da, db = a.degree, b.degree
    if da < db:
        return a
    lc = b.lead
    r = a
    d = da - db + 1
    e = 0
    while not r.is_zero and r.degree >= db:
        k = r.degree - db
        r = r.scale(lc) - b.shift_up(k).scale(r.lead)
        e += 1
    if e < d:
        r = r.scale(lc ** (d - e))
    return r


class BiPoly:
    """Polynomial in T with UniPoly-in-X coefficients.

    ``tcoeffs[j]`` is the coefficient of T^j.
    """

    __slots__ = ("tcoeffs",)

    def __init__(self, tcoeffs=()):
        ts = []
        for p in tcoeffs:
            ts.append(p if isinstance(p, UniPoly) else UniPoly(p))
        while ts and ts[-1].is_zero:
            ts.pop()
        self.tcoeffs = tuple(ts)

    @classmethod
    def zero(cls) -> "BiPoly":
        return cls(())

    @classmethod
    def from_const(cls, u: UniPoly) -> "BiPoly":
        return cls((u,))

    @property
    def is_zero(self) -> bool:
        return not self.tcoeffs

    @property
    def deg_t(self) -> int:
        return len(self.tcoeffs) - 1

    @property
    def lead(self) -> UniPoly:
        if not self.tcoeffs:
            return UniPoly()
        return self.tcoeffs[-1]

    def __eq__(self, other):
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self.tcoeffs == other.tcoeffs

    def __hash__(self):
        return hash(self.tcoeffs)

    def __repr__(self):
        return f"BiPoly({[list(p.coeffs) for p in self.tcoeffs]!r})"

    def __add__(self, other: "BiPoly") -> "BiPoly":
        a, b = self.tcoeffs, other.tcoeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, p in enumerate(b):
            out[i] = out[i] + p
        return BiPoly(out)

    def __neg__(self) -> "BiPoly":
        return BiPoly([-p for p in self.tcoeffs])

    def __sub__(self, other: "BiPoly") -> "BiPoly":
        return self + (-other)

    def __mul__(self, other: "BiPoly") -> "BiPoly":
        a, b = self.tcoeffs, other.tcoeffs
        if not a or not b:
            return BiPoly()
        out = [UniPoly() for _ in range(len(a) + len(b) - 1)]
        for i, pi in enumerate(a):
            if pi.is_zero:
                continue
            for j, pj in enumerate(b):
                out[i + j] = out[i + j] + pi * pj
        return BiPoly(out)

    def scale(self, u: UniPoly) -> "BiPoly":
        return BiPoly([p * u for p in self.tcoeffs])

    def shift_t(self, k: int) -> "BiPoly":
        if self.is_zero:
            return self
        return BiPoly((UniPoly(),) * k + self.tcoeffs)

    def derivative_t(self) -> "BiPoly":
        return BiPoly([p.scale(j) for j, p in enumerate(self.tcoeffs)][1:])

    def derivative_x(self) -> "BiPoly":
        return BiPoly([p.derivative() for p in self.tcoeffs])

    # -- evaluation -------------------------------------------------------

    def at_x(self, x0) -> UniPoly:
        """Specialize X := x0 (a rational); polynomial in T."""
        return UniPoly([p(_as_fraction(x0)) for p in self.tcoeffs])

    def at_t(self, t0) -> UniPoly:
        """Specialize T := t0 (a rational); polynomial in X."""
        acc = UniPoly()
        t0 = _as_fraction(t0)
        for p in reversed(self.tcoeffs):
            acc = acc.scale(t0) + p
        return acc

    def eval(self, x, t):
        """Numeric (or exact) evaluation at a point."""
        acc = 0 * t
        for p in reversed(self.tcoeffs):
            acc = acc * t + p(x)
        return acc

    def coeffs_at(self, x) -> list:
        """[c_0(x), ..., c_d(x)] for a numeric x, low to high T-degree."""
        return [p(x) for p in self.tcoeffs]

    def subs_x_power(self, p: int) -> "BiPoly":
        """X -> X^p in every coefficient."""
        return BiPoly([u.dilate_power(p) for u in self.tcoeffs])

    def max_coeff_height(self) -> float:
        h = 0.0
        for u in self.tcoeffs:
            for c in u.coeffs:
                h = max(h, abs(float(c)))
        return h

    # -- content / primitive ------------------------------------------------

    def content(self) -> UniPoly:
        g = UniPoly()
        for p in self.tcoeffs:
            g = g.gcd(p)
            if g.degree == 0:
                break
        return g

    def primitive_t(self) -> "BiPoly":
        """Remove the UniPoly content, then scale all coefficients to
        integers with global content 1 and positive leading lead."""
        if self.is_zero:
            return self
        c = self.content()
        out = [p.exact_div(c) for p in self.tcoeffs]
        den = 1
        for p in out:
            for a in p.coeffs:
                den = den * a.denominator // _int_gcd(den, a.denominator)
        g = 0
        for p in out:
            for a in p.coeffs:
                g = _int_gcd(g, abs(int(a * den)))
        if out[-1].lead < 0:
            g = -g
        factor = Fraction(den, g)
        return BiPoly([p.scale(factor) for p in out])


def _bi_prem(a: BiPoly, b: BiPoly) -> BiPoly:
    """Pseudo-remainder in T: lc_T(b)^(deg a - deg b + 1) * a mod b."""
    da, db = a.deg_t, b.deg_t
    if da < db:
        return a
    lc = b.lead
    r = a
    d = da - db + 1
    e = 0
    while not r.is_zero and r.deg_t >= db:
        k = r.deg_t - db
        r = r.scale(lc) - b.shift_t(k).scale(r.lead)
        e += 1
    if e < d:
        mult = UniPoly.one()
        for _ in range(d - e):
            mult = mult * lc
        r = r.scale(mult)
    return r


def _bi_div_coeffs(a: BiPoly, u: UniPoly) -> BiPoly:
    return BiPoly([p.exact_div(u) for p in a.tcoeffs])


def resultant_T(A: BiPoly, B: BiPoly) -> UniPoly:
    """Res_T(A, B) in Q[X] via the subresultant remainder sequence.

    Vanishes exactly where the specializations share a root or both
    leading coefficients vanish.  Conventions: Res of two T-constants is
    1; Res with one T-constant c is c^deg of the other.
    """
    if A.is_zero or B.is_zero:
        raise ValueError("resultant of a zero polynomial")
    sign = 1
    if A.deg_t < B.deg_t:
        if (A.deg_t * B.deg_t) & 1:
            sign = -sign
        A, B = B, A
    if A.deg_t == 0:
        return UniPoly.one()
    if B.deg_t == 0:
        return B.tcoeffs[0] ** A.deg_t
    g = UniPoly.one()
    h = UniPoly.one()
    while True:
        delta = A.deg_t - B.deg_t
        if (A.deg_t & 1) and (B.deg_t & 1):
            sign = -sign
        r = _bi_prem(A, B)
        A = B
        divisor = g * (h ** delta)
        B = _bi_div_coeffs(r, divisor) if not r.is_zero else r
        g = A.lead
        if delta == 0:
            pass  # h unchanged
        elif delta == 1:
            h = g
        else:
            h = (g ** delta).exact_div(h ** (delta - 1))
        if B.is_zero:
            return UniPoly.zero()
        if B.deg_t == 0:
            break
    c = B.tcoeffs[0]
    dA = A.deg_t
    res = (c ** dA).exact_div(h ** (dA - 1)) if dA >= 1 else h
    if sign < 0:
        res = -res
    return res


def resultant_uni(f: UniPoly, g: UniPoly) -> Fraction:
    """Resultant of two univariate polynomials over Q."""
    A = BiPoly([UniPoly.const(c) for c in f.coeffs])
    B = BiPoly([UniPoly.const(c) for c in g.coeffs])
    r = resultant_T(A, B)
    return r[0]


def discriminant_T(P: BiPoly) -> UniPoly:
    """disc_T(P) = (-1)^(d(d-1)/2) Res_T(P, dP/dT) / lc_T(P)."""
    d = P.deg_t
    if d < 1:
        raise ValueError("discriminant needs degree >= 1 in T")
    res = resultant_T(P, P.derivative_t())
    disc = res.exact_div(P.lead)
    if (d * (d - 1) // 2) & 1:
        disc = -disc
    return disc


def gcd_T(A: BiPoly, B: BiPoly) -> BiPoly:
    """Primitive gcd of A, B in Q(X)[T], represented over Q[X]."""
    if A.is_zero:
        return B.primitive_t()
    if B.is_zero:
        return A.primitive_t()
    a, b = A.primitive_t(), B.primitive_t()
    if a.deg_t < b.deg_t:
        a, b = b, a
    while not b.is_zero:
        r = _bi_prem(a, b)
        a, b = b, (r.primitive_t() if not r.is_zero else r)
    return a.primitive_t()


def pseudo_quotient_T(A: BiPoly, B: BiPoly) -> BiPoly:
    """Quotient of lc_T(B)^(deg A - deg B + 1) * A by B; remainder must
    come out zero (the caller guarantees divisibility in Q(X)[T])."""
    da, db = A.deg_t, B.deg_t
    if da < db:
        raise ValueError("quotient degree underflow")
    lc = B.lead
    d = da - db + 1
    r = A
    q = BiPoly()
    e = 0
    while not r.is_zero and r.deg_t >= db:
        k = r.deg_t - db
        lead_r = r.lead
        q = BiPoly([p * lc for p in q.tcoeffs]) + BiPoly(
            (UniPoly(),) * k + (lead_r,)
        )
        r = r.scale(lc) - B.shift_t(k).scale(lead_r)
        e += 1
    if not r.is_zero:
        raise ArithmeticError("pseudo-division left a remainder")
    if e < d:
        mult = lc ** (d - e)
        q = q.scale(mult)
    return q


def squarefree_part_T(P: BiPoly) -> BiPoly:
    """P with repeated T-factors removed, primitive over Q[X].

    Computed as P / gcd_T(P, dP/dT); the result generates the same root
    set over Q(X) and satisfies gcd(result, result') = 1.
    """
    if P.is_zero:
        raise ValueError("squarefree part of the zero polynomial")
    if P.deg_t == 0:
        return P.primitive_t()
    g = gcd_T(P, P.derivative_t())
    if g.deg_t == 0:
        return P.primitive_t()
    q = pseudo_quotient_T(P, g)
    return q.primitive_t()


def leading_coeff_T(P: BiPoly) -> UniPoly:
    """Coefficient of T^deg_T(P)."""
    if P.is_zero:
        raise ValueError("leading coefficient of the zero polynomial")
    return P.lead
