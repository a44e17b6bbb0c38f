"""Candidate singularities of a branch: where the T-leading coefficient or
the T-discriminant of the annihilator vanishes.

Complex candidate locations are found numerically (simultaneous iteration
via mpmath) and then certified by a Krawczyk interval-Newton test carried
out in exact rational arithmetic, so every box provably contains exactly
one root.  Real roots bypass the numeric step entirely: Sturm isolation
already certifies them.  Exactness of the candidate moduli is recovered
through the pair-product polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .errors import InternalInconsistencyError, PrecisionExhaustedError
from .exactpoly import BiPoly, UniPoly, discriminant_T, leading_coeff_T
from .realalg import (
    EQ,
    RealAlgebraic,
    isolate_real_roots,
    modulus_of_real,
    pair_product_poly,
)

DEFAULT_BOX_WIDTH = Fraction(1, 10**10)


@dataclass(frozen=True)
class ComplexBox:
    """Axis-aligned rational rectangle certified to hold one root."""

    re_lo: Fraction
    re_hi: Fraction
    im_lo: Fraction
    im_hi: Fraction

    def center(self):
        return (self.re_lo + self.re_hi) / 2, (self.im_lo + self.im_hi) / 2

    def center_complex(self) -> complex:
        re, im = self.center()
        return complex(re, im)

    @property
    def is_real(self) -> bool:
        return self.im_lo == 0 and self.im_hi == 0

    def widths(self):
        return self.re_hi - self.re_lo, self.im_hi - self.im_lo

    def abs_sq_interval(self):
        """Exact interval enclosing |z|^2 over the box."""
        return _iv_add(_iv_square((self.re_lo, self.re_hi)),
                       _iv_square((self.im_lo, self.im_hi)))

    def disjoint(self, other: "ComplexBox") -> bool:
        return (
            self.re_hi < other.re_lo
            or other.re_hi < self.re_lo
            or self.im_hi < other.im_lo
            or other.im_hi < self.im_lo
        )


@dataclass(frozen=True)
class CandidateSet:
    """Squarefree candidate polynomial, certified boxes, exact moduli.

    ``moduli`` is ascending and excludes 0: the expansion point never
    obstructs because the series is convergent, so its radius is positive.
    ``nonzero_part`` is D with any root at the origin divided out.
    """

    D: UniPoly
    nonzero_part: UniPoly
    boxes: tuple
    moduli: tuple  # ((RealAlgebraic, (box indices...)), ...)

    @property
    def largest_modulus(self):
        if not self.moduli:
            return None
        return self.moduli[-1][0]


def candidate_polynomial(P: BiPoly) -> UniPoly:
    """Squarefree part of lc_T(P) * disc_T(P).

    Its complex roots contain every point where any branch of P can fail
    to continue; coprimality of P and dP/dT over Q(X) makes it nonzero.
    """
    if P.deg_t < 1:
        raise ValueError("candidate polynomial needs deg_T >= 1")
    product = leading_coeff_T(P) * discriminant_T(P)
    if product.is_zero:
        raise InternalInconsistencyError("lc * disc vanished on squarefree input")
    if product.degree == 0:
        return UniPoly.one()
    return product.squarefree()


def isolate_complex_roots(D: UniPoly, prec: Fraction = DEFAULT_BOX_WIDTH):
    """One certified box per complex root of the squarefree D.

    Real roots come from exact Sturm isolation (degenerate imaginary
    interval); strictly complex roots come as conjugate pairs, each upper
    root certified by the rational Krawczyk operator and mirrored.
    """
    if D.is_zero:
        raise ValueError("zero polynomial")
    prec = Fraction(prec)
    D = D.primitive()
    d = D.degree
    if d <= 0:
        return []
    reals = isolate_real_roots(D)
    npairs = (d - len(reals)) // 2
    if len(reals) + 2 * npairs != d:
        raise InternalInconsistencyError("root count parity mismatch")
    boxes = []
    for r in reals:
        rr = r.refined(prec)
        boxes.append(ComplexBox(rr.lo, rr.hi, Fraction(0), Fraction(0)))
    if npairs:
        for re_iv, im_iv in _certified_upper_roots(D, npairs, prec):
            boxes.append(ComplexBox(re_iv[0], re_iv[1], im_iv[0], im_iv[1]))
            boxes.append(ComplexBox(re_iv[0], re_iv[1], -im_iv[1], -im_iv[0]))
    boxes.sort(key=lambda b: (b.re_lo, b.im_lo))
    for i, a in enumerate(boxes):
        for b in boxes[i + 1 :]:
            if not a.disjoint(b):
                raise PrecisionExhaustedError(
                    "certified boxes overlap at the requested precision"
                )
    return boxes


def candidate_moduli(D: UniPoly, boxes):
    """Ascending exact moduli with the indices of the boxes they own.

    Real boxes turn into |root| directly; complex boxes get the positive
    real root of pair_product_poly(D0)(u^2) matched against the exact
    |z|^2 enclosure of the box.  Modulus 0 is dropped.
    """
    k0, D0 = D.primitive().strip_root_at_zero()
    entries = []  # (RealAlgebraic modulus, box index)
    pair_roots = None
    for idx, box in enumerate(boxes):
        if box.is_real:
            root = _real_root_in_box(D, D0, box)
            if root is None:  # the origin root
                continue
            entries.append((modulus_of_real(root), idx))
        else:
            if pair_roots is None:
                W = pair_product_poly(D0).dilate_power(2).squarefree()
                pair_roots = [r for r in isolate_real_roots(W) if r.sign() > 0]
            entries.append((_match_modulus(D, box, pair_roots), idx))
    groups = []
    for modulus, idx in entries:
        for gmod, gidx in groups:
            if gmod.compare(modulus) == EQ:
                gidx.append(idx)
                break
        else:
            groups.append((modulus, [idx]))
    groups.sort(key=_ModulusKey)
    return tuple((m, tuple(ix)) for m, ix in groups)


def build_candidate_set(P: BiPoly, prec: Fraction = DEFAULT_BOX_WIDTH) -> CandidateSet:
    D = candidate_polynomial(P)
    boxes = isolate_complex_roots(D, prec)
    moduli = candidate_moduli(D, boxes)
    _, D0 = D.strip_root_at_zero()
    return CandidateSet(D=D, nonzero_part=D0, boxes=tuple(boxes), moduli=moduli)


class _ModulusKey:
    def __init__(self, entry):
        self.value = entry[0]

    def __lt__(self, other):
        return self.value.compare(other.value) < 0


def _real_root_in_box(D, D0, box):
    """Exact real root sitting in a degenerate box; None for the origin."""
    if box.re_lo == box.re_hi:
        r = box.re_lo
        if r == 0:
            return None
        return RealAlgebraic.from_rational(r)
    if box.re_lo <= 0 <= box.re_hi and D[0] == 0:
        # the isolating interval of the origin root never straddles 0 with
        # another root inside, so a sign check suffices
        raise InternalInconsistencyError("origin root not pinned to a point box")
    return RealAlgebraic(D0.squarefree(), box.re_lo, box.re_hi)


def _match_modulus(D, box, pair_roots):
    """The unique positive root of the pair-product polynomial matching
    the certified |z|^2 enclosure of the box."""
    candidates = list(pair_roots)
    for _ in range(200):
        slo, shi = box.abs_sq_interval()
        alive = []
        for r in candidates:
            rlo, rhi = sorted((r.lo * r.lo, r.hi * r.hi))
            if not (rhi < slo or rlo > shi):
                alive.append(r)
        if len(alive) == 1:
            return alive[0]
        if not alive:
            raise InternalInconsistencyError(
                "no pair-product root matches a certified box"
            )
        candidates = [r.refined((r.hi - r.lo) / 4) if r.hi > r.lo else r for r in alive]
        box = _krawczyk_contract(D, box)
    raise InternalInconsistencyError("modulus matching did not converge")


# -- exact interval arithmetic (closed rational intervals as tuples) --------


def _iv(a, b=None):
    if b is None:
        return (a, a)
    return (a, b)


def _iv_add(x, y):
    return (x[0] + y[0], x[1] + y[1])


def _iv_sub(x, y):
    return (x[0] - y[1], x[1] - y[0])


def _iv_mul(x, y):
    p = (x[0] * y[0], x[0] * y[1], x[1] * y[0], x[1] * y[1])
    return (min(p), max(p))


def _iv_square(x):
    lo, hi = x
    if lo >= 0:
        return (lo * lo, hi * hi)
    if hi <= 0:
        return (hi * hi, lo * lo)
    return (Fraction(0), max(lo * lo, hi * hi))


def _civ_mul(a, b):
    re = _iv_sub(_iv_mul(a[0], b[0]), _iv_mul(a[1], b[1]))
    im = _iv_add(_iv_mul(a[0], b[1]), _iv_mul(a[1], b[0]))
    return (re, im)


def _civ_add(a, b):
    return (_iv_add(a[0], b[0]), _iv_add(a[1], b[1]))


def _civ_sub(a, b):
    return (_iv_sub(a[0], b[0]), _iv_sub(a[1], b[1]))


def _cpoly_eval_interval(coeffs, z):
    acc = (_iv(Fraction(0)), _iv(Fraction(0)))
    for c in reversed(coeffs):
        acc = _civ_mul(acc, z)
        acc = (_iv_add(acc[0], _iv(c)), acc[1])
    return acc


def _cpoly_eval_exact(coeffs, re, im):
    are, aim = Fraction(0), Fraction(0)
    for c in reversed(coeffs):
        are, aim = are * re - aim * im + c, are * im + aim * re
    return are, aim


def _krawczyk_operator(D: UniPoly, box: ComplexBox):
    """K(B) = m - Y D(m) + (1 - Y D'(B)) (B - m) as a complex interval."""
    dcoeffs = list(D.coeffs)
    dpcoeffs = list(D.derivative().coeffs)
    mre, mim = box.center()
    fre, fim = _cpoly_eval_exact(dcoeffs, mre, mim)
    gre, gim = _cpoly_eval_exact(dpcoeffs, mre, mim)
    denom = gre * gre + gim * gim
    if denom == 0:
        return None
    yre, yim = gre / denom, -gim / denom
    # m - Y f(m), exact point
    pre = mre - (yre * fre - yim * fim)
    pim = mim - (yre * fim + yim * fre)
    B = (_iv(box.re_lo, box.re_hi), _iv(box.im_lo, box.im_hi))
    dpB = _cpoly_eval_interval(dpcoeffs, B)
    Yiv = (_iv(yre), _iv(yim))
    one = (_iv(Fraction(1)), _iv(Fraction(0)))
    factor = _civ_sub(one, _civ_mul(Yiv, dpB))
    spread = _civ_sub(B, (_iv(mre), _iv(mim)))
    tail = _civ_mul(factor, spread)
    return _civ_add((_iv(pre), _iv(pim)), tail)


def _strictly_inside(inner, outer):
    return inner[0] > outer[0] and inner[1] < outer[1]


def _krawczyk_certifies(D, box):
    K = _krawczyk_operator(D, box)
    if K is None:
        return False
    return _strictly_inside(K[0], (box.re_lo, box.re_hi)) and _strictly_inside(
        K[1], (box.im_lo, box.im_hi)
    )


def _krawczyk_contract(D, box):
    K = _krawczyk_operator(D, box)
    if K is None:
        return box
    re = (max(K[0][0], box.re_lo), min(K[0][1], box.re_hi))
    im = (max(K[1][0], box.im_lo), min(K[1][1], box.im_hi))
    if re[0] > re[1] or im[0] > im[1]:
        raise InternalInconsistencyError("Krawczyk contraction emptied a box")
    return ComplexBox(re[0], re[1], im[0], im[1])


def _mpf_to_fraction(x) -> Fraction:
    sign, man, exp, _ = mpmath.mpf(x)._mpf_
    if man == 0:
        return Fraction(0)
    v = Fraction(int(man)) * (Fraction(2) ** int(exp))
    return -v if sign else v


def _certified_upper_roots(D: UniPoly, npairs: int, prec: Fraction):
    """Certified (re, im) interval pairs for the upper-half-plane roots."""
    coeffs_desc = [Fraction(c) for c in reversed(D.coeffs)]
    for dps in (30, 60, 120, 240, 480):
        with mpmath.workdps(dps):
            mp_coeffs = [mpmath.mpf(c.numerator) / c.denominator for c in coeffs_desc]
            try:
                roots, err = mpmath.polyroots(
                    mp_coeffs, maxsteps=200, extraprec=80, error=True
                )
            except mpmath.libmp.NoConvergence:
                continue
            upper = [z for z in roots if mpmath.im(z) > 0]
            if len(upper) != npairs:
                continue
            width0 = max(
                _mpf_to_fraction(err) * 16, Fraction(1, 10 ** (dps - 6))
            )
            out = []
            ok = True
            for z in upper:
                iv = _certify_root(D, _mpf_to_fraction(mpmath.re(z)),
                                   _mpf_to_fraction(mpmath.im(z)), width0, prec)
                if iv is None:
                    ok = False
                    break
                out.append(iv)
            if ok:
                return out
    raise PrecisionExhaustedError(
        "complex root certification failed at maximum working precision"
    )


def _certify_root(D, cre, cim, width0, prec):
    w = width0
    for _ in range(60):
        box = ComplexBox(cre - w, cre + w, cim - w, cim + w)
        if box.im_lo > 0 and _krawczyk_certifies(D, box):
            while max(box.widths()) > prec:
                shrunk = _krawczyk_contract(D, box)
                if max(shrunk.widths()) >= max(box.widths()):
                    return None  # stalled; caller retries at higher precision
                box = shrunk
            return ((box.re_lo, box.re_hi), (box.im_lo, box.im_hi))
        w *= 2
        if cim - w <= 0:
            return None
    return None
