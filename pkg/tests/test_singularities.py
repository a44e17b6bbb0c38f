from fractions import Fraction

import pytest

from convrad.exactpoly import BiPoly, UniPoly
from convrad.realalg import EQ, RealAlgebraic
from convrad.singularities import (
    build_candidate_set,
    candidate_moduli,
    candidate_polynomial,
    isolate_complex_roots,
)


def bp(*tcoeffs):
    return BiPoly([UniPoly(c) for c in tcoeffs])


EXAMPLE5 = bp([-1], [Fraction(2, 3), -1])
CATALAN = bp([1], [-1], [0, 1])
CUBIC = bp([0, -1], [-3], [], [1])


class TestCandidatePolynomial:
    def test_example5(self):
        assert candidate_polynomial(EXAMPLE5) == UniPoly([-2, 3])  # 3X - 2

    def test_catalan(self):
        # lc = X, disc = 1 - 4X: roots {0, 1/4}
        D = candidate_polynomial(CATALAN)
        assert D(Fraction(0)) == 0
        assert D(Fraction(1, 4)) == 0
        assert D.degree == 2

    def test_cubic(self):
        D = candidate_polynomial(CUBIC)
        assert D == UniPoly([-4, 0, 1])  # X^2 - 4

    def test_degree_zero_in_t_rejected(self):
        with pytest.raises(ValueError):
            candidate_polynomial(bp([1, 2]))

    def test_constant_for_polynomial_series(self):
        # T - (X^2 + 1): no candidates at all
        P = bp([-1, 0, -1], [1])
        assert candidate_polynomial(P).degree == 0


class TestIsolateComplexRoots:
    def test_rational_root(self):
        boxes = isolate_complex_roots(UniPoly([-2, 3]))
        assert len(boxes) == 1
        b = boxes[0]
        assert b.is_real and b.re_lo == b.re_hi == Fraction(2, 3)

    def test_pm_i(self):
        boxes = isolate_complex_roots(UniPoly([1, 0, 1]))
        assert len(boxes) == 2
        lower, upper = sorted(boxes, key=lambda b: b.im_lo)
        # conjugate symmetry
        assert lower.re_lo == upper.re_lo and lower.re_hi == upper.re_hi
        assert lower.im_lo == -upper.im_hi and lower.im_hi == -upper.im_lo
        assert upper.im_lo <= 1 <= upper.im_hi
        assert upper.re_lo <= 0 <= upper.re_hi

    def test_quarter(self):
        boxes = isolate_complex_roots(UniPoly([1, -4]))
        assert len(boxes) == 1
        assert boxes[0].re_lo == boxes[0].re_hi == Fraction(1, 4)

    def test_box_count_matches_degree(self):
        # squarefree => one box per root, multiplicity one each
        for poly in [
            UniPoly([1, 0, 1]) * UniPoly([-2, 3]),
            UniPoly([2, 1, 1, 1]),
            UniPoly([-4, 0, 1]) * UniPoly([1, 1, 1]),
        ]:
            sf = poly.squarefree()
            boxes = isolate_complex_roots(sf)
            assert len(boxes) == sf.degree

    def test_width_request(self):
        prec = Fraction(1, 10**6)
        boxes = isolate_complex_roots(UniPoly([2, 1, 1, 1]), prec)
        for b in boxes:
            wr, wi = b.widths()
            assert wr <= prec and wi <= prec


class TestCandidateModuli:
    def test_catalan_moduli(self):
        D = candidate_polynomial(CATALAN)
        boxes = isolate_complex_roots(D)
        moduli = candidate_moduli(D, boxes)
        assert len(moduli) == 1  # 0 excluded
        m, owners = moduli[0]
        assert m.is_rational and m.rational_value() == Fraction(1, 4)
        assert len(owners) == 1

    def test_pm_i_single_modulus(self):
        D = UniPoly([1, 0, 1])
        boxes = isolate_complex_roots(D)
        moduli = candidate_moduli(D, boxes)
        assert len(moduli) == 1
        m, owners = moduli[0]
        assert m.compare(RealAlgebraic.from_rational(1)) == EQ
        assert set(owners) == {0, 1}

    def test_example5(self):
        D = candidate_polynomial(EXAMPLE5)
        boxes = isolate_complex_roots(D)
        moduli = candidate_moduli(D, boxes)
        assert len(moduli) == 1
        assert moduli[0][0].rational_value() == Fraction(2, 3)

    def test_cubic_tie(self):
        D = candidate_polynomial(CUBIC)
        boxes = isolate_complex_roots(D)
        moduli = candidate_moduli(D, boxes)
        assert len(moduli) == 1
        m, owners = moduli[0]
        assert m.rational_value() == 2
        assert len(owners) == 2

    def test_mixed_real_complex_ordering(self):
        # roots: 1/4 (real), +-i (modulus 1), 3 (real)
        D = (UniPoly([1, -4]) * UniPoly([1, 0, 1]) * UniPoly([-3, 1])).squarefree()
        cs = build_candidate_set(bp([0, 1], [0], [1]))  # only to get API shape
        boxes = isolate_complex_roots(D)
        moduli = candidate_moduli(D, boxes)
        values = [m for m, _ in moduli]
        assert len(moduli) == 3
        assert values[0].rational_value() == Fraction(1, 4)
        assert values[1].compare(RealAlgebraic.from_rational(1)) == EQ
        assert values[2].rational_value() == 3
        assert len(moduli[1][1]) == 2

    def test_modulus_interval_overlaps_box_interval(self):
        D = (UniPoly([1, 0, 1]) * UniPoly([-2, 0, 1])).squarefree()
        boxes = isolate_complex_roots(D)
        moduli = candidate_moduli(D, boxes)
        for m, owners in moduli:
            mm = m.refined(Fraction(1, 10**8))
            for i in owners:
                slo, shi = boxes[i].abs_sq_interval()
                assert not (mm.hi * mm.hi < slo or mm.lo * mm.lo > shi)


class TestBuildCandidateSet:
    def test_catalan_set(self):
        cs = build_candidate_set(CATALAN)
        assert cs.D.degree == 2
        assert len(cs.boxes) == 2
        assert len(cs.moduli) == 1
        assert cs.largest_modulus.rational_value() == Fraction(1, 4)

    def test_infinity_case_empty(self):
        P = bp([-1, 0, -1], [1])
        cs = build_candidate_set(P)
        assert cs.boxes == ()
        assert cs.moduli == ()
        assert cs.largest_modulus is None
