"""Independent brute-force oracles used by the test suite.

Everything here deliberately avoids the library's own algorithms:
resultants come from explicit Sylvester determinants, Taylor coefficients
from long division, and root locations from sign scans or numpy.
"""

from fractions import Fraction

from convrad.exactpoly import BiPoly, UniPoly


def sylvester_resultant_T(A: BiPoly, B: BiPoly) -> UniPoly:
    """Res_T via the (m+n) x (m+n) Sylvester matrix, expanded by
    fraction-free Gaussian elimination over Q[X]."""
    m, n = A.deg_t, B.deg_t
    size = m + n
    if size == 0:
        return UniPoly.one()
    rows = []
    acoeffs = [A.tcoeffs[m - j] if 0 <= m - j <= m else UniPoly() for j in range(m + 1)]
    bcoeffs = [B.tcoeffs[n - j] if 0 <= n - j <= n else UniPoly() for j in range(n + 1)]
    for i in range(n):
        row = [UniPoly()] * size
        for j, c in enumerate(acoeffs):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [UniPoly()] * size
        for j, c in enumerate(bcoeffs):
            row[i + j] = c
        rows.append(row)
    return _det_unipoly(rows)


def _det_unipoly(rows):
    """Bareiss fraction-free determinant of a matrix of UniPoly."""
    n = len(rows)
    m = [row[:] for row in rows]
    sign = 1
    prev = UniPoly.one()
    for k in range(n - 1):
        if m[k][k].is_zero:
            for i in range(k + 1, n):
                if not m[i][k].is_zero:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return UniPoly.zero()
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[k][k] * m[i][j] - m[i][k] * m[k][j]
                m[i][j] = num.exact_div(prev)
            m[i][k] = UniPoly.zero()
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return -det if sign < 0 else det


def rational_series(numer: UniPoly, denom: UniPoly, order: int):
    """Taylor coefficients of numer/denom at 0 by long division.

    Requires denom(0) != 0.  Returns order+1 Fractions.
    """
    d0 = denom[0]
    assert d0 != 0
    coeffs = []
    rem = list(numer.coeffs) + [Fraction(0)] * (order + 1)
    for k in range(order + 1):
        c = rem[k] / d0
        coeffs.append(c)
        for j, dj in enumerate(denom.coeffs):
            if k + j <= order:
                rem[k + j] -= c * dj
    return coeffs


def sign_scan_roots(poly: UniPoly, step=Fraction(1, 10000)):
    """Real roots of a squarefree polynomial by sign scanning a grid.

    The grid covers the Cauchy bound.  Cells where the value is
    suspiciously small or a sign change sits next to another one are
    rescanned at 1/100 of the step.  Returns floats, ascending.
    """
    import numpy as np

    sq = poly.squarefree()
    cs = [float(c) for c in sq.coeffs]
    lead = abs(cs[-1])
    bound = 1.0 + max(abs(c) for c in cs) / lead
    h = float(step)
    xs = np.arange(-bound, bound + h, h)
    vals = np.polyval(list(reversed(cs)), xs)
    roots = []
    suspicious = np.abs(vals) < 1e-9
    signs = np.sign(vals)
    idx = np.nonzero((signs[:-1] * signs[1:] < 0) | suspicious[:-1])[0]
    for i in idx:
        a, b = xs[i], xs[i + 1]
        fa, fb = vals[i], vals[i + 1]
        if abs(fa) < 1e-9 or fa * fb >= 0:
            sub = np.linspace(a - h, b + h, 401)
            sv = np.polyval(list(reversed(cs)), sub)
            ss = np.sign(sv)
            for j in np.nonzero(ss[:-1] * ss[1:] < 0)[0]:
                roots.append(_bisect_float(cs, sub[j], sub[j + 1]))
            for j in np.nonzero(sv == 0)[0]:
                roots.append(float(sub[j]))
        else:
            roots.append(_bisect_float(cs, a, b))
    out = []
    for r in sorted(roots):
        if not out or abs(r - out[-1]) > 1e-7:
            out.append(r)
    return out


def _bisect_float(cs, a, b):
    import numpy as np

    rc = list(reversed(cs))
    fa = np.polyval(rc, a)
    for _ in range(200):
        m = 0.5 * (a + b)
        fm = np.polyval(rc, m)
        if fm == 0:
            return m
        if (fa < 0) != (fm < 0):
            b = m
        else:
            a, fa = m, fm
        if b - a < 1e-14:
            break
    return 0.5 * (a + b)
