"""Legendre-product polynomial bases on the unit cell.

Polynomials live on [-1/2, 1/2]^d in zone-width units and are stored as
{exponent-tuple: Fraction} dictionaries.  The module provides the shifted
Legendre family used for every reconstruction basis, exact evaluation /
cell-moment functionals, and the Gram matrices that turn reconstruction
coefficients into smoothness indicators.
"""

from fractions import Fraction
from itertools import product

# One-dimensional Legendre polynomials rescaled to [-1/2, 1/2], unit leading
# coefficient.  Index k carries degree k; they are orthogonal over the cell.
_LEGENDRE_1D = [
    {0: Fraction(1)},
    {1: Fraction(1)},
    {2: Fraction(1), 0: Fraction(-1, 12)},
    {3: Fraction(1), 1: Fraction(-3, 20)},
    {4: Fraction(1), 2: Fraction(-3, 14), 0: Fraction(3, 560)},
    {5: Fraction(1), 3: Fraction(-5, 18), 1: Fraction(5, 336)},
    {6: Fraction(1), 4: Fraction(-15, 44), 2: Fraction(5, 176),
     0: Fraction(-5, 14784)},
    {7: Fraction(1), 5: Fraction(-21, 52), 3: Fraction(105, 2288),
     1: Fraction(-35, 27456)},
    {8: Fraction(1), 6: Fraction(-7, 15), 4: Fraction(7, 104),
     2: Fraction(-7, 2288), 0: Fraction(7, 329472)},
]


def _extend_legendre(k):
    """Grow the table to degree k by the monic three-term recurrence.

    For a symmetric weight the recurrence is p_{n+1} = x p_n - b_n p_{n-1}
    with b_n = <p_n, p_n> / <p_{n-1}, p_{n-1}>.
    """
    def norm2(table):
        sq = {}
        for e1, c1 in table.items():
            for e2, c2 in table.items():
                sq[e1 + e2] = sq.get(e1 + e2, Fraction(0)) + c1 * c2
        return sum((c * monomial_box_integral((e,), [Fraction(-1, 2)],
                                              [Fraction(1, 2)])
                    for e, c in sq.items()), Fraction(0))

    while len(_LEGENDRE_1D) <= k:
        pn = _LEGENDRE_1D[-1]
        pm = _LEGENDRE_1D[-2]
        b = norm2(pn) / norm2(pm)
        nxt = {e + 1: c for e, c in pn.items()}
        for e, c in pm.items():
            nxt[e] = nxt.get(e, Fraction(0)) - b * c
        _LEGENDRE_1D.append({e: c for e, c in nxt.items() if c})


def legendre(k):
    """Degree-k cell Legendre polynomial as a 1d exponent dict."""
    if k >= len(_LEGENDRE_1D):
        _extend_legendre(k)
    return {(e,): c for e, c in _LEGENDRE_1D[k].items()}


def legendre_product(degrees):
    """Tensor product prod_i L_{degrees[i]}(x_i) as a d-dim poly dict."""
    if degrees and max(degrees) >= len(_LEGENDRE_1D):
        _extend_legendre(max(degrees))
    poly = {(): Fraction(1)}
    for k in degrees:
        poly = {e1 + (e2,): c1 * c2
                for e1, c1 in poly.items()
                for e2, c2 in _LEGENDRE_1D[k].items()}
    return poly


def poly_diff(poly, axis):
    out = {}
    for exps, c in poly.items():
        e = exps[axis]
        if e > 0:
            key = exps[:axis] + (e - 1,) + exps[axis + 1:]
            out[key] = out.get(key, Fraction(0)) + c * e
    return out


def poly_eval(poly, point):
    """Exact evaluation; `point` entries are Fractions (or ints)."""
    total = Fraction(0)
    for exps, c in poly.items():
        term = c
        for x, e in zip(point, exps):
            term *= Fraction(x) ** e
        total += term
    return total


def monomial_box_integral(exps, lo, hi):
    """Integral of prod x_i^e_i over the box prod [lo_i, hi_i]."""
    val = Fraction(1)
    for e, a, b in zip(exps, lo, hi):
        val *= (Fraction(b) ** (e + 1) - Fraction(a) ** (e + 1)) / (e + 1)
    return val


def poly_box_integral(poly, lo, hi):
    return sum((c * monomial_box_integral(e, lo, hi) for e, c in poly.items()),
               Fraction(0))


def cell_average(poly, offset):
    """Average of `poly` over the unit cell centred at integer `offset`."""
    lo = [Fraction(o) - Fraction(1, 2) for o in offset]
    hi = [Fraction(o) + Fraction(1, 2) for o in offset]
    return poly_box_integral(poly, lo, hi)


def basis_2d(degree_pairs):
    return [legendre_product(p) for p in degree_pairs]


def total_degree_exponents(dim, max_deg):
    """All exponent tuples with total degree <= max_deg, graded order."""
    out = []
    for deg in range(max_deg + 1):
        for exps in product(range(deg + 1), repeat=dim):
            if sum(exps) == deg:
                out.append(exps)
    return out


def _derivative_inner_products():
    """1d matrices M_k[p][r] = integral of L_p^(k) L_r^(k) over the cell."""
    nb = len(_LEGENDRE_1D)
    mats = []
    for k in range(nb):
        M = [[Fraction(0)] * nb for _ in range(nb)]
        for p in range(nb):
            dp = legendre(p)
            for _ in range(k):
                dp = poly_diff(dp, 0)
            if not dp:
                continue
            for r in range(p, nb):
                dr = legendre(r)
                for _ in range(k):
                    dr = poly_diff(dr, 0)
                if not dr:
                    continue
                prod_poly = {}
                for e1, c1 in dp.items():
                    for e2, c2 in dr.items():
                        key = (e1[0] + e2[0],)
                        prod_poly[key] = prod_poly.get(key, Fraction(0)) + c1 * c2
                val = poly_box_integral(prod_poly, [Fraction(-1, 2)],
                                        [Fraction(1, 2)])
                M[p][r] = val
                M[r][p] = val
        mats.append(M)
    return mats


_extend_legendre(9)
_DERIV_IP = _derivative_inner_products()
_M0 = _DERIV_IP[0]
_MSUM = [[sum((M[p][r] for M in _DERIV_IP), Fraction(0))
          for r in range(len(_M0))] for p in range(len(_M0))]


def smoothness_gram(degree_tuples):
    """Gram matrix G with  beta = c^T G c  for p = sum_a c_a L_{deg_a}.

    The indicator sums the squared cell integral of every mixed partial
    derivative of total order >= 1 on the unit cell.  Because each basis
    element is a product of 1d Legendre polynomials, the sum over derivative
    multi-indices factorises axis by axis: with T = sum_k M_k and M_0 the
    plain inner products, G[(p..)(r..)] = prod_i T[p_i][r_i]
    - prod_i M_0[p_i][r_i] (subtracting the zero-derivative term).
    """
    n = len(degree_tuples)
    G = [[Fraction(0)] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            t = Fraction(1)
            z = Fraction(1)
            for p, r in zip(degree_tuples[a], degree_tuples[b]):
                t *= _MSUM[p][r]
                z *= _M0[p][r]
            G[a][b] = t - z
            G[b][a] = t - z
    return G
