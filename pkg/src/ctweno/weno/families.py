"""Assembly of adaptive-order stencil families.

A *family* bundles everything one nonlinear hybridization needs: the data
window, one coefficient map per candidate stencil, the linear weight cascade,
and the smoothness quadratic form of every candidate.  Stencil 0 is always
the reference stencil (the big central one, or the central stencil of a
plain third-order hybridization); the smoothness comparison tau is the mean
of |beta_0 - beta_s| over the remaining candidates.

Coefficient maps are built exactly over the rationals.  Collocation systems
that are square are inverted; overdetermined ones are solved by least
squares with the reference row (center value or center average) enforced
exactly, which keeps every candidate an exact left inverse on its own
polynomial space.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .basis import cell_average, legendre_product, poly_eval, smoothness_gram
from .rational import frac_matmul, pinned_least_squares


def collocation_matrix(offsets, degree_tuples, mode):
    """Rows: one equation per window location; columns: basis coefficients.

    mode 'point'   -> data are point samples of u at the offsets
    mode 'average' -> data are cell averages of u on cells at the offsets
    """
    basis = [legendre_product(d) for d in degree_tuples]
    rows = []
    for off in offsets:
        if mode == 'point':
            rows.append([poly_eval(b, off) for b in basis])
        else:
            rows.append([cell_average(b, off) for b in basis])
    return rows


def coefficient_map(offsets, degree_tuples, mode, pin_center):
    """Exact map  coeffs = C @ data  for one stencil."""
    A = collocation_matrix(offsets, degree_tuples, mode)
    pins = []
    if pin_center and len(offsets) > len(degree_tuples):
        zero = tuple(Fraction(0) for _ in offsets[0])
        pins = [offsets.index(zero)]
    return pinned_least_squares(A, pins)


@dataclass
class StencilSpec:
    offsets: list          # window locations, tuples of Fraction/int
    degrees: list          # basis degree tuples
    gamma: float
    coeffs: list = None    # optional pre-tabulated exact map


@dataclass
class Family:
    """Packed, kernel-ready stencil family."""
    window: np.ndarray        # (n_win, dim) float64 offsets
    n_stencils: int
    gamma: np.ndarray         # (n_st,)
    q: int                    # tau exponent
    plain: bool               # plain weighted sum instead of AO combination
    values: dict              # name -> (n_st, n_win) rows
    beta_fac: np.ndarray      # (n_st, max_rank, n_win)
    exact: list               # per stencil (offsets, degrees, coeff map)

    def window_slices(self):
        lo = self.window.min(axis=0).astype(np.int64)
        hi = self.window.max(axis=0).astype(np.int64)
        return lo, hi


def _beta_factor(Cf, gram_f):
    """Factor F with beta = ||F w||^2 from the data-space quadratic form."""
    Q = Cf.T @ gram_f @ Cf
    lam, vec = np.linalg.eigh(0.5 * (Q + Q.T))
    keep = lam > max(1e-13 * lam.max(), 0.0)
    return (vec[:, keep] * np.sqrt(lam[keep])).T


def assemble(specs, functionals, mode, q, plain, pin_center=True):
    """Build a Family from stencil specs and named output functionals.

    functionals: name -> ('eval', point) or ('coeff', degree_tuple).
    """
    window = []
    for sp in specs:
        for off in sp.offsets:
            key = tuple(Fraction(o) for o in off)
            if key not in window:
                window.append(key)
    index = {off: k for k, off in enumerate(window)}
    n_win = len(window)
    n_st = len(specs)

    values = {name: np.zeros((n_st, n_win)) for name in functionals}
    facs = []
    exact = []
    for s, sp in enumerate(specs):
        offs = [tuple(Fraction(o) for o in off) for off in sp.offsets]
        C = sp.coeffs if sp.coeffs is not None else coefficient_map(
            offs, sp.degrees, mode, pin_center)
        exact.append((offs, sp.degrees, C))
        cols = [index[o] for o in offs]
        Cf = np.array([[float(v) for v in row] for row in C])
        for name, (kind, arg) in functionals.items():
            if kind == 'eval':
                basis = [legendre_product(d) for d in sp.degrees]
                f = [poly_eval(b, arg) for b in basis]
            else:
                f = [Fraction(1) if d == tuple(arg) else Fraction(0)
                     for d in sp.degrees]
            row = frac_matmul([f], C)[0]
            for c, v in zip(cols, row):
                values[name][s, c] = float(v)
        G = smoothness_gram(sp.degrees)
        Gf = np.array([[float(v) for v in row] for row in G])
        F_local = _beta_factor(Cf, Gf)
        F = np.zeros((F_local.shape[0], n_win))
        F[:, cols] = F_local
        facs.append(F)

    max_rank = max(F.shape[0] for F in facs)
    beta_fac = np.zeros((n_st, max_rank, n_win))
    for s, F in enumerate(facs):
        beta_fac[s, :F.shape[0], :] = F

    win_arr = np.array([[float(o) for o in off] for off in window])
    gamma = np.array([sp.gamma for sp in specs])
    return Family(window=win_arr, n_stencils=n_st, gamma=gamma, q=q,
                  plain=plain, values=values, beta_fac=beta_fac, exact=exact)


def combine_reference(family, data, names, linear=False):
    """Slow reference evaluation of the hybridization for one window vector.

    Mirrors exactly what the compiled kernels do; used by tests and by the
    self-check entry point.  With ``linear`` the smoothness machinery is
    bypassed and the prescribed linear weights are used as-is, which makes
    the combination reproduce the reference stencil exactly.
    """
    eps = 1.0e-12
    n_st = family.n_stencils
    betas = np.empty(n_st)
    for s in range(n_st):
        r = family.beta_fac[s] @ data
        betas[s] = r @ r
    if linear:
        w = family.gamma.copy()
    else:
        tau = np.mean(np.abs(betas[0] - betas[1:]))
        w = family.gamma * (1.0 + tau ** family.q / (betas + eps) ** 2)
    wbar = w / w.sum()
    out = []
    for name in names:
        vals = family.values[name] @ data
        if family.plain:
            out.append(float(wbar @ vals))
        else:
            lower = float(family.gamma[1:] @ vals[1:])
            big = (wbar[0] / family.gamma[0]) * (vals[0] - lower)
            out.append(big + float(wbar[1:] @ vals[1:]))
    return np.array(out)
