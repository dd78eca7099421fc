"""Linear electromagnetics in material media.

The zone state carries point values of the two flux densities,

    u = (D_x, D_y, D_z, B_x, B_y, B_z),

both of which are mirrors of staggered face fields.  D evolves through
the circulation of -H and B through the circulation of E, so the system
exposes two divergence-preserving families.  Material response is scalar
and isotropic: D = eps*E, B = mu*H, with eps and mu either constants or
functions of position supplied per problem.
"""

from __future__ import annotations

import numpy as np

from .common import StaggeredFamily


def _sample(spec, coords):
    """Evaluate a material map at given coordinates (scalars pass through)."""
    if callable(spec):
        return spec(*coords)
    return spec


def _curl_flux(driver, axis):
    """Flux columns of a field advanced by ``d_t F + curl(driver) = 0``.

    Along ``axis`` the normal component is inert and the two transverse
    components carry the rotated driver, e.g. the x-direction flux of B
    is (0, -E_z, +E_y).
    """
    a1 = (axis + 1) % 3
    a2 = (axis + 2) % 3
    out = np.empty_like(driver)
    out[axis] = 0.0
    out[a1] = -driver[a2]
    out[a2] = driver[a1]
    return out


class Maxwell:
    """Curl-pair system for D and B on dual staggers."""

    name = "ced"
    nvar = 6
    component_names = ("dx", "dy", "dz", "bx", "by", "bz")
    families = (
        StaggeredFamily("d", slice(0, 3)),
        StaggeredFamily("b", slice(3, 6)),
    )
    has_characteristics = False
    uses_zone_update = False

    def __init__(self, eps=1.0, mu=1.0):
        self.eps = eps
        self.mu = mu

    def eps_at(self, coords):
        return _sample(self.eps, coords)

    def mu_at(self, coords):
        return _sample(self.mu, coords)

    def fields(self, u, eps=None, mu=None):
        """Intensities (E, H) from the flux densities in the state."""
        if eps is None:
            eps = self.eps
        if mu is None:
            mu = self.mu
        if callable(eps) or callable(mu):
            raise TypeError("position-dependent materials need sampled arrays")
        e = u[0:3] / eps
        h = u[3:6] / mu
        return e, h

    def edge_drivers(self, u, eps=None, mu=None):
        """Edge fields per family: -H advances D and E advances B."""
        e, h = self.fields(u, eps, mu)
        return (-h, e)

    def flux(self, u, axis, eps=None, mu=None):
        e, h = self.fields(u, eps, mu)
        out = np.empty_like(u)
        out[0:3] = _curl_flux(-h, axis)
        out[3:6] = _curl_flux(e, axis)
        return out

    def signal_speeds(self, u, axis, eps=None, mu=None):
        if eps is None:
            eps = self.eps
        if mu is None:
            mu = self.mu
        if callable(eps) or callable(mu):
            raise TypeError("position-dependent materials need sampled arrays")
        c = 1.0 / np.sqrt(np.asarray(eps) * np.asarray(mu))
        c = np.broadcast_to(c, u.shape[1:])
        return -c, c

    def cons_to_prim(self, u, eps=None, mu=None):
        e, h = self.fields(u, eps, mu)
        return np.concatenate([e, h])

    def prim_to_cons(self, prim, eps=None, mu=None):
        if eps is None:
            eps = self.eps
        if mu is None:
            mu = self.mu
        if callable(eps) or callable(mu):
            raise TypeError("position-dependent materials need sampled arrays")
        out = np.empty_like(prim)
        out[0:3] = prim[0:3] * eps
        out[3:6] = prim[3:6] * mu
        return out

    def pcp_admissible(self, u, face_fields=None):
        """Linear fields carry no positivity constraint."""
        return np.ones(u.shape[1:], dtype=bool)
