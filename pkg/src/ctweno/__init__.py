"""Divergence-preserving finite-difference solvers on staggered meshes.

The package couples zone-centered flux-split reconstruction sweeps with a
constrained-transport update of face-registered vector fields, so the
discrete divergence of those fields is conserved to machine precision
while the zone update keeps its design order of accuracy.  Electromagnetic
wave propagation, ideal magnetohydrodynamics and its special-relativistic
variant share the same core.
"""

__version__ = "0.1.0"
