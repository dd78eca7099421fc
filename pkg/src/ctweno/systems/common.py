"""Shared pieces of the physics-system layer."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Absolute density floor used only to keep admissibility predicates strict.
RHO_FLOOR = 1e-14

# Pressure substitute for floored recoveries.  Only candidate-flux
# evaluation in positivity-protected runs ever sees it; admissibility of
# actual states is always enforced without floors.
P_FLOOR = 1e-13


class PrimitiveRecoveryError(ValueError):
    """Conserved state could not be mapped to admissible primitives."""


@dataclass(frozen=True)
class StaggeredFamily:
    """One divergence-preserving vector field of a system.

    ``comps`` selects the three mirror components inside the zone state
    (ordered x, y, z).  The edge field driving the family's staggered
    update is supplied by the system's ``edge_drivers`` in matching order.
    """

    name: str
    comps: slice


def cross(a, b):
    """Cross product over leading component axes of two (3, ...) arrays."""
    return np.stack([
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ])
