"""Physics systems evolved by the staggered-mesh solver."""

from .ced import Maxwell
from .common import RHO_FLOOR, PrimitiveRecoveryError, StaggeredFamily
from .mhd import IdealMHD
from .rmhd import RelativisticMHD

_REGISTRY = {
    "ced": Maxwell,
    "mhd": IdealMHD,
    "rmhd": RelativisticMHD,
}


def get_system(name, **params):
    """Instantiate a system by its short id ("ced", "mhd" or "rmhd")."""
    try:
        cls = _REGISTRY[name.lower()]
    except KeyError:
        raise ValueError(f"unknown system {name!r}") from None
    return cls(**params)


__all__ = [
    "Maxwell",
    "IdealMHD",
    "RelativisticMHD",
    "StaggeredFamily",
    "PrimitiveRecoveryError",
    "RHO_FLOOR",
    "get_system",
]
