"""Hybridized polynomial reconstruction on structured stencils."""

from .api import (
    center_from_faces,
    center_from_volume,
    corner_values,
    face_moments,
    flux_window,
    ghost_zones,
    interface_values,
    line_average,
    segment_moments,
    self_check,
    volume_average,
)

__all__ = [
    "center_from_faces",
    "center_from_volume",
    "corner_values",
    "face_moments",
    "flux_window",
    "ghost_zones",
    "interface_values",
    "line_average",
    "segment_moments",
    "self_check",
    "volume_average",
]
