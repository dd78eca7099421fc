"""Binary grid-dump files holding named zone-centered channels.

Layout (little-endian throughout):

    bytes 0:4    magic "ICT1"
    u32          format version (currently 1)
    u32          nvar, number of channels
    u32 x3       nx, ny, nz        (nz = 1 for planar grids)
    f64 x3       dx, dy, dz        (dz = 0 for planar grids)
    f64          simulation time
    then nvar channels, each:
        16 bytes ASCII channel name, NUL padded
        nx*ny*nz f64 values with the x index varying fastest

Only zone-centered data is stored; staggered fields are averaged to
zone centers before they get here.  Readers in other tools depend on
this exact layout, so the header is written field by field rather than
through any serialization helper.
"""

import struct

import numpy as np

MAGIC = b"ICT1"
VERSION = 1
NAME_BYTES = 16

_HEADER = struct.Struct("<4sIIIIIdddd")


def _encode_name(name):
    raw = name.encode("ascii")
    if not 0 < len(raw) <= NAME_BYTES:
        raise ValueError(
            f"channel name {name!r} must be 1..{NAME_BYTES} ASCII bytes")
    return raw.ljust(NAME_BYTES, b"\0")


def write_dump(path, channels, spacing, time):
    """Write named channels to ``path``.

    channels: mapping name -> 2d or 3d array, all of one shape, indexed
    [i, j] or [i, j, k].  spacing: (dx, dy) or (dx, dy, dz).
    """
    if not channels:
        raise ValueError("a dump needs at least one channel")
    items = list(channels.items())
    shape = np.asarray(items[0][1]).shape
    if len(shape) not in (2, 3):
        raise ValueError("channels must be 2d or 3d arrays")
    if len(spacing) != len(shape):
        raise ValueError("spacing does not match channel dimensionality")
    nx, ny = shape[0], shape[1]
    nz = shape[2] if len(shape) == 3 else 1
    dx, dy = spacing[0], spacing[1]
    dz = spacing[2] if len(shape) == 3 else 0.0

    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(MAGIC, VERSION, len(items), nx, ny, nz,
                              float(dx), float(dy), float(dz), float(time)))
        for name, arr in items:
            arr = np.asarray(arr, dtype="<f8")
            if arr.shape != shape:
                raise ValueError(
                    f"channel {name!r} shape {arr.shape} != {shape}")
            fh.write(_encode_name(name))
            # x fastest: stream in (k, j, i) order
            fh.write(np.ascontiguousarray(arr.T).tobytes())
    return path


def read_dump(path):
    """Read a dump back as (meta dict, {name: array}).

    Arrays come back indexed [i, j] (planar) or [i, j, k]; meta carries
    version, shape, spacing and time.  Corrupt or truncated files raise
    ValueError with what went wrong.
    """
    with open(path, "rb") as fh:
        head = fh.read(_HEADER.size)
        if len(head) < _HEADER.size:
            raise ValueError(f"{path}: truncated header")
        magic, version, nvar, nx, ny, nz, dx, dy, dz, time = \
            _HEADER.unpack(head)
        if magic != MAGIC:
            raise ValueError(f"{path}: bad magic {magic!r}, not a grid dump")
        count = nx * ny * nz
        planar = nz == 1 and dz == 0.0
        channels = {}
        for _ in range(nvar):
            raw = fh.read(NAME_BYTES)
            if len(raw) < NAME_BYTES:
                raise ValueError(f"{path}: truncated channel name")
            name = raw.rstrip(b"\0").decode("ascii")
            data = np.fromfile(fh, dtype="<f8", count=count)
            if data.size < count:
                raise ValueError(f"{path}: channel {name!r} truncated")
            arr = data.reshape((nz, ny, nx)).T
            channels[name] = arr[:, :, 0] if planar else arr
        meta = {
            "version": version,
            "shape": (nx, ny) if planar else (nx, ny, nz),
            "spacing": (dx, dy) if planar else (dx, dy, dz),
            "time": time,
        }
        return meta, channels
