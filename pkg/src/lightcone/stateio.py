"""Binary state files.

Layout (all little-endian)::

    offset  size  field
    0       8     magic b"LCSTATE\\0"
    8       2     format version (uint16, currently 1)
    10      1     kind: 1 scalar, 2 spinor
    11      1     representation code (Representation / SpinorRepresentation value)
    12      8     helicity numerator (int64)
    20      8     helicity denominator (int64)
    28      4     n per axis (uint32)
    32      8     box length L (float64)
    40      8     time (float64)
    48      ...   amplitudes, complex128 as interleaved (re, im) float64 pairs,
                  C order over (component, i1, i2, i3)
    end-8   8     checksum: BLAKE2b-64 of every preceding byte (uint64)
"""
from __future__ import annotations

import hashlib
import struct
from fractions import Fraction
from pathlib import Path
from typing import Union

import numpy as np

from .errors import StateFileError
from .grid import MomentumGrid
from .states import Representation, ScalarState
from .weyl import SpinorRepresentation, SpinorState

MAGIC = b"LCSTATE\0"
VERSION = 1
HEADER = struct.Struct("<8sHBBqqIdd")
CHECKSUM = struct.Struct("<Q")
KIND_SCALAR = 1
KIND_SPINOR = 2

AnyState = Union[ScalarState, SpinorState]


def _checksum(data: bytes) -> int:
    return CHECKSUM.unpack(hashlib.blake2b(data, digest_size=8).digest())[0]


def encode_state(state: AnyState) -> bytes:
    if isinstance(state, SpinorState):
        kind, helicity = KIND_SPINOR, Fraction(0)
    elif isinstance(state, ScalarState):
        kind, helicity = KIND_SCALAR, state.helicity
    else:
        raise TypeError(f"cannot serialise {type(state).__name__}")
    header = HEADER.pack(
        MAGIC,
        VERSION,
        kind,
        int(state.representation),
        helicity.numerator,
        helicity.denominator,
        state.grid.n,
        state.grid.box_length,
        state.time,
    )
    body = np.ascontiguousarray(state.amplitudes, dtype="<c16").tobytes()
    data = header + body
    return data + CHECKSUM.pack(_checksum(data))


def decode_state(data: bytes) -> AnyState:
    if len(data) < HEADER.size + CHECKSUM.size:
        raise StateFileError("truncated state file: header incomplete")
    magic, version, kind, rep, hnum, hden, n, box_length, time = HEADER.unpack_from(data)
    if magic != MAGIC:
        raise StateFileError("not a lightcone state file (bad magic)")
    if version != VERSION:
        raise StateFileError(f"unsupported state file version {version} (expected {VERSION})")
    if kind not in (KIND_SCALAR, KIND_SPINOR):
        raise StateFileError(f"unknown state kind {kind}")
    components = 1 if kind == KIND_SCALAR else 2
    expected = HEADER.size + 16 * components * n**3 + CHECKSUM.size
    if len(data) != expected:
        raise StateFileError(f"state file has {len(data)} bytes, header implies {expected}")
    (stored,) = CHECKSUM.unpack_from(data, len(data) - CHECKSUM.size)
    if stored != _checksum(data[: -CHECKSUM.size]):
        raise StateFileError("checksum mismatch")
    try:
        grid = MomentumGrid(n, box_length)
        amps = np.frombuffer(data, dtype="<c16", offset=HEADER.size, count=components * n**3)
        if kind == KIND_SCALAR:
            return ScalarState(grid, amps.reshape(grid.shape), Representation(rep),
                               Fraction(hnum, hden), time)
        return SpinorState(grid, amps.reshape((2,) + grid.shape), SpinorRepresentation(rep), time)
    except (ValueError, ZeroDivisionError) as exc:
        raise StateFileError(f"invalid header contents: {exc}") from exc


def save_state(state: AnyState, path) -> Path:
    path = Path(path)
    path.write_bytes(encode_state(state))
    return path


def load_state(path) -> AnyState:
    return decode_state(Path(path).read_bytes())


def describe(state: AnyState) -> dict:
    """Header summary used by ``lightcone inspect``."""
    info = {
        "kind": "spinor" if isinstance(state, SpinorState) else "scalar",
        "representation": state.representation.name,
        "n_per_axis": state.grid.n,
        "box_length": state.grid.box_length,
        "time": state.time,
        "norm": state.norm(),
    }
    if isinstance(state, ScalarState):
        info["helicity"] = str(state.helicity)
    return info
