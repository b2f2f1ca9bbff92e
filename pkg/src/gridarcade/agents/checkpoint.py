"""Versioned binary agent checkpoints.

Layout (little-endian): magic b"GACP", u32 version, u32 array count,
then per array: u32 name length, utf-8 name, u32 ndim, u64 dims,
float64 data.  The agent config is echoed verbatim to a `.json` sidecar
next to the checkpoint.
"""

import dataclasses
import json
import struct

import numpy as np

from gridarcade.core import GridArcadeError

MAGIC = b"GACP"
CHECKPOINT_VERSION = 1


class CorruptCheckpointError(GridArcadeError):
    pass


def _sidecar(path):
    return str(path) + ".json"


def save_checkpoint(path, arrays, config=None):
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<II", CHECKPOINT_VERSION, len(arrays)))
        for name, arr in arrays.items():
            arr = np.ascontiguousarray(arr, dtype="<f8")
            encoded = name.encode("utf-8")
            fh.write(struct.pack("<I", len(encoded)))
            fh.write(encoded)
            fh.write(struct.pack("<I", arr.ndim))
            fh.write(struct.pack(f"<{arr.ndim}Q", *arr.shape))
            fh.write(arr.tobytes())
    if config is not None:
        if dataclasses.is_dataclass(config):
            config = dataclasses.asdict(config)
        with open(_sidecar(path), "w", encoding="utf-8") as fh:
            json.dump(config, fh, indent=2, sort_keys=True)


def load_checkpoint(path):
    """Returns (arrays dict, config dict or None)."""
    with open(path, "rb") as fh:
        data = fh.read()
    if data[:4] != MAGIC:
        raise CorruptCheckpointError("bad magic, not a checkpoint file")
    try:
        version, count = struct.unpack_from("<II", data, 4)
        if version != CHECKPOINT_VERSION:
            raise CorruptCheckpointError(f"unsupported checkpoint version {version}")
        offset = 12
        arrays = {}
        for _ in range(count):
            (name_len,) = struct.unpack_from("<I", data, offset)
            offset += 4
            name = data[offset : offset + name_len].decode("utf-8")
            offset += name_len
            (ndim,) = struct.unpack_from("<I", data, offset)
            offset += 4
            shape = struct.unpack_from(f"<{ndim}Q", data, offset)
            offset += 8 * ndim
            n = int(np.prod(shape)) if ndim else 1
            arr = np.frombuffer(data, dtype="<f8", count=n, offset=offset)
            offset += 8 * n
            arrays[name] = arr.reshape(shape).copy()
    except (struct.error, UnicodeDecodeError, ValueError) as exc:
        raise CorruptCheckpointError(f"truncated or damaged checkpoint: {exc}")
    config = None
    try:
        with open(_sidecar(path), "r", encoding="utf-8") as fh:
            config = json.load(fh)
    except FileNotFoundError:
        pass
    return arrays, config
