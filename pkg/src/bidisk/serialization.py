"""JSON and binary exchange formats for series, Blaschke products and bases."""

from __future__ import annotations

import json
import struct
from pathlib import Path

import numpy as np

from .blaschke import BlaschkeProduct
from .errors import InvalidInputError
from .series import Series2D
from .submodule import SubmoduleApprox

_MAGIC = b"BDKM"
_VERSION = 1


def _pairs(values: np.ndarray) -> list[list[float]]:
    return [[float(v.real), float(v.imag)] for v in values]


def series2d_to_json(f: Series2D) -> dict:
    """{"caps": [Nz, Nw], "coeffs": row-major [re, im] pairs}."""
    return {"caps": list(f.caps), "coeffs": _pairs(f.coeffs.reshape(-1))}


def series2d_from_json(obj: dict) -> Series2D:
    nz, nw = (int(c) for c in obj["caps"])
    flat = np.array([complex(re, im) for re, im in obj["coeffs"]], dtype=np.complex128)
    if flat.size != (nz + 1) * (nw + 1):
        raise InvalidInputError("coefficient count does not match caps")
    return Series2D(flat.reshape(nz + 1, nw + 1))


def blaschke_to_json(b: BlaschkeProduct) -> dict:
    return {
        "zeros": _pairs(np.array(b.zeros)),
        "gamma": [float(b.gamma.real), float(b.gamma.imag)],
    }


def blaschke_from_json(obj: dict) -> BlaschkeProduct:
    zeros = [complex(re, im) for re, im in obj["zeros"]]
    gamma = complex(obj["gamma"][0], obj["gamma"][1])
    return BlaschkeProduct(zeros, gamma)


def submodule_to_json(M: SubmoduleApprox) -> dict:
    """Metadata export: generators, level, rank tolerance and basis dimension."""
    return {
        "generators": [series2d_to_json(g) for g in M.generators],
        "level": M.level,
        "rank_tol": M.rank_tol,
        "basis_dim": M.dim,
    }


def write_basis_binary(M: SubmoduleApprox, path: str | Path) -> None:
    """Column-major complex basis matrix behind a 16-byte header.

    Header: magic ``BDKM``, then version, rows, cols as little-endian u32.
    """
    B = np.asfortranarray(M.basis_matrix)
    header = _MAGIC + struct.pack("<III", _VERSION, B.shape[0], B.shape[1])
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(B.tobytes(order="F"))


def read_basis_binary(path: str | Path) -> np.ndarray:
    with open(path, "rb") as fh:
        header = fh.read(16)
        if len(header) != 16 or header[:4] != _MAGIC:
            raise InvalidInputError(f"{path} is not a basis export (bad magic)")
        version, rows, cols = struct.unpack("<III", header[4:])
        if version != _VERSION:
            raise InvalidInputError(f"unsupported basis export version {version}")
        data = np.frombuffer(fh.read(), dtype=np.complex128)
    if data.size != rows * cols:
        raise InvalidInputError("basis export payload size mismatch")
    return data.reshape((rows, cols), order="F")


def dump_json(obj, path: str | Path | None) -> str:
    """Serialize with complex values rendered as [re, im]; write if path given."""

    def default(o):
        if isinstance(o, complex):
            return [o.real, o.imag]
        if isinstance(o, (np.complexfloating,)):
            return [float(o.real), float(o.imag)]
        if isinstance(o, np.floating):
            return float(o)
        if isinstance(o, np.integer):
            return int(o)
        if isinstance(o, np.ndarray):
            return o.tolist()
        if isinstance(o, tuple):
            return list(o)
        raise TypeError(f"not JSON serializable: {type(o)}")

    text = json.dumps(obj, indent=2, default=default, sort_keys=True)
    if path is not None and str(path) != "-":
        Path(path).write_text(text + "\n")
    return text
