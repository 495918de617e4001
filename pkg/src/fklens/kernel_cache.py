"""Persistent store of built kernels.

Kernels are expensive relative to applying them, and their values depend
only on (N, kind, parameters), so they are computed once and kept in a
self-describing, language-neutral binary file:

    magic   "FKRN"                     4 bytes
    version u32 little-endian  (= 1)   4 bytes
    N       u32 little-endian          4 bytes
    kind    u8 code, then 3 pad bytes  4 bytes
    params  4 x f64 little-endian     32 bytes   (quantized, zero-padded)
    payload N^4 complex entries as interleaved (re, im) f64 little-endian,
            row-major in the canonical grid ordering
    crc     u32 little-endian CRC-32 (IEEE) of all preceding bytes

Parameters are quantized to 1e-12 identically on write and lookup, so a
lookup with float-noise-level differences still hits.  Writes are atomic
(temp file + rename); concurrent readers never see partial files.  Builds
are deterministic (fixed summation orders), so a cache hit equals a
rebuild bitwise on the writing platform; across platforms agreement is
only 1e-12-level, which the load-time unitarity re-check tolerates.

Cached polar-side kernels assume the default ring alignment (all ring
phases zero); kernels built with custom ring phases must not be stored.
"""

from __future__ import annotations

import hashlib
import os
import struct
import tempfile
import zlib
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from . import fourier_group, gridmap
from .errors import (CacheChecksumError, CacheFormatError, CacheVersionError,
                     DomainError)
from .fourier_group import EulerParams, Kernel
from .grids import GridSpec

MAGIC = b"FKRN"
VERSION = 1
_HEADER = struct.Struct("<4sII4B4d")   # magic, version, N, kind+pad, params
_QUANTUM = 1e-12

KINDS = ("rot_cart", "aniso", "gyration", "iso",
         "u2_cart", "rot_polar", "u2_polar", "map_U")
KIND_CODES = {name: code for code, name in enumerate(KINDS)}
KIND_GRID = {"rot_cart": "cartesian", "aniso": "cartesian", "gyration": "cartesian",
             "iso": "cartesian", "u2_cart": "cartesian",
             "rot_polar": "polar", "u2_polar": "polar", "map_U": "polar"}
_NPARAMS = {"rot_cart": 1, "aniso": 1, "gyration": 1, "iso": 1,
            "u2_cart": 4, "rot_polar": 1, "u2_polar": 4, "map_U": 0}


def quantize(x: float) -> float:
    return round(float(x) / _QUANTUM) * _QUANTUM


@dataclass(frozen=True)
class CacheKey:
    """Identity of a kernel: grid size, kind, quantized parameters."""

    N: int
    kind: str
    params: tuple[float, ...] = ()

    def __post_init__(self):
        if self.kind not in KIND_CODES:
            raise DomainError(f"unknown kernel kind {self.kind!r} (have {KINDS})")
        if len(self.params) != _NPARAMS[self.kind]:
            raise DomainError(
                f"{self.kind} takes {_NPARAMS[self.kind]} parameters, "
                f"got {len(self.params)}")
        object.__setattr__(self, "params",
                           tuple(quantize(p) for p in self.params))

    @staticmethod
    def for_kernel(kernel: Kernel) -> "CacheKey":
        return CacheKey(kernel.spec.N, kernel.kind, kernel.params)

    def padded_params(self) -> tuple[float, float, float, float]:
        return tuple(self.params) + (0.0,) * (4 - len(self.params))

    def filename(self) -> str:
        digest = hashlib.sha1(struct.pack("<4d", *self.padded_params())).hexdigest()[:16]
        return f"{self.kind}_N{self.N:04d}_{digest}.fkrn"


def default_cache_dir() -> Path:
    env = os.environ.get("FKLENS_CACHE_DIR")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "fklens"


def store(key: CacheKey, kernel: Kernel, directory) -> Path:
    """Atomically write the kernel under its key; returns the file path."""
    if CacheKey.for_kernel(kernel) != key:
        raise DomainError(
            f"key {key} does not describe kernel {kernel.kind} N={kernel.spec.N} "
            f"params={kernel.params}")
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    header = _HEADER.pack(MAGIC, VERSION, key.N, KIND_CODES[key.kind], 0, 0, 0,
                          *key.padded_params())
    payload = np.ascontiguousarray(kernel.values, dtype="<c16").tobytes()
    crc = zlib.crc32(header + payload) & 0xFFFFFFFF
    target = directory / key.filename()
    fd, tmp_name = tempfile.mkstemp(dir=directory, suffix=".fkrn.tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(header)
            fh.write(payload)
            fh.write(struct.pack("<I", crc))
        os.replace(tmp_name, target)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise
    return target


def load(key: CacheKey, directory, recheck: bool = True) -> Optional[Kernel]:
    """Read the kernel for a key; None on miss, explicit errors on damage."""
    path = Path(directory) / key.filename()
    if not path.exists():
        return None
    blob = path.read_bytes()
    if len(blob) < _HEADER.size + 4:
        raise CacheFormatError(f"{path}: truncated header")
    magic, version, n, code, _, _, _, p0, p1, p2, p3 = _HEADER.unpack_from(blob)
    if magic != MAGIC:
        raise CacheFormatError(f"{path}: bad magic {magic!r}")
    if version != VERSION:
        raise CacheVersionError(f"{path}: format version {version}, supported {VERSION}")
    if n != key.N or code != KIND_CODES[key.kind] or (p0, p1, p2, p3) != key.padded_params():
        raise CacheFormatError(f"{path}: header does not match key {key}")
    expected = _HEADER.size + 16 * n ** 4 + 4
    if len(blob) != expected:
        raise CacheFormatError(f"{path}: size {len(blob)}, expected {expected}")
    (crc_stored,) = struct.unpack_from("<I", blob, len(blob) - 4)
    crc = zlib.crc32(blob[:-4]) & 0xFFFFFFFF
    if crc != crc_stored:
        raise CacheChecksumError(f"{path}: CRC mismatch")
    values = np.frombuffer(blob[_HEADER.size:-4], dtype="<c16").astype(
        complex).reshape(n * n, n * n)
    spec = GridSpec.for_size(n)
    if recheck:
        return Kernel.checked(spec, KIND_GRID[key.kind], key.kind, key.params, values)
    values.setflags(write=False)
    return Kernel(spec, KIND_GRID[key.kind], key.kind, key.params, values)


def build_kernel(spec: GridSpec, kind: str, params: tuple[float, ...]) -> Kernel:
    """Construct a kernel of any cacheable kind from its parameters."""
    if kind == "rot_cart":
        return fourier_group.kernel_rotation_cart(spec, *params)
    if kind == "aniso":
        return fourier_group.kernel_aniso(spec, *params)
    if kind == "gyration":
        return fourier_group.kernel_gyration(spec, *params)
    if kind == "iso":
        return fourier_group.kernel_isotropic(spec, *params)
    if kind == "u2_cart":
        return fourier_group.kernel_u2_cart(spec, EulerParams(*params))
    if kind == "rot_polar":
        return fourier_group.kernel_rotation_polar(spec, *params)
    if kind == "u2_polar":
        return fourier_group.kernel_u2_polar(spec, EulerParams(*params))
    if kind == "map_U":
        return gridmap.kernel_U(spec)
    raise DomainError(f"unknown kernel kind {kind!r}")


def get_or_build(spec: GridSpec, kind: str, params: tuple[float, ...],
                 directory=None) -> Kernel:
    """Cache-aware kernel access: load on hit, else build and store."""
    key = CacheKey(spec.N, kind, tuple(params))
    if directory is None:
        return build_kernel(spec, kind, key.params)
    hit = load(key, directory)
    if hit is not None:
        return hit
    kernel = build_kernel(spec, kind, key.params)
    store(key, kernel, directory)
    return kernel
