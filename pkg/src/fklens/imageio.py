"""Image file formats for the CLI.

Three formats move pixel data in and out:

* PGM (P2 ascii / P5 binary, maxval <= 255): grayscale screens.  Screen
  row r, column c maps to grid position (q_x = c - j, q_y = j - r), so
  image "up" is +q_y.
* CSV-complex: N rows x N columns of "re+imi" cells (paired re, im
  columns also accepted on read), same screen orientation as PGM.
* polar-CSV: one "rho,k,re,im" row per ring point, covering the N^2
  polar points exactly once.

Magnitude PGM output rescales |pixel| to 0..255; that step is lossy and
exists for viewing only, never as input to further transforms.
"""

from __future__ import annotations

import re
from pathlib import Path
from typing import Union

import numpy as np

from .errors import ImageFormatError
from .grids import GridSpec
from .gridmap import CartImage, PolarImage

PathLike = Union[str, Path]


# ---------------------------------------------------------------------------
# PGM
# ---------------------------------------------------------------------------

def read_pgm(path: PathLike) -> np.ndarray:
    """Read a P2/P5 PGM into a float screen array [row, col], top row first."""
    blob = Path(path).read_bytes()
    if blob[:2] not in (b"P2", b"P5"):
        raise ImageFormatError(f"{path}: not a P2/P5 PGM")
    binary = blob[:2] == b"P5"
    # header tokens: magic, width, height, maxval; # comments allowed
    tokens = []
    pos = 2
    while len(tokens) < 3:
        match = re.match(rb"\s*(?:#[^\n]*\n\s*)*(\S+)", blob[pos:])
        if not match:
            raise ImageFormatError(f"{path}: truncated PGM header")
        tokens.append(match.group(1))
        pos += match.end()
    width, height, maxval = (int(t) for t in tokens)
    if maxval <= 0 or maxval > 255:
        raise ImageFormatError(f"{path}: maxval {maxval} outside 1..255")
    if binary:
        try:
            data = np.frombuffer(blob, dtype=np.uint8, count=width * height,
                                 offset=pos + 1)
        except ValueError as exc:
            raise ImageFormatError(f"{path}: truncated P5 payload") from exc
        screen = data.reshape(height, width).astype(float)
    else:
        values = blob[pos:].split()
        if len(values) != width * height:
            raise ImageFormatError(
                f"{path}: {len(values)} samples for {width}x{height} P2")
        screen = np.array([int(v) for v in values], dtype=float).reshape(height, width)
    if screen.max(initial=0) > maxval:
        raise ImageFormatError(f"{path}: sample exceeds maxval {maxval}")
    return screen


def write_pgm(path: PathLike, screen: np.ndarray, maxval: int = 255,
              binary: bool = False) -> None:
    """Write an integer-valued screen array as P2 (default) or P5."""
    screen = np.asarray(screen)
    if screen.ndim != 2:
        raise ImageFormatError("PGM screen must be 2-dimensional")
    data = np.clip(np.round(screen), 0, maxval).astype(np.uint8)
    height, width = data.shape
    if binary:
        header = f"P5\n{width} {height}\n{maxval}\n".encode()
        Path(path).write_bytes(header + data.tobytes())
    else:
        lines = [f"P2\n{width} {height}\n{maxval}"]
        lines += [" ".join(str(v) for v in row) for row in data]
        Path(path).write_text("\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# screen <-> grid orientation
# ---------------------------------------------------------------------------

def cart_image_from_screen(screen: np.ndarray, spec: GridSpec = None) -> CartImage:
    """Screen array [row, col] (top row first) to a canonical-order image."""
    screen = np.asarray(screen, dtype=complex)
    if screen.ndim != 2 or screen.shape[0] != screen.shape[1]:
        raise ImageFormatError(f"screen must be square, got {screen.shape}")
    n = screen.shape[0]
    if spec is None:
        spec = GridSpec.for_size(n)
    # grid[ix, iy] = screen[N-1-iy, ix]
    grid = screen[::-1, :].T
    return CartImage(spec, np.ascontiguousarray(grid).reshape(-1))


def screen_from_cart_image(img: CartImage) -> np.ndarray:
    """Inverse of cart_image_from_screen."""
    grid = img.as_grid()
    return np.ascontiguousarray(grid.T[::-1, :])


# ---------------------------------------------------------------------------
# CSV-complex (square screens)
# ---------------------------------------------------------------------------

def _parse_complex(cell: str) -> complex:
    cell = cell.strip()
    if not cell:
        raise ImageFormatError("empty CSV cell")
    try:
        return complex(cell.replace("i", "j").replace(" ", ""))
    except ValueError as exc:
        raise ImageFormatError(f"bad complex cell {cell!r}") from exc


def read_csv_complex(path: PathLike) -> np.ndarray:
    """Read an N x N complex screen; cells "re+imi" or 2N paired columns."""
    rows = []
    for line in Path(path).read_text().splitlines():
        if not line.strip():
            continue
        cells = [c for c in line.split(",")]
        rows.append(cells)
    if not rows:
        raise ImageFormatError(f"{path}: empty CSV")
    n = len(rows)
    out = np.zeros((n, n), dtype=complex)
    for r, cells in enumerate(rows):
        if len(cells) == n:
            out[r] = [_parse_complex(c) for c in cells]
        elif len(cells) == 2 * n:
            vals = [float(c) for c in cells]
            out[r] = [complex(vals[2 * i], vals[2 * i + 1]) for i in range(n)]
        else:
            raise ImageFormatError(
                f"{path}: row {r} has {len(cells)} cells, expected {n} or {2 * n}")
    return out


def write_csv_complex(path: PathLike, screen: np.ndarray) -> None:
    screen = np.asarray(screen, dtype=complex)
    lines = [",".join(f"{v.real:.17g}{v.imag:+.17g}i" for v in row)
             for row in screen]
    Path(path).write_text("\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# polar-CSV
# ---------------------------------------------------------------------------

def read_polar_csv(path: PathLike) -> PolarImage:
    """Read "rho,k,re,im" rows covering all N^2 ring points exactly once."""
    entries = {}
    for line in Path(path).read_text().splitlines():
        stripped = line.strip()
        if not stripped or stripped.lower().startswith("rho"):
            continue
        cells = stripped.split(",")
        if len(cells) != 4:
            raise ImageFormatError(f"{path}: expected rho,k,re,im, got {line!r}")
        rho, k = int(cells[0]), int(cells[1])
        if (rho, k) in entries:
            raise ImageFormatError(f"{path}: duplicate point (rho={rho}, k={k})")
        entries[(rho, k)] = complex(float(cells[2]), float(cells[3]))
    if not entries:
        raise ImageFormatError(f"{path}: no data rows")
    rho_max = max(r for r, _ in entries)
    spec = GridSpec(rho_max)   # 2j = rho_max
    if len(entries) != spec.npoints:
        raise ImageFormatError(
            f"{path}: {len(entries)} points do not fill the {spec} polar grid")
    pixels = np.zeros(spec.npoints, dtype=complex)
    for rho in range(rho_max + 1):
        for k in range(-rho, rho + 1):
            if (rho, k) not in entries:
                raise ImageFormatError(f"{path}: missing point (rho={rho}, k={k})")
            pixels[rho * rho + k + rho] = entries[(rho, k)]
    return PolarImage(spec, pixels)


def write_polar_csv(path: PathLike, img: PolarImage) -> None:
    lines = ["rho,k,re,im"]
    idx = 0
    for rho in range(img.spec.two_j + 1):
        for k in range(-rho, rho + 1):
            v = img.pixels[idx]
            lines.append(f"{rho},{k},{v.real:.17g},{v.imag:.17g}")
            idx += 1
    Path(path).write_text("\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# magnitude rescale (viewing only)
# ---------------------------------------------------------------------------

def magnitude_screen(img: CartImage) -> np.ndarray:
    """|pixels| rescaled to 0..255 on the screen layout; lossy by design."""
    mags = np.abs(screen_from_cart_image(img))
    top = mags.max()
    if top == 0:
        return np.zeros_like(mags)
    return 255.0 * mags / top
