"""Command-line front end.

    fklens rotate --theta 30deg --in r.pgm --out r30.csv [--mag r30.pgm]
    fklens map --to polar --in r.pgm --out r_polar.csv
    fklens basis --kind ma --j 3 --out table.csv
    fklens verify --j 2
    fklens bench --n 9,17,33

Angles accept "rad"/"deg" suffixes; a bare number is radians.  Write
negative suffixed angles with "=" (--theta=-40deg) so the shell token is
not mistaken for an option.  Transforms write CSV-complex (polar-CSV for
`map --to polar`); `--mag` adds a viewing PGM of magnitudes rescaled to
0..255, which is lossy and must never be fed back into further transforms
(chain with CSV-complex instead).
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__, _backend, imageio, kernel_cache, oracle
from .errors import (CacheError, DomainError, FklensError, ImageFormatError,
                     PrecisionError, SpecMismatchError)
from .gridmap import CartImage, cart_to_polar, polar_to_cart
from .grids import GridSpec
from .halfint import HalfInt

EXIT_CODES = """\
exit codes:
  0  success
  1  other error (including verification failures)
  2  usage error
  3  grid-size / dimension mismatch
  4  unreadable or malformed image file
  5  kernel cache error
  6  invalid quantum numbers or precision regime exceeded
"""


def parse_angle(text: str) -> float:
    """Angle with optional rad/deg suffix; bare numbers are radians."""
    stripped = text.strip().lower()
    scale = 1.0
    if stripped.endswith("deg"):
        stripped = stripped[:-3]
        scale = np.pi / 180.0
    elif stripped.endswith("rad"):
        stripped = stripped[:-3]
    try:
        return float(stripped) * scale
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad angle {text!r}") from None


def parse_halfint(text: str) -> HalfInt:
    """j as "3", "0.5" or "1/2"."""
    stripped = text.strip()
    try:
        if "/" in stripped:
            num, den = stripped.split("/")
            if int(den) != 2:
                raise ValueError
            return HalfInt(int(num))
        return HalfInt.of(float(stripped)) if "." in stripped else HalfInt.of(int(stripped))
    except (ValueError, DomainError):
        raise argparse.ArgumentTypeError(f"bad half-integer {text!r}") from None


def _read_cart_input(path: str, j: HalfInt | None) -> CartImage:
    suffix = Path(path).suffix.lower()
    if suffix == ".pgm":
        img = imageio.cart_image_from_screen(imageio.read_pgm(path))
    elif suffix == ".csv":
        img = imageio.cart_image_from_screen(imageio.read_csv_complex(path))
    else:
        raise ImageFormatError(f"unknown input format {suffix!r} (want .pgm or .csv)")
    if j is not None and img.spec != GridSpec.of(j):
        raise SpecMismatchError(
            f"input side {img.spec.N} does not match --j {j} (N = {GridSpec.of(j).N})")
    return img


def _write_cart_output(args, img: CartImage) -> None:
    imageio.write_csv_complex(args.out, imageio.screen_from_cart_image(img))
    if args.mag:
        imageio.write_pgm(args.mag, imageio.magnitude_screen(img))


def _cache_dir(args):
    if args.cache is None:
        return None
    return Path(args.cache)


def _cmd_cart_transform(args, kind: str, params: tuple[float, ...]) -> int:
    img = _read_cart_input(getattr(args, "in"), args.j)
    kernel = kernel_cache.get_or_build(img.spec, kind, params, _cache_dir(args))
    out = CartImage(img.spec, kernel.apply(img.pixels))
    _write_cart_output(args, out)
    return 0


def cmd_rotate(args) -> int:
    return _cmd_cart_transform(args, "rot_cart", (args.theta,))


def cmd_gyrate(args) -> int:
    return _cmd_cart_transform(args, "gyration", (args.psi,))


def cmd_frft(args) -> int:
    return _cmd_cart_transform(args, "iso", (args.omega,))


def cmd_aniso(args) -> int:
    return _cmd_cart_transform(args, "aniso", (args.phi,))


def cmd_u2(args) -> int:
    return _cmd_cart_transform(args, "u2_cart",
                               (args.omega, args.phi, args.theta, args.psi))


def cmd_map(args) -> int:
    if args.to == "polar":
        if args.mag:
            raise ImageFormatError(
                "--mag renders square screens only; map --to polar writes polar-CSV")
        img = _read_cart_input(getattr(args, "in"), args.j)
        kernel = kernel_cache.get_or_build(img.spec, "map_U", (), _cache_dir(args))
        imageio.write_polar_csv(args.out, cart_to_polar(img, kernel))
        return 0
    polar = imageio.read_polar_csv(getattr(args, "in"))
    if args.j is not None and polar.spec != GridSpec.of(args.j):
        raise SpecMismatchError(
            f"polar input on {polar.spec} does not match --j {args.j}")
    kernel = kernel_cache.get_or_build(polar.spec, "map_U", (), _cache_dir(args))
    _write_cart_output(args, polar_to_cart(polar, kernel))
    return 0


def cmd_basis(args) -> int:
    from . import cart_basis, polar_basis
    spec = GridSpec.of(args.j)
    if args.kind == "cart":
        table = cart_basis.cart_mode_table(spec).values.astype(complex)
    elif args.kind == "ma":
        table = cart_basis.ma_mode_table(spec).values
    else:
        table = polar_basis.polar_table(spec).values
    lines = []
    for row in range(table.shape[0]):
        for col in range(table.shape[1]):
            v = table[row, col]
            lines.append(f"{row},{col},{v.real:.17g},{v.imag:.17g}")
    Path(args.out).write_text("\n".join(lines) + "\n")
    print(f"wrote {args.kind} table for {spec} to {args.out}")
    return 0


def cmd_verify(args) -> int:
    if args.j.twice > args.max_j.twice:
        raise DomainError(f"--j {args.j} exceeds the cap {args.max_j} (raise --max-j)")
    results = oracle.verify(args.j, seed=args.seed, max_n=args.max_j.twice + 1,
                            inject_failure=args.inject_perturbation)
    width = max(len(name) for name, _, _ in results)
    failed = 0
    for name, ok, detail in results:
        print(f"{'PASS' if ok else 'FAIL'}  {name:<{width}}  {detail}")
        failed += 0 if ok else 1
    print(f"{len(results) - failed}/{len(results)} groups passed at j = {args.j}")
    return 0 if failed == 0 else 1


def cmd_bench(args) -> int:
    sizes = [int(s) for s in args.n.split(",") if s.strip()]
    kinds = [k.strip() for k in args.kinds.split(",") if k.strip()]
    backends = (_backend.available_backends() if args.backends == "both"
                else (_backend.backend_name(),))
    rng = np.random.default_rng(0)
    rows = ["N,kind,backend,build_s,apply_s,approx_madds"]
    for n in sizes:
        spec = GridSpec.for_size(n)
        vec = rng.standard_normal(spec.npoints) + 1j * rng.standard_normal(spec.npoints)
        for kind in kinds:
            params = {"rot_cart": (0.7,), "aniso": (0.7,), "gyration": (0.7,),
                      "iso": (0.7,), "rot_polar": (0.7,), "map_U": ()}.get(kind)
            if params is None:
                params = (0.1, 0.2, 0.3, 0.4)
            for backend in backends:
                with _backend.use(backend):
                    _clear_table_caches()
                    t0 = time.perf_counter()
                    kernel = kernel_cache.build_kernel(spec, kind, params)
                    build_s = time.perf_counter() - t0
                t0 = time.perf_counter()
                reps = 5
                for _ in range(reps):
                    kernel.apply(vec)
                apply_s = (time.perf_counter() - t0) / reps
                rows.append(f"{n},{kind},{backend},{build_s:.6f},{apply_s:.6f},{n ** 4}")
    text = "\n".join(rows) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def _clear_table_caches():
    from . import cart_basis, polar_basis
    cart_basis.clear_cache()
    polar_basis.clear_cache()


def _add_transform_options(sub, with_mag: bool = True):
    sub.add_argument("--in", required=True, help="input image (.pgm or .csv)")
    sub.add_argument("--out", required=True, help="output file")
    if with_mag:
        sub.add_argument("--mag", help="also write a magnitude PGM (viewing only)")
    sub.add_argument("--j", type=parse_halfint, default=None,
                     help="expected representation label; validated against the input size")
    sub.add_argument("--cache", nargs="?", const=str(kernel_cache.default_cache_dir()),
                     default=None, metavar="DIR",
                     help="cache kernels on disk (default dir from FKLENS_CACHE_DIR)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fklens",
        description="Exact unitary transforms of pixellated images "
                    "(rotations, fractional Fourier transforms, gyrations, "
                    "square <-> polar grid maps).",
        epilog=EXIT_CODES,
        formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--version", action="version", version=f"fklens {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("rotate", help="rotate a square-grid image")
    sub.add_argument("--theta", type=parse_angle, required=True,
                     help="geometric angle; e.g. 0.5, 30deg, or --theta=-40deg")
    _add_transform_options(sub)
    sub.set_defaults(func=cmd_rotate)

    sub = subs.add_parser("gyrate", help="apply a gyration")
    sub.add_argument("--psi", type=parse_angle, required=True)
    _add_transform_options(sub)
    sub.set_defaults(func=cmd_gyrate)

    sub = subs.add_parser("frft", help="apply the isotropic fractional Fourier transform")
    sub.add_argument("--omega", type=parse_angle, required=True)
    _add_transform_options(sub)
    sub.set_defaults(func=cmd_frft)

    sub = subs.add_parser("aniso", help="apply the anisotropic fractional Fourier transform")
    sub.add_argument("--phi", type=parse_angle, required=True)
    _add_transform_options(sub)
    sub.set_defaults(func=cmd_aniso)

    sub = subs.add_parser("u2", help="apply a general group element (Euler parameters)")
    sub.add_argument("--omega", type=parse_angle, default=0.0)
    sub.add_argument("--phi", type=parse_angle, default=0.0)
    sub.add_argument("--theta", type=parse_angle, default=0.0)
    sub.add_argument("--psi", type=parse_angle, default=0.0)
    _add_transform_options(sub)
    sub.set_defaults(func=cmd_u2)

    sub = subs.add_parser("map", help="move an image between square and polar grids")
    sub.add_argument("--to", choices=("polar", "cart"), required=True)
    _add_transform_options(sub)
    sub.set_defaults(func=cmd_map)

    sub = subs.add_parser("basis", help="dump a basis table as CSV (row,col,re,im)")
    sub.add_argument("--kind", choices=("cart", "ma", "polar"), required=True)
    sub.add_argument("--j", type=parse_halfint, required=True)
    sub.add_argument("--out", required=True)
    sub.set_defaults(func=cmd_basis)

    sub = subs.add_parser("verify", help="run the oracle and invariant suites")
    sub.add_argument("--j", type=parse_halfint, default=HalfInt(4),
                     help="representation label (default 2)")
    sub.add_argument("--max-j", type=parse_halfint, default=HalfInt(16),
                     help="safety cap (verification is O(N^6); default 8)")
    sub.add_argument("--seed", type=int, default=20110601)
    sub.add_argument("--inject-perturbation", action="store_true",
                     help=argparse.SUPPRESS)
    sub.set_defaults(func=cmd_verify)

    sub = subs.add_parser("bench", help="time kernel build and apply")
    sub.add_argument("--n", required=True, help="comma-separated grid sides, e.g. 9,17,33")
    sub.add_argument("--kinds", default="rot_cart,map_U")
    sub.add_argument("--backends", choices=("active", "both"), default="active")
    sub.add_argument("--out", default=None, help="write CSV here instead of stdout")
    sub.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SpecMismatchError as exc:
        print(f"fklens: {exc}", file=sys.stderr)
        return 3
    except ImageFormatError as exc:
        print(f"fklens: {exc}", file=sys.stderr)
        return 4
    except CacheError as exc:
        print(f"fklens: {exc}", file=sys.stderr)
        return 5
    except (DomainError, PrecisionError) as exc:
        print(f"fklens: {exc}", file=sys.stderr)
        return 6
    except FklensError as exc:
        print(f"fklens: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
