"""Command-line interface.

Subcommands: forms, dim, basis, faces, sweep. Exit codes: 0 success,
1 a sweep check failed, 2 bad discriminant, 3 bad weight, 4 I/O trouble.
Set MLP_CACHE_DIR to cache dim/basis records on disk; identical queries then
return byte-identical output without recomputation.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from concurrent.futures import ProcessPoolExecutor
from math import isqrt

from . import __version__
from .arrangement import build_arrangement
from .geometry import InvalidDiscriminant, check_discriminant, enumerate_forms, is_even_square
from .gluing import build_gluing_graph, orbits_and_cycles
from .polyspace import InvalidWeight, check_weight, compute_space, solve_space
from .record import ResultRecord, render_poly
from .svgfig import svg_figure


def _cache_path(disc: int, k: int, augmented: bool) -> str | None:
    cache = os.environ.get("MLP_CACHE_DIR")
    if not cache:
        return None
    tag = "_aug" if augmented else ""
    return os.path.join(cache, f"v{__version__}_D{disc}_k{k}{tag}.json")


def _record_text(disc: int, k: int, augmented: bool) -> str:
    check_discriminant(disc)
    check_weight(k)
    path = _cache_path(disc, k, augmented)
    if path and os.path.exists(path):
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    text = ResultRecord.from_space(compute_space(disc, k, augmented=augmented)).to_json()
    if path:
        os.makedirs(os.path.dirname(path), exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=os.path.dirname(path), suffix=".tmp")
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    return text


def cmd_forms(args: argparse.Namespace) -> int:
    forms = enumerate_forms(args.disc)
    print(json.dumps([q.as_list() for q in forms], separators=(",", ":")))
    return 0


def cmd_dim(args: argparse.Namespace) -> int:
    print(_record_text(args.disc, args.weight, args.augmented), end="")
    return 0


def cmd_basis(args: argparse.Namespace) -> int:
    text = _record_text(args.disc, args.weight, args.augmented)
    rec = ResultRecord.from_json(text)
    print(
        f"D={rec.disc} k={rec.k} dim={rec.dim} rF={rec.r_f} "
        f"cuspFaces={rec.cusp_faces} orbitCount={rec.orbit_count}"
    )
    for i, elem in enumerate(rec.basis, start=1):
        print(f"element {i}")
        for face in sorted(elem):
            print(f"  face {face}: {render_poly(elem[face])}")
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(text)
    return 0


def cmd_faces(args: argparse.Namespace) -> int:
    fc = build_arrangement(args.disc)
    out = {
        "D": fc.disc,
        "rF": fc.face_count(),
        "cuspFaces": fc.cusp_face_count(),
        "flags": {
            "evenSquare": fc.even_square,
            "bottomInE": fc.bottom_in_e,
            "wallsInE": fc.left_wall_in_e,
        },
        "faces": [
            {
                "id": f.index,
                "sample": [f"{f.sample.x.numerator}/{f.sample.x.denominator}",
                           f"{f.sample.s.numerator}/{f.sample.s.denominator}"],
                "cusp": f.is_cusp,
            }
            for f in fc.faces
        ],
    }
    print(json.dumps(out, indent=2))
    if args.svg:
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(svg_figure(fc, precision=args.precision))
    return 0


def _sweep_task(task: tuple[int, tuple[int, ...], bool]) -> tuple[int, list[str], list[str]]:
    disc, weights, augmented = task
    fc = build_arrangement(disc)
    graph = build_gluing_graph(fc)
    orbits = orbits_and_cycles(graph)
    rf = fc.face_count()
    cusp = fc.cusp_face_count()
    lines: list[str] = []
    fails: list[str] = []

    root = isqrt(disc)
    if root * root != disc:
        expect_cusp = 1
    elif root % 2 == 0:
        expect_cusp = root
    else:
        expect_cusp = root + 1
    if cusp != expect_cusp:
        fails.append(f"D={disc}: cuspFaces={cusp}, expected {expect_cusp}")
    if root * root == disc and root % 2 == 1:
        cusp_orbits = sum(1 for orb in orbits if any(fc.faces[f].is_cusp for f in orb.faces))
        if cusp_orbits != root:
            fails.append(f"D={disc}: cusp orbit count {cusp_orbits}, expected {root}")

    even_sq = is_even_square(disc)
    for k in weights:
        space = solve_space(fc, graph, k, augmented=augmented)
        w = -k
        bound = (w + 1) * rf
        lines.append(
            f"D={disc} k={k} dim={space.dim} rF={rf} orbits={len(orbits)}"
            f" bound={bound} evenSquare={'true' if even_sq else 'false'}"
        )
        if augmented:
            if space.dim != bound:
                fails.append(f"D={disc} k={k}: augmented dim {space.dim} != {bound}")
            continue
        if space.dim > bound:
            fails.append(f"D={disc} k={k}: dim {space.dim} exceeds bound {bound}")
        if k == 0:
            if space.dim != len(orbits):
                fails.append(f"D={disc} k=0: dim {space.dim} != orbit count {len(orbits)}")
            if even_sq and space.dim != rf:
                fails.append(f"D={disc} k=0: dim {space.dim} != rF {rf}")
        elif even_sq:
            if space.dim != bound:
                fails.append(f"D={disc} k={k}: dim {space.dim} != bound {bound} (even square)")
        elif space.dim >= bound:
            fails.append(f"D={disc} k={k}: dim {space.dim} not below bound {bound}")
    return disc, lines, fails


def cmd_sweep(args: argparse.Namespace) -> int:
    try:
        weights = tuple(int(tok) for tok in args.weights.split(",") if tok.strip())
    except ValueError:
        raise InvalidWeight(f"cannot parse weight list {args.weights!r}")
    for k in weights:
        check_weight(k)
    discs = [d for d in range(1, args.max_disc + 1) if d % 4 in (0, 1)]
    tasks = [(d, weights, args.augmented) for d in discs]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_sweep_task, tasks))
    else:
        results = [_sweep_task(t) for t in tasks]
    results.sort(key=lambda r: r[0])
    all_fails: list[str] = []
    for _, lines, fails in results:
        for line in lines:
            print(line)
        all_fails.extend(fails)
    if all_fails:
        for f in all_fails:
            print(f"FAIL {f}", file=sys.stderr)
        return 1
    print(f"sweep ok: {len(discs)} discriminants, weights {list(weights)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mlp",
        description="Exact dimensions and bases of modular local polynomial spaces.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("forms", help="list the geodesic forms meeting the domain")
    p.add_argument("--disc", type=int, required=True)
    p.set_defaults(func=cmd_forms)

    p = sub.add_parser("dim", help="dimension record as JSON")
    p.add_argument("--disc", type=int, required=True)
    p.add_argument("--weight", type=int, required=True)
    p.add_argument("--augmented", action="store_true", help="drop all matching conditions")
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("basis", help="explicit basis, face by face")
    p.add_argument("--disc", type=int, required=True)
    p.add_argument("--weight", type=int, required=True)
    p.add_argument("--augmented", action="store_true")
    p.add_argument("--json", metavar="PATH", help="also write the raw record here")
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("faces", help="face counts, flags, optional SVG")
    p.add_argument("--disc", type=int, required=True)
    p.add_argument("--svg", metavar="PATH", help="write a picture of the decomposition")
    p.add_argument("--precision", type=int, default=12, help="significant digits in the SVG")
    p.set_defaults(func=cmd_faces)

    p = sub.add_parser("sweep", help="verify the dimension laws over a range")
    p.add_argument("--max-disc", type=int, required=True)
    p.add_argument("--weights", default="0,-2,-4")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--augmented", action="store_true")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InvalidDiscriminant as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InvalidWeight as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
