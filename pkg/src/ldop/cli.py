"""Command-line interface: extract, evaluate, sweep, query, maps.

Datasets use a directory-per-class layout: root/<class-label>/<image files>.
Images are converted to grayscale and resized to 64x64 before encoding.
Exit codes: 0 success, 1 input error, 2 I/O error.
"""

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from math import factorial

import numpy as np

from .encoder import (
    KIND_LBP,
    KIND_LDOP,
    concat_descriptors,
    lbp_histogram,
    lbp_map,
    ldop_histogram,
    ldop_map,
    multi_res_ldop,
)
from .image import GrayImage, load_gray, resize_bilinear, write_pgm
from .order import order_map
from .retrieval import build_index, evaluate, query
from .sampling import NeighborSpec
from .serialize import (
    DescriptorRecord,
    descriptors_to_csv,
    metrics_to_csv,
    metrics_to_json,
    read_descriptors,
    write_descriptors,
)

CANONICAL_SIZE = 64
IMAGE_EXTENSIONS = (".pgm", ".png")


class CliInputError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    """Resolved run parameters; CLI flags override the config file overrides these."""

    descriptor: str = "ldop-multi"  # ldop | ldop-multi | lbp
    directions: int = 8
    radius: int = 2  # single-radius descriptors (lbp default handled below)
    r_min: int = 2
    r_max: int = 4
    distance: str = "chisq"
    gammas: tuple = tuple(range(1, 11))
    workers: int = 1


def parse_gammas(text):
    out = []
    for part in text.split(","):
        part = part.strip()
        if "-" in part[1:]:
            lo, hi = part.split("-", 1)
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    if not out or any(g < 1 for g in out):
        raise CliInputError(f"bad gamma list {text!r}")
    return tuple(out)


def parse_radius_spec(text):
    """Decode a radius spec: "3" is a single radius, "24" the range 2..4,
    and "2:4" an explicit range."""
    text = text.strip()
    if ":" in text:
        lo, hi = (int(p) for p in text.split(":", 1))
    elif text.isdigit() and len(text) == 1:
        lo = hi = int(text)
    elif text.isdigit() and len(text) == 2:
        lo, hi = int(text[0]), int(text[1])
    else:
        raise CliInputError(f"bad radius spec {text!r}")
    if not (2 <= lo <= hi <= 12):
        raise CliInputError(f"radius spec {text!r} outside 2 <= R1 <= R2 <= 12")
    return lo, hi


def load_config_file(path):
    values = {}
    with open(path) as f:
        for line in f:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise CliInputError(f"{path}: bad config line {line!r}")
            key, val = (s.strip() for s in line.split("=", 1))
            values[key] = val
    return values


def resolve_config(args):
    """Merge defaults < config file < CLI flags into a RunConfig."""
    values = {}
    if getattr(args, "config", None):
        values.update(load_config_file(args.config))
    for key in ("descriptor", "distance"):
        v = getattr(args, key, None)
        if v is not None:
            values[key] = v
    if getattr(args, "neighbors", None) is not None:
        values["neighbors"] = str(args.neighbors)
    if getattr(args, "radius", None) is not None:
        values["radius"] = str(args.radius)
    if getattr(args, "radii", None) is not None:
        values["radii"] = args.radii
    if getattr(args, "gamma", None) is not None:
        values["gamma"] = args.gamma
    if getattr(args, "workers", None) is not None:
        values["workers"] = str(args.workers)

    cfg = RunConfig()
    if "descriptor" in values:
        if values["descriptor"] not in ("ldop", "ldop-multi", "lbp"):
            raise CliInputError(f"unknown descriptor {values['descriptor']!r}")
        cfg = replace(cfg, descriptor=values["descriptor"])
    if "neighbors" in values:
        cfg = replace(cfg, directions=int(values["neighbors"]))
    if "radius" in values:
        r = int(values["radius"])
        cfg = replace(cfg, radius=r)
    if "radii" in values:
        lo, hi = parse_radius_spec(values["radii"])
        cfg = replace(cfg, r_min=lo, r_max=hi)
    if "distance" in values:
        cfg = replace(cfg, distance=values["distance"])
    if "gamma" in values:
        cfg = replace(cfg, gammas=parse_gammas(values["gamma"]))
    if "workers" in values:
        w = int(values["workers"])
        if w < 1:
            raise CliInputError("workers must be >= 1")
        cfg = replace(cfg, workers=w)
    return cfg


def preprocess(path):
    img = load_gray(path)
    return resize_bilinear(img, CANONICAL_SIZE, CANONICAL_SIZE)


def describe(img, cfg):
    if cfg.descriptor == "ldop":
        return ldop_histogram(img, NeighborSpec(cfg.radius, cfg.directions))
    if cfg.descriptor == "ldop-multi":
        return multi_res_ldop(img, cfg.r_min, cfg.r_max, cfg.directions)
    if cfg.descriptor == "lbp":
        radius = cfg.radius if cfg.radius is not None else 1
        return lbp_histogram(img, radius, cfg.directions)
    raise CliInputError(f"unknown descriptor {cfg.descriptor!r}")


def discover_dataset(root):
    """Sorted (label, path) pairs from a directory-per-class tree."""
    if not os.path.isdir(root):
        raise FileNotFoundError(f"dataset root {root!r} is not a directory")
    pairs = []
    for label in sorted(os.listdir(root)):
        cdir = os.path.join(root, label)
        if not os.path.isdir(cdir):
            continue
        for name in sorted(os.listdir(cdir)):
            if os.path.splitext(name)[1].lower() in IMAGE_EXTENSIONS:
                pairs.append((label, os.path.join(cdir, name)))
    if not pairs:
        raise CliInputError(f"no images found under {root!r}")
    return pairs


def _extract_one(task):
    label, path, cfg = task
    try:
        desc = describe(preprocess(path), cfg)
        return DescriptorRecord(path, label, desc), None
    except Exception as exc:  # reported per file, summarized by the caller
        return None, f"{path}: {exc}"


def extract_records(pairs, cfg):
    """Extract descriptors for (label, path) pairs, preserving input order.

    Returns (records, errors); parallel workers do not change the ordering.
    """
    tasks = [(label, path, cfg) for label, path in pairs]
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            results = list(pool.map(_extract_one, tasks, chunksize=32))
    else:
        results = [_extract_one(t) for t in tasks]
    records = [r for r, e in results if e is None]
    errors = [e for _, e in results if e is not None]
    return records, errors


def cmd_extract(args):
    cfg = resolve_config(args)
    pairs = discover_dataset(args.dataset)
    records, errors = extract_records(pairs, cfg)
    for err in errors:
        print(f"error: {err}", file=sys.stderr)
    if records:
        write_descriptors(args.out, records)
        if args.csv:
            descriptors_to_csv(args.csv, records)
        print(f"wrote {len(records)} descriptors to {args.out}")
    if errors:
        return 1
    return 0


def _index_from_file(path):
    records = read_descriptors(path)
    return build_index((r.path, r.label, r.descriptor) for r in records)


def cmd_evaluate(args):
    cfg = resolve_config(args)
    index = _index_from_file(args.descriptors)
    report = evaluate(index, cfg.gammas, cfg.distance)
    metrics_to_csv(report, args.out)
    if args.json_out:
        metrics_to_json(report, args.json_out)
    print(f"wrote metrics for {index.size} images to {args.out} (ANMRR {report.anmrr:.2f}%)")
    return 0


def cmd_sweep(args):
    cfg = resolve_config(args)
    specs = [s.strip() for s in args.radii_list.split(",") if s.strip()]
    if not specs:
        raise CliInputError("empty radius spec list")
    ranges = [parse_radius_spec(s) for s in specs]
    needed = sorted({r for lo, hi in ranges for r in range(lo, hi + 1)})

    pairs = discover_dataset(args.dataset)
    # one histogram per (image, radius); each sweep spec is a concatenation
    per_radius = {r: [] for r in needed}
    errors = []
    for label, path in pairs:
        try:
            img = preprocess(path)
        except Exception as exc:
            errors.append(f"{path}: {exc}")
            continue
        for r in needed:
            per_radius[r].append(
                (label, path, ldop_histogram(img, NeighborSpec(r, cfg.directions)))
            )
    for err in errors:
        print(f"error: {err}", file=sys.stderr)
    if errors:
        return 1

    gamma = args.gamma_at if args.gamma_at else 10
    rows = []
    for spec_text, (lo, hi) in zip(specs, ranges):
        entries = []
        for i in range(len(per_radius[lo])):
            label, path, _ = per_radius[lo][i]
            desc = concat_descriptors(per_radius[r][i][2] for r in range(lo, hi + 1))
            entries.append((path, label, desc))
        report = evaluate(build_index(entries), (gamma,), cfg.distance)
        rows.append((spec_text, report.fscore[0]))

    with open(args.out, "w") as f:
        f.write(f"radii,fscore@{gamma}\n")
        for spec_text, fs in rows:
            f.write(f"{spec_text},{fs:.6f}\n")
    print(f"wrote sweep of {len(rows)} settings to {args.out}")
    return 0


def cmd_query(args):
    cfg = resolve_config(args)
    index = _index_from_file(args.descriptors)
    img = preprocess(args.image)
    parts = []
    for kind, radius in index.layout:
        if kind == KIND_LDOP:
            parts.append(ldop_histogram(img, NeighborSpec(radius, index.directions)))
        else:
            parts.append(lbp_histogram(img, radius, index.directions))
    q = concat_descriptors(parts)
    label_of = dict(zip(index.ids, index.labels))
    for rid, dist in query(index, q, args.gamma_count, cfg.distance):
        print(f"{rid}\t{label_of[rid]}\t{dist:.9f}")
    return 0


def cmd_maps(args):
    cfg = resolve_config(args)
    img = preprocess(args.image)
    os.makedirs(args.out, exist_ok=True)
    stem = os.path.splitext(os.path.basename(args.image))[0]
    if cfg.descriptor == "ldop":
        radii = [cfg.radius]
    else:
        radii = list(range(cfg.r_min, cfg.r_max + 1))
    written = []
    for r in radii:
        spec = NeighborSpec(r, cfg.directions)
        pm = ldop_map(img, spec)
        path = os.path.join(args.out, f"{stem}_ldop_R{r}.pgm")
        write_pgm(GrayImage(pm.codes.astype(np.int64)), path)
        written.append(path)
        for k in range(1, cfg.directions + 1):
            om = order_map(img, k, spec)
            scaled = np.floor((om.values - 1) * 255.0 / (factorial(r) - 1) + 0.5)
            path = os.path.join(args.out, f"{stem}_order_R{r}_k{k}.pgm")
            write_pgm(GrayImage(scaled.astype(np.int64)), path)
            written.append(path)
    pm = lbp_map(img, 1, cfg.directions)
    path = os.path.join(args.out, f"{stem}_lbp_R1.pgm")
    write_pgm(GrayImage(pm.codes.astype(np.int64)), path)
    written.append(path)
    print(f"wrote {len(written)} map images to {args.out}")
    return 0


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliInputError(message)


def _add_common(p):
    p.add_argument("--descriptor", choices=("ldop", "ldop-multi", "lbp"))
    p.add_argument("--radius", type=int, help="single radius (ldop/lbp)")
    p.add_argument("--radii", help="multi-resolution range, e.g. 24 or 2:4")
    p.add_argument("--neighbors", type=int, help="number of directions N")
    p.add_argument("--distance", choices=("euclidean", "cosine", "l1", "d1", "chisq"))
    p.add_argument("--gamma", help="gamma list, e.g. 1-10 or 1,5,10")
    p.add_argument("--workers", type=int)
    p.add_argument("--config", help="key=value config file")


def build_parser():
    parser = _Parser(prog="ldop", description="Directional order pattern descriptors and retrieval")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extract", help="extract descriptors for a dataset")
    p.add_argument("--dataset", required=True, help="root with one directory per class")
    p.add_argument("--out", required=True, help="output descriptor file")
    p.add_argument("--csv", help="optional CSV export path")
    _add_common(p)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("evaluate", help="run the retrieval evaluation protocol")
    p.add_argument("--descriptors", required=True, help="descriptor file from extract")
    p.add_argument("--out", required=True, help="metrics CSV path")
    p.add_argument("--json-out", help="optional metrics JSON path")
    _add_common(p)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("sweep", help="F-score table over radius settings")
    p.add_argument("--dataset", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--specs", dest="radii_list", required=True,
                   help="comma list of radius specs, e.g. 2,3,4,23,24")
    p.add_argument("--gamma-at", type=int, help="gamma for the F-score (default 10)")
    _add_common(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("query", help="rank the database against one query image")
    p.add_argument("--descriptors", required=True)
    p.add_argument("--image", required=True)
    p.add_argument("--top", dest="gamma_count", type=int, default=10)
    _add_common(p)
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("maps", help="dump code and order maps as PGM images")
    p.add_argument("--image", required=True)
    p.add_argument("--out", required=True, help="output directory")
    _add_common(p)
    p.set_defaults(func=cmd_maps)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except (FileNotFoundError, IsADirectoryError, PermissionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
