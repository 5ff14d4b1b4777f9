"""Command-line front end: extract | build | genmil | render | compare.

Exit codes: 0 success, 1 data errors (bad files; the batch continues),
2 usage errors.
"""

from __future__ import annotations

import argparse
import copy
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, Callable, Sequence

from . import compare as cmp
from . import graphio, graphs, milnet
from .audio_io import load_wav
from .errors import GraphParseError, MccnetError, MissingWeightsError
from .layout import LayoutParams, yifan_hu_layout
from .mfcc import MfccConfig, compute_mfcc, write_mfcc_csv
from .network import build_mccn, segment_clips
from .render import render_svg

DEFAULT_CONFIG: dict[str, Any] = {
    "mfcc": {
        "pre_emphasis_alpha": 0.97,
        "frame_len_s": 0.025,
        "hop_len_s": 0.010,
        "n_mel_filters": 26,
        "n_coeffs": 13,
        "fft_size": None,
    },
    "clip_len_s": 6.0,
    "generators": {
        "sos": {"layers": 3, "parents_per_node": 2, "intra_layer_p": 0.1},
        "ba": {"edges_per_node": 2, "preferential_p": 0.5},
    },
    "layout": {
        "optimal_distance": 1.0,
        "relative_strength": 0.2,
        "step_init": None,
        "step_shrink": 0.9,
        "max_iter": 1000,
        "convergence_tol": None,
        "theta": 1.2,
    },
    "group_weights": {},  # extra labels -> [5 weights]; offense/defense are built in
    "normalize": False,
    "trials": 30,
    "ref_n": None,  # None: match each song's node count
    "seed": 0,
    "include_vectors": False,
}


class ConfigError(MccnetError):
    pass


def _merge_config(base: dict, override: dict, path: str = "") -> dict:
    merged = copy.deepcopy(base)
    for key, value in override.items():
        where = f"{path}.{key}" if path else key
        if key == "group_weights":
            merged[key] = dict(value)
            continue
        if key not in base:
            raise ConfigError(f"unknown config key: {where}")
        if isinstance(base[key], dict) and key != "group_weights":
            if not isinstance(value, dict):
                raise ConfigError(f"config key {where} must be a section")
            merged[key] = _merge_config(base[key], value, where)
        else:
            merged[key] = value
    return merged


def load_config(path: str | None) -> dict:
    if path is None:
        return copy.deepcopy(DEFAULT_CONFIG)
    with open(path) as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict):
        raise ConfigError("config root must be an object")
    return _merge_config(DEFAULT_CONFIG, doc)


def _mfcc_config(cfg: dict) -> MfccConfig:
    return MfccConfig(**cfg["mfcc"])


def _layout_params(cfg: dict) -> LayoutParams:
    return LayoutParams(**cfg["layout"])


def _write_effective_config(cfg: dict, outdir: Path) -> None:
    (outdir / "effective_config.json").write_text(
        json.dumps(cfg, indent=2, sort_keys=True) + "\n"
    )


def _run_batch(items: Sequence, worker: Callable, jobs: int) -> list:
    """Run worker over items, preserving input order in the results."""
    if jobs <= 1 or len(items) <= 1:
        return [worker(item) for item in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(worker, items))


def cmd_extract(args, cfg: dict) -> int:
    outdir = Path(args.output_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    if not args.inputs:
        print("warning: no inputs", file=sys.stderr)
        return 0
    config = _mfcc_config(cfg)

    def work(path: str):
        try:
            buffer = load_wav(path)
            matrix = compute_mfcc(buffer, config)
            out = outdir / (Path(path).stem + ".mfcc.csv")
            write_mfcc_csv(matrix, out)
            return None
        except (MccnetError, FileNotFoundError, OSError) as exc:
            return f"{path}: {exc}"

    failures = [msg for msg in _run_batch(args.inputs, work, args.jobs) if msg]
    for msg in failures:
        print(f"error: {msg}", file=sys.stderr)
    _write_effective_config(cfg, outdir)
    return 1 if failures else 0


def cmd_build(args, cfg: dict) -> int:
    outdir = Path(args.output_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    if not args.inputs:
        print("warning: no inputs", file=sys.stderr)
        return 0
    config = _mfcc_config(cfg)
    clip_len_s = float(cfg["clip_len_s"])

    def work(path: str):
        try:
            buffer = load_wav(path)
            matrix = compute_mfcc(buffer, config)
            clips = segment_clips(matrix, clip_len_s)
            mccn = build_mccn(clips)
            mv = graphs.metric_vector(mccn.graph)
            coverage = graphs.component_coverage(mccn.graph)
            stem = Path(path).stem
            (outdir / f"{stem}.mccn.gexf").write_text(graphio.mccn_gexf(mccn))
            (outdir / f"{stem}.mccn.json").write_text(
                graphio.mccn_json(mccn, include_vectors=bool(cfg["include_vectors"]))
            )
            (outdir / f"{stem}.metrics.csv").write_text(mv.csv_row() + "\n")
            print(
                f"{path}: {mccn.graph.n} nodes, {mccn.graph.m} edges, "
                f"threshold {mccn.threshold:.6f}, component coverage {coverage:.3f}",
                file=sys.stderr,
            )
            return None
        except (MccnetError, FileNotFoundError, OSError) as exc:
            return f"{path}: {exc}"

    failures = [msg for msg in _run_batch(args.inputs, work, args.jobs) if msg]
    for msg in failures:
        print(f"error: {msg}", file=sys.stderr)
    _write_effective_config(cfg, outdir)
    return 1 if failures else 0


def cmd_genmil(args, cfg: dict) -> int:
    outdir = Path(args.output_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    sos = milnet.SosParams(**cfg["generators"]["sos"])
    ba = milnet.BaParams(**cfg["generators"]["ba"])
    seed = int(cfg["seed"])
    trials = args.trials if args.trials is not None else int(cfg["trials"])
    try:
        g = milnet.generate(args.variant, args.n, seed, sos=sos, ba=ba)
        ref = milnet.reference_metrics(args.variant, args.n, trials=trials, seed=seed, sos=sos, ba=ba)
    except MccnetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    stem = f"{args.variant}_n{args.n}"
    (outdir / f"{stem}.gexf").write_text(graphio.gexf_string(g))
    (outdir / f"{stem}.json").write_text(graphio.graph_json(g))
    (outdir / f"{stem}.dot").write_text(graphio.dot_string(g))
    (outdir / f"{stem}.refmetrics.csv").write_text(ref.csv_row() + "\n")
    _write_effective_config(cfg, outdir)
    return 0


def cmd_render(args, cfg: dict) -> int:
    outdir = Path(args.output_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    path = Path(args.graph)
    try:
        if path.suffix == ".json":
            g = graphio.parse_graph_json(path)
        else:
            g = graphio.parse_gexf(path)
    except (GraphParseError, FileNotFoundError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    layout = yifan_hu_layout(g, _layout_params(cfg), seed=int(cfg["seed"]))
    tiers = graphs.categorize_nodes(graphs.betweenness(g)) if args.tiers else None
    svg = render_svg(g, layout, tiers)
    stem = path.name.split(".")[0]
    (outdir / f"{stem}.svg").write_text(svg)
    _write_effective_config(cfg, outdir)
    return 0


def _read_metrics_csv(path: Path) -> graphs.MetricVector:
    row = path.read_text().strip().splitlines()[0]
    values = [float(x) for x in row.split(",")]
    if len(values) != 5:
        raise MccnetError(f"{path}: expected 5 metric values, got {len(values)}")
    return graphs.MetricVector(*values)


def _song_node_count(metrics_path: Path) -> int | None:
    sidecar = metrics_path.with_name(metrics_path.name.replace(".metrics.csv", ".mccn.json"))
    if sidecar == metrics_path or not sidecar.exists():
        return None
    with open(sidecar) as fh:
        return int(json.load(fh)["n"])


def _weights_for_label(label: str, cfg: dict) -> cmp.WeightProfile:
    if label in cmp.BUILTIN_PROFILES:
        return cmp.BUILTIN_PROFILES[label]
    if label in cfg["group_weights"]:
        return cmp.WeightProfile(tuple(cfg["group_weights"][label]), name=label)
    raise MissingWeightsError(
        f"group {label!r} has no built-in weight profile; supply group_weights in the config"
    )


def cmd_compare(args, cfg: dict) -> int:
    outdir = Path(args.output_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    sos = milnet.SosParams(**cfg["generators"]["sos"])
    ba = milnet.BaParams(**cfg["generators"]["ba"])
    seed = int(cfg["seed"])
    trials = int(cfg["trials"])
    ref_n_default = args.ref_n if args.ref_n is not None else cfg["ref_n"]

    groups: dict[str, list[tuple[str, Path]]] = {}
    try:
        for lineno, line in enumerate(Path(args.manifest).read_text().splitlines(), 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "," not in line:
                print(f"error: {args.manifest}:{lineno}: expected 'path,label'", file=sys.stderr)
                return 2
            path, label = (part.strip() for part in line.rsplit(",", 1))
            groups.setdefault(label, []).append((Path(path).stem.replace(".metrics", ""), Path(path)))
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    if not groups:
        print("error: manifest lists no songs", file=sys.stderr)
        return 2

    try:
        profiles = {label: _weights_for_label(label, cfg) for label in groups}
    except MissingWeightsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    ref_cache: dict[tuple[str, int], graphs.MetricVector] = {}

    def reference(variant: str, n: int) -> graphs.MetricVector:
        key = (variant, n)
        if key not in ref_cache:
            ref_cache[key] = milnet.reference_metrics(
                variant, n, trials=trials, seed=seed, sos=sos, ba=ba
            )
        return ref_cache[key]

    variant_map = dict(zip(cmp.VARIANT_COLUMNS, milnet.VARIANTS))
    reports = []
    try:
        for label, entries in groups.items():
            songs = []
            variants_per_song = []
            for name, path in entries:
                mv = _read_metrics_csv(path)
                n = _song_node_count(path) or ref_n_default
                if n is None:
                    raise MccnetError(
                        f"{path}: no network sidecar to take the node count from; pass --ref-n"
                    )
                songs.append((name, mv))
                variants_per_song.append(
                    {col: reference(variant, int(n)) for col, variant in variant_map.items()}
                )
            # compare each song against 4 size-matched references, then average
            rows = []
            for (name, mv), variants in zip(songs, variants_per_song):
                report = cmp.compare_group(
                    label, [(name, mv)], variants, profiles[label], normalize=bool(cfg["normalize"])
                )
                rows.append(report.rows[0])
            group_values = tuple(
                sum(r.values[k] for r in rows) / len(rows) for k in range(len(cmp.VARIANT_COLUMNS))
            )
            best = cmp.VARIANT_COLUMNS[min(range(len(group_values)), key=group_values.__getitem__)]
            reports.append(
                cmp.DissimilarityReport(
                    variant_names=cmp.VARIANT_COLUMNS,
                    rows=tuple(rows),
                    group_rows=(cmp.GroupRow(group=label, values=group_values, best_match=best),),
                )
            )
    except (MccnetError, FileNotFoundError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    merged = cmp.merge_reports(reports)
    (outdir / "report_songs.csv").write_text(cmp.song_report_csv(merged))
    (outdir / "report_groups.csv").write_text(cmp.group_report_csv(merged))
    _write_effective_config(cfg, outdir)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON config file; defaults are used for absent keys")
    common.add_argument("--seed", type=int, help="override the config seed")
    common.add_argument("--jobs", type=int, default=1, help="parallel workers for batch items")
    common.add_argument("--output-dir", default=".", help="directory for all outputs")

    parser = argparse.ArgumentParser(
        prog="mccnet",
        description="Music clip correlation networks and reference topology comparison",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extract", parents=[common], help="WAV -> MFCC CSV (13 rows)")
    p.add_argument("inputs", nargs="*", help="WAV files")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("build", parents=[common], help="WAV -> correlation network + metrics")
    p.add_argument("inputs", nargs="*", help="WAV files")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("genmil", parents=[common], help="generate a reference topology")
    p.add_argument("--variant", required=True, choices=milnet.VARIANTS)
    p.add_argument("--n", type=int, required=True, help="node count")
    p.add_argument("--trials", type=int, help="trials for the reference metric average")
    p.set_defaults(func=cmd_genmil)

    p = sub.add_parser("render", parents=[common], help="graph file -> SVG")
    p.add_argument("graph", help="GEXF or JSON graph file")
    p.add_argument("--tiers", action="store_true", help="style nodes by betweenness tier")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("compare", parents=[common], help="metric CSVs -> dissimilarity reports")
    p.add_argument("--manifest", required=True, help="file of 'metrics_csv_path,label' lines")
    p.add_argument("--ref-n", type=int, help="reference node count when no network sidecar exists")
    p.set_defaults(func=cmd_compare)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config)
    except (ConfigError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.seed is not None:
        cfg["seed"] = args.seed
    return args.func(args, cfg)


def entry() -> None:
    sys.exit(main())
