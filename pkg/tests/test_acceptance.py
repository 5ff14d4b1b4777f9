"""End-to-end acceptance checks for the whole package.

Each test prints a single PASS/FAIL line so the suite output doubles as an
acceptance report.  Run with ``pytest tests/test_acceptance.py -v -s``.
"""

import math
import time

import numpy as np
import pytest

from conftest import (
    floyd_warshall,
    oracle_apl_diameter,
    oracle_betweenness,
    oracle_clustering,
    random_graph,
)
from mccnet.audio_io import AudioBuffer, save_wav
from mccnet.cli import main
from mccnet.compare import DEFENSE, OFFENSE, UNIFORM, dissimilarity
from mccnet.graphs import (
    Graph,
    MetricVector,
    Partition,
    apl,
    avg_clustering,
    betweenness,
    diameter,
    metric_vector,
    modularity,
)
from mccnet.layout import LayoutParams, yifan_hu_layout
from mccnet.mfcc import MfccConfig, compute_mfcc
from mccnet.milnet import generate, reference_metrics
from mccnet.network import build_mccn, segment_clips
from mccnet.rng import SplitMix64


def report(num, name, ok):
    print(f"\nACCEPTANCE {num:02d} {name}: {'PASS' if ok else 'FAIL'}")
    assert ok, f"acceptance criterion {num} ({name}) failed"


def test_01_metric_oracle_suite():
    start = time.perf_counter()
    ok = True
    for seed in range(20):
        g = random_graph(8 + seed % 5, 0.4, seed=seed)
        ref_apl, ref_diam = oracle_apl_diameter(g)
        ok &= abs(apl(g) - ref_apl) < 1e-9
        ok &= abs(diameter(g) - ref_diam) < 1e-9
        ok &= abs(avg_clustering(g) - oracle_clustering(g)) < 1e-9
        bc = betweenness(g)
        ref_bc = oracle_betweenness(g)
        ok &= max(abs(bc[v] - ref_bc[v]) for v in range(g.n)) < 1e-9
    elapsed = time.perf_counter() - start
    ok &= elapsed < 10.0
    report(1, "metric oracle suite", ok)


def test_02_modularity_calibration():
    ok = True
    for seed in range(50):
        g = random_graph(4 + seed % 9, 0.5, seed=100 + seed)
        if g.m == 0:
            continue
        ok &= abs(modularity(g, Partition((0,) * g.n))) < 1e-12
    two_k3 = Graph(6)
    for a, b in [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]:
        two_k3.add_edge(a, b)
    q = modularity(two_k3, Partition((0, 0, 0, 1, 1, 1)))
    ok &= abs(q - 0.5) < 1e-9
    report(2, "modularity calibration", ok)


def test_03_generator_identities():
    start = time.perf_counter()
    ok = True
    for n in (10, 50, 200):
        for seed in range(100):
            rtn = generate("rtn", n, seed=seed)
            ok &= rtn.m == n - 1 and len(rtn.connected_components()) == 1
            ran = generate("ran", n, seed=seed)
            ok &= ran.m == 2 * n - 3 and len(ran.connected_components()) == 1
            ba = generate("ba", n, seed=seed)
            ok &= ba.m == 3 + 2 * (n - 3)
    elapsed = time.perf_counter() - start
    ok &= elapsed < 30.0
    report(3, "generator identities", ok)


def test_04_mccn_edge_count_floor():
    ok = True
    rng = SplitMix64(7)
    cfg = MfccConfig()
    for i in range(50):
        n_clips = 2 + rng.randrange(8)
        dur = 6.0 * n_clips + 0.2
        samples = np.array(
            [0.4 * math.sin(2 * math.pi * (200 + 25 * i) * t / 8000)
             for t in range(int(dur * 8000))]
        )
        buf = AudioBuffer(samples=samples, sample_rate=8000)
        feats = compute_mfcc(buf, cfg)
        clips = segment_clips(feats, 6.0)
        net = build_mccn(clips)
        pairs = len(clips) * (len(clips) - 1) // 2
        ok &= net.graph.m >= math.ceil(pairs / 2)
    report(4, "median-rule edge floor", ok)


def test_05_dissimilarity_exact_values():
    ones = MetricVector(1.0, 1.0, 1.0, 1.0, 1.0)
    zeros = MetricVector(0.0, 0.0, 0.0, 0.0, 0.0)
    ok = dissimilarity(ones, zeros, OFFENSE) == 1.0
    d = dissimilarity(MetricVector(2.0, 0.0, 1.0, 0.0, 1.0), zeros, DEFENSE)
    ok &= abs(d - 0.9) < 1e-15
    ok &= dissimilarity(ones, ones, UNIFORM) == 0.0
    report(5, "weighted dissimilarity exact checks", ok)


def test_06_structure_recovery():
    start = time.perf_counter()
    rate = 8000
    rng = SplitMix64(42)
    pattern = "AABBAABBAABB"
    seg = 6 * rate
    pieces = []
    for j, motif in enumerate(pattern):
        t = (np.arange(seg) + j * seg) / rate
        if motif == "A":
            pieces.append(0.5 * np.sin(2 * np.pi * 440 * t)
                          + 0.3 * np.sin(2 * np.pi * 660 * t))
        else:
            noise = np.array([rng.random() - 0.5 for _ in range(seg)])
            pieces.append(0.8 * noise)
    # half-second tail so the last 6-second block still has full frames
    tail = np.zeros(rate // 2)
    buf = AudioBuffer(samples=np.concatenate(pieces + [tail]), sample_rate=rate)
    feats = compute_mfcc(buf, MfccConfig())
    clips = segment_clips(feats, 6.0)
    assert len(clips) == 12
    net = build_mccn(clips)

    sims = net.similarities
    within, cross = [], []
    for i in range(12):
        for j in range(i + 1, 12):
            (within if pattern[i] == pattern[j] else cross).append(sims[i, j])
    ok = float(np.mean(within)) > float(np.mean(cross))
    same = sum(1 for a, b in net.graph.edges if pattern[a] == pattern[b])
    ok &= same / net.graph.m >= 0.90
    ok &= time.perf_counter() - start < 20.0
    report(6, "motif structure recovery", ok)


def test_07_topology_self_identification():
    start = time.perf_counter()
    n, reps = 100, 30
    refs = {v: reference_metrics(v, n, trials=30, seed=1000 + k)
            for k, v in enumerate(("rtn", "ran", "sos", "ba"))}
    rates = {}
    for k, variant in enumerate(("rtn", "ran", "sos", "ba")):
        hits = 0
        for rep in range(reps):
            g = generate(variant, n, seed=5000 + 100 * k + rep)
            vec = metric_vector(g)
            scores = {v: dissimilarity(vec, r, UNIFORM) for v, r in refs.items()}
            if min(scores, key=scores.get) == variant:
                hits += 1
        rates[variant] = hits / reps
    elapsed = time.perf_counter() - start
    print(f"\n  self-identification rates: {rates} ({elapsed:.1f} s)")
    ok = all(rates[v] >= 0.80 for v in ("rtn", "ran", "ba"))
    ok &= elapsed < 180.0
    report(7, "topology self-identification", ok)


def test_08_report_shape_and_identical_group(tmp_path):
    wav = tmp_path / "p.wav"
    t = np.arange(int(36.1 * 8000)) / 8000
    save_wav(wav, AudioBuffer(samples=0.5 * np.sin(2 * np.pi * 300 * t),
                              sample_rate=8000))
    built = tmp_path / "built"
    assert main(["build", "--output-dir", str(built), str(wav)]) == 0
    metrics = built / "p.metrics.csv"
    manifest = tmp_path / "manifest.txt"
    manifest.write_text(f"{metrics},offense\n{metrics},offense\n")
    cfg = tmp_path / "cfg.json"
    cfg.write_text('{"trials": 5}')
    out = tmp_path / "cmp"
    assert main(["compare", "--manifest", str(manifest), "--config", str(cfg),
                 "--output-dir", str(out)]) == 0
    songs = (out / "report_songs.csv").read_text().strip().splitlines()
    groups = (out / "report_groups.csv").read_text().strip().splitlines()
    ok = songs[0] == "song,RTN,RAN,SOS,BANWC2NM,best_match"
    ok &= groups[0] == "group,RTN,RAN,SOS,BANWC2NM,best_match"
    row1, row2 = songs[1].split(","), songs[2].split(",")
    grow = groups[1].split(",")
    # identical inputs: group row equals each song row, 4-decimal cells
    ok &= row1[1:] == row2[1:] == grow[1:]
    ok &= all(len(c.split(".")[1]) == 4 for c in row1[1:-1])
    report(8, "report shape and identical-group invariant", ok)


def test_09_layout_equilibrium():
    g = Graph(2)
    g.add_edge(0, 1)
    params = LayoutParams()
    target = params.optimal_distance * params.relative_strength ** (1 / 3)
    ok = True
    for seed in range(5):
        res = yifan_hu_layout(g, params, seed=seed)
        d = float(np.linalg.norm(res.positions[0] - res.positions[1]))
        ok &= abs(d - target) / target < 0.05
    report(9, "two-node layout equilibrium", ok)


def test_10_pipeline_determinism(tmp_path):
    wav = tmp_path / "p.wav"
    t = np.arange(int(36.1 * 8000)) / 8000
    save_wav(wav, AudioBuffer(samples=0.5 * np.sin(2 * np.pi * 260 * t),
                              sample_rate=8000))
    cfg = tmp_path / "cfg.json"
    cfg.write_text('{"trials": 3, "seed": 11}')

    def run(out):
        assert main(["extract", "--config", str(cfg), "--output-dir", str(out), str(wav)]) == 0
        assert main(["build", "--config", str(cfg), "--output-dir", str(out), str(wav)]) == 0
        assert main(["genmil", "--config", str(cfg), "--variant", "ran", "--n", "20",
                     "--output-dir", str(out)]) == 0
        assert main(["render", "--config", str(cfg), "--output-dir", str(out),
                     str(out / "ran_n20.gexf")]) == 0
        manifest = out / "manifest.txt"
        manifest.write_text(f"{out / 'p.metrics.csv'},offense\n")
        assert main(["compare", "--config", str(cfg), "--manifest", str(manifest),
                     "--output-dir", str(out)]) == 0

    out1, out2 = tmp_path / "run1", tmp_path / "run2"
    run(out1)
    run(out2)
    ok = True
    for name in ("p.mccn.gexf", "ran_n20.gexf", "ran_n20.svg",
                 "p.mfcc.csv", "p.metrics.csv", "ran_n20.refmetrics.csv",
                 "report_songs.csv", "report_groups.csv"):
        ok &= (out1 / name).read_bytes() == (out2 / name).read_bytes()
    report(10, "pipeline determinism", ok)
