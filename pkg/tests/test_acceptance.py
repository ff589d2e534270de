"""Acceptance suite: one test per release criterion, each printing a
pass/fail line.  Run with ``pytest tests/test_acceptance.py -v -s``.

Criterion 7 needs the AT&T face database (40 subjects x 10 images).  Point
LDOP_ATT_DIR at a directory-per-class copy, or pre-seed the scikit-learn
Olivetti cache; without either the test skips and says so.
"""

import itertools
import os
import time
from math import factorial

import numpy as np
import pytest

from ldop import (
    GrayImage,
    NeighborSpec,
    build_index,
    evaluate,
    lbp_histogram,
    ldop_code,
    ldop_histogram,
    multi_res_ldop,
    order_map,
    perm_rank,
    perm_unrank,
    resize_bilinear,
    write_pgm,
)
from ldop.cli import RunConfig, extract_records, main
from ldop.retrieval import _nmrr

from conftest import make_dataset, random_image
from test_encoder import reference_code


def report(criterion, ok, detail=""):
    line = f"[criterion {criterion}] {'PASS' if ok else 'FAIL'}"
    if detail:
        line += f" ({detail})"
    print(line)
    assert ok, line


def test_criterion_1_permutation_rank_oracle():
    start = time.perf_counter()
    for n in (2, 3, 4, 5):
        table = list(itertools.permutations(range(1, n + 1)))
        for j, perm in enumerate(table, start=1):
            assert perm_rank(perm) == j
            assert tuple(perm_unrank(j, n)) == perm
    elapsed = time.perf_counter() - start
    report(1, elapsed < 1.0, f"exhaustive R=2..5 in {elapsed:.2f}s")


def test_criterion_2_order_map_illumination_invariance():
    rng = np.random.default_rng(20240901)
    start = time.perf_counter()
    for _ in range(200):
        # integer slope and offset keep round() exact; 2 * 120 + 15 <= 255
        # so the clamp never merges values (tie-pattern preserving)
        img = random_image(rng, 16, 16, lo=0, hi=121)
        a = int(rng.integers(1, 3))
        b = int(rng.integers(0, 16))
        mapped = GrayImage(np.minimum(255, a * img.pixels.astype(np.int64) + b))
        for radius in (2, 3, 4):
            spec = NeighborSpec(radius, 8)
            for k in range(1, 9):
                assert np.array_equal(
                    order_map(img, k, spec).values, order_map(mapped, k, spec).values
                )
    elapsed = time.perf_counter() - start
    report(2, elapsed < 10.0, f"200 images x R=2..4 x 8 dirs in {elapsed:.2f}s")


def test_criterion_3_histogram_contract():
    rng = np.random.default_rng(7)
    for i in range(500):
        h, w = rng.integers(10, 26, size=2)
        img = random_image(rng, h, w)
        ld = ldop_histogram(img, NeighborSpec(2, 8))
        lb = lbp_histogram(img, 1, 8)
        assert ld.values.size == 256 and lb.values.size == 256
        assert abs(ld.values.sum() - 1.0) <= 1e-9
        assert abs(lb.values.sum() - 1.0) <= 1e-9
        if i < 50:
            mr = multi_res_ldop(img, 2, 4)
            assert mr.values.size == 768
            for s in range(3):
                assert abs(mr.values[s * 256:(s + 1) * 256].sum() - 1.0) <= 1e-9
    report(3, True, "500 images, LDOP 256 / LBP 256 / multi-res 768, sums within 1e-9")


def test_criterion_4_encoder_oracle():
    rng = np.random.default_rng(11)
    for radius in (2, 3):
        spec = NeighborSpec(radius, 8)
        for _ in range(100):
            img = random_image(rng, 7, 7)
            for x in range(radius + 1, 8 - radius):
                for y in range(radius + 1, 8 - radius):
                    assert ldop_code(img, x, y, spec) == reference_code(img, x, y, spec)
    report(4, True, "100 random 7x7 images, R=2 and R=3, Lehmer == table reference")


def test_criterion_5_self_retrieval():
    rng = np.random.default_rng(3)
    entries = []
    for i in range(60):
        img = random_image(rng, 16, 16)
        entries.append((f"img{i}", f"c{i % 6}", multi_res_ldop(img, 2, 3)))
    idx = build_index(entries)
    for m in ("euclidean", "cosine", "l1", "d1", "chisq"):
        rep = evaluate(idx, (1,), m)
        assert rep.arp[0] == 100.0
    report(5, True, "Pr@1 = 100.00% for every query under all five measures")


TOY_DESCRIPTORS = {
    # two classes with one deliberate confuser (b3 sits next to class A)
    "a1": ("A", (1.0, 0.0, 0.0, 0.0)),
    "a2": ("A", (0.9, 0.1, 0.0, 0.0)),
    "a3": ("A", (0.8, 0.2, 0.0, 0.0)),
    "b1": ("B", (0.0, 0.1, 0.9, 0.0)),
    "b2": ("B", (0.0, 0.2, 0.8, 0.0)),
    "b3": ("B", (0.75, 0.25, 0.0, 0.0)),
}

# frozen output of an independent pure-python oracle (full sort + direct
# formula evaluation) over TOY_DESCRIPTORS with chi-square
TOY_EXPECTED = {
    1: (100.0, 33.333333333333336, 50.0),
    2: (83.33333333333333, 55.555555555555564, 66.66666666666669),
    3: (77.77777777777779, 77.77777777777779, 77.77777777777779),
}
TOY_EXPECTED_ANMRR = 9.09090909090909


def test_criterion_6_metric_hand_oracle():
    from ldop import Descriptor

    entries = [
        (name, label, Descriptor(np.asarray(v), (("ldop", 2),), 2))
        for name, (label, v) in TOY_DESCRIPTORS.items()
    ]
    idx = build_index(entries)
    rep = evaluate(idx, (1, 2, 3), "chisq")
    for gi, g in enumerate((1, 2, 3)):
        arp, arr, f = TOY_EXPECTED[g]
        assert rep.arp[gi] == pytest.approx(arp, abs=1e-9)
        assert rep.arr[gi] == pytest.approx(arr, abs=1e-9)
        assert rep.fscore[gi] == pytest.approx(f, abs=1e-9)
    assert rep.anmrr == pytest.approx(TOY_EXPECTED_ANMRR, abs=1e-9)
    # spot-check the NMRR formula itself
    assert _nmrr(np.array([1, 3]), 2) == pytest.approx(0.5 / 3.5, abs=1e-12)
    report(6, True, "toy ARP/ARR/F at gamma=1..3 and ANMRR match the oracle to 1e-9")


def _load_att_dataset():
    """(label, GrayImage) pairs for the 40x10 AT&T faces, or None."""
    root = os.environ.get("LDOP_ATT_DIR")
    if root and os.path.isdir(root):
        from ldop import load_gray

        pairs = []
        for label in sorted(os.listdir(root)):
            cdir = os.path.join(root, label)
            if not os.path.isdir(cdir):
                continue
            for name in sorted(os.listdir(cdir)):
                if name.lower().endswith((".pgm", ".png")):
                    pairs.append((label, load_gray(os.path.join(cdir, name))))
        if pairs:
            return pairs
    try:
        from sklearn.datasets import fetch_olivetti_faces

        faces = fetch_olivetti_faces(download_if_missing=False)
    except Exception:
        return None
    pairs = []
    for img, target in zip(faces.images, faces.target):
        pixels = np.clip(np.floor(img * 255.0 + 0.5), 0, 255).astype(np.int64)
        pairs.append((f"s{target:02d}", GrayImage(pixels)))
    return pairs


def test_criterion_7_att_reference_accuracy():
    pairs = _load_att_dataset()
    if pairs is None:
        pytest.skip(
            "AT&T face database unavailable: set LDOP_ATT_DIR or seed the "
            "scikit-learn Olivetti cache (no dataset network access here)"
        )
    assert len(pairs) == 400

    start = time.perf_counter()
    entries = []
    for i, (label, img) in enumerate(pairs):
        img = resize_bilinear(img, 64, 64)
        entries.append((f"{label}/{i}", label, multi_res_ldop(img, 2, 4)))
    idx = build_index(entries)
    arp5 = {
        m: evaluate(idx, (5,), m).arp[0]
        for m in ("euclidean", "cosine", "l1", "d1", "chisq")
    }
    elapsed = time.perf_counter() - start

    assert abs(arp5["chisq"] - 94.05) <= 3.0, arp5
    # reported ordering: Euclidean 92.15 <= Cosine 92.75 <= L1 94.30 <= D1 94.40
    ties = 0.5
    assert arp5["d1"] >= arp5["l1"] - ties
    assert arp5["l1"] >= arp5["cosine"] - ties
    assert arp5["cosine"] >= arp5["euclidean"] - ties
    assert elapsed < 60.0
    report(7, True, f"ARP@5 chisq={arp5['chisq']:.2f}, ordering held, {elapsed:.1f}s")


def test_criterion_8_large_database_runtime(tmp_path):
    n_classes, per_class = 100, 100  # 10^4 images
    rng = np.random.default_rng(99)
    root = tmp_path / "large"
    for c in range(n_classes):
        cdir = root / f"s{c:03d}"
        cdir.mkdir(parents=True)
        base = rng.integers(0, 200, size=(64, 64), dtype=np.int64)
        header = b"P5\n64 64\n255\n"
        for i in range(per_class):
            noise = rng.integers(0, 56, size=(64, 64), dtype=np.int64)
            raster = np.clip(base + noise, 0, 255).astype(np.uint8).tobytes()
            (cdir / f"i{i:03d}.pgm").write_bytes(header + raster)

    start = time.perf_counter()
    desc_path = tmp_path / "large.ldop"
    csv_path = tmp_path / "large.csv"
    assert main(["extract", "--dataset", str(root), "--out", str(desc_path)]) == 0
    t_extract = time.perf_counter() - start
    assert main(["evaluate", "--descriptors", str(desc_path), "--out", str(csv_path)]) == 0
    elapsed = time.perf_counter() - start
    assert csv_path.exists()
    report(
        8,
        elapsed < 300.0,
        f"10^4 images end-to-end in {elapsed:.0f}s (extract {t_extract:.0f}s)",
    )


def test_criterion_9_determinism(tmp_path, rng):
    data = make_dataset(tmp_path / "data", rng, n_classes=8, per_class=5, size=64)

    outputs = []
    for run, workers in (("one", 1), ("two", 1), ("eight", 8)):
        desc = tmp_path / f"{run}.ldop"
        csv = tmp_path / f"{run}.csv"
        assert main(["extract", "--dataset", str(data), "--out", str(desc),
                     "--workers", str(workers)]) == 0
        assert main(["evaluate", "--descriptors", str(desc), "--out", str(csv),
                     "--gamma", "1-5"]) == 0
        outputs.append((desc.read_bytes(), csv.read_bytes()))

    assert outputs[0] == outputs[1] == outputs[2]
    report(9, True, "descriptor files and metrics CSV byte-identical across runs/workers")
