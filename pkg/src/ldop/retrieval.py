"""Exhaustive retrieval index and the ARP/ARR/F-score/ANMRR evaluation protocol.

Every database image is used as a query against the full database (the query
itself stays in the database and counts as a relevant match).  Rankings are
exact: a linear scan sorted ascending by distance, ties broken by insertion
order.
"""

from dataclasses import dataclass, field

import numpy as np

from .distances import cross_distances, pairwise_distances


@dataclass(frozen=True)
class DatasetIndex:
    """Labeled descriptor matrix ready for exhaustive querying."""

    ids: tuple
    labels: tuple
    matrix: np.ndarray  # (n, d) float64, one row per entry
    layout: tuple
    directions: int
    class_sizes: dict = field(default_factory=dict)

    @property
    def size(self):
        return len(self.ids)


def build_index(entries):
    """Build a DatasetIndex from (id, label, Descriptor) triples.

    Input order is preserved and defines tie-breaking for equal distances.
    """
    entries = list(entries)
    if not entries:
        raise ValueError("empty dataset")
    layout = entries[0][2].layout
    n = entries[0][2].directions
    for eid, _, d in entries:
        if d.layout != layout or d.directions != n:
            raise ValueError(f"{eid}: descriptor layout differs from the first entry")
    ids = tuple(e[0] for e in entries)
    labels = tuple(e[1] for e in entries)
    matrix = np.ascontiguousarray([e[2].values for e in entries], dtype=np.float64)
    sizes = {}
    for lab in labels:
        sizes[lab] = sizes.get(lab, 0) + 1
    return DatasetIndex(ids, labels, matrix, layout, n, sizes)


def query(index, q, gamma, measure):
    """Top-gamma entries for a query descriptor, ascending by distance.

    gamma is clamped to the index size; ties keep insertion order.
    """
    if gamma < 1:
        raise ValueError("gamma must be >= 1")
    if q.layout != index.layout or q.directions != index.directions:
        raise ValueError("query descriptor layout differs from the index")
    dists = cross_distances(index.matrix, q.values, measure)
    order = np.argsort(dists, kind="stable")[: min(gamma, index.size)]
    return [(index.ids[i], float(dists[i])) for i in order]


def precision_recall(retrieved, query_class, index, gamma):
    """Precision and recall (both %) of a retrieved list for one query.

    The query image is part of the database and counts as a match.
    """
    if query_class not in index.class_sizes:
        raise ValueError(f"unknown class label {query_class!r}")
    label_of = dict(zip(index.ids, index.labels))
    matches = sum(1 for rid, _ in retrieved if label_of[rid] == query_class)
    pr = 100.0 * matches / gamma
    re = 100.0 * matches / index.class_sizes[query_class]
    return pr, re


@dataclass(frozen=True)
class MetricsReport:
    """ARP/ARR/F-score per gamma plus a single ANMRR figure, all in percent."""

    gammas: tuple
    arp: tuple
    arr: tuple
    fscore: tuple
    anmrr: float


def _scan_queries(index, measure):
    """Yield (query position, ranked positions) for every database image."""
    dist = pairwise_distances(index.matrix, measure)
    for j in range(index.size):
        yield j, np.argsort(dist[j], kind="stable")


def evaluate(index, gammas, measure):
    """Run the full each-image-as-query protocol.

    Per-class average precision/recall at each gamma are averaged over
    classes into ARP/ARR; the F-score is their harmonic mean.  ANMRR comes
    along for free from the same rankings.
    """
    gammas = tuple(int(g) for g in gammas)
    if any(g < 1 for g in gammas):
        raise ValueError("gamma values must be >= 1")
    labels = np.asarray(index.labels, dtype=object)
    class_names = sorted(index.class_sizes)
    class_pos = {c: i for i, c in enumerate(class_names)}
    nclass = len(class_names)

    pr_sum = np.zeros((nclass, len(gammas)))
    re_sum = np.zeros((nclass, len(gammas)))
    nmrr_sum = 0.0

    for j, order in _scan_queries(index, measure):
        same = labels[order] == labels[j]
        csum = np.cumsum(same)
        ci = class_pos[index.labels[j]]
        ng = index.class_sizes[index.labels[j]]
        for gi, g in enumerate(gammas):
            cnt = int(csum[min(g, index.size) - 1])
            pr_sum[ci, gi] += 100.0 * cnt / g
            re_sum[ci, gi] += 100.0 * cnt / ng
        nmrr_sum += _nmrr(np.nonzero(same)[0] + 1, ng)

    sizes = np.asarray([index.class_sizes[c] for c in class_names], dtype=np.float64)
    arp = (pr_sum / sizes[:, None]).mean(axis=0)
    arr = (re_sum / sizes[:, None]).mean(axis=0)
    fscore = np.where(arp + arr > 0, 2.0 * arp * arr / np.where(arp + arr > 0, arp + arr, 1.0), 0.0)
    return MetricsReport(
        gammas=gammas,
        arp=tuple(float(v) for v in arp),
        arr=tuple(float(v) for v in arr),
        fscore=tuple(float(v) for v in fscore),
        anmrr=100.0 * nmrr_sum / index.size,
    )


def _nmrr(ranks, ng):
    """MPEG-7 normalized modified retrieval rank for one query, in [0, 1].

    ``ranks`` holds the 1-based positions of the ng relevant items in the
    full ranking; ranks beyond the window K = 2 * ng are penalized as 1.25 K.
    """
    k = 2.0 * ng
    penalized = np.where(ranks <= k, ranks.astype(np.float64), 1.25 * k)
    avr = penalized.mean()
    mrr = avr - 0.5 - ng / 2.0
    denom = 1.25 * k - 0.5 - ng / 2.0
    return mrr / denom


def anmrr(index, measure):
    """Average NMRR over every database image used as query, in percent."""
    total = 0.0
    labels = np.asarray(index.labels, dtype=object)
    for j, order in _scan_queries(index, measure):
        same = labels[order] == labels[j]
        total += _nmrr(np.nonzero(same)[0] + 1, index.class_sizes[index.labels[j]])
    return 100.0 * total / index.size
