"""Binary and CSV serialization of descriptor sets and metrics reports."""

import csv
import json
import struct
from dataclasses import dataclass

import numpy as np

from .encoder import KIND_LBP, KIND_LDOP, Descriptor

MAGIC = b"LDOPDESC"
VERSION = 1

_KIND_CODE = {KIND_LDOP: 0, KIND_LBP: 1}
_CODE_KIND = {v: k for k, v in _KIND_CODE.items()}


@dataclass(frozen=True)
class DescriptorRecord:
    """One extracted image: its source path, class label, and descriptor."""

    path: str
    label: str
    descriptor: Descriptor


def write_descriptors(path, records):
    """Write records to the bit-exact binary descriptor format.

    Header: magic, version u16, N u8, segment count u16, (kind u8, R u8) per
    segment; then a u32 record count and per record the image path, class
    label (both u16-length-prefixed UTF-8), and the little-endian f64 values.
    """
    records = list(records)
    if not records:
        raise ValueError("no records to write")
    first = records[0].descriptor
    layout = first.layout
    n = first.directions
    with open(path, "wb") as f:
        f.write(MAGIC)
        f.write(struct.pack("<HBH", VERSION, n, len(layout)))
        for kind, radius in layout:
            f.write(struct.pack("<BB", _KIND_CODE[kind], radius))
        f.write(struct.pack("<I", len(records)))
        for rec in records:
            d = rec.descriptor
            if d.layout != layout or d.directions != n:
                raise ValueError(f"{rec.path}: descriptor layout differs from the first record")
            for text in (rec.path, rec.label):
                raw = text.encode("utf-8")
                f.write(struct.pack("<H", len(raw)))
                f.write(raw)
            f.write(np.ascontiguousarray(d.values, dtype="<f8").tobytes())


def read_descriptors(path):
    """Read a descriptor file back into a list of DescriptorRecord."""
    with open(path, "rb") as f:
        data = f.read()
    if data[:8] != MAGIC:
        raise ValueError(f"{path}: not a descriptor file")
    version, n, nseg = struct.unpack_from("<HBH", data, 8)
    if version != VERSION:
        raise ValueError(f"{path}: unsupported version {version}")
    pos = 13
    layout = []
    for _ in range(nseg):
        kind, radius = struct.unpack_from("<BB", data, pos)
        pos += 2
        layout.append((_CODE_KIND[kind], radius))
    layout = tuple(layout)
    (count,) = struct.unpack_from("<I", data, pos)
    pos += 4
    length = nseg * (1 << n)
    records = []
    for _ in range(count):
        texts = []
        for _ in range(2):
            (tlen,) = struct.unpack_from("<H", data, pos)
            pos += 2
            texts.append(data[pos:pos + tlen].decode("utf-8"))
            pos += tlen
        values = np.frombuffer(data, dtype="<f8", count=length, offset=pos).copy()
        pos += 8 * length
        records.append(DescriptorRecord(texts[0], texts[1], Descriptor(values, layout, n)))
    return records


def descriptors_to_csv(path, records):
    """CSV export: one row per image, the path followed by the values."""
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        for rec in records:
            w.writerow([rec.path] + [repr(v) for v in rec.descriptor.values])


def metrics_to_csv(report, path):
    """Metrics CSV: one row per gamma with ARP/ARR/F-score, ANMRR as a footer."""
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["gamma", "arp", "arr", "fscore"])
        for g, p, r, fs in zip(report.gammas, report.arp, report.arr, report.fscore):
            w.writerow([g, f"{p:.6f}", f"{r:.6f}", f"{fs:.6f}"])
        w.writerow(["anmrr", f"{report.anmrr:.6f}", "", ""])


def metrics_to_json(report, path):
    """JSON mirror of the metrics CSV."""
    payload = {
        "gammas": list(report.gammas),
        "arp": [round(v, 6) for v in report.arp],
        "arr": [round(v, 6) for v in report.arr],
        "fscore": [round(v, 6) for v in report.fscore],
        "anmrr": round(report.anmrr, 6),
    }
    with open(path, "w") as f:
        json.dump(payload, f, indent=2)
        f.write("\n")
