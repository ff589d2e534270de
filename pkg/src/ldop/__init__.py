"""Local directional order pattern descriptors and an image retrieval harness."""

from .distances import DistanceMeasure, distance
from .encoder import (
    Descriptor,
    PatternMap,
    center_transform,
    concat_descriptors,
    lbp_histogram,
    lbp_map,
    ldop_code,
    ldop_histogram,
    ldop_map,
    multi_res_ldop,
)
from .image import GrayImage, load_gray, resize_bilinear, to_gray, write_pgm
from .order import OrderIndexMap, order_map, order_vector, perm_rank, perm_unrank
from .retrieval import (
    DatasetIndex,
    MetricsReport,
    anmrr,
    build_index,
    evaluate,
    precision_recall,
    query,
)
from .sampling import (
    NeighborSpec,
    directional_neighbors,
    neighbor_coords,
    sample_bilinear,
)
from .serialize import (
    DescriptorRecord,
    descriptors_to_csv,
    metrics_to_csv,
    metrics_to_json,
    read_descriptors,
    write_descriptors,
)

__version__ = "0.1.0"

__all__ = [
    "DatasetIndex",
    "Descriptor",
    "DescriptorRecord",
    "DistanceMeasure",
    "GrayImage",
    "MetricsReport",
    "NeighborSpec",
    "OrderIndexMap",
    "PatternMap",
    "anmrr",
    "build_index",
    "center_transform",
    "concat_descriptors",
    "descriptors_to_csv",
    "directional_neighbors",
    "distance",
    "evaluate",
    "lbp_histogram",
    "lbp_map",
    "ldop_code",
    "ldop_histogram",
    "ldop_map",
    "load_gray",
    "metrics_to_csv",
    "metrics_to_json",
    "multi_res_ldop",
    "neighbor_coords",
    "order_map",
    "order_vector",
    "perm_rank",
    "perm_unrank",
    "precision_recall",
    "query",
    "read_descriptors",
    "resize_bilinear",
    "sample_bilinear",
    "to_gray",
    "write_descriptors",
    "write_pgm",
]
