"""Stationary kernels on perfect matchings via zonal spherical functions."""
from matchkern.accel import IMPLEMENTATION
from matchkern.matching import Matching, base_point, generalized_distance, random_matching
from matchkern.partition import Partition, enumerate_partitions

__version__ = "0.1.0"

__all__ = [
    "IMPLEMENTATION",
    "Matching",
    "Partition",
    "base_point",
    "enumerate_partitions",
    "generalized_distance",
    "random_matching",
]
