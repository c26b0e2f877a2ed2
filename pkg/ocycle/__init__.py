"""Exact cycle indices of O±_2n(q), q even, with an enumeration oracle."""

from .cycleindex import RcfData, class_proportions, cycle_index_series
from .errors import OcycleError
from .partitions import Partition, make_partition, parse_partition

__all__ = [
    "OcycleError",
    "Partition",
    "RcfData",
    "class_proportions",
    "cycle_index_series",
    "make_partition",
    "parse_partition",
]
