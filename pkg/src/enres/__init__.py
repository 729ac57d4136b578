"""Exact Groebner-basis and free-resolution toolkit for I_2(X~_ij) + <entries of XY>."""

from .betti import base_row, en_ranks, pascal_step, pipeline_verify, table
from .constructions import Instance, InstanceSpec, Verdict, build_instance
from .groebner import Ideal, buchberger, colon, intersect, reduce
from .ring import MonomialOrder, Polynomial, Ring, parse_polynomial

__version__ = "0.1.0"

__all__ = [
    "Ideal", "Instance", "InstanceSpec", "MonomialOrder", "Polynomial", "Ring", "Verdict",
    "base_row", "buchberger", "build_instance", "colon", "en_ranks", "intersect",
    "parse_polynomial", "pascal_step", "pipeline_verify", "reduce", "table",
]
