"""wirtlab: bridge number and meridional rank computations on knot diagrams."""

from .diagram import (
    GaussCode,
    Strand,
    TwistRegionReport,
    build_pretzel,
    build_torus_2braid,
    build_twist_chain,
    connected_sum,
    flank,
    flank_switch,
    handle_drag,
    overpass_count,
    parse_gauss_code,
    strands_of,
    twist_regions,
    virtualize,
)

__version__ = "0.1.0"

__all__ = [
    "GaussCode",
    "Strand",
    "TwistRegionReport",
    "build_pretzel",
    "build_torus_2braid",
    "build_twist_chain",
    "connected_sum",
    "flank",
    "flank_switch",
    "handle_drag",
    "overpass_count",
    "parse_gauss_code",
    "strands_of",
    "twist_regions",
    "virtualize",
]
