"""Circle detection via randomized triplet voting, with baseline fitters.

The heavy lifting lives in the compiled extension; this package re-exports
its public surface.
"""

from ._core import (
    Circle,
    DegenerateTriplet,
    EmptyAccumulator,
    EmptyList,
    Error,
    FileMissing,
    InsufficientPoints,
    MalformedHeader,
    NoAcceptedCandidate,
    SeparationInfeasible,
    SingularSystem,
    UnsupportedFormat,
    avg_distance,
    circle_from_three_points,
    fbi_detect,
    gen_b1,
    gen_b2,
    jaccard,
    load_edge_image,
    lsq_fit,
    rcd_detect,
    rht_detect,
    rmse,
    triplet_count,
)

__version__ = "0.1.0"

__all__ = [
    "Circle",
    "DegenerateTriplet",
    "EmptyAccumulator",
    "EmptyList",
    "Error",
    "FileMissing",
    "InsufficientPoints",
    "MalformedHeader",
    "NoAcceptedCandidate",
    "SeparationInfeasible",
    "SingularSystem",
    "UnsupportedFormat",
    "avg_distance",
    "circle_from_three_points",
    "fbi_detect",
    "gen_b1",
    "gen_b2",
    "jaccard",
    "load_edge_image",
    "lsq_fit",
    "rcd_detect",
    "rht_detect",
    "rmse",
    "triplet_count",
]
