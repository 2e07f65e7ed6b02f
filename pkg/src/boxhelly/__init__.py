"""Exact piercing of axis-parallel boxes, Helly-type checks and a clusterability tester."""

__version__ = "0.1.0"

from .core import (
    AxisBox,
    DiagonalPair,
    Interval,
    Vertex,
    axis_gap,
    box_intersect,
    common_intersection,
    contains_point,
    diagonal_pairs,
    faces,
    interval_intersect,
    point,
    rational,
    vertices,
)
from .piercing import (
    ColorSystem,
    Family,
    PiercingCertificate,
    check_all_colorful,
    colorful_tuples,
    colorful_violations,
    helly_number,
    interval_colorful_witness,
    is_pierceable,
    min_stab_intervals,
    pierce1,
    pierce_n,
)
from .helly import (
    HellyReport,
    MissingTuple,
    check_colorful_helly,
    check_helly,
    find_complete_missing_tuple,
    fraction_pierceable,
    max_pierceable_subfamily,
)
from .constructions import gen_interval_tight, gen_lowerbound_2piercing, witness_from_tables
from .clustering import (
    BaseBox,
    ClusterInstance,
    TesterReport,
    calibrate_gamma,
    cluster_test,
    cover_check,
    coverable_oracle,
    default_tuple_size,
    distance_to_clusterable,
    gen_cluster_instance,
    translate_centered,
)
