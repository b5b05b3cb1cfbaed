"""Matroid complexes, h-vectors of cover ideals, and pure O-sequences."""

from .complex_core import (
    SimplicialComplex,
    cone_points,
    delete_vertex,
    dimension,
    dual,
    f_vector,
    is_pure,
    link,
    minimal_nonfaces,
    minimal_vertex_covers,
    new_complex,
    restriction,
    skeleton,
)
from .hvec import f_to_h, h_cover, h_cover_recursive, h_onedim_formula, h_stanley_reisner, type_of
from .matroid_ops import (
    ClassSpec,
    Matroid,
    build_complete,
    build_delta_max,
    build_delta_min,
    build_delta_t,
    build_uniform,
    is_matroid,
    matroid_oracles,
    parallel_classes,
    simplify,
    switch_classes,
)
from .oseq import (
    Budget,
    close_and_count,
    enumerate_pure_oseq,
    gamma_complete,
    gamma_t,
    height2_criterion,
    is_pure_o_sequence,
)

__version__ = "0.1.0"
