"""Spherical (DCOPS) data depth on Euclidean space, spheres, tori and SPD matrices."""

from ._core import (
    GeodepthError,
    __version__,
    angular_tukey_depth,
    deepest_point,
    depth,
    depth_subsampled,
    distance,
    midpoint,
    population_depth,
    preset_manifold,
    preset_names,
    projection_depth,
    run_cli,
    sample,
)

__all__ = [
    "GeodepthError",
    "__version__",
    "angular_tukey_depth",
    "deepest_point",
    "depth",
    "depth_subsampled",
    "distance",
    "midpoint",
    "population_depth",
    "preset_manifold",
    "preset_names",
    "projection_depth",
    "run_cli",
    "sample",
]
