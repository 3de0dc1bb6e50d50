from ._core import (
    CorridorNetwork,
    InputError,
    InvariantError,
    access_curve,
    acis,
    ccdf_points,
    edge_betweenness,
    ha_impact,
    ha_total,
    hospital_frequency,
    hospital_impact,
    integrate_curve,
    nearest_hospital_field,
    neighborhood_sweep,
    replicate_mask,
    run_cli,
    single_sweep,
    spearman_rho,
    synth_network,
    topk_overlap,
    travel_minutes,
)

__version__ = "0.3.0"

__all__ = [
    "CorridorNetwork",
    "InputError",
    "InvariantError",
    "access_curve",
    "acis",
    "ccdf_points",
    "edge_betweenness",
    "ha_impact",
    "ha_total",
    "hospital_frequency",
    "hospital_impact",
    "integrate_curve",
    "nearest_hospital_field",
    "neighborhood_sweep",
    "replicate_mask",
    "run_cli",
    "single_sweep",
    "spearman_rho",
    "synth_network",
    "topk_overlap",
    "travel_minutes",
]
