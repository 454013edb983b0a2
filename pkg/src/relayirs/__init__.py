"""Achievable rates and element counts for relay-aided reconfigurable surfaces."""

from .geometry import ScenarioGeometry, SurfaceLayout, element_positions, link_distance, place_nodes
from .linkbudget import RadioConfig, noise_power_dbm, umi_pathloss_db
from .rates import Mode, RateInputs, RateReport
from .sizing import SizingReport, SizingTarget

__all__ = [
    "Mode",
    "RadioConfig",
    "RateInputs",
    "RateReport",
    "ScenarioGeometry",
    "SizingReport",
    "SizingTarget",
    "SurfaceLayout",
    "element_positions",
    "link_distance",
    "noise_power_dbm",
    "place_nodes",
    "umi_pathloss_db",
]
