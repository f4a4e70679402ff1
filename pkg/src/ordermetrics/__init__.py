"""Universal orders on metric spaces: order ratio functions, snakes,
order breakpoint, order constructions, and binary-tiling windows of
hyperbolic space."""

from .metric import (
    ABS_TOL,
    DisconnectedGraphError,
    FormatError,
    MetricSpace,
    ValidationReport,
    load_space,
    shortest_path_metric,
    space,
    space_from_json,
    validate_metric,
)
from .orders import (
    TotalOrder,
    cyclic_shift,
    cyclic_tour_length,
    load_order,
    pullback_order,
    tour_length,
)
from .ratio import (
    BestOrderResult,
    BreakpointReport,
    BudgetExceededError,
    ORReport,
    best_order_ratio,
    cyclic_order_ratio,
    or_profile,
    order_breakpoint,
    order_ratio,
)
from .snakes import (
    Snake,
    find_max_elongation_snake,
    max_diameter_snake,
    snake_metrics,
    snake_ratio_bound,
)
from .tours import (
    PathResult,
    SubsetInstance,
    SubsetTooLargeError,
    opt_cycle_length,
    opt_path_length,
)

__version__ = "0.1.0"

__all__ = [
    "ABS_TOL",
    "BestOrderResult",
    "BreakpointReport",
    "BudgetExceededError",
    "DisconnectedGraphError",
    "FormatError",
    "MetricSpace",
    "ORReport",
    "PathResult",
    "Snake",
    "SubsetInstance",
    "SubsetTooLargeError",
    "TotalOrder",
    "ValidationReport",
    "best_order_ratio",
    "cyclic_order_ratio",
    "cyclic_shift",
    "cyclic_tour_length",
    "find_max_elongation_snake",
    "load_order",
    "load_space",
    "max_diameter_snake",
    "opt_cycle_length",
    "opt_path_length",
    "or_profile",
    "order_breakpoint",
    "order_ratio",
    "pullback_order",
    "shortest_path_metric",
    "snake_metrics",
    "snake_ratio_bound",
    "space",
    "space_from_json",
    "tour_length",
    "validate_metric",
]
