from ._dritz import (
    distance,
    forward,
    init_glorot,
    param_count,
    quadrature_counts,
    run_experiment,
    train,
)

__all__ = [
    "distance",
    "forward",
    "init_glorot",
    "param_count",
    "quadrature_counts",
    "run_experiment",
    "train",
]
