"""Python bindings for the abplab checks."""

import json

from ._core import (
    Error,
    ModelSpace,
    ball_measure,
    barrier_h,
    calH,
    calS,
    distance,
    e_theta,
    exp_map,
    hfun_closed_form,
    hfun_numeric,
    log_map,
    poisson_kernel_disc,
    pucci,
    ricci_lower_bound,
    theta_ratio,
)
from ._core import ledger as _ledger
from ._core import run_experiment as _run_experiment


def ledger(K, N, R):
    """Constants ledger as a dict; non-finite values appear as "inf"/"nan"."""
    return json.loads(_ledger(K, N, R))


def run(kind, **options):
    """Run one suite (or "all") and return the list of suite results."""
    cfg = dict(options, kind=kind)
    return json.loads(_run_experiment(json.dumps(cfg)))


__all__ = [
    "Error",
    "ModelSpace",
    "ball_measure",
    "barrier_h",
    "calH",
    "calS",
    "distance",
    "e_theta",
    "exp_map",
    "hfun_closed_form",
    "hfun_numeric",
    "ledger",
    "log_map",
    "poisson_kernel_disc",
    "pucci",
    "ricci_lower_bound",
    "run",
    "theta_ratio",
]
