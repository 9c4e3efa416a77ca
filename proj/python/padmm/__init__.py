"""Proximal splitting toolkit: two-block solver, convergence diagnostics,
and early-stopped regularization of linear inverse problems."""

from ._padmm import (
    GravityConfig,
    GravityProblem,
    GravityRun,
    InverseProblem,
    KktPoint,
    LinearMap,
    Problem,
    ProxFunction,
    PsdMap,
    RegRun,
    RegTrace,
    SourceCertificate,
    TableRow,
    Trace,
    a_priori_stop,
    add_noise,
    build_kernel_matrix,
    check_ip_bounds,
    check_monotonicity_suite,
    ergodic_iterate,
    fit_rate,
    gravity_kernel,
    iteration_cap,
    make_gravity_problem,
    run_gravity_level,
    run_regularized,
    run_table1,
    solve,
    trapezoid_weights,
    validate_certificate,
)

__all__ = [
    "GravityConfig",
    "GravityProblem",
    "GravityRun",
    "InverseProblem",
    "KktPoint",
    "LinearMap",
    "Problem",
    "ProxFunction",
    "PsdMap",
    "RegRun",
    "RegTrace",
    "SourceCertificate",
    "TableRow",
    "Trace",
    "a_priori_stop",
    "add_noise",
    "build_kernel_matrix",
    "check_ip_bounds",
    "check_monotonicity_suite",
    "ergodic_iterate",
    "fit_rate",
    "gravity_kernel",
    "iteration_cap",
    "make_gravity_problem",
    "run_gravity_level",
    "run_regularized",
    "run_table1",
    "solve",
    "trapezoid_weights",
    "validate_certificate",
]
