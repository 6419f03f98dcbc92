"""Metric-aware subspace geometry: inclination of subspace pairs, certified
decompositions, norm-bounded functional extensions, and the box-resonator
spectral study."""

from ._obliq import (
    CavityModel,
    Decomposition,
    ExtensionReport,
    InclinationReport,
    ObliqError,
    Space,
    Subspace,
    build_cavity,
    decompose,
    euclidean,
    extend,
    in_fq,
    inclination,
    inclination_oracle,
    inner,
    intersect,
    l2_analytic_decompose,
    l2_analytic_extend,
    l2_analytic_inclination,
    l2_build,
    l2_probe_one_over_n,
    make_space,
    norm,
    ominus,
    perp,
    project,
    restriction_norm,
    span,
    subspace_sum,
    sum_dense_check,
    verify_bounds,
)

__all__ = [
    "CavityModel",
    "Decomposition",
    "ExtensionReport",
    "InclinationReport",
    "ObliqError",
    "Space",
    "Subspace",
    "build_cavity",
    "decompose",
    "euclidean",
    "extend",
    "in_fq",
    "inclination",
    "inclination_oracle",
    "inner",
    "intersect",
    "l2_analytic_decompose",
    "l2_analytic_extend",
    "l2_analytic_inclination",
    "l2_build",
    "l2_probe_one_over_n",
    "make_space",
    "norm",
    "ominus",
    "perp",
    "project",
    "restriction_norm",
    "span",
    "subspace_sum",
    "sum_dense_check",
    "verify_bounds",
]

__version__ = "0.1.0"
