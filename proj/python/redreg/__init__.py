"""Redfield-equation regularization laboratory.

Thin Python layer over the C++ core: assemble time-dependent Kossakowski
matrices, regularize them (nearest-PSD, partial secular, secular, ULE),
propagate density matrices, and compare schemes against the exactly solvable
three-level reference through Choi-operator distances.

Pass ``math.inf`` as the time argument wherever the second-Markov limit
(t -> infinity) is meant.
"""

from ._core import (
    BathSpec,
    DegenerateRootsError,
    KossakowskiData,
    SystemModel,
    VSystemParams,
    apply_scheme,
    auto_coarse_graining_time,
    choi,
    choi_distance,
    cp_check,
    cubic_roots,
    evolve,
    exact_amplitudes,
    exact_channel,
    exact_density,
    frobenius_norm,
    hermitian_eig,
    kossakowski,
    min_eigenvalue,
    nearest_psd,
    oscillator_kossakowski,
    propagator,
    psd_sqrt,
    qubit_kossakowski,
    qubit_model,
    scheme_names,
    trace_norm,
    truncated_oscillator_model,
    vsystem_model,
)

__all__ = [
    "BathSpec",
    "DegenerateRootsError",
    "KossakowskiData",
    "SystemModel",
    "VSystemParams",
    "apply_scheme",
    "auto_coarse_graining_time",
    "choi",
    "choi_distance",
    "cp_check",
    "cubic_roots",
    "evolve",
    "exact_amplitudes",
    "exact_channel",
    "exact_density",
    "frobenius_norm",
    "hermitian_eig",
    "kossakowski",
    "min_eigenvalue",
    "nearest_psd",
    "oscillator_kossakowski",
    "propagator",
    "psd_sqrt",
    "qubit_kossakowski",
    "qubit_model",
    "scheme_names",
    "trace_norm",
    "truncated_oscillator_model",
    "vsystem_model",
]

__version__ = "0.1.0"
