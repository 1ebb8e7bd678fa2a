"""Seismic wavefield reconstruction via recursively weighted low-rank matrix
factorization.

The heavy lifting lives in the compiled ``_core`` extension; this package
re-exports its public surface.
"""

from swrecon._core import (
    FormatError,
    SolverFailure,
    SourceMask,
    WeightOperator,
    apply_bandpass,
    bandpass_response,
    embed_sr_to_mh,
    extract_mh_to_sr,
    generate,
    jittered_mask,
    mh_to_sr,
    read_mask,
    read_volume,
    reconstruct,
    ricker,
    sample,
    sample_adjoint,
    slice_snr_db,
    snr_db,
    solve_slice,
    sr_to_mh,
    write_mask,
    write_volume,
)

__all__ = [
    "FormatError",
    "SolverFailure",
    "SourceMask",
    "WeightOperator",
    "apply_bandpass",
    "bandpass_response",
    "embed_sr_to_mh",
    "extract_mh_to_sr",
    "generate",
    "jittered_mask",
    "mh_to_sr",
    "read_mask",
    "read_volume",
    "reconstruct",
    "ricker",
    "sample",
    "sample_adjoint",
    "slice_snr_db",
    "snr_db",
    "solve_slice",
    "sr_to_mh",
    "write_mask",
    "write_volume",
]
