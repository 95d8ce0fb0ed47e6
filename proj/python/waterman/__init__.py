"""Waterman-variation and Cesaro-summability toolkit."""

from ._core import (  # noqa: F401
    FourierData,
    KernelEval,
    LambdaSequence,
    QuadratureError,
    ThresholdError,
    __version__,
    build_diagonal,
    cesaro_coeff,
    cesaro_kernel,
    cesaro_mean_quadrature,
    cesaro_mean_series,
    check_reciprocal_product,
    dirichlet,
    estimate_kernel_bound,
    fstar,
    kernel_integral,
    sawtooth_jump,
    symmetric_difference,
    variation_1d,
    verify_diagonal,
)
