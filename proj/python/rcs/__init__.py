"""Regenerative composition structures: exact laws, samplers, diagnostics."""

from ._core import (  # noqa: F401
    arrangement,
    binary_decode,
    binary_encode,
    check_suites,
    compositions,
    cpf_table,
    expected_kn,
    exp_functional_moment,
    green,
    laplace_exponent,
    mc_blocks,
    multinomial_count,
    partitions,
    ppf_table,
    qmatrix,
    qmatrix_float,
    run_check,
    sample_chain,
    sample_crp,
    sample_stickbreaking,
    shape_count,
)

__all__ = [
    "arrangement",
    "binary_decode",
    "binary_encode",
    "check_suites",
    "compositions",
    "cpf_table",
    "expected_kn",
    "exp_functional_moment",
    "green",
    "laplace_exponent",
    "mc_blocks",
    "multinomial_count",
    "partitions",
    "ppf_table",
    "qmatrix",
    "qmatrix_float",
    "run_check",
    "sample_chain",
    "sample_crp",
    "sample_stickbreaking",
    "shape_count",
]
