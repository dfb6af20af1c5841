"""Python access to the bekenstein core."""

from ._core import (
    ConfigError,
    InputError,
    NumericalError,
    csv_schema_version,
    dilation_residual,
    kernel_log,
    log_form,
    log_form_kernel,
    log_form_limit,
    modular_data,
    relative_entropy,
    run,
    tol_for,
)

__all__ = [
    "ConfigError",
    "InputError",
    "NumericalError",
    "csv_schema_version",
    "dilation_residual",
    "kernel_log",
    "log_form",
    "log_form_kernel",
    "log_form_limit",
    "modular_data",
    "relative_entropy",
    "run",
    "tol_for",
]
