"""q-Pochhammer products, the entire function F_q and the polynomials P_n."""

from voltprobe.qseries.polynomials import (
    PN_HARD_CAP,
    PN_SOFT_LIMIT,
    IdentityDiagnostic,
    derivative_identity_diagnostic,
    pn_coeffs,
    pn_coeffs_extended,
    pn_eval,
)
from voltprobe.qseries.products import (
    fq_product,
    fq_root_check,
    fq_series,
    fq_series_coeff,
    qpoch,
)
from voltprobe.qseries.summation import CompensatedSum, compensated_sum

__all__ = [
    "PN_HARD_CAP",
    "PN_SOFT_LIMIT",
    "CompensatedSum",
    "IdentityDiagnostic",
    "compensated_sum",
    "derivative_identity_diagnostic",
    "fq_product",
    "fq_root_check",
    "fq_series",
    "fq_series_coeff",
    "pn_coeffs",
    "pn_coeffs_extended",
    "pn_eval",
    "qpoch",
]
