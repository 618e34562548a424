"""Truncated q-series, restricted partition counts and congruence checks for
partitions that are both ell-regular and t-distinct."""

from __future__ import annotations

__version__ = "0.1.0"

from .congruence import CongruenceClaim, check_claim, check_claims, scan_congruences
from .errors import RDError
from .kernels import BACKEND
from .partitions import count_distinct, count_rd, count_regular, enumerate_rd
from .reports import FAIL, INSUFFICIENT, PASS, VerificationReport
from .series import EXACT, CoefficientRing, TruncatedSeries
from .special import eta_quotient, legendre

__all__ = [
    "BACKEND",
    "CoefficientRing",
    "CongruenceClaim",
    "EXACT",
    "FAIL",
    "INSUFFICIENT",
    "PASS",
    "RDError",
    "TruncatedSeries",
    "VerificationReport",
    "check_claim",
    "check_claims",
    "count_distinct",
    "count_rd",
    "count_regular",
    "enumerate_rd",
    "eta_quotient",
    "legendre",
    "scan_congruences",
]
