"""Numerical verification of no-signaling, decomposition and one-time-pad claims."""

from landauer_mbqc.verify.checks import (
    bob_marginal,
    check_decomposition,
    check_no_signaling,
    check_one_time_pad,
    ensemble_mixture,
    otp_from_mbqc,
    prefix_of,
    run_verification_suite,
)
from landauer_mbqc.verify.reports import (
    VERIFY_SCHEMA,
    DecompositionReport,
    NoSignalingReport,
    OtpReport,
    SuiteEntry,
    SuiteReport,
    VerifyReport,
)

__all__ = [
    'bob_marginal',
    'ensemble_mixture',
    'check_no_signaling',
    'check_decomposition',
    'check_one_time_pad',
    'otp_from_mbqc',
    'prefix_of',
    'run_verification_suite',
    'VERIFY_SCHEMA',
    'VerifyReport',
    'NoSignalingReport',
    'DecompositionReport',
    'OtpReport',
    'SuiteEntry',
    'SuiteReport',
]
