"""Verification suites, seeded sampling and the command line harness."""
from .sampling import circle_sup, sample_polynomial, truncation_slack
from .suites import SUITES, ConfigError, SuiteConfig, max_modulus_check, run_suite

__all__ = ["SUITES", "ConfigError", "SuiteConfig", "max_modulus_check", "run_suite",
           "sample_polynomial", "truncation_slack", "circle_sup"]
