"""tanglekit verification suites."""

from .base_processor import BaseSuite, CheckResult
from .verify_processor import VerificationProcessor, VerificationError, COVERAGE

__all__ = ['BaseSuite', 'CheckResult', 'VerificationProcessor', 'VerificationError', 'COVERAGE']
