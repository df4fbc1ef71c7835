from .suites import SUITES, run_suite

__all__ = ["SUITES", "run_suite"]
