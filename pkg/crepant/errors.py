"""
Crepant error types
Exception hierarchy shared by the library and the command-line front end
"""


class CrepantError(Exception):
    """Base class for all crepant errors"""

    exit_code = 3


class InvalidInputError(CrepantError, ValueError):
    """Malformed fraction, cone, weight vector or parameter combination"""


class ConfigError(CrepantError):
    """Unusable configuration value"""


class NotApplicableError(CrepantError):
    """Input is valid but outside the hypotheses of the requested operation"""


class NotResolvableError(NotApplicableError):
    """Operation needs a type admitting a crepant full resolution"""


class GuardExceededError(CrepantError):
    """Brute-force enumeration would exceed the configured size guard"""

    exit_code = 4

    def __init__(self, needed: int, guard: int, what: str = "enumeration"):
        # self.args must rebuild the error on unpickling
        super().__init__(needed, guard, what)
        self.needed = needed
        self.guard = guard
        self.what = what

    def __str__(self) -> str:
        return (f"{self.what} needs {self.needed} candidate comparisons, guard is {self.guard} "
                f"(raise CREPANT_GUARD to allow it)")


class InconsistencyError(CrepantError):
    """Two independent computations of the same quantity disagree"""

    exit_code = 5
