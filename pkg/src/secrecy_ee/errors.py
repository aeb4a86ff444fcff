"""Exception hierarchy shared by every module of the package."""


class SecrecyEEError(Exception):
    """Base class for all errors raised by secrecy_ee."""


class InvalidParamsError(SecrecyEEError, ValueError):
    """A SystemParams / SolverConfig field violates its invariant."""


class InvalidInputError(SecrecyEEError, ValueError):
    """An operation argument (e.g. a relay power) is out of its domain."""


class InfeasibleScenarioError(SecrecyEEError):
    """Secrecy is impossible because the relative path loss r_l >= 1."""

    def __init__(self, r_l: float):
        self.r_l = r_l
        super().__init__(
            f"infeasible scenario: relative path loss r_l = {r_l!r} >= 1, "
            "secrecy outage capacity is non-positive for every relay power"
        )


class NoPositiveSolutionError(SecrecyEEError):
    """The stationarity condition C'(P) = q has no root with P > 0."""


class ConfigError(SecrecyEEError, ValueError):
    """A scenario or sweep file could not be parsed or validated."""
