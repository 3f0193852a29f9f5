class SolverError(RuntimeError):
    """A dense eigen- or linear solve failed; carries the offending parameters."""

    def __init__(self, message, params=None):
        super().__init__(message if params is None else f"{message} [{params}]")
        self.params = params


class StructuralError(SolverError):
    """The generalized pencil did not split into N finite and N infinite eigenvalues."""


class SingularBorderedError(SolverError):
    """The bordered system is numerically singular."""

    def __init__(self, message, params=None, rcond=None):
        super().__init__(f"{message} (rcond={rcond:.3e})" if rcond is not None else message, params)
        self.rcond = rcond


class TheoremViolation(RuntimeError):
    """A swirl spectrum reached the closed right half-plane boundary.

    The positivity result is proved, so this signals a bug in assembly or
    solve rather than a mathematical finding.
    """

    def __init__(self, message, row):
        super().__init__(message)
        self.row = row
