"""Exception types shared across gaborlab."""


class GaborlabError(Exception):
    """Base class for all gaborlab errors."""


class InvalidInputError(GaborlabError, ValueError):
    pass


class ResourceLimitError(GaborlabError):
    pass


class SingularOperatorError(GaborlabError):
    """Raised when an operator that must be inverted is numerically singular.

    ``lambda_min`` carries the smallest eigenvalue that triggered the failure.
    """

    def __init__(self, message, lambda_min=None):
        super().__init__(message)
        self.lambda_min = lambda_min


class ConstructionFailedError(GaborlabError):
    pass
