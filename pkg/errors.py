EXIT_FINDING = 1
EXIT_USAGE = 2
EXIT_VALIDATION = 3
EXIT_NUMERIC = 4
EXIT_ARTIFACT = 5


class RaySplitError(Exception):
    """Base class for every contract violation the toolkit reports."""

    exit_code = EXIT_NUMERIC

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.message = message
        self.details = details

    def as_dict(self):
        return {
            'error': type(self).__name__,
            'message': self.message,
            'exit_code': self.exit_code,
            'details': self.details,
        }


class UsageError(RaySplitError):
    exit_code = EXIT_USAGE


class ValidationError(RaySplitError, ValueError):
    """
        A parameter is outside the range an operation accepts.
        `parameter` names the offender so callers can point at the flag.
    """
    exit_code = EXIT_VALIDATION

    def __init__(self, parameter: str, message: str, **details):
        super().__init__(f'{parameter}: {message}', parameter=parameter, **details)
        self.parameter = parameter


class CompletenessError(RaySplitError):
    """The root list still violates the staircase bound after refinement."""

    def __init__(self, message: str, interval, **details):
        super().__init__(message, interval=[float(interval[0]), float(interval[1])], **details)
        self.interval = (float(interval[0]), float(interval[1]))


class PoleProximityError(RaySplitError):
    pass


class ExpansionOverflowError(RaySplitError):
    pass


class ArtifactError(RaySplitError, OSError):
    exit_code = EXIT_ARTIFACT
