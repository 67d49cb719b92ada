from sensornet.exceptions import SensornetError


class ExperimentError(SensornetError):
    pass


class UsageError(ExperimentError):
    pass


class ConfigurationError(UsageError):
    """
    Raised for unreadable or malformed experiment configuration files;
    carries the file and, when known, the line number
    """
    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        if path and line:
            message = '%s:%d: %s' % (path, line, message)
        elif path:
            message = '%s: %s' % (path, message)
        super(ConfigurationError, self).__init__(message)


class BatchError(ExperimentError):
    pass
