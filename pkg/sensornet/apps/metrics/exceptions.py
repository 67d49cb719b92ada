from sensornet.exceptions import SensornetError


class MetricsError(SensornetError):
    pass


class UnknownAggregate(MetricsError):
    pass


class ExportError(MetricsError):
    """Raised when results cannot be written; carries the offending path"""
    def __init__(self, message, path=None):
        self.path = path
        if path:
            message = '%s: %s' % (path, message)
        super(ExportError, self).__init__(message)
