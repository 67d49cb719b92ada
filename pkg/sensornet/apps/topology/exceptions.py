from sensornet.exceptions import SensornetError


class TopologyError(SensornetError):
    pass


class UnknownNodeError(TopologyError):
    pass


class TopologyFormatError(TopologyError):
    """
    Raised when a topology file cannot be read; carries the offending path
    and, when known, the line number
    """
    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        if path and line:
            message = '%s:%d: %s' % (path, line, message)
        elif path:
            message = '%s: %s' % (path, message)
        super(TopologyFormatError, self).__init__(message)
