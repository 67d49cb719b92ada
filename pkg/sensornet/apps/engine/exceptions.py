from sensornet.exceptions import SensornetError


class SimulationError(SensornetError):
    pass


class InvalidConfiguration(SimulationError):
    pass


class InvariantViolation(SimulationError):
    pass


class TraceFormatError(SimulationError):
    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        if path and line:
            message = '%s:%d: %s' % (path, line, message)
        elif path:
            message = '%s: %s' % (path, message)
        super(TraceFormatError, self).__init__(message)
