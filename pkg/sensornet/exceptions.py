class SensornetError(Exception):
    """Root of every error raised by the sensornet apps."""
    pass
