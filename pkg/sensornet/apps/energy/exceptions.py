from sensornet.exceptions import SensornetError


class EnergyError(SensornetError):
    pass


class InvalidEnergyParams(EnergyError):
    pass


class NegativeCostError(EnergyError):
    pass
