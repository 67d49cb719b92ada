from sensornet.exceptions import SensornetError


class StrategyError(SensornetError):
    pass


class UnknownStrategy(StrategyError):
    pass


class InvalidKnob(StrategyError):
    pass


class RoutingTreeError(StrategyError):
    pass
