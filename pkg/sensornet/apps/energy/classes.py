from collections import namedtuple

from .exceptions import InvalidEnergyParams, NegativeCostError
from .literals import DRAIN_DIED, DRAIN_OK
from .settings import (
    AMP_PER_BIT_PER_M2, CONTROL_BITS, DATA_BITS, ELEC_PER_BIT, INITIAL_BATTERY)


class EnergyParams(namedtuple('EnergyParams', 'elec_per_bit amp_per_bit_per_m2 data_bits control_bits initial_battery')):
    """
    First order radio model constants: joules per bit for the electronics,
    joules per bit per square meter for the amplifier, packet sizes and the
    battery every node starts with
    """
    __slots__ = ()

    def __new__(cls, elec_per_bit=ELEC_PER_BIT, amp_per_bit_per_m2=AMP_PER_BIT_PER_M2, data_bits=DATA_BITS, control_bits=CONTROL_BITS, initial_battery=INITIAL_BATTERY):
        params = super(EnergyParams, cls).__new__(cls, float(elec_per_bit), float(amp_per_bit_per_m2), int(data_bits), int(control_bits), float(initial_battery))

        for name, value in params._asdict().items():
            if not value > 0:
                raise InvalidEnergyParams('Energy parameter "%s" must be positive; got %s' % (name, value))

        if params.control_bits > params.data_bits:
            raise InvalidEnergyParams('Control messages (%d bits) cannot be larger than data packets (%d bits)' % (params.control_bits, params.data_bits))

        return params


class Battery(namedtuple('Battery', 'remaining initial')):
    __slots__ = ()

    @classmethod
    def full(cls, params):
        return cls(params.initial_battery, params.initial_battery)

    @property
    def power_fraction(self):
        return self.remaining / self.initial

    @property
    def exhausted(self):
        return self.remaining <= 0


def tx_cost(bits, d, params):
    return bits * params.elec_per_bit + bits * params.amp_per_bit_per_m2 * d * d


def rx_cost(bits, params):
    return bits * params.elec_per_bit


def drain(battery, cost):
    """
    Charge ``cost`` joules. A battery holding exactly ``cost`` completes the
    action; one holding less is emptied and the action does not complete.
    """
    if cost < 0:
        raise NegativeCostError('Energy cost cannot be negative; got %s' % cost)

    if cost <= battery.remaining:
        return battery._replace(remaining=battery.remaining - cost), DRAIN_OK
    else:
        return battery._replace(remaining=0.0), DRAIN_DIED
