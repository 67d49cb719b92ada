from django.test import SimpleTestCase

from .classes import Battery, EnergyParams, drain, rx_cost, tx_cost
from .exceptions import InvalidEnergyParams, NegativeCostError
from .literals import DRAIN_DIED, DRAIN_OK


class EnergyParamsTestCase(SimpleTestCase):
    def test_defaults(self):
        params = EnergyParams()
        self.assertEqual(params.elec_per_bit, 50e-9)
        self.assertEqual(params.amp_per_bit_per_m2, 100e-12)
        self.assertEqual(params.data_bits, 2000)
        self.assertEqual(params.control_bits, 100)
        self.assertEqual(params.initial_battery, 0.5)

    def test_non_positive(self):
        with self.assertRaises(InvalidEnergyParams):
            EnergyParams(initial_battery=0)
        with self.assertRaises(InvalidEnergyParams):
            EnergyParams(elec_per_bit=-1e-9)

    def test_control_larger_than_data(self):
        with self.assertRaises(InvalidEnergyParams):
            EnergyParams(data_bits=100, control_bits=200)


class CostTestCase(SimpleTestCase):
    def setUp(self):
        self.params = EnergyParams()

    def test_tx_zero_bits(self):
        self.assertEqual(tx_cost(0, 75, self.params), 0)

    def test_tx_hundred_meters(self):
        self.assertAlmostEqual(tx_cost(2000, 100, self.params), 2.1e-3, delta=1e-15)

    def test_tx_ten_meters(self):
        self.assertAlmostEqual(tx_cost(2000, 10, self.params), 1.2e-4, delta=1e-15)

    def test_tx_far_corner(self):
        self.assertAlmostEqual(tx_cost(2000, 141.42135623730951, self.params), 4.1e-3, delta=1e-12)

    def test_tx_quadratic(self):
        base = tx_cost(2000, 0, self.params)
        self.assertAlmostEqual(tx_cost(2000, 60, self.params) - base, 4 * (tx_cost(2000, 30, self.params) - base), delta=1e-15)

    def test_rx(self):
        self.assertEqual(rx_cost(0, self.params), 0)
        self.assertAlmostEqual(rx_cost(2000, self.params), 1.0e-4, delta=1e-15)

    def test_rx_never_above_tx(self):
        for distance in (0, 0.5, 10, 100, 1000):
            self.assertTrue(rx_cost(2000, self.params) <= tx_cost(2000, distance, self.params))


class DrainTestCase(SimpleTestCase):
    def test_partial(self):
        battery, outcome = drain(Battery(1.0, 1.0), 0.4)
        self.assertAlmostEqual(battery.remaining, 0.6)
        self.assertEqual(outcome, DRAIN_OK)

    def test_exactly_exhausted(self):
        battery, outcome = drain(Battery(0.3, 1.0), 0.3)
        self.assertEqual(battery.remaining, 0.0)
        self.assertEqual(outcome, DRAIN_OK)
        self.assertTrue(battery.exhausted)

    def test_insufficient(self):
        battery, outcome = drain(Battery(0.1, 1.0), 0.2)
        self.assertEqual(battery.remaining, 0.0)
        self.assertEqual(outcome, DRAIN_DIED)

    def test_negative_cost(self):
        with self.assertRaises(NegativeCostError):
            drain(Battery(0.1, 1.0), -0.1)

    def test_power_fraction(self):
        battery = Battery.full(EnergyParams())
        self.assertEqual(battery.power_fraction, 1.0)
        battery, outcome = drain(battery, 0.3)
        self.assertAlmostEqual(battery.power_fraction, 0.4)

    def test_never_negative(self):
        battery = Battery(0.01, 0.5)
        for cost in (0.004, 0.004, 0.004, 0.004):
            battery, outcome = drain(battery, cost)
            self.assertTrue(battery.remaining >= 0)
        self.assertEqual(outcome, DRAIN_DIED)
