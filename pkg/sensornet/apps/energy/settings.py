from django.conf import settings

ELEC_PER_BIT = getattr(settings, 'SENSORNET_ELEC_PER_BIT', 50e-9)
AMP_PER_BIT_PER_M2 = getattr(settings, 'SENSORNET_AMP_PER_BIT_PER_M2', 100e-12)
DATA_BITS = getattr(settings, 'SENSORNET_DATA_BITS', 2000)
CONTROL_BITS = getattr(settings, 'SENSORNET_CONTROL_BITS', 100)
INITIAL_BATTERY = getattr(settings, 'SENSORNET_INITIAL_BATTERY', 0.5)
