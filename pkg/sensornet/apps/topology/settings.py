from django.conf import settings

NODE_COUNT = getattr(settings, 'SENSORNET_NODE_COUNT', 100)
AREA_WIDTH = getattr(settings, 'SENSORNET_AREA_WIDTH', 100.0)
AREA_HEIGHT = getattr(settings, 'SENSORNET_AREA_HEIGHT', 100.0)
BASE_X = getattr(settings, 'SENSORNET_BASE_X', 0.0)
BASE_Y = getattr(settings, 'SENSORNET_BASE_Y', 0.0)
