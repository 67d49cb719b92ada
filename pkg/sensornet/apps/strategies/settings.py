from django.conf import settings

MAX_NEIGHBORS = getattr(settings, 'SENSORNET_MAX_NEIGHBORS', 8)
MAX_RANGE = getattr(settings, 'SENSORNET_MAX_RANGE', None)
CLUSTERS = getattr(settings, 'SENSORNET_CLUSTERS', 5)
ROUND_LENGTH = getattr(settings, 'SENSORNET_ROUND_LENGTH', 20)
LOW_POWER_THRESHOLD = getattr(settings, 'SENSORNET_LOW_POWER_THRESHOLD', 0.10)
POWER_COMPARE_THRESHOLD = getattr(settings, 'SENSORNET_POWER_COMPARE_THRESHOLD', 0.50)
QUEUE_LIMIT = getattr(settings, 'SENSORNET_QUEUE_LIMIT', 10)
KMEANS_MAX_SWEEPS = getattr(settings, 'SENSORNET_KMEANS_MAX_SWEEPS', 100)
