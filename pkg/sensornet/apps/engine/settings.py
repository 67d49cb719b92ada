from django.conf import settings

MAX_ITERATIONS = getattr(settings, 'SENSORNET_MAX_ITERATIONS', 100000)
