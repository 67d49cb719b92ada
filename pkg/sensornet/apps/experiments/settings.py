from django.conf import settings

BATCH_PROCESSING_MODE_IMMEDIATE = getattr(settings, 'SENSORNET_BATCH_PROCESSING_MODE_IMMEDIATE', False)
BATCH_WORKERS = getattr(settings, 'SENSORNET_BATCH_WORKERS', None)
