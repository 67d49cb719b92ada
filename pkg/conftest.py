# Test collection wiring: configure Django the same way manage.py does so
# pytest can run the apps' tests.py modules.
import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'sensornet.settings')
django.setup()
