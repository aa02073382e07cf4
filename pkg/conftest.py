import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'test.settings')
django.setup()
