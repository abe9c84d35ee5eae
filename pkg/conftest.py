import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'snakedimer_project.settings')
django.setup()
