"""
snakedimer URL Configuration

Main URL routing; every endpoint lives in the dimers app.
"""

from django.urls import path, include

urlpatterns = [
    # Read-only JSON API
    path('api/', include('dimers.urls')),
]
