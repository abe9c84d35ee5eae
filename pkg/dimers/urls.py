"""
Snake Graph Dimer Models URLs

Read-only JSON endpoints, mounted under /api/.
"""

from django.urls import path

from .api_views import CountView, DualView, HasseView, QPolyView, SnakeView, TriangleView

app_name = 'dimers'

urlpatterns = [
    path('snake/', SnakeView.as_view(), name='snake'),
    path('count/', CountView.as_view(), name='count'),
    path('qpoly/<str:kind>/<int:n>/', QPolyView.as_view(), name='qpoly'),
    path('triangle/<str:kind>/<int:n>/', TriangleView.as_view(), name='triangle'),
    path('hasse/', HasseView.as_view(), name='hasse'),
    path('dual/', DualView.as_view(), name='dual'),
]
