"""
URL configuration for polyharmonic_toolkit.

The API is read-only: the run archive and the exact constant chains.
"""

from django.contrib import admin
from django.urls import include, path

urlpatterns = [
    path("admin/", admin.site.urls),
    # Verification archive and exact constants
    path("api/classification/", include("classification.urls")),
]
