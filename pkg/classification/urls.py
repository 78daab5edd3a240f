from django.urls import include, path
from rest_framework.routers import DefaultRouter

from . import views

router = DefaultRouter()
router.register(r"runs", views.VerificationRunViewSet)

urlpatterns = [
    path("constants/", views.constants, name="constants"),
    path("", include(router.urls)),
]
