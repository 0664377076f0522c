from django.urls import include, path
from rest_framework.routers import DefaultRouter

from .views import BatchRunViewSet, SolveView

router = DefaultRouter()
router.register(r"batches", BatchRunViewSet, basename="batch")

urlpatterns = [
    path("solve/", SolveView.as_view(), name="solve"),
    path("", include(router.urls)),
]
