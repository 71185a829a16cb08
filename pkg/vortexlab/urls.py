from django.contrib import admin
from django.urls import path

urlpatterns = [
    # Recorded run manifests are browsed through the admin
    path('admin/', admin.site.urls),
]
