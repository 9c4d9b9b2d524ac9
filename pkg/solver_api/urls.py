from django.urls import path
from . import views

app_name = 'solver_api'

urlpatterns = [
    path('solve/', views.api_solve, name='solve'),
    path('classify/', views.api_classify, name='classify'),
    path('status/', views.api_status, name='status'),
]
