from django.contrib import admin
from django.urls import path, include
from rest_framework.decorators import api_view
from rest_framework.response import Response


@api_view(['GET'])
def welcome_view(request):
    """
    Welcome endpoint
    GET /
    """
    return Response({
        'message': 'Capacity-region toolkit for 3-receiver Gaussian broadcast channels with side information',
        'version': '1.0.0',
        'endpoints': ['api/classify/<config>/', 'api/bounds/<config>/', 'api/reports/'],
    }, status=200)


urlpatterns = [
    path('', welcome_view, name='welcome'),
    path('admin/', admin.site.urls),
    path('api/', include('report.urls')),
]
