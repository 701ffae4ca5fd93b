import logging

from django.conf import settings
from rest_framework.decorators import api_view, renderer_classes
from rest_framework.response import Response
from rest_framework import status

from sideinfo.config_algebra import InvalidRoutingMatrix, parse_config
from report.models import ReportRow
from report.renderers import ReportRenderer
from report.reporting import bounds_rows, classify_document, parse_directions
from report.serializers import BoundsQuerySerializer, ReportRowSerializer

# Get logger for this module
logger = logging.getLogger('report')


@api_view(['GET'])
@renderer_classes([ReportRenderer])
def classify_config(request, config):
    """
    GET: Classification document for one side-information configuration
    """
    try:
        matrix = parse_config(config)
    except InvalidRoutingMatrix as e:
        logger.warning(f"Invalid config {config!r} requested: {e}")
        return Response({'config': [str(e)]}, status=status.HTTP_400_BAD_REQUEST)
    try:
        document = classify_document(matrix)
        logger.info(f"Classified {matrix}: {document['tightness']['case']}")
        return Response(document)
    except Exception as e:
        logger.error(f"Error classifying config {config}: {str(e)}", exc_info=True)
        return Response({'error': 'Failed to classify configuration'}, status=status.HTTP_500_INTERNAL_SERVER_ERROR)


@api_view(['GET'])
@renderer_classes([ReportRenderer])
def config_bounds(request, config):
    """
    GET: Inner/outer bound rows along the requested directions
    Query: P, N1, N2, N3, base, directions, grid, seed
    """
    params = {key: value for key, value in request.query_params.items()}
    params['config'] = config
    serializer = BoundsQuerySerializer(data=params)
    if not serializer.is_valid():
        logger.warning(f"Invalid bounds query for config {config}: {serializer.errors}")
        return Response(serializer.errors, status=status.HTTP_400_BAD_REQUEST)
    try:
        data = serializer.validated_data
        channel = serializer.to_channel()
        directions = parse_directions(data['directions'], data['seed'])
        rows = bounds_rows(data['config'], channel, directions, data['grid'], tol=settings.CAPREGION['TOLERANCE'])
        logger.info(f"Computed {len(rows)} bound rows for {data['config']}")
        return Response({
            'config_id': data['config'].config_id,
            'channel': {'P': channel.P, 'N': list(channel.noise), 'base': channel.log_base},
            'rows': rows,
        })
    except Exception as e:
        logger.error(f"Error computing bounds for config {config}: {str(e)}", exc_info=True)
        return Response({'error': 'Failed to compute bounds'}, status=status.HTTP_500_INTERNAL_SERVER_ERROR)


@api_view(['GET'])
def list_report_rows(request):
    """
    GET: Saved report rows, optionally filtered by ?tightness=
    """
    try:
        rows = ReportRow.objects.all()
        tightness = request.query_params.get('tightness')
        if tightness:
            rows = rows.filter(tightness=tightness)
        serializer = ReportRowSerializer(rows, many=True)
        logger.info(f"Fetched {len(serializer.data)} report rows")
        return Response(serializer.data)
    except Exception as e:
        logger.error(f"Error fetching report rows: {str(e)}", exc_info=True)
        return Response({'error': 'Failed to fetch report rows'}, status=status.HTTP_500_INTERNAL_SERVER_ERROR)
