import logging

from rest_framework import status, viewsets
from rest_framework.permissions import AllowAny
from rest_framework.response import Response
from rest_framework.views import APIView

from subtropical.exceptions import WitnessVerificationError

from .config import RunConfig
from .exceptions import RunConfigError, RunInputError, WitnessMismatchError
from .models import BatchRun
from .serializers import BatchRunSerializer, RunReportSerializer, SolveRequestSerializer
from .services import RunService

logger = logging.getLogger(__name__)


class SolveView(APIView):
    """POST a script, get the RunReport back as JSON."""

    permission_classes = [AllowAny]

    def post(self, request):
        serializer = SolveRequestSerializer(data=request.data)
        serializer.is_valid(raise_exception=True)
        data = dict(serializer.validated_data)
        script = data.pop("script")
        try:
            config = RunConfig.from_settings(**data)
            report = RunService(config).run_text(script, path="<request>")
        except (RunConfigError, RunInputError) as exc:
            return Response({"error": str(exc)}, status=status.HTTP_400_BAD_REQUEST)
        except (WitnessVerificationError, WitnessMismatchError):
            logger.exception("Witness check failed for a submitted script")
            return Response(
                {"error": "Internal error: witness verification failed."},
                status=status.HTTP_500_INTERNAL_SERVER_ERROR,
            )
        return Response(RunReportSerializer(report).data, status=status.HTTP_200_OK)


class BatchRunViewSet(viewsets.ReadOnlyModelViewSet):
    serializer_class = BatchRunSerializer

    def get_queryset(self):
        return BatchRun.objects.prefetch_related("records")
