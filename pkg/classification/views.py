from django_filters.rest_framework import DjangoFilterBackend
from rest_framework import filters, viewsets
from rest_framework.decorators import api_view, permission_classes
from rest_framework.permissions import AllowAny
from rest_framework.response import Response

from .exact_constants import constants_summary
from .exceptions import DomainError
from .models import VerificationRun
from .serializers import VerificationRunSerializer, VerificationRunSummarySerializer


# -------------------
# Run archive
# -------------------
class VerificationRunViewSet(viewsets.ReadOnlyModelViewSet):
    queryset = VerificationRun.objects.all()
    serializer_class = VerificationRunSerializer
    permission_classes = [AllowAny]
    filter_backends = [DjangoFilterBackend, filters.OrderingFilter]
    filterset_fields = ["n", "suite", "passed", "constant_mode"]
    ordering_fields = ["created_at", "n"]

    def get_serializer_class(self):
        if self.action == "list":
            return VerificationRunSummarySerializer
        return VerificationRunSerializer


# -------------------
# Exact constants
# -------------------
@api_view(["GET"])
@permission_classes([AllowAny])
def constants(request):
    """
    Both constant chains for one N.
    Query parameter: ?n=N (integer >= 2)
    """
    raw = request.GET.get("n", "").strip()
    if not raw:
        return Response({"error": "query parameter n is required"}, status=400)
    try:
        big_n = int(raw)
        return Response(constants_summary(big_n))
    except (ValueError, DomainError) as exc:
        return Response({"error": f"invalid n {raw!r}: {exc}"}, status=400)
