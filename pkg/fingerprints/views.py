from collections import Counter
from functools import wraps

from rest_framework import status
from rest_framework.decorators import api_view, permission_classes
from rest_framework.permissions import IsAuthenticated
from rest_framework.response import Response
from rest_framework_simplejwt.serializers import TokenObtainPairSerializer
from rest_framework_simplejwt.views import TokenObtainPairView

from plans.exceptions import PlanError
from plans.parsers import document_from_payload
from plans.reuse import resolve_reuse_references

from .conf import qdagprint_setting
from .exceptions import ConfigMismatch, EmptyIndex, FingerprintError
from .labels import ComplexityLabel
from .lookup import add_record, lookup_index
from .matching import match, predict
from .permissions import IsIndexMaintainer
from .serializers import (
    FingerprintRequestSerializer, FingerprintSerializer, MatchRequestSerializer,
    MatchResultSerializer, PlanRequestSerializer, PredictRequestSerializer,
)
from .services import build_config, fingerprint_document, record_for


class LookupTokenSerializer(TokenObtainPairSerializer):
    def validate(self, attrs):
        data = super().validate(attrs)

        # maintainers may add records, everyone else only queries
        data["role"] = "maintainer" if self.user.is_staff or self.user.is_superuser else "analyst"
        return data


class LookupTokenView(TokenObtainPairView):
    serializer_class = LookupTokenSerializer


def _error(exc, code):
    return Response({"error": str(exc)}, status=code)


def _validated(serializer_class, request):
    serializer = serializer_class(data=request.data)
    serializer.is_valid(raise_exception=True)
    data = serializer.validated_data
    doc = resolve_reuse_references(document_from_payload(data["plan"]))
    return data, doc


def _guarded(view):
    """Map plan and index errors onto 400 / 409 responses."""

    @wraps(view)
    def wrapper(request, *args, **kwargs):
        try:
            return view(request, *args, **kwargs)
        except PlanError as exc:
            return _error(exc, status.HTTP_400_BAD_REQUEST)
        except (ConfigMismatch, EmptyIndex) as exc:
            return _error(exc, status.HTTP_409_CONFLICT)
        except FingerprintError as exc:
            return _error(exc, status.HTTP_400_BAD_REQUEST)

    return wrapper


# -----------------------------
# FINGERPRINTING
# -----------------------------

@api_view(["POST"])
@permission_classes([IsAuthenticated])
@_guarded
def fingerprint_plan(request):
    data, doc = _validated(FingerprintRequestSerializer, request)
    config = build_config(data.get("approach"), data.get("ngram_n"))
    fingerprint = fingerprint_document(doc, config)
    payload = FingerprintSerializer({"plan_id": doc.plan_id, "fingerprint": fingerprint}).data
    payload["config"] = config.header()
    return Response(payload)


# -----------------------------
# LOOKUP
# -----------------------------

@api_view(["POST"])
@permission_classes([IsAuthenticated])
@_guarded
def match_plan(request):
    data, doc = _validated(MatchRequestSerializer, request)
    index, config = lookup_index()
    results = match(
        index,
        fingerprint_document(doc, config),
        k=data.get("k") or qdagprint_setting("K"),
        top_n=data.get("top") or qdagprint_setting("TOP_N"),
    )
    return Response({
        "plan_id": doc.plan_id,
        "matches": MatchResultSerializer(results, many=True).data,
    })


@api_view(["POST"])
@permission_classes([IsAuthenticated])
@_guarded
def predict_plan(request):
    data, doc = _validated(PredictRequestSerializer, request)
    index, config = lookup_index()
    label, evidence = predict(
        index,
        fingerprint_document(doc, config),
        k=data.get("k") or qdagprint_setting("K"),
        vote=data["vote"],
    )
    return Response({
        "plan_id": doc.plan_id,
        "label": label.label,
        "evidence": MatchResultSerializer(evidence).data,
    })


# -----------------------------
# INDEX
# -----------------------------

@api_view(["GET"])
@permission_classes([IsAuthenticated])
def index_summary(request):
    index, _ = lookup_index()
    counts = Counter(ComplexityLabel(record.label).label for record in index.records)
    return Response({
        "header": index.header,
        "size": len(index),
        "labels": {label.label: counts.get(label.label, 0) for label in ComplexityLabel},
    })


@api_view(["POST"])
@permission_classes([IsAuthenticated, IsIndexMaintainer])
@_guarded
def add_index_record(request):
    _, doc = _validated(PlanRequestSerializer, request)
    _, config = lookup_index()
    record = record_for(doc, config)
    index = add_record(record)
    return Response(
        {"record": record.to_json(), "size": len(index)},
        status=status.HTTP_201_CREATED,
    )
