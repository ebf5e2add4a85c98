from rest_framework.permissions import BasePermission


class IsIndexMaintainer(BasePermission):
    """Only staff accounts may add records to the shared index."""

    def has_permission(self, request, view):
        if not request.user.is_authenticated:
            return False

        return request.user.is_staff or request.user.is_superuser
