from django.urls import path
from . import views

urlpatterns = [
    # JWT login with role
    path("token/", views.LookupTokenView.as_view(), name="token"),

    path("fingerprint/", views.fingerprint_plan, name="fingerprint"),
    path("match/", views.match_plan, name="match"),
    path("predict/", views.predict_plan, name="predict"),

    path("index/", views.index_summary, name="index-summary"),
    path("index/records/", views.add_index_record, name="index-add-record"),
]
