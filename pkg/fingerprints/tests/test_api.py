import json
import tempfile
from pathlib import Path

from django.contrib.auth.models import User
from django.test import override_settings
from django.urls import reverse
from rest_framework import status
from rest_framework.test import APITestCase

from fingerprints.index import load_index
from fingerprints.lookup import reset_lookup_index
from plans.parsers import render_plan_json
from plans.tests.factories import chain, diamond, document


def payload(graph, runtime=None):
    return json.loads(render_plan_json(document(graph, runtime)))


class LookupApiTests(APITestCase):

    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.index_path = Path(self._tmp.name) / "index.jsonl"
        self._settings = override_settings(QDAGPRINT={"INDEX_PATH": str(self.index_path)})
        self._settings.enable()
        reset_lookup_index()

        self.analyst = User.objects.create_user("analyst", password="pw-analyst")
        self.maintainer = User.objects.create_user("maintainer", password="pw-maintainer", is_staff=True)

    def tearDown(self):
        reset_lookup_index()
        self._settings.disable()
        self._tmp.cleanup()

    def add(self, graph, runtime):
        self.client.force_authenticate(self.maintainer)
        response = self.client.post(
            reverse("index-add-record"), {"plan": payload(graph, runtime)}, format="json"
        )
        self.client.force_authenticate(None)
        return response

    def test_dropping_credentials_after_add(self):
        self.assertEqual(self.add(diamond("kept"), 3.0).status_code, status.HTTP_201_CREATED)
        response = self.client.post(reverse("fingerprint"), {"plan": payload(diamond())}, format="json")
        self.assertEqual(response.status_code, status.HTTP_401_UNAUTHORIZED)

    def test_requires_authentication(self):
        response = self.client.post(reverse("fingerprint"), {"plan": payload(diamond())}, format="json")
        self.assertEqual(response.status_code, status.HTTP_401_UNAUTHORIZED)

    def test_token_carries_role(self):
        response = self.client.post(
            reverse("token"), {"username": "maintainer", "password": "pw-maintainer"}, format="json"
        )
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(response.data["role"], "maintainer")
        self.assertIn("access", response.data)

        response = self.client.post(
            reverse("token"), {"username": "analyst", "password": "pw-analyst"}, format="json"
        )
        self.assertEqual(response.data["role"], "analyst")

    def test_fingerprint(self):
        self.client.force_authenticate(self.analyst)
        response = self.client.post(reverse("fingerprint"), {"plan": payload(diamond())}, format="json")
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(response.data["plan_id"], "diamond")
        self.assertEqual(response.data["approach"], "structured")
        self.assertEqual(len(response.data["edge_fp"]), 16)
        self.assertEqual(response.data["config"]["hash_algo"], "cityhash64")

    def test_fingerprint_approaches_share_edge_signature(self):
        self.client.force_authenticate(self.analyst)
        prints = [
            self.client.post(
                reverse("fingerprint"), {"plan": payload(diamond()), "approach": approach}, format="json"
            ).data
            for approach in ("structured", "ngram")
        ]
        self.assertEqual(prints[0]["edge_fp"], prints[1]["edge_fp"])
        self.assertEqual(prints[1]["config"]["ngram"]["n"], 3)

    def test_cyclic_plan_is_rejected(self):
        self.client.force_authenticate(self.analyst)
        plan = payload(chain("Scan", "Filter"))
        plan["edges"].append([1, 0])
        response = self.client.post(reverse("fingerprint"), {"plan": plan}, format="json")
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)
        self.assertIn("error", response.data)

    def test_schema_violation(self):
        self.client.force_authenticate(self.analyst)
        response = self.client.post(reverse("fingerprint"), {"plan": {"plan_id": "x"}}, format="json")
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)

    def test_match_on_empty_index(self):
        self.client.force_authenticate(self.analyst)
        response = self.client.post(reverse("match"), {"plan": payload(diamond())}, format="json")
        self.assertEqual(response.status_code, status.HTTP_409_CONFLICT)

    def test_only_maintainers_add(self):
        self.client.force_authenticate(self.analyst)
        response = self.client.post(
            reverse("index-add-record"), {"plan": payload(diamond(), 3.0)}, format="json"
        )
        self.assertEqual(response.status_code, status.HTTP_403_FORBIDDEN)
        self.assertFalse(self.index_path.exists())

    def test_add_needs_runtime(self):
        response = self.add(diamond(), None)
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)

    def test_add_persists(self):
        response = self.add(diamond(), 3.0)
        self.assertEqual(response.status_code, status.HTTP_201_CREATED)
        self.assertEqual(response.data["record"]["label"], "Simple")
        self.assertEqual(response.data["size"], 1)
        self.assertEqual(len(load_index(self.index_path)), 1)

    def test_match_and_predict(self):
        self.add(diamond(), 3.0)
        self.add(chain("Scan", "Exchange", "HashAggregate", "Sort", plan_id="agg"), 120.0)

        self.client.force_authenticate(self.analyst)
        response = self.client.post(reverse("match"), {"plan": payload(diamond("probe")), "top": 2}, format="json")
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        first = response.data["matches"][0]
        self.assertEqual((first["plan_id"], first["edge_distance"], first["node_distance"]), ("diamond", 0, 0))
        self.assertEqual(len(response.data["matches"]), 2)

        response = self.client.post(reverse("predict"), {"plan": payload(diamond("probe"))}, format="json")
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(response.data["label"], "Simple")
        self.assertEqual(response.data["evidence"]["plan_id"], "diamond")

    def test_index_summary(self):
        self.add(diamond(), 3.0)
        self.add(chain("Scan", "Sort", plan_id="sorted"), 45.0)

        self.client.force_authenticate(self.analyst)
        response = self.client.get(reverse("index-summary"))
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(response.data["size"], 2)
        self.assertEqual(response.data["labels"], {"Simple": 1, "Medium": 0, "Complex": 1})
        self.assertEqual(response.data["header"]["approach"], "structured")
