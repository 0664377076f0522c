from django.contrib.auth import get_user_model
from django.urls import reverse
from rest_framework import status
from rest_framework.test import APITestCase

from .config import RunConfig
from .services import RunService, save_batch
from .tests import CLASSIC

SCRIPT = "(declare-fun x () Real)(declare-fun y () Real)(assert (> (- (* x y) 1) 0))"


class SolveApiTests(APITestCase):
    def setUp(self):
        self.url = reverse("solve")

    def test_sat_report(self):
        response = self.client.post(self.url, {"script": SCRIPT}, format="json")
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(response.data["verdict"], "sat")
        self.assertEqual(set(response.data["witness"]), {"x", "y"})
        self.assertEqual(set(response.data["timings"]), {"parse", "encode", "solve", "base_search"})

    def test_unsupported_is_unknown(self):
        script = "(declare-fun x () Real)(assert (= x 1))"
        response = self.client.post(self.url, {"script": script}, format="json")
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(response.data["verdict"], "unknown")
        self.assertEqual(response.data["reason"], "unsupported: equality (=)")
        self.assertIsNone(response.data["witness"])

    def test_options_are_passed_through(self):
        response = self.client.post(
            self.url, {"script": SCRIPT, "orthant": "positive", "strategy": "enumerate"}, format="json"
        )
        self.assertEqual(response.data["verdict"], "sat")

    def test_syntax_error_is_bad_request(self):
        response = self.client.post(self.url, {"script": "(assert (> x 0))"}, format="json")
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)
        self.assertIn("Undeclared symbol 'x'", response.data["error"])

    def test_invalid_options_are_bad_request(self):
        response = self.client.post(self.url, {"script": SCRIPT, "max_squarings": 0}, format="json")
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)
        response = self.client.post(self.url, {}, format="json")
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)


class BatchApiTests(APITestCase):
    def setUp(self):
        config = RunConfig()
        self.batch = save_batch(RunService(config).run_batch(CLASSIC), config)
        self.user = get_user_model().objects.create_user(username="analyst", password="password123")

    def test_requires_authentication(self):
        response = self.client.get(reverse("batch-list"))
        self.assertIn(response.status_code, (status.HTTP_401_UNAUTHORIZED, status.HTTP_403_FORBIDDEN))

    def test_list_and_detail(self):
        self.client.force_authenticate(self.user)
        response = self.client.get(reverse("batch-list"))
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(len(response.data), 1)
        self.assertEqual(response.data[0]["sat_count"], 3)

        response = self.client.get(reverse("batch-detail", args=[self.batch.pk]))
        self.assertEqual(len(response.data["records"]), 3)
        self.assertEqual(response.data["records"][0]["verdict"], "sat")
