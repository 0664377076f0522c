import importlib.util
import os
from pathlib import Path
from unittest.mock import patch

from django.core.exceptions import ImproperlyConfigured
from django.test import SimpleTestCase

SETTINGS_PATH = Path(__file__).resolve().parent / "settings.py"


def load_settings(**environ):
    spec = importlib.util.spec_from_file_location("stropsat_settings_copy", SETTINGS_PATH)
    module = importlib.util.module_from_spec(spec)
    with patch.dict(os.environ, environ, clear=True), patch("dotenv.load_dotenv"):
        spec.loader.exec_module(module)
    return module


class SecretKeyTests(SimpleTestCase):
    def test_key_is_read_from_environment(self):
        module = load_settings(SECRET_KEY="from-env", DEBUG="False")
        self.assertEqual(module.SECRET_KEY, "from-env")
        self.assertFalse(module.DEBUG)

    def test_missing_key_without_debug_is_rejected(self):
        with self.assertRaises(ImproperlyConfigured):
            load_settings(DEBUG="False")

    def test_debug_without_key_gets_a_fresh_random_key(self):
        first = load_settings(DEBUG="True")
        second = load_settings(DEBUG="True")
        self.assertTrue(first.SECRET_KEY)
        self.assertNotEqual(first.SECRET_KEY, second.SECRET_KEY)
