import unittest

from pairaudit import pairaudit_setting
from pairaudit.settings import _PAIRAUDIT_SETTINGS


class PairAuditSettingsTestCase(unittest.TestCase):

    def _check_setting(self, setting_name, expected_type, new_value,
                       wrong_value):
        cur_setting = pairaudit_setting(setting_name)
        self.assertIsInstance(cur_setting, expected_type)

        self.assertEqual(pairaudit_setting(setting_name, new_value),
                         new_value)
        self.assertEqual(pairaudit_setting(setting_name), new_value)
        self.assertEqual(_PAIRAUDIT_SETTINGS[setting_name], new_value)

        # Test wrong type
        with self.assertRaises(ValueError):
            pairaudit_setting(setting_name, wrong_value)

        # Restore value
        pairaudit_setting(setting_name, cur_setting)
        self.assertEqual(_PAIRAUDIT_SETTINGS[setting_name], cur_setting)

    def test_tolerance(self):
        self._check_setting('tolerance', float, 1e-3, 1)

    def test_max_audit_ops(self):
        self._check_setting('max_audit_ops', int, 50, 50.0)

    def test_check_structure(self):
        self._check_setting('check_structure', bool, True, 1)

    def test_n_jobs(self):
        self._check_setting('n_jobs', int, 2, "2")

    def test_defaults(self):
        self.assertEqual(pairaudit_setting('tolerance'), 1e-6)
        self.assertEqual(pairaudit_setting('max_audit_ops'), 10000)
        self.assertFalse(pairaudit_setting('check_structure'))

    def test_wrong_setting_name(self):
        with self.assertRaises(ValueError):
            pairaudit_setting("wrong_setting")


if __name__ == "__main__":
    unittest.main()
