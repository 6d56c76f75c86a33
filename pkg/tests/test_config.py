import math

import pytest
from pyhalfstrip import ConfigurationError, Settings


class TestSettingsFromEnviron:
    def test_from_environ_should_return_defaults_when_no_variable_is_set(self):
        settings = Settings.from_environ({})
        assert settings.quadrature_kind == "gauss_composite"
        assert settings.quadrature_panels == 64
        assert settings.quadrature_order == 8
        assert settings.fd_step == pytest.approx(2 * math.pi / 4096)
        assert settings.log_level == "WARNING"

    def test_from_environ_should_override_panels_when_prefixed_variable_is_set(self):
        settings = Settings.from_environ({"PYHALFSTRIP_QUADRATURE_PANELS": "128"})
        assert settings.quadrature_panels == 128

    def test_from_environ_should_ignore_variables_when_they_are_not_settings(self):
        settings = Settings.from_environ({"PYHALFSTRIP_NOSUCH": "1", "QUADRATURE_PANELS": "3"})
        assert settings == Settings()

    def test_from_environ_should_raise_configuration_error_when_value_does_not_validate(self):
        with pytest.raises(ConfigurationError):
            Settings.from_environ({"PYHALFSTRIP_QUADRATURE_ORDER": "1"})

    def test_from_environ_should_raise_configuration_error_when_value_is_not_a_number(self):
        with pytest.raises(ConfigurationError):
            Settings.from_environ({"PYHALFSTRIP_XI": "tall"})
