from __future__ import annotations

import math
import os
from functools import lru_cache

from pydantic import Field, ValidationError

from pyhalfstrip._base import ConfigurationError, FrozenModel

ENV_PREFIX = "PYHALFSTRIP_"


class Settings(FrozenModel):
    quadrature_kind: str = Field(
        default="gauss_composite",
        description="Default quadrature family on the interval: gauss_composite or trapezoid_periodic.",
    )
    quadrature_panels: int = Field(
        default=64,
        ge=1,
        description="Number of panels (trapezoid: number of nodes) of the default rule.",
    )
    quadrature_order: int = Field(
        default=8,
        ge=2,
        description="Gauss-Legendre points per panel of the default rule.",
    )
    fd_step: float = Field(
        default=2 * math.pi / 4096,
        gt=0,
        description="Step of the finite-difference derivative fallback.",
    )
    compatibility_tolerance: float = Field(
        default=1e-10,
        gt=0,
        description="Threshold below which a compatibility quantity counts as zero.",
    )
    xi: float = Field(
        default=10.0,
        gt=0,
        description="Default truncation height of the half-strip.",
    )
    log_level: str = Field(
        default="WARNING",
        description="loguru level used by the command line front end.",
    )

    @classmethod
    def from_environ(cls, environ: dict[str, str] | None = None) -> Settings:
        """Collects ``PYHALFSTRIP_*`` variables into a settings object.

        Args:
            environ (dict[str, str] | None): Mapping to read from, ``os.environ`` when omitted.

        Returns:
            pyhalfstrip.config.Settings: Validated settings.

        Raises:
            pyhalfstrip.ConfigurationError: If a variable does not validate.
        """
        environ = os.environ if environ is None else environ
        values = {
            key[len(ENV_PREFIX) :].lower(): value
            for key, value in environ.items()
            if key.startswith(ENV_PREFIX) and key[len(ENV_PREFIX) :].lower() in cls.model_fields
        }
        try:
            return cls.model_validate(values)
        except ValidationError as err:
            raise ConfigurationError(f"invalid {ENV_PREFIX}* environment: {err}") from None


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    return Settings.from_environ()
