from __future__ import annotations

from typing import Annotated, Any

import numpy as np
from pydantic import BaseModel, BeforeValidator, ConfigDict, PlainSerializer

try:
    from enum import EnumType
except ImportError:
    from enum import EnumMeta as EnumType


def _as_readonly(array: np.ndarray, /) -> np.ndarray:
    array.setflags(write=False)
    return array


def _coerce_real(value: Any) -> np.ndarray:
    try:
        array = np.array(value, dtype=float)
    except (TypeError, ValueError):
        raise ValueError(f"{value!r} is not a real array") from None
    if not np.all(np.isfinite(array)):
        raise ValueError("array entries must be finite")
    return _as_readonly(array)


def _coerce_complex(value: Any) -> np.ndarray:
    if isinstance(value, list | tuple) and value and _is_pair_list(value):
        value = np.array(value, dtype=float)
        value = value[..., 0] + 1j * value[..., 1]
    try:
        array = np.array(value, dtype=complex)
    except (TypeError, ValueError):
        raise ValueError(f"{value!r} is not a complex array") from None
    return _as_readonly(array)


def _is_pair_list(value: Any) -> bool:
    shape = np.shape(value)
    return len(shape) >= 1 and shape[-1] == 2 and not np.iscomplexobj(np.asarray(value))


def _serialize_real(array: np.ndarray) -> list:
    return array.tolist()


def _serialize_complex(array: np.ndarray) -> list:
    return np.stack([array.real, array.imag], axis=-1).tolist()


RealArray = Annotated[
    np.ndarray,
    BeforeValidator(_coerce_real),
    PlainSerializer(_serialize_real, return_type=list),
]
"""Read-only float array; serializes to nested lists."""

ComplexArray = Annotated[
    np.ndarray,
    BeforeValidator(_coerce_complex),
    PlainSerializer(_serialize_complex, return_type=list),
]
"""Read-only complex array; serializes each entry as a ``[real, imag]`` pair."""


class FrozenModel(BaseModel):
    model_config = ConfigDict(
        frozen=True,
        arbitrary_types_allowed=True,
    )


class EnumTypeBase(EnumType):
    """Member lookup by name in either case; misses raise ``_lookup_error`` of the metaclass."""

    _lookup_error: type[Exception] = LookupError

    def __getitem__(cls, name):  # noqa: N805
        try:
            return super().__getitem__(str(name).upper())
        except KeyError:
            known = ", ".join(member.lower() for member in cls.__members__)
            raise cls._lookup_error(f'"{name}" is not a valid {cls.__qualname__}; known: {known}') from None


class BaseHalfStripError(Exception):
    """Base pyhalfstrip Error."""


class ParameterError(BaseHalfStripError, ValueError):
    """Parameter Error."""


class CapabilityError(BaseHalfStripError):
    """Capability Error: the requested derivative or evaluation mode is not available."""


class ModeRangeError(BaseHalfStripError, IndexError):
    """Mode Range Error"""


class DegenerateInputError(BaseHalfStripError, ValueError):
    """Degenerate Input Error"""


class UnknownFunctionError(BaseHalfStripError, LookupError):
    """Unknown Function Error"""


class ConfigurationError(BaseHalfStripError, ValueError):
    """Configuration Error"""
