"""Vector-valued functions on the interval I = (0, 2π), quadrature rules and Bochner/Sobolev norms.

The value space is ℝ^d with the Euclidean norm, so every Bochner integral reduces to ``d`` scalar
integrals. Functions are evaluable maps rather than stored samples: grids are produced on demand by
the quadrature rules below.
"""

from __future__ import annotations

import math
import re
from collections.abc import Callable
from enum import Enum
from functools import lru_cache

import numpy as np
from loguru import logger
from pydantic import Field, PositiveInt, ValidationError, model_validator

from pyhalfstrip._base import (
    CapabilityError,
    EnumTypeBase,
    FrozenModel,
    ParameterError,
    RealArray,
    UnknownFunctionError,
)
from pyhalfstrip.config import get_settings

TWO_PI = 2 * math.pi

ScalarProfile = Callable[[np.ndarray], np.ndarray]
VectorEvaluator = Callable[[np.ndarray], np.ndarray]


class QuadratureKind(Enum):
    GAUSS_COMPOSITE = "gauss_composite"
    TRAPEZOID_PERIODIC = "trapezoid_periodic"


class QuadratureRule(FrozenModel):
    kind: QuadratureKind
    panels: int = Field(ge=1)
    order: int = Field(ge=2)
    interval: tuple[float, float] = (0.0, TWO_PI)
    nodes: RealArray
    weights: RealArray

    @model_validator(mode="after")
    def _check_weights(self) -> QuadratureRule:
        if self.nodes.shape != self.weights.shape or self.nodes.ndim != 1:
            raise ValueError("nodes and weights must be 1-D arrays of equal length")
        if np.any(self.weights <= 0):
            raise ValueError("weights must be positive")
        if not math.isclose(self.weights.sum(), self.length, rel_tol=1e-12):
            raise ValueError(f"weights sum to {self.weights.sum()!r}, expected {self.length!r}")
        return self

    @property
    def length(self) -> float:
        return self.interval[1] - self.interval[0]

    @property
    def exactness_degree(self) -> int:
        """
        Returns:
            int: Highest polynomial degree integrated exactly on each panel.
        """
        if self.kind is QuadratureKind.GAUSS_COMPOSITE:
            return 2 * self.order - 1
        return 0

    def apply(self, values: np.ndarray, /) -> np.ndarray:
        """Weighted sum along the first axis of sampled ``values``."""
        return np.tensordot(self.weights, values, axes=(0, 0))


@lru_cache(maxsize=32)
def make_quadrature(
    kind: QuadratureKind | str,
    panels: int,
    order: int,
    interval: tuple[float, float] = (0.0, TWO_PI),
) -> QuadratureRule:
    """Builds a quadrature rule on ``interval`` (``[0, 2π]`` by default).

    ``gauss_composite`` splits the interval into ``panels`` equal panels with ``order``
    Gauss-Legendre points each and is exact on polynomials of degree ``2 * order - 1`` per panel.
    ``trapezoid_periodic`` uses ``panels`` equally spaced nodes starting at the left end point;
    ``order`` is validated but otherwise unused.

    >>> rule = make_quadrature("trapezoid_periodic", 4, 2)
    >>> rule.nodes
    array([0.        , 1.57079633, 3.14159265, 4.71238898])

    Args:
        kind (QuadratureKind | str): Quadrature family.
        panels (int): Number of panels, at least 1.
        order (int): Points per panel, at least 2.
        interval (tuple[float, float]): Integration interval.

    Returns:
        pyhalfstrip.vectorfn.QuadratureRule: The rule.

    Raises:
        pyhalfstrip.ParameterError: If the sizes or the kind are invalid.
    """
    try:
        kind = QuadratureKind(kind)
    except ValueError:
        raise ParameterError(f'"{kind}" is not a valid {QuadratureKind.__qualname__}') from None
    if panels < 1 or order < 2:
        raise ParameterError(f"panels must be >= 1 and order >= 2, got panels={panels}, order={order}")
    a, b = interval
    if not b > a:
        raise ParameterError(f"empty interval {interval!r}")

    if kind is QuadratureKind.GAUSS_COMPOSITE:
        reference_nodes, reference_weights = np.polynomial.legendre.leggauss(order)
        edges = np.linspace(a, b, panels + 1)
        half = np.diff(edges)[:, None] / 2
        centers = (edges[:-1] + edges[1:])[:, None] / 2
        nodes = (centers + half * reference_nodes).ravel()
        weights = (half * reference_weights).ravel()
    else:
        nodes = a + (b - a) * np.arange(panels) / panels
        weights = np.full(panels, (b - a) / panels)

    logger.debug("built {} rule: panels={}, order={}, interval={}", kind.value, panels, order, interval)
    try:
        return QuadratureRule(
            kind=kind,
            panels=panels,
            order=order,
            interval=(a, b),
            nodes=nodes,
            weights=weights,
        )
    except ValidationError as err:
        raise ParameterError(str(err)) from None


def default_rule() -> QuadratureRule:
    """
    Returns:
        pyhalfstrip.vectorfn.QuadratureRule: Rule configured by ``PYHALFSTRIP_QUADRATURE_*``
        (composite Gauss-Legendre, 64 panels of order 8 unless overridden).
    """
    settings = get_settings()
    return make_quadrature(settings.quadrature_kind, settings.quadrature_panels, settings.quadrature_order)


def resolving_rule(max_frequency: int, /, *, order: int = 8) -> QuadratureRule:
    """Gauss rule with at least two order-``order`` panels per unit of integrand frequency.

    Args:
        max_frequency (int): Highest angular frequency present in the integrand.
        order (int): Points per panel.

    Returns:
        pyhalfstrip.vectorfn.QuadratureRule: A rule no coarser than :func:`default_rule`.
    """
    base = default_rule()
    panels = max(2 * int(max_frequency), base.panels if base.kind is QuadratureKind.GAUSS_COMPOSITE else 1, 16)
    return make_quadrature(QuadratureKind.GAUSS_COMPOSITE, panels, order)


class NormParams(FrozenModel):
    p: float = Field(gt=1, description="Lebesgue exponent, 1 < p < ∞.")
    xi: float = Field(gt=0, description="Truncation height of the half-strip.")

    @model_validator(mode="after")
    def _check_finite(self) -> NormParams:
        if not (math.isfinite(self.p) and math.isfinite(self.xi)):
            raise ValueError("p and xi must be finite")
        return self


class FunctionOnI(FrozenModel):
    """An ℝ^d-valued map on ``[0, 2π]`` with optional analytic derivatives.

    Evaluators take a 1-D array of points and return an array of shape ``(len(x), dim)``.
    """

    dim: PositiveInt
    evaluator: VectorEvaluator
    deriv1: VectorEvaluator | None = None
    deriv2: VectorEvaluator | None = None
    name: str = "anonymous"

    @property
    def has_derivatives(self) -> bool:
        return self.deriv1 is not None and self.deriv2 is not None

    def __call__(self, x: float | np.ndarray, /) -> np.ndarray:
        """Evaluates the function; a scalar point gives shape ``(dim,)``, an array ``x.shape + (dim,)``."""
        return self._evaluate(self.evaluator, x)

    def derivative(self, x: float | np.ndarray, /, order: int = 1) -> np.ndarray:
        """
        Raises:
            pyhalfstrip.CapabilityError: If the analytic derivative of that order is missing.
        """
        evaluator = {1: self.deriv1, 2: self.deriv2}.get(order)
        if evaluator is None:
            raise CapabilityError(f"{self.name} has no analytic derivative of order {order}")
        return self._evaluate(evaluator, x)

    def _evaluate(self, evaluator: VectorEvaluator, x: float | np.ndarray, /) -> np.ndarray:
        points = np.asarray(x, dtype=float)
        values = np.asarray(evaluator(points.ravel()), dtype=float)
        if values.shape != (points.size, self.dim):
            raise ParameterError(
                f"{self.name} returned shape {values.shape}, expected {(points.size, self.dim)}",
            )
        return values.reshape((*points.shape, self.dim))

    def __add__(self, other: FunctionOnI) -> FunctionOnI:
        if not isinstance(other, FunctionOnI):
            return NotImplemented
        if other.dim != self.dim:
            raise ParameterError(f"cannot add functions of dimension {self.dim} and {other.dim}")
        return FunctionOnI(
            dim=self.dim,
            evaluator=_sum_evaluator(self.evaluator, other.evaluator),
            deriv1=_sum_evaluator(self.deriv1, other.deriv1),
            deriv2=_sum_evaluator(self.deriv2, other.deriv2),
            name=f"({self.name} + {other.name})",
        )

    def __mul__(self, scalar: float) -> FunctionOnI:
        if not isinstance(scalar, int | float | np.floating | np.integer):
            return NotImplemented
        return FunctionOnI(
            dim=self.dim,
            evaluator=_scaled_evaluator(self.evaluator, float(scalar)),
            deriv1=_scaled_evaluator(self.deriv1, float(scalar)),
            deriv2=_scaled_evaluator(self.deriv2, float(scalar)),
            name=f"{scalar!r}*{self.name}",
        )

    __rmul__ = __mul__

    def __neg__(self) -> FunctionOnI:
        return self * -1.0

    def __sub__(self, other: FunctionOnI) -> FunctionOnI:
        return self + (-other)


def _sum_evaluator(first: VectorEvaluator | None, second: VectorEvaluator | None) -> VectorEvaluator | None:
    if first is None or second is None:
        return None
    return lambda x: first(x) + second(x)


def _scaled_evaluator(evaluator: VectorEvaluator | None, scalar: float) -> VectorEvaluator | None:
    if evaluator is None:
        return None
    return lambda x: scalar * evaluator(x)


def from_profiles(
    profile: ScalarProfile,
    profile1: ScalarProfile | None,
    profile2: ScalarProfile | None,
    /,
    *,
    dim: int,
    name: str,
    weights: np.ndarray | None = None,
) -> FunctionOnI:
    """Vector function ``x ↦ profile(x) · w`` with ``w = weights`` (all ones by default)."""
    w = np.ones(dim) if weights is None else np.asarray(weights, dtype=float)
    if w.shape != (dim,):
        raise ParameterError(f"weights must have shape ({dim},), got {w.shape}")

    def lift(scalar: ScalarProfile | None) -> VectorEvaluator | None:
        if scalar is None:
            return None
        return lambda x: np.multiply.outer(np.asarray(scalar(x), dtype=float) * np.ones_like(x), w)

    return FunctionOnI(dim=dim, evaluator=lift(profile), deriv1=lift(profile1), deriv2=lift(profile2), name=name)


def integrate(f: FunctionOnI, rule: QuadratureRule, /) -> np.ndarray:
    """Bochner integral ``Σ wᵢ f(xᵢ)`` over the rule's interval.

    Returns:
        numpy.ndarray: Vector of shape ``(f.dim,)``.
    """
    return rule.apply(f(rule.nodes))


def _check_exponent(p: float, /) -> None:
    if not (math.isfinite(p) and p >= 1):
        raise ParameterError(f"exponent p must satisfy 1 <= p < inf, got {p!r}")


def lp_norm_of_values(values: np.ndarray, p: float, rule: QuadratureRule, /) -> float:
    """L^p norm of samples ``values`` (shape ``(len(rule.nodes), d)``) taken at the rule's nodes."""
    _check_exponent(p)
    pointwise = np.linalg.norm(values, axis=-1)
    return float(rule.apply(pointwise**p) ** (1 / p))


def lp_norm(f: FunctionOnI, p: float, rule: QuadratureRule, /) -> float:
    """Bochner norm ``(∫ ‖f(x)‖^p dx)^{1/p}`` with the Euclidean norm on ℝ^d.

    Raises:
        pyhalfstrip.ParameterError: If ``p < 1``.
    """
    _check_exponent(p)
    return lp_norm_of_values(f(rule.nodes), p, rule)


def finite_difference(f: FunctionOnI, x: np.ndarray, /, order: int, *, h: float | None = None) -> np.ndarray:
    """Second-order finite-difference derivative of ``f`` at points of ``[0, 2π]``.

    Central stencils are used where ``x ± h`` stays inside the interval, one-sided stencils of the
    same order at the end points.

    Args:
        f (FunctionOnI): Function to differentiate.
        x (numpy.ndarray): 1-D array of points.
        order (int): 1 or 2.
        h (float | None): Step, ``PYHALFSTRIP_FD_STEP`` (2π/4096) by default.

    Returns:
        numpy.ndarray: Array of shape ``(len(x), f.dim)``.
    """
    if order not in (1, 2):
        raise CapabilityError(f"finite differences are provided for orders 1 and 2, not {order}")
    h = get_settings().fd_step if h is None else h
    x = np.asarray(x, dtype=float)
    left = x - h < 0
    right = (x + h > TWO_PI) & ~left
    central = ~(left | right)
    result = np.empty((x.size, f.dim))

    if central.any():
        xc = x[central]
        f_minus, f_zero, f_plus = f(xc - h), f(xc), f(xc + h)
        if order == 1:
            result[central] = (f_plus - f_minus) / (2 * h)
        else:
            result[central] = (f_plus - 2 * f_zero + f_minus) / h**2
    for mask, sign in ((left, 1.0), (right, -1.0)):
        if not mask.any():
            continue
        xs = x[mask]
        f0, f1, f2, f3 = (f(xs + sign * k * h) for k in range(4))
        if order == 1:
            result[mask] = sign * (-3 * f0 + 4 * f1 - f2) / (2 * h)
        else:
            result[mask] = (2 * f0 - 5 * f1 + 4 * f2 - f3) / h**2
    return result


def sobolev2_norm(
    f: FunctionOnI,
    p: float,
    rule: QuadratureRule,
    /,
    *,
    fallback: bool = False,
    h: float | None = None,
) -> float:
    """W²_p norm ``‖f‖_p + ‖f′‖_p + ‖f″‖_p``.

    Args:
        f (FunctionOnI): Function with analytic ``deriv1``/``deriv2``, or any function if ``fallback``.
        p (float): Exponent, ``p >= 1``.
        rule (QuadratureRule): Quadrature on ``[0, 2π]``.
        fallback (bool): Use finite differences when analytic derivatives are missing.
        h (float | None): Finite-difference step for the fallback.

    Returns:
        float: The norm.

    Raises:
        pyhalfstrip.CapabilityError: If derivatives are missing and ``fallback`` is False.
        pyhalfstrip.ParameterError: If ``p < 1``.
    """
    _check_exponent(p)
    nodes = rule.nodes
    if f.has_derivatives:
        first, second = f.derivative(nodes, 1), f.derivative(nodes, 2)
    elif fallback:
        first, second = finite_difference(f, nodes, 1, h=h), finite_difference(f, nodes, 2, h=h)
    else:
        raise CapabilityError(f"{f.name} has no analytic derivatives and the finite-difference fallback is off")
    return sum(lp_norm_of_values(values, p, rule) for values in (f(nodes), first, second))


def even_odd_parts(f: FunctionOnI, /) -> tuple[FunctionOnI, FunctionOnI]:
    """Splits ``f`` into parts even and odd under the reflection ``x ↦ 2π − x``."""

    def reflect(evaluator: VectorEvaluator | None, sign: float) -> VectorEvaluator | None:
        if evaluator is None:
            return None
        return lambda x: sign * evaluator(TWO_PI - x)

    # the k-th derivative of f(2π − x) picks up (−1)^k
    reflected = FunctionOnI(
        dim=f.dim,
        evaluator=reflect(f.evaluator, 1.0),
        deriv1=reflect(f.deriv1, -1.0),
        deriv2=reflect(f.deriv2, 1.0),
        name=f"{f.name}(2π-x)",
    )
    even = (f + reflected) * 0.5
    odd = (f - reflected) * 0.5
    return (
        even.model_copy(update={"name": f"{f.name}+"}),
        odd.model_copy(update={"name": f"{f.name}-"}),
    )


# -- catalog ------------------------------------------------------------------------------------


class CatalogUnit(FrozenModel):
    key: str = Field(
        description="Catalog name, or name prefix for indexed entries.",
        examples=[
            "zero",
            "cos",
            "xsin",
        ],
    )
    indexed: bool = Field(
        default=False,
        description="Whether the name carries a frequency suffix, as in cos_2.",
    )
    description: str


_INDEXED_NAME = re.compile(r"^(?P<key>[a-z]+)_(?P<k>[1-9][0-9]*)$")


class _CatalogEnumType(EnumTypeBase):
    _lookup_error = UnknownFunctionError

    def __call__(cls, value, *args, **kw):  # noqa: N805
        if isinstance(value, cls):
            return value
        entry: Catalog
        for entry in cls.__members__.values():
            if not entry.indexed and value == entry.key:
                return entry
        match = _INDEXED_NAME.match(str(value))
        if match is not None:
            entry = cls[match["key"]]
            if entry.indexed:
                return entry
        raise UnknownFunctionError(f'"{value}" is not a valid {cls.__qualname__} name') from None

    @property
    def names(cls) -> list[str]:  # noqa: N805
        """
        Returns:
            Published names, indexed entries shown with a ``_k`` suffix.
        """
        return [f"{entry.key}_k" if entry.indexed else entry.key for entry in cls.__members__.values()]


def _bump_profiles(center: float = math.pi, radius: float = math.pi / 2):
    def inside(x: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        t = (x - center) / radius
        mask = np.abs(t) < 1
        t = np.where(mask, t, 0.0)
        q = 1 - t**2
        value = np.where(mask, np.exp(-1 / q), 0.0)
        return t, q, value

    def profile(x):
        return inside(x)[2]

    def profile1(x):
        t, q, value = inside(x)
        return value * (-2 * t / q**2) / radius

    def profile2(x):
        t, q, value = inside(x)
        g1 = -2 * t / q**2
        g2 = -(2 + 6 * t**2) / q**3
        return value * (g1**2 + g2) / radius**2

    return profile, profile1, profile2


# 0.5 cos x − 0.25 x sin 2x + 0.125 cos 3x
_COMBO_TERMS = ((1, 0.5, 0.0), (2, 0.0, -0.25), (3, 0.125, 0.0))


def _combo_profiles():
    def profile(x):
        return sum(a * np.cos(n * x) + b * x * np.sin(n * x) for n, a, b in _COMBO_TERMS)

    def profile1(x):
        return sum(-a * n * np.sin(n * x) + b * (np.sin(n * x) + n * x * np.cos(n * x)) for n, a, b in _COMBO_TERMS)

    def profile2(x):
        return sum(
            -a * n**2 * np.cos(n * x) + b * (2 * n * np.cos(n * x) - n**2 * x * np.sin(n * x))
            for n, a, b in _COMBO_TERMS
        )

    return profile, profile1, profile2


class Catalog(Enum, metaclass=_CatalogEnumType):
    """Published test functions on I with analytic first and second derivatives.

    Every entry is scalar-valued and replicated into each of the ``dim`` components.
    """

    ZERO = CatalogUnit(
        key="zero",
        description="f ≡ 0",
    )
    ONE = CatalogUnit(
        key="one",
        description="f ≡ 1",
    )
    COS = CatalogUnit(
        key="cos",
        indexed=True,
        description="f(x) = cos(kx), an eigenfunction",
    )
    XSIN = CatalogUnit(
        key="xsin",
        indexed=True,
        description="f(x) = x sin(kx), an associated function",
    )
    COMBO = CatalogUnit(
        key="combo",
        description="f(x) = 0.5 cos x − 0.25 x sin 2x + 0.125 cos 3x, a finite root combination",
    )
    BUMP = CatalogUnit(
        key="bump",
        description="smooth bump supported in (π/2, 3π/2), flat to every order at 0 and 2π",
    )

    @property
    def unit(self) -> CatalogUnit:
        return self._value_

    @property
    def key(self) -> str:
        return self.unit.key

    @property
    def indexed(self) -> bool:
        return self.unit.indexed

    @property
    def description(self) -> str:
        return self.unit.description

    def build(self, dim: int, k: int | None = None) -> FunctionOnI:
        """Instantiates the entry in ℝ^``dim``; indexed entries need the frequency ``k >= 1``."""
        if self.indexed and (k is None or k < 1):
            raise UnknownFunctionError(f'"{self.key}" needs a positive frequency suffix, e.g. {self.key}_2')
        name = f"{self.key}_{k}" if self.indexed else self.key
        if self is Catalog.ZERO:
            profiles = (np.zeros_like, np.zeros_like, np.zeros_like)
        elif self is Catalog.ONE:
            profiles = (np.ones_like, np.zeros_like, np.zeros_like)
        elif self is Catalog.COS:
            profiles = (
                lambda x: np.cos(k * x),
                lambda x: -k * np.sin(k * x),
                lambda x: -(k**2) * np.cos(k * x),
            )
        elif self is Catalog.XSIN:
            profiles = (
                lambda x: x * np.sin(k * x),
                lambda x: np.sin(k * x) + k * x * np.cos(k * x),
                lambda x: 2 * k * np.cos(k * x) - k**2 * x * np.sin(k * x),
            )
        elif self is Catalog.COMBO:
            profiles = _combo_profiles()
        else:
            profiles = _bump_profiles()
        return from_profiles(*profiles, dim=dim, name=name)

    def __str__(self) -> str:
        return self.key


def catalog(name: str, dim: int = 1) -> FunctionOnI:
    """Looks up a published test function.

    >>> catalog("xsin_3")(math.pi / 2)
    array([-1.57079633])

    Args:
        name (str): ``zero``, ``one``, ``cos_k``, ``xsin_k``, ``combo`` or ``bump``.
        dim (int): Dimension d of the value space.

    Returns:
        pyhalfstrip.vectorfn.FunctionOnI: The function with analytic derivatives.

    Raises:
        pyhalfstrip.UnknownFunctionError: If ``name`` is not published.
        pyhalfstrip.ParameterError: If ``dim < 1``.
    """
    if dim < 1:
        raise ParameterError(f"dim must be positive, got {dim}")
    entry = Catalog(name)
    match = _INDEXED_NAME.match(name)
    return entry.build(dim, int(match["k"]) if entry.indexed and match else None)
